use std::io::{Read, Write};
use std::path::Path;

use super::report::{CurvePoint, GapRow, GroupRow};
use super::{HarnessError, HarnessResult};
use crate::battery::{Direction, TestId};
use crate::engine::{PowerRecord, RejectionRegion};

/// Power records of a study, in generation order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PowerTable {
    pub records: Vec<PowerRecord>,
}

pub const POWER_HEADER: [&str; 9] = ["test", "submodel", "case_index", "param_value", "n", "alpha", "reps", "rejections", "errors"];
pub const REGION_HEADER: [&str; 8] = ["test", "n", "alpha", "direction", "lower", "upper", "reps", "seed"];
pub const REPORT_HEADER: [&str; 7] = ["grouping", "n", "alpha", "test", "avg_power", "gap", "rank"];
pub const GAPS_HEADER: [&str; 5] = ["grouping", "alpha", "test", "max_gap", "avg_gap"];
pub const CURVES_HEADER: [&str; 5] = ["test", "n", "alpha", "case_index", "avg_power"];

/// 17 significant digits; empty for NaN.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:.16e}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn csv_err(path: &Path, e: csv::Error) -> HarnessError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => HarnessError::io(path, io),
        kind => HarnessError::Parse { path: path.to_path_buf(), line, reason: format!("{kind:?}") },
    }
}

fn writer<W: Write>(w: W, header: &[&str]) -> csv::Result<csv::Writer<W>> {
    let mut wr = csv::WriterBuilder::new().from_writer(w);
    wr.write_record(header)?;
    Ok(wr)
}

fn finish<W: Write>(wr: csv::Writer<W>) -> std::io::Result<()> {
    wr.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?.flush()
}

/// Rows of a headed CSV with the expected columns, with their line numbers.
fn rows<R: Read>(r: R, path: &Path, header: &[&str]) -> HarnessResult<Vec<(u64, csv::StringRecord)>> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let got = rd.headers().map_err(|e| csv_err(path, e))?.clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(HarnessError::Parse { path: path.to_path_buf(), line: 1, reason: format!("expected header '{}'", header.join(",")) });
    }
    rd.records()
        .map(|rec| {
            let rec = rec.map_err(|e| csv_err(path, e))?;
            Ok((rec.position().map(|p| p.line()).unwrap_or(0), rec))
        })
        .collect()
}

struct Fields<'a> {
    path: &'a Path,
    line: u64,
    rec: &'a csv::StringRecord,
}

impl Fields<'_> {
    fn err(&self, reason: String) -> HarnessError {
        HarnessError::Parse { path: self.path.to_path_buf(), line: self.line, reason }
    }

    fn str(&self, i: usize) -> &str {
        self.rec.get(i).unwrap_or("")
    }

    fn parse<T: std::str::FromStr>(&self, i: usize, name: &str) -> HarnessResult<T> {
        self.str(i).parse().map_err(|_| self.err(format!("bad {name} '{}'", self.str(i))))
    }

    fn opt_f64(&self, i: usize, name: &str) -> HarnessResult<Option<f64>> {
        if self.str(i).is_empty() {
            Ok(None)
        } else {
            self.parse(i, name).map(Some)
        }
    }

    fn test(&self, i: usize) -> HarnessResult<TestId> {
        self.str(i).parse().map_err(|e: crate::Error| self.err(e.to_string()))
    }
}

fn open(path: &Path) -> HarnessResult<std::fs::File> {
    std::fs::File::open(path).map_err(|e| HarnessError::io(path, e))
}

fn create(path: &Path) -> HarnessResult<std::io::BufWriter<std::fs::File>> {
    std::fs::File::create(path).map(std::io::BufWriter::new).map_err(|e| HarnessError::io(path, e))
}

impl PowerTable {
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut wr = writer(w, &POWER_HEADER)?;
        for r in &self.records {
            wr.write_record([
                r.test.name().to_string(),
                r.submodel.clone(),
                r.case_index.to_string(),
                fmt_float(r.param_value),
                r.n.to_string(),
                r.alpha.to_string(),
                r.reps.to_string(),
                r.rejections.to_string(),
                r.errors.to_string(),
            ])?;
        }
        finish(wr)
    }

    pub fn read_csv<R: Read>(r: R, path: &Path) -> HarnessResult<Self> {
        let mut records = Vec::new();
        for (line, rec) in rows(r, path, &POWER_HEADER)? {
            let f = Fields { path, line, rec: &rec };
            let r = PowerRecord {
                test: f.test(0)?,
                submodel: f.str(1).to_string(),
                case_index: f.parse(2, "case_index")?,
                param_value: f.opt_f64(3, "param_value")?.unwrap_or(f64::NAN),
                n: f.parse(4, "n")?,
                alpha: f.parse(5, "alpha")?,
                reps: f.parse(6, "reps")?,
                rejections: f.parse(7, "rejections")?,
                errors: f.parse(8, "errors")?,
            };
            if r.reps == 0 || r.rejections + r.errors > r.reps {
                return Err(f.err(format!("counts {} + {} exceed reps {}", r.rejections, r.errors, r.reps)));
            }
            records.push(r);
        }
        Ok(PowerTable { records })
    }

    pub fn load(path: &Path) -> HarnessResult<Self> {
        Self::read_csv(open(path)?, path)
    }

    pub fn save(&self, path: &Path) -> HarnessResult<()> {
        self.write_csv(create(path)?).map_err(|e| HarnessError::io(path, e))
    }
}

pub fn write_regions<W: Write>(w: W, regions: &[RejectionRegion]) -> std::io::Result<()> {
    let mut wr = writer(w, &REGION_HEADER)?;
    for r in regions {
        wr.write_record([
            r.test.name().to_string(),
            r.n.to_string(),
            r.alpha.to_string(),
            r.direction.as_str().to_string(),
            fmt_opt(r.lower),
            fmt_opt(r.upper),
            r.reps.to_string(),
            r.seed.to_string(),
        ])?;
    }
    finish(wr)
}

pub fn read_regions<R: Read>(r: R, path: &Path) -> HarnessResult<Vec<RejectionRegion>> {
    let mut out = Vec::new();
    for (line, rec) in rows(r, path, &REGION_HEADER)? {
        let f = Fields { path, line, rec: &rec };
        let test = f.test(0)?;
        let direction: Direction = f.str(3).parse().map_err(|e: crate::Error| f.err(e.to_string()))?;
        if direction != test.direction() {
            return Err(f.err(format!("{test} is a {} test, not {direction}", test.direction())));
        }
        let lower = f.opt_f64(4, "lower")?;
        let upper = f.opt_f64(5, "upper")?;
        let ok = match direction {
            Direction::UpperTail => lower.is_none() && upper.is_some(),
            Direction::LowerTail => lower.is_some() && upper.is_none(),
            Direction::TwoSided => lower.is_some() && upper.is_some(),
        };
        if !ok {
            return Err(f.err(format!("bounds do not match direction {direction}")));
        }
        out.push(RejectionRegion {
            test,
            direction,
            lower,
            upper,
            n: f.parse(1, "n")?,
            alpha: f.parse(2, "alpha")?,
            reps: f.parse(6, "reps")?,
            seed: f.parse(7, "seed")?,
        });
    }
    Ok(out)
}

impl RejectionRegion {
    pub fn load_all(path: &Path) -> HarnessResult<Vec<RejectionRegion>> {
        read_regions(open(path)?, path)
    }

    pub fn save_all(regions: &[RejectionRegion], path: &Path) -> HarnessResult<()> {
        write_regions(create(path)?, regions).map_err(|e| HarnessError::io(path, e))
    }
}

pub fn write_report<W: Write>(w: W, rows: &[GroupRow]) -> std::io::Result<()> {
    let mut wr = writer(w, &REPORT_HEADER)?;
    for r in rows {
        wr.write_record([
            r.grouping.as_str().to_string(),
            r.n.to_string(),
            r.alpha.to_string(),
            r.test.name().to_string(),
            fmt_float(r.avg_power),
            fmt_float(r.gap),
            r.rank.to_string(),
        ])?;
    }
    finish(wr)
}

pub fn write_gaps<W: Write>(w: W, rows: &[GapRow]) -> std::io::Result<()> {
    let mut wr = writer(w, &GAPS_HEADER)?;
    for r in rows {
        wr.write_record([
            r.grouping.as_str().to_string(),
            r.alpha.to_string(),
            r.test.name().to_string(),
            fmt_float(r.max_gap),
            fmt_float(r.avg_gap),
        ])?;
    }
    finish(wr)
}

pub fn write_curves<W: Write>(w: W, points: &[CurvePoint]) -> std::io::Result<()> {
    let mut wr = writer(w, &CURVES_HEADER)?;
    for p in points {
        wr.write_record([
            p.test.name().to_string(),
            p.n.to_string(),
            p.alpha.to_string(),
            p.case_index.to_string(),
            fmt_float(p.avg_power),
        ])?;
    }
    finish(wr)
}
