use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{HarnessError, HarnessResult};
use crate::battery::TestId;
use crate::engine::{decide, null_statistics, pvalue_from_null, region_from_values, RejectionRegion};
use crate::laplace::{estimate, Sample};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    None,
    /// r_t = ln(p_{t+1} / p_t).
    LogReturns,
}

impl FromStr for Transform {
    type Err = HarnessError;

    fn from_str(s: &str) -> HarnessResult<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(Transform::None),
            "log-returns" | "logreturns" => Ok(Transform::LogReturns),
            other => Err(HarnessError::Config(format!("unknown transform '{other}'; expected none or log-returns"))),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transform::None => "none",
            Transform::LogReturns => "log-returns",
        })
    }
}

/// How to read one numeric column from delimited text.
#[derive(Debug, Clone, PartialEq)]
pub struct DataOptions {
    /// 1-based.
    pub column: usize,
    pub delimiter: u8,
    pub has_header: bool,
    pub transform: Transform,
}

impl Default for DataOptions {
    fn default() -> Self {
        DataOptions { column: 1, delimiter: b',', has_header: false, transform: Transform::None }
    }
}

pub const MIN_ROWS: usize = 3;

/// Reads the selected column after applying the transform.
pub fn read_column(path: &Path, opts: &DataOptions) -> HarnessResult<Vec<f64>> {
    let file = std::fs::File::open(path).map_err(|e| HarnessError::io(path, e))?;
    parse_column(file, path, opts)
}

fn parse_column<R: std::io::Read>(r: R, path: &Path, opts: &DataOptions) -> HarnessResult<Vec<f64>> {
    if opts.column == 0 {
        return Err(HarnessError::Config("columns are numbered from 1".into()));
    }
    let mut rd =
        csv::ReaderBuilder::new().delimiter(opts.delimiter).has_headers(opts.has_header).flexible(true).trim(csv::Trim::All).from_reader(r);
    let parse_err = |line: u64, reason: String| HarnessError::Parse { path: path.to_path_buf(), line, reason };
    let mut rows: Vec<(u64, f64)> = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let field = rec.get(opts.column - 1).ok_or_else(|| parse_err(line, format!("no column {}", opts.column)))?;
        let v: f64 = field.parse().map_err(|_| parse_err(line, format!("'{field}' is not a number")))?;
        if !v.is_finite() {
            return Err(parse_err(line, format!("'{field}' is not finite")));
        }
        rows.push((line, v));
    }
    if rows.len() < MIN_ROWS {
        return Err(HarnessError::TooFewRows { path: path.to_path_buf(), min: MIN_ROWS, found: rows.len() });
    }
    match opts.transform {
        Transform::None => Ok(rows.into_iter().map(|r| r.1).collect()),
        Transform::LogReturns => {
            if let Some(&(line, value)) = rows.iter().find(|r| r.1 <= 0.0) {
                return Err(HarnessError::NonPositivePrice { path: path.to_path_buf(), line, value });
            }
            Ok(rows.windows(2).map(|w| (w[1].1 / w[0].1).ln()).collect())
        }
    }
}

/// Outcome of testing one data set.
#[derive(Debug, Clone, PartialEq)]
pub struct DataReport {
    pub path: PathBuf,
    pub test: TestId,
    pub transform: Transform,
    pub n: usize,
    pub mu_hat: f64,
    pub sigma_hat: f64,
    pub statistic: f64,
    pub region: RejectionRegion,
    pub reject: bool,
    pub p_value: f64,
}

impl fmt::Display for DataReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = |b: Option<f64>| b.map(|v| format!("{v:.6}")).unwrap_or_else(|| "-".into());
        writeln!(f, "file: {}", self.path.display())?;
        writeln!(f, "transform: {}", self.transform)?;
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "mu_hat: {:.6}", self.mu_hat)?;
        writeln!(f, "sigma_hat: {:.6}", self.sigma_hat)?;
        writeln!(f, "test: {} ({})", self.test, self.test.direction())?;
        writeln!(f, "statistic: {:.6}", self.statistic)?;
        writeln!(f, "alpha: {}", self.region.alpha)?;
        writeln!(f, "critical_lower: {}", bound(self.region.lower))?;
        writeln!(f, "critical_upper: {}", bound(self.region.upper))?;
        writeln!(f, "decision: {}", if self.reject { "reject Laplace" } else { "do not reject Laplace" })?;
        writeln!(f, "p_value: {:.6}", self.p_value)?;
        write!(f, "null_reps: {} (seed {})", self.region.reps, self.region.seed)
    }
}

/// Applies `test` to the data: statistic, decision at `alpha` and Monte Carlo
/// p-value, both from the same `reps` null samples of the data's size.
pub fn test_data(path: &Path, opts: &DataOptions, test: TestId, alpha: f64, reps: usize, seed: u64) -> HarnessResult<DataReport> {
    let values = read_column(path, opts)?;
    test_values(path, values, opts.transform, test, alpha, reps, seed)
}

pub(crate) fn test_values(
    path: &Path,
    values: Vec<f64>,
    transform: Transform,
    test: TestId,
    alpha: f64,
    reps: usize,
    seed: u64,
) -> HarnessResult<DataReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(HarnessError::Config(format!("alpha = {alpha} is outside (0, 1)")));
    }
    let sample = Sample::new(values).map_err(HarnessError::Data)?;
    let est = estimate(&sample).map_err(HarnessError::Data)?;
    let statistic = test.statistic(&sample).map_err(HarnessError::Data)?;
    let n = sample.len();
    let null = null_statistics(&[test], n, reps, seed)
        .map_err(|e| HarnessError::numerical(format!("null distribution of {test} at n = {n}"), e))?
        .pop()
        .expect("one test");
    let p_value = pvalue_from_null(test.direction(), &null, statistic);
    let region = region_from_values(test, null, n, alpha, seed);
    let reject = decide(&region, statistic);
    Ok(DataReport {
        path: path.to_path_buf(),
        test,
        transform,
        n,
        mu_hat: est.mu_ml,
        sigma_hat: est.sigma_ml,
        statistic,
        region,
        reject,
        p_value,
    })
}
