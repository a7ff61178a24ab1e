use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use super::config::StudyConfig;
use super::table::PowerTable;
use super::{HarnessError, HarnessResult};
use crate::alternatives::{submodel_grid, SubmodelId};
use crate::battery::TestId;
use crate::engine::{calibrate_many, estimate_power_many, PowerRecord, PowerScenario, RejectionRegion};
use crate::rng::{power_tag, GENERATOR};

/// Calibrates every test at every (n, α); regions are ordered by n, then test, then α.
pub fn calibrate_table(tests: &[TestId], ns: &[usize], alphas: &[f64], reps: usize, seed: u64) -> HarnessResult<Vec<RejectionRegion>> {
    let mut out = Vec::new();
    for &n in ns {
        let regions =
            calibrate_many(tests, n, alphas, reps, seed).map_err(|e| HarnessError::numerical(format!("calibration at n = {n}"), e))?;
        out.extend(regions);
    }
    Ok(out)
}

/// Power of every region against every case of each submodel grid at the
/// region's n. Records are ordered by n, α, test, submodel and case.
pub fn power_for_regions(
    regions: &[RejectionRegion],
    submodels: &[SubmodelId],
    reps: usize,
    seed: u64,
    log: &mut dyn FnMut(String),
) -> HarnessResult<PowerTable> {
    let mut ns: Vec<usize> = regions.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let mut records: Vec<PowerRecord> = Vec::new();
    for n in ns {
        let at_n: Vec<RejectionRegion> = regions.iter().filter(|r| r.n == n).cloned().collect();
        for &m in submodels {
            let grid = submodel_grid(m, n).map_err(|e| HarnessError::numerical(format!("{m} at n = {n}"), e))?;
            for case in &grid.cases {
                let scenario = PowerScenario {
                    spec: case.spec,
                    submodel: m.name().to_string(),
                    case_index: case.index,
                    param_value: case.param,
                    n,
                    tag: power_tag(m.name(), case.index, n),
                };
                let recs = estimate_power_many(&at_n, &scenario, reps, seed)
                    .map_err(|e| HarnessError::numerical(format!("{m} case {} at n = {n}", case.index), e))?;
                records.extend(recs);
            }
            log(format!("power: n = {n}, {m} done"));
        }
    }
    records.sort_by(|a, b| {
        let sub = |r: &PowerRecord| r.submodel.parse::<SubmodelId>().map(SubmodelId::index).unwrap_or(usize::MAX);
        (a.n, a.alpha.to_bits(), a.test, sub(a), a.case_index).cmp(&(b.n, b.alpha.to_bits(), b.test, sub(b), b.case_index))
    });
    Ok(PowerTable { records })
}

/// Where a study wrote its results.
#[derive(Debug, Clone)]
pub struct StudyOutput {
    pub table: PowerTable,
    pub regions: Vec<RejectionRegion>,
    pub power_csv: PathBuf,
    pub critical_csv: PathBuf,
    pub metadata: PathBuf,
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Calibrates, estimates power for every selected submodel case and writes
/// `power.csv`, `critical_values.csv` and `metadata.txt` into the output directory.
pub fn run_study(config: &StudyConfig, log: &mut dyn FnMut(String)) -> HarnessResult<StudyOutput> {
    config.validate()?;
    let seed = config.master_seed.expect("validated");
    let started = unix_now();
    std::fs::create_dir_all(&config.out_dir).map_err(|e| HarnessError::io(&config.out_dir, e))?;

    let mut regions = Vec::new();
    for &n in &config.ns {
        regions.extend(calibrate_table(&config.tests, &[n], &config.alphas, config.calib_reps, seed)?);
        log(format!("calibration: n = {n} done"));
    }
    let critical_csv = config.out_dir.join("critical_values.csv");
    RejectionRegion::save_all(&regions, &critical_csv)?;

    let table = power_for_regions(&regions, &config.submodels, config.power_reps, seed, log)?;
    let power_csv = config.out_dir.join("power.csv");
    table.save(&power_csv)?;

    let mut meta = String::new();
    let _ = writeln!(meta, "version = {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(meta, "generator = {GENERATOR}");
    meta.push_str(&config.to_text());
    let _ = writeln!(meta, "power_records = {}", table.records.len());
    let _ = writeln!(meta, "started_unix = {started}");
    let _ = writeln!(meta, "finished_unix = {}", unix_now());
    let metadata = config.out_dir.join("metadata.txt");
    std::fs::write(&metadata, meta).map_err(|e| HarnessError::io(&metadata, e))?;

    Ok(StudyOutput { table, regions, power_csv, critical_csv, metadata })
}
