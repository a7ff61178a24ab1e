//! Monte Carlo machinery: null sampling, calibration of rejection regions,
//! decisions, power estimation and p-values.

use rand::Rng;

use crate::alternatives::AlternativeSpec;
use crate::battery::{evaluate_raw, Direction, TestId};
use crate::error::{Error, Result};
use crate::laplace::Sample;
use crate::rng::{null_tag, stream};

pub const MIN_REPS: usize = 1000;

/// Laplace(0, 1) draws by the quantile transform.
pub fn sample_laplace<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Sample> {
    Sample::new(AlternativeSpec::Laplace.draws(n, rng))
}

/// Replicates are processed in blocks of this size to bound memory.
const BLOCK: u64 = 1 << 14;

/// Runs `f` for replicate indices in `range` and returns results in index order.
pub(crate) fn map_range<T, F>(range: std::ops::Range<u64>, f: &F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(f).collect()
    }
}

/// Calls `sink` with the results of consecutive blocks of replicates.
fn for_blocks<T, F>(reps: usize, f: F, mut sink: impl FnMut(u64, Vec<T>) -> Result<()>) -> Result<()>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    let mut start = 0;
    while start < reps as u64 {
        let end = (start + BLOCK).min(reps as u64);
        sink(start, map_range(start..end, &f))?;
        start = end;
    }
    Ok(())
}

/// Acceptance region of a calibrated test.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectionRegion {
    pub test: TestId,
    pub direction: Direction,
    /// Set for lower-tail and two-sided tests.
    pub lower: Option<f64>,
    /// Set for upper-tail and two-sided tests.
    pub upper: Option<f64>,
    pub n: usize,
    pub alpha: f64,
    pub reps: usize,
    pub seed: u64,
}

/// Statistic values of `tests` on `reps` null samples of size n; one vector per test.
///
/// All tests share the same samples. A failing statistic aborts with the
/// replicate index in the error context.
pub fn null_statistics(tests: &[TestId], n: usize, reps: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if reps < MIN_REPS {
        return Err(Error::InvalidParams { model: "calibration", reason: format!("reps must be at least {MIN_REPS}, got {reps}") });
    }
    let tag = null_tag(n);
    let mut out = vec![Vec::with_capacity(reps); tests.len()];
    for_blocks(
        reps,
        |r| {
            let mut rng = stream(seed, &tag, r);
            evaluate_raw(AlternativeSpec::Laplace.draws(n, &mut rng), tests)
        },
        |start, rows| {
            for (r, row) in (start..).zip(rows) {
                for ((col, v), t) in out.iter_mut().zip(row).zip(tests) {
                    let v = v.map_err(|e| Error::InReplicate { test: t.name(), replicate: r, source: Box::new(e) })?;
                    col.push(v);
                }
            }
            Ok(())
        },
    )?;
    Ok(out)
}

/// Order statistic ⌈q·reps⌉ (1-based) of already sorted values.
pub fn empirical_quantile(sorted: &[f64], q: f64) -> f64 {
    let reps = sorted.len();
    // the small offset keeps exact products such as 0.95 × 1000 from rounding up
    let k = ((q * reps as f64) - 1e-9).ceil().clamp(1.0, reps as f64) as usize;
    sorted[k - 1]
}

pub fn region_from_values(test: TestId, mut values: Vec<f64>, n: usize, alpha: f64, seed: u64) -> RejectionRegion {
    values.sort_by(f64::total_cmp);
    region_from_sorted(test, &values, n, alpha, seed)
}

pub fn region_from_sorted(test: TestId, sorted: &[f64], n: usize, alpha: f64, seed: u64) -> RejectionRegion {
    let direction = test.direction();
    let (lower, upper) = match direction {
        Direction::UpperTail => (None, Some(empirical_quantile(sorted, 1.0 - alpha))),
        Direction::LowerTail => (Some(empirical_quantile(sorted, alpha)), None),
        Direction::TwoSided => (Some(empirical_quantile(sorted, alpha / 2.0)), Some(empirical_quantile(sorted, 1.0 - alpha / 2.0))),
    };
    RejectionRegion { test, direction, lower, upper, n, alpha, reps: sorted.len(), seed }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParams { model: "calibration", reason: format!("alpha must lie in (0, 1), got {alpha}") });
    }
    Ok(())
}

pub fn calibrate(test: TestId, n: usize, alpha: f64, reps: usize, seed: u64) -> Result<RejectionRegion> {
    check_alpha(alpha)?;
    let mut stats = null_statistics(&[test], n, reps, seed)?;
    Ok(region_from_values(test, stats.pop().expect("one test"), n, alpha, seed))
}

/// Calibrates every (test, alpha) pair on one shared set of null samples.
/// Regions are returned test-major: all alphas of `tests[0]`, then `tests[1]`, …
pub fn calibrate_many(tests: &[TestId], n: usize, alphas: &[f64], reps: usize, seed: u64) -> Result<Vec<RejectionRegion>> {
    for &a in alphas {
        check_alpha(a)?;
    }
    let stats = null_statistics(tests, n, reps, seed)?;
    let mut out = Vec::with_capacity(tests.len() * alphas.len());
    for (&t, mut v) in tests.iter().zip(stats) {
        v.sort_by(f64::total_cmp);
        for &a in alphas {
            out.push(region_from_sorted(t, &v, n, a, seed));
        }
    }
    Ok(out)
}

pub fn decide(region: &RejectionRegion, statistic: f64) -> bool {
    match region.direction {
        Direction::UpperTail => statistic > region.upper.expect("upper bound"),
        Direction::LowerTail => statistic < region.lower.expect("lower bound"),
        Direction::TwoSided => statistic < region.lower.expect("lower bound") || statistic > region.upper.expect("upper bound"),
    }
}

/// Rejection count for one (test, region) over a batch of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerRecord {
    pub test: TestId,
    pub submodel: String,
    pub case_index: usize,
    pub param_value: f64,
    pub n: usize,
    pub alpha: f64,
    pub reps: usize,
    pub rejections: usize,
    /// Replicates on which the statistic could not be computed.
    pub errors: usize,
}

impl PowerRecord {
    /// rejections / reps.
    pub fn power(&self) -> f64 {
        self.rejections as f64 / self.reps as f64
    }
}

/// Where the samples of a power batch come from.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerScenario {
    pub spec: AlternativeSpec,
    pub submodel: String,
    pub case_index: usize,
    pub param_value: f64,
    pub n: usize,
    /// Stream tag; replicates of one scenario share samples across tests.
    pub tag: String,
}

impl PowerScenario {
    pub fn single(spec: AlternativeSpec, n: usize) -> Self {
        let name = spec.to_string();
        PowerScenario {
            param_value: spec.params().last().copied().unwrap_or(f64::NAN),
            tag: format!("power/{name}/{n}"),
            submodel: name,
            case_index: 0,
            spec,
            n,
        }
    }
}

/// Estimates power for every region on shared alternative samples.
///
/// Each region must be calibrated at the scenario's n; one record is
/// returned per region, in input order.
pub fn estimate_power_many(regions: &[RejectionRegion], scenario: &PowerScenario, reps: usize, seed: u64) -> Result<Vec<PowerRecord>> {
    scenario.spec.validate()?;
    if let Some(r) = regions.iter().find(|r| r.n != scenario.n) {
        return Err(Error::LengthMismatch { expected: scenario.n, got: r.n });
    }
    let mut tests: Vec<TestId> = Vec::new();
    for r in regions {
        if !tests.contains(&r.test) {
            tests.push(r.test);
        }
    }
    let slot: Vec<usize> = regions.iter().map(|r| tests.iter().position(|&t| t == r.test).unwrap()).collect();
    let n = scenario.n;
    // per replicate: for each region, 0 = accept, 1 = reject, 2 = error
    let mut rej = vec![0usize; regions.len()];
    let mut err = vec![0usize; regions.len()];
    for_blocks(
        reps,
        |r| {
            let mut rng = stream(seed, &scenario.tag, r);
            let stats = evaluate_raw(scenario.spec.draws(n, &mut rng), &tests);
            // per region: 0 = accept, 1 = reject, 2 = error
            regions
                .iter()
                .zip(&slot)
                .map(|(reg, &s)| match &stats[s] {
                    Ok(v) if v.is_finite() => decide(reg, *v) as u8,
                    _ => 2,
                })
                .collect::<Vec<u8>>()
        },
        |_, rows| {
            for row in &rows {
                for (i, &o) in row.iter().enumerate() {
                    match o {
                        1 => rej[i] += 1,
                        2 => err[i] += 1,
                        _ => {}
                    }
                }
            }
            Ok(())
        },
    )?;
    Ok(regions
        .iter()
        .enumerate()
        .map(|(i, reg)| PowerRecord {
            test: reg.test,
            submodel: scenario.submodel.clone(),
            case_index: scenario.case_index,
            param_value: scenario.param_value,
            n,
            alpha: reg.alpha,
            reps,
            rejections: rej[i],
            errors: err[i],
        })
        .collect())
}

pub fn estimate_power(region: &RejectionRegion, spec: AlternativeSpec, reps: usize, seed: u64) -> Result<PowerRecord> {
    let scenario = PowerScenario::single(spec, region.n);
    Ok(estimate_power_many(std::slice::from_ref(region), &scenario, reps, seed)?.remove(0))
}

/// Monte Carlo p-value with the +1 correction, from `reps` null samples.
pub fn mc_pvalue(test: TestId, n: usize, statistic: f64, reps: usize, seed: u64) -> Result<f64> {
    if !statistic.is_finite() {
        return Err(Error::NonFinite { index: 0 });
    }
    let null = null_statistics(&[test], n, reps, seed)?.pop().expect("one test");
    Ok(pvalue_from_null(test.direction(), &null, statistic))
}

pub fn pvalue_from_null(direction: Direction, null: &[f64], statistic: f64) -> f64 {
    let reps = null.len() as f64;
    let upper = (1.0 + null.iter().filter(|&&v| v >= statistic).count() as f64) / (reps + 1.0);
    let lower = (1.0 + null.iter().filter(|&&v| v <= statistic).count() as f64) / (reps + 1.0);
    match direction {
        Direction::UpperTail => upper,
        Direction::LowerTail => lower,
        Direction::TwoSided => (2.0 * upper.min(lower)).min(1.0),
    }
}
