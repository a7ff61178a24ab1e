use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::table::PowerTable;
use super::{HarnessError, HarnessResult};
use crate::alternatives::{Group, SubmodelId};
use crate::battery::TestId;

/// A set of submodels whose powers are averaged together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grouping {
    All,
    Symmetric,
    SymmetricHeavy,
    SymmetricLight,
    Asymmetric,
}

impl Grouping {
    pub const ALL: [Grouping; 5] =
        [Grouping::All, Grouping::Symmetric, Grouping::SymmetricHeavy, Grouping::SymmetricLight, Grouping::Asymmetric];

    pub fn as_str(self) -> &'static str {
        match self {
            Grouping::All => "all",
            Grouping::Symmetric => "symmetric",
            Grouping::SymmetricHeavy => "symmetric_heavy",
            Grouping::SymmetricLight => "symmetric_light",
            Grouping::Asymmetric => "asymmetric",
        }
    }

    pub fn contains(self, m: SubmodelId) -> bool {
        match self {
            Grouping::All => true,
            Grouping::Symmetric => m.group() != Group::Asymmetric,
            Grouping::SymmetricHeavy => m.group() == Group::SymmetricHeavy,
            Grouping::SymmetricLight => m.group() == Group::SymmetricLight,
            Grouping::Asymmetric => m.group() == Group::Asymmetric,
        }
    }
}

impl fmt::Display for Grouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Grouping {
    type Err = HarnessError;

    fn from_str(s: &str) -> HarnessResult<Self> {
        Grouping::ALL
            .into_iter()
            .find(|g| g.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::Config(format!("unknown grouping '{s}'")))
    }
}

/// Average % power of one test over a grouping at one (n, α).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRow {
    pub grouping: Grouping,
    pub n: usize,
    pub alpha: f64,
    pub test: TestId,
    pub avg_power: f64,
    /// Best average power at (n, α) minus this test's.
    pub gap: f64,
    /// 1 for the highest average power; ties go to the earlier test.
    pub rank: usize,
}

/// Maximum and mean of a test's gaps over the sample sizes, at one α.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub grouping: Grouping,
    pub alpha: f64,
    pub test: TestId,
    pub max_gap: f64,
    pub avg_gap: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GroupSummary {
    pub rows: Vec<GroupRow>,
    pub gaps: Vec<GapRow>,
}

/// One point of a power curve: % power at case j averaged over submodels.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub test: TestId,
    pub n: usize,
    pub alpha: f64,
    pub case_index: usize,
    pub avg_power: f64,
}

/// (n, α bits) keys order as numbers since α > 0.
type Level = (usize, u64);

/// Pooled % power per (level, test, submodel, case); repeated records are
/// merged by summing counts.
fn pooled(table: &PowerTable) -> BTreeMap<(Level, TestId, String, usize), f64> {
    let mut counts: BTreeMap<(Level, TestId, String, usize), (usize, usize)> = BTreeMap::new();
    for r in &table.records {
        let e = counts.entry(((r.n, r.alpha.to_bits()), r.test, r.submodel.clone(), r.case_index)).or_default();
        e.0 += r.rejections;
        e.1 += r.reps;
    }
    counts.into_iter().map(|(k, (rej, reps))| (k, 100.0 * rej as f64 / reps as f64)).collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn level_str((n, a): Level) -> String {
    format!("n = {n}, alpha = {}", f64::from_bits(a))
}

/// Group averages, gaps and ranks for every (n, α) in the table.
///
/// Each submodel is first averaged over its cases; the grouping average
/// weights submodels equally. Every test in the table must cover every
/// submodel of the grouping that appears at that (n, α). Records whose
/// submodel is not one of the study grids are ignored.
pub fn aggregate(table: &PowerTable, grouping: Grouping) -> HarnessResult<GroupSummary> {
    let cells = pooled(table);
    // (level, test, submodel) -> case powers
    let mut by_sub: BTreeMap<(Level, TestId, SubmodelId), Vec<f64>> = BTreeMap::new();
    let mut tests: BTreeMap<Level, BTreeSet<TestId>> = BTreeMap::new();
    let mut subs: BTreeMap<Level, BTreeSet<SubmodelId>> = BTreeMap::new();
    for ((level, test, sub, _), p) in &cells {
        let Ok(m) = sub.parse::<SubmodelId>() else { continue };
        tests.entry(*level).or_default().insert(*test);
        if grouping.contains(m) {
            subs.entry(*level).or_default().insert(m);
            by_sub.entry((*level, *test, m)).or_default().push(*p);
        }
    }

    let mut rows = Vec::new();
    for (level, subs) in &subs {
        let mut avgs = Vec::new();
        for &t in &tests[level] {
            let mut sub_means = Vec::with_capacity(subs.len());
            for &m in subs {
                let cases = by_sub
                    .get(&(*level, t, m))
                    .ok_or_else(|| HarnessError::IncompleteTable(format!("no power for {t} on {m} at {}", level_str(*level))))?;
                sub_means.push(mean(cases));
            }
            avgs.push((t, mean(&sub_means)));
        }
        let best = avgs.iter().map(|a| a.1).fold(f64::NEG_INFINITY, f64::max);
        let mut order: Vec<usize> = (0..avgs.len()).collect();
        order.sort_by(|&a, &b| avgs[b].1.total_cmp(&avgs[a].1).then(avgs[a].0.cmp(&avgs[b].0)));
        for (rank, &i) in order.iter().enumerate() {
            let (test, avg_power) = avgs[i];
            rows.push(GroupRow {
                grouping,
                n: level.0,
                alpha: f64::from_bits(level.1),
                test,
                avg_power,
                gap: best - avg_power,
                rank: rank + 1,
            });
        }
    }

    let mut per_test: BTreeMap<(u64, TestId), Vec<f64>> = BTreeMap::new();
    for r in &rows {
        per_test.entry((r.alpha.to_bits(), r.test)).or_default().push(r.gap);
    }
    let gaps = per_test
        .into_iter()
        .map(|((a, test), g)| GapRow {
            grouping,
            alpha: f64::from_bits(a),
            test,
            max_gap: g.iter().copied().fold(0.0, f64::max),
            avg_gap: mean(&g),
        })
        .collect();
    Ok(GroupSummary { rows, gaps })
}

/// For each (n, α), test and case index j, the % power at case j averaged
/// over all submodels. Every test must cover the same (submodel, case) cells.
pub fn power_curves(table: &PowerTable) -> HarnessResult<Vec<CurvePoint>> {
    let cells = pooled(table);
    let mut cover: BTreeMap<(Level, TestId), BTreeSet<(String, usize)>> = BTreeMap::new();
    let mut by_case: BTreeMap<(Level, TestId, usize), Vec<f64>> = BTreeMap::new();
    for ((level, test, sub, j), p) in &cells {
        cover.entry((*level, *test)).or_default().insert((sub.clone(), *j));
        by_case.entry((*level, *test, *j)).or_default().push(*p);
    }
    let mut reference: BTreeMap<Level, (TestId, &BTreeSet<(String, usize)>)> = BTreeMap::new();
    for ((level, test), set) in &cover {
        let (t0, s0) = *reference.entry(*level).or_insert((*test, set));
        if let Some((sub, j)) = s0.symmetric_difference(set).next() {
            let missing = if set.contains(&(sub.clone(), *j)) { t0 } else { *test };
            return Err(HarnessError::IncompleteTable(format!("no power for {missing} on {sub} case {j} at {}", level_str(*level))));
        }
    }
    Ok(by_case
        .into_iter()
        .map(|((level, test, j), v)| CurvePoint { test, n: level.0, alpha: f64::from_bits(level.1), case_index: j, avg_power: mean(&v) })
        .collect())
}
