//! The full battery of 40 statistics: identifiers, rejection directions and
//! evaluation of any subset on one sample with shared intermediate results.

use std::fmt;
use std::str::FromStr;

use crate::ecdf::{ecdf_statistic, EcdfKind};
use crate::entropy::{entropy_from_standardized, EntropyKind};
use crate::error::{Error, Result};
use crate::laplace::{Sample, StandardizedSample};
use crate::moment::{dlo_from_standardized, moment_from_standardized, MomentKind};
use crate::other::{divergence, kde_at, other_from_standardized, KdeConfig, OtherKind};

/// Which tail(s) of the null distribution lead to rejection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    UpperTail,
    LowerTail,
    TwoSided,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::UpperTail => "upper",
            Direction::LowerTail => "lower",
            Direction::TwoSided => "two-sided",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Direction::UpperTail),
            "lower" => Ok(Direction::LowerTail),
            "two-sided" => Ok(Direction::TwoSided),
            other => Err(Error::UnknownTest(format!("direction '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Ecdf(EcdfKind),
    Moment(MomentKind),
    Entropy(EntropyKind),
    Other(OtherKind),
}

/// One of the 40 goodness-of-fit statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TestId(u8);

const TABLE: [(&str, Family, Direction); 40] = {
    use Direction::*;
    use Family::*;
    [
        ("AD", Ecdf(EcdfKind::AD), UpperTail),
        ("CvM", Ecdf(EcdfKind::CvM), UpperTail),
        ("KS", Ecdf(EcdfKind::KS), UpperTail),
        ("Ku", Ecdf(EcdfKind::Ku), UpperTail),
        ("Wa", Ecdf(EcdfKind::Wa), UpperTail),
        ("ZK", Ecdf(EcdfKind::ZK), UpperTail),
        ("ZA", Ecdf(EcdfKind::ZA), UpperTail),
        ("ZC", Ecdf(EcdfKind::ZC), UpperTail),
        ("DLO_X", Moment(MomentKind::DloX), UpperTail),
        ("DLO_Z", Moment(MomentKind::DloZ), TwoSided),
        ("Ge", Moment(MomentKind::Ge), UpperTail),
        ("GV", Moment(MomentKind::GV), TwoSided),
        ("HoK", Moment(MomentKind::HoK), TwoSided),
        ("HoU", Moment(MomentKind::HoU), TwoSided),
        ("HoV", Moment(MomentKind::HoV), TwoSided),
        ("HoW", Moment(MomentKind::HoW), TwoSided),
        ("LK", Moment(MomentKind::LK), UpperTail),
        ("A_rat_log", Entropy(EntropyKind::ARatLog), UpperTail),
        ("A_ent", Entropy(EntropyKind::AEnt), UpperTail),
        ("AP_v", Entropy(EntropyKind::APv), UpperTail),
        ("AP_e", Entropy(EntropyKind::APe), UpperTail),
        ("AP_y", Entropy(EntropyKind::APy), UpperTail),
        ("AP_a", Entropy(EntropyKind::APa), UpperTail),
        ("AP_z", Entropy(EntropyKind::APz), UpperTail),
        ("AP_y_mle", Entropy(EntropyKind::APyMle), UpperTail),
        ("CK_v", Entropy(EntropyKind::CKv), LowerTail),
        ("CK_c", Entropy(EntropyKind::CKc), LowerTail),
        ("CK_e", Entropy(EntropyKind::CKe), LowerTail),
        ("AB_KL", Other(OtherKind::AbKl), UpperTail),
        ("AB_He", Other(OtherKind::AbHe), UpperTail),
        ("AB_Je", Other(OtherKind::AbJe), UpperTail),
        ("AB_TV", Other(OtherKind::AbTv), UpperTail),
        ("AB_chi2", Other(OtherKind::AbChi2), UpperTail),
        ("AJ", Other(OtherKind::AJ), UpperTail),
        ("BS", Other(OtherKind::BS), UpperTail),
        ("KP", Other(OtherKind::KP), UpperTail),
        ("Me1_a2", Other(OtherKind::Me1A2), UpperTail),
        ("Me2_a05", Other(OtherKind::Me2A05), UpperTail),
        ("SD", Other(OtherKind::SD), TwoSided),
        ("SRstar", Other(OtherKind::SRstar), UpperTail),
    ]
};

impl TestId {
    pub const COUNT: usize = TABLE.len();

    pub fn all() -> impl ExactSizeIterator<Item = TestId> + Clone {
        (0..Self::COUNT as u8).map(TestId)
    }

    pub fn name(self) -> &'static str {
        TABLE[self.0 as usize].0
    }

    pub fn family(self) -> Family {
        TABLE[self.0 as usize].1
    }

    pub fn direction(self) -> Direction {
        TABLE[self.0 as usize].2
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Parses a comma-separated list; `all` selects every test.
    pub fn parse_list(s: &str) -> Result<Vec<TestId>> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(Self::all().collect());
        }
        let mut out: Vec<TestId> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let id: TestId = part.parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        if out.is_empty() {
            return Err(Error::UnknownTest(s.to_string()));
        }
        Ok(out)
    }

    pub fn statistic(self, sample: &Sample) -> Result<f64> {
        let st = crate::laplace::standardize(sample)?;
        Ok(evaluate_standardized(&st, &[self])?[0])
    }
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TABLE
            .iter()
            .position(|(name, _, _)| name.eq_ignore_ascii_case(s))
            .map(|i| TestId(i as u8))
            .ok_or_else(|| Error::UnknownTest(s.to_string()))
    }
}

/// Evaluates the given tests on an already standardized sample.
///
/// The kernel density estimate and the skewness/kurtosis components are
/// computed at most once. Fails on the first statistic that errors.
pub fn evaluate_standardized(s: &StandardizedSample, tests: &[TestId]) -> Result<Vec<f64>> {
    evaluate_each(s, tests).into_iter().collect()
}

/// Like [`evaluate_standardized`] but reports each test's outcome separately.
pub fn evaluate_each(s: &StandardizedSample, tests: &[TestId]) -> Vec<Result<f64>> {
    let mut kde: Option<Result<Vec<f64>>> = None;
    let mut dlo = None;
    tests
        .iter()
        .map(|t| match t.family() {
            Family::Ecdf(k) => ecdf_statistic(k, s),
            Family::Moment(MomentKind::DloX) => Ok(dlo.get_or_insert_with(|| dlo_from_standardized(s)).dlo_x()),
            Family::Moment(MomentKind::DloZ) => Ok(dlo.get_or_insert_with(|| dlo_from_standardized(s)).dlo_z()),
            Family::Moment(k) => moment_from_standardized(k, s),
            Family::Entropy(k) => entropy_from_standardized(k, s),
            Family::Other(k) if k.is_divergence() => {
                let g = kde.get_or_insert_with(|| kde_at(&s.sorted, KdeConfig::laplace_optimal(s.estimates.sigma_ml, s.n())));
                match g {
                    Ok(g) => divergence(k, s, g),
                    Err(e) => Err(e.clone()),
                }
            }
            Family::Other(k) => other_from_standardized(k, s),
        })
        .collect()
}

/// Standardizes raw values (any order) and evaluates the tests, reporting
/// each outcome separately. Errors in standardization apply to every test.
pub fn evaluate_raw(values: Vec<f64>, tests: &[TestId]) -> Vec<Result<f64>> {
    match Sample::new(values).and_then(|s| crate::laplace::standardize(&s)) {
        Ok(st) => evaluate_each(&st, tests),
        Err(e) => vec![Err(e); tests.len()],
    }
}
