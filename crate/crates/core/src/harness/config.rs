use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{HarnessError, HarnessResult};
use crate::alternatives::{SubmodelId, STUDY_NS};
use crate::battery::TestId;
use crate::engine::MIN_REPS;

/// Settings of a power study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub ns: Vec<usize>,
    pub alphas: Vec<f64>,
    pub calib_reps: usize,
    pub power_reps: usize,
    /// Required; there is no clock-based default.
    pub master_seed: Option<u64>,
    pub tests: Vec<TestId>,
    pub submodels: Vec<SubmodelId>,
    pub out_dir: PathBuf,
}

impl Default for StudyConfig {
    fn default() -> Self {
        StudyConfig {
            ns: STUDY_NS.to_vec(),
            alphas: vec![0.01, 0.05, 0.10],
            calib_reps: 1_000_000,
            power_reps: 100_000,
            master_seed: None,
            tests: TestId::all().collect(),
            submodels: SubmodelId::ALL.to_vec(),
            out_dir: PathBuf::from("study-out"),
        }
    }
}

pub const KEYS: [&str; 8] = ["ns", "alphas", "calib_reps", "power_reps", "seed", "tests", "submodels", "out_dir"];

fn list<T>(value: &str, key: &str, f: impl Fn(&str) -> Option<T>) -> HarnessResult<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| f(p).ok_or_else(|| HarnessError::Config(format!("{key}: cannot parse '{p}'"))))
        .collect()
}

fn number<T: std::str::FromStr>(value: &str, key: &str) -> HarnessResult<T> {
    value.trim().replace('_', "").parse().map_err(|_| HarnessError::Config(format!("{key}: cannot parse '{value}'")))
}

impl StudyConfig {
    /// Sets one key; used for both file entries and command-line overrides.
    pub fn set(&mut self, key: &str, value: &str) -> HarnessResult<()> {
        match key {
            "ns" => self.ns = list(value, key, |p| p.parse().ok())?,
            "alphas" => self.alphas = list(value, key, |p| p.parse().ok())?,
            "calib_reps" => self.calib_reps = number(value, key)?,
            "power_reps" => self.power_reps = number(value, key)?,
            "seed" => self.master_seed = Some(number(value, key)?),
            "tests" => self.tests = TestId::parse_list(value).map_err(|e| HarnessError::Config(e.to_string()))?,
            "submodels" => self.submodels = SubmodelId::parse_list(value).map_err(|e| HarnessError::Config(e.to_string()))?,
            "out_dir" => self.out_dir = PathBuf::from(value.trim()),
            other => return Err(HarnessError::Config(format!("unknown key '{other}'; expected one of {}", KEYS.join(", ")))),
        }
        Ok(())
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> HarnessResult<Self> {
        let mut cfg = StudyConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| HarnessError::Config(format!("line {}: expected 'key = value'", i + 1)))?;
            cfg.set(k.trim(), v.trim()).map_err(|e| match e {
                HarnessError::Config(m) => HarnessError::Config(format!("line {}: {m}", i + 1)),
                e => e,
            })?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> HarnessResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> HarnessResult<()> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.master_seed.is_none() {
            return bad("a seed is required".into());
        }
        if self.ns.is_empty() || self.alphas.is_empty() || self.tests.is_empty() || self.submodels.is_empty() {
            return bad("ns, alphas, tests and submodels must be nonempty".into());
        }
        if let Some(n) = self.ns.iter().find(|n| !STUDY_NS.contains(n)) {
            return bad(format!("n = {n} has no submodel grid; choose from {STUDY_NS:?}"));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return bad(format!("alpha = {a} is outside (0, 1)"));
        }
        if self.calib_reps < MIN_REPS || self.power_reps < MIN_REPS {
            return bad(format!("calib_reps and power_reps must be at least {MIN_REPS}"));
        }
        Ok(())
    }

    /// The configuration in the same `key = value` form it is read from.
    pub fn to_text(&self) -> String {
        let join = |v: Vec<String>| v.join(",");
        let mut s = String::new();
        let _ = writeln!(s, "ns = {}", join(self.ns.iter().map(|v| v.to_string()).collect()));
        let _ = writeln!(s, "alphas = {}", join(self.alphas.iter().map(|v| v.to_string()).collect()));
        let _ = writeln!(s, "calib_reps = {}", self.calib_reps);
        let _ = writeln!(s, "power_reps = {}", self.power_reps);
        if let Some(seed) = self.master_seed {
            let _ = writeln!(s, "seed = {seed}");
        }
        let _ = writeln!(s, "tests = {}", join(self.tests.iter().map(|t| t.name().to_string()).collect()));
        let _ = writeln!(s, "submodels = {}", join(self.submodels.iter().map(|m| m.name().to_string()).collect()));
        let _ = writeln!(s, "out_dir = {}", self.out_dir.display());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_override() {
        let mut c = StudyConfig::parse("# reduced\nns = 20, 50\nalphas=0.05\ncalib_reps = 10_000\nseed = 7\ntests = AD,DLO_X\n").unwrap();
        assert_eq!(c.ns, [20, 50]);
        assert_eq!(c.alphas, [0.05]);
        assert_eq!(c.calib_reps, 10_000);
        assert_eq!(c.master_seed, Some(7));
        assert_eq!(c.tests.len(), 2);
        assert_eq!(c.submodels.len(), 20);
        c.set("seed", "9").unwrap();
        assert_eq!(c.master_seed, Some(9));
        c.validate().unwrap();
        assert_eq!(StudyConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(StudyConfig::parse("ns 20").is_err());
        assert!(StudyConfig::parse("colour = red").is_err());
        assert!(StudyConfig::parse("tests = XX").is_err());
        assert!(StudyConfig::default().validate().is_err());
        let bad = |t: &str| StudyConfig::parse(t).unwrap().validate().is_err();
        assert!(bad("seed = 1\nns = 30"));
        assert!(bad("seed = 1\nalphas = 1.5"));
        assert!(bad("seed = 1\npower_reps = 10"));
        assert!(!bad("seed = 1"));
    }
}
