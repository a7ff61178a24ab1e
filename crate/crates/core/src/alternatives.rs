//! Samplers for the alternative models and the submodel parameter grids of
//! the power study.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, InverseGaussian, LogNormal, StandardNormal, StudentT, Weibull};

use crate::error::{Error, Result};
use crate::laplace::{laplace_quantile, Sample};

/// One alternative model with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlternativeSpec {
    /// Asymmetric Laplace with density (k + 1/k)⁻¹ exp(−k^{sgn x}|x|).
    ALp {
        k: f64,
    },
    Gamma {
        k: f64,
    },
    /// Generalized error distribution with density k/(2Γ(1/k)) exp(−|x|^k).
    GED {
        k: f64,
    },
    /// ω·Laplace(k₁, k₂) + (1 − ω)·Laplace(0, 1).
    MixL {
        omega: f64,
        k1: f64,
        k2: f64,
    },
    LogNormal {
        k: f64,
    },
    /// Normal inverse Gaussian with α = k₁, β = k₂, δ = 1, μ = 0.
    NIG {
        k1: f64,
        k2: f64,
    },
    /// ω·N(k₁, k₂²) + (1 − ω)·N(0, 1).
    MixN {
        omega: f64,
        k1: f64,
        k2: f64,
    },
    /// Density 2φ(x)Φ(kx).
    SkewN {
        k: f64,
    },
    StudentT {
        k: f64,
    },
    /// Quantile (U^k − (1 − U)^k)/k, logistic at k = 0.
    Tukey {
        k: f64,
    },
    Weibull {
        k: f64,
    },
    /// The null model itself, Laplace(0, 1).
    Laplace,
}

impl AlternativeSpec {
    pub fn model_name(&self) -> &'static str {
        match self {
            AlternativeSpec::ALp { .. } => "ALp",
            AlternativeSpec::Gamma { .. } => "G",
            AlternativeSpec::GED { .. } => "GED",
            AlternativeSpec::MixL { .. } => "MixL",
            AlternativeSpec::LogNormal { .. } => "LN",
            AlternativeSpec::NIG { .. } => "NIG",
            AlternativeSpec::MixN { .. } => "MixN",
            AlternativeSpec::SkewN { .. } => "SkewN",
            AlternativeSpec::StudentT { .. } => "t",
            AlternativeSpec::Tukey { .. } => "Tu",
            AlternativeSpec::Weibull { .. } => "W",
            AlternativeSpec::Laplace => "Laplace",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            AlternativeSpec::ALp { k }
            | AlternativeSpec::Gamma { k }
            | AlternativeSpec::GED { k }
            | AlternativeSpec::LogNormal { k }
            | AlternativeSpec::SkewN { k }
            | AlternativeSpec::StudentT { k }
            | AlternativeSpec::Tukey { k }
            | AlternativeSpec::Weibull { k } => vec![k],
            AlternativeSpec::MixL { omega, k1, k2 } | AlternativeSpec::MixN { omega, k1, k2 } => vec![omega, k1, k2],
            AlternativeSpec::NIG { k1, k2 } => vec![k1, k2],
            AlternativeSpec::Laplace => vec![],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidParams { model: self.model_name(), reason });
        if self.params().iter().any(|p| !p.is_finite()) {
            return bad(format!("non-finite parameter in {:?}", self.params()));
        }
        match *self {
            AlternativeSpec::ALp { k }
            | AlternativeSpec::Gamma { k }
            | AlternativeSpec::GED { k }
            | AlternativeSpec::LogNormal { k }
            | AlternativeSpec::StudentT { k }
            | AlternativeSpec::Weibull { k }
                if k <= 0.0 =>
            {
                bad(format!("k must be positive, got {k}"))
            }
            AlternativeSpec::MixL { omega, k2, .. } | AlternativeSpec::MixN { omega, k2, .. }
                if !(0.0..=1.0).contains(&omega) || k2 <= 0.0 =>
            {
                bad(format!("need 0 ≤ ω ≤ 1 and k₂ > 0, got ω = {omega}, k₂ = {k2}"))
            }
            AlternativeSpec::NIG { k1, k2 } if k1 <= k2.abs() => bad(format!("need k₁ > |k₂|, got k₁ = {k1}, k₂ = {k2}")),
            _ => Ok(()),
        }
    }

    /// A single draw. Parameters must already be valid.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            AlternativeSpec::Laplace => laplace_quantile(open_unit(rng)),
            AlternativeSpec::ALp { k } => {
                let e: f64 = Exp1.sample(rng);
                if rng.random::<f64>() * (1.0 + k * k) < 1.0 {
                    e / k
                } else {
                    -e * k
                }
            }
            AlternativeSpec::Gamma { k } => Gamma::new(k, 1.0).expect("validated").sample(rng),
            AlternativeSpec::GED { k } => {
                let g: f64 = Gamma::new(1.0 / k, 1.0).expect("validated").sample(rng);
                let v = g.powf(1.0 / k);
                if rng.random::<bool>() {
                    v
                } else {
                    -v
                }
            }
            AlternativeSpec::MixL { omega, k1, k2 } => {
                let z = laplace_quantile(open_unit(rng));
                if rng.random::<f64>() < omega {
                    k1 + k2 * z
                } else {
                    z
                }
            }
            AlternativeSpec::LogNormal { k } => LogNormal::new(0.0, k).expect("validated").sample(rng),
            AlternativeSpec::NIG { k1, k2 } => {
                let gamma = (k1 * k1 - k2 * k2).sqrt();
                let v: f64 = InverseGaussian::new(1.0 / gamma, 1.0).expect("validated").sample(rng);
                let z: f64 = StandardNormal.sample(rng);
                k2 * v + v.sqrt() * z
            }
            AlternativeSpec::MixN { omega, k1, k2 } => {
                let z: f64 = StandardNormal.sample(rng);
                if rng.random::<f64>() < omega {
                    k1 + k2 * z
                } else {
                    z
                }
            }
            AlternativeSpec::SkewN { k } => {
                let delta = k / (1.0 + k * k).sqrt();
                let z1: f64 = StandardNormal.sample(rng);
                let z2: f64 = StandardNormal.sample(rng);
                delta * z1.abs() + (1.0 - delta * delta).sqrt() * z2
            }
            AlternativeSpec::StudentT { k } => StudentT::new(k).expect("validated").sample(rng),
            AlternativeSpec::Tukey { k } => {
                let u = open_unit(rng);
                if k == 0.0 {
                    (u / (1.0 - u)).ln()
                } else {
                    (u.powf(k) - (1.0 - u).powf(k)) / k
                }
            }
            AlternativeSpec::Weibull { k } => Weibull::new(1.0, k).expect("validated").sample(rng),
        }
    }

    pub fn draws<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        let mut v = Vec::with_capacity(n);
        self.fill(rng, n, &mut v);
        v
    }

    /// Fills `out` with draws, reusing its allocation.
    pub fn fill<R: Rng + ?Sized>(&self, rng: &mut R, n: usize, out: &mut Vec<f64>) {
        out.clear();
        out.extend((0..n).map(|_| self.draw(rng)));
    }
}

impl fmt::Display for AlternativeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params().iter().map(|v| format!("{v}")).collect();
        write!(f, "{}({})", self.model_name(), p.join(","))
    }
}

/// Uniform draw in the open interval (0, 1).
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

pub fn sample_alternative<R: Rng + ?Sized>(spec: &AlternativeSpec, n: usize, rng: &mut R) -> Result<Sample> {
    spec.validate()?;
    let mut v = Vec::with_capacity(n);
    spec.fill(rng, n, &mut v);
    Sample::new(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    SymmetricHeavy,
    SymmetricLight,
    Asymmetric,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::SymmetricHeavy => "SymmetricHeavy",
            Group::SymmetricLight => "SymmetricLight",
            Group::Asymmetric => "Asymmetric",
        }
    }
}

/// One of the twenty submodels of the power study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubmodelId {
    GedHeavy,
    THeavy,
    MixLHeavy,
    MixNHeavy,
    NigHeavy,
    TukeyHeavy,
    GedLight,
    TLight,
    MixLLight,
    MixNLight,
    NigLight,
    TukeyLight,
    ALp,
    SkewN,
    MixLAsym,
    MixNAsym,
    NigAsym,
    LogNormal,
    Gamma,
    Weibull,
}

pub const STUDY_NS: [usize; 4] = [20, 50, 100, 200];

/// (bold endpoint, far endpoint) per sample size 20, 50, 100, 200.
type Endpoints = [(f64, f64); 4];

const fn same(bold: f64, far: f64) -> Endpoints {
    [(bold, far); 4]
}

const fn far_by_n(bold: f64, far: [f64; 4]) -> Endpoints {
    [(bold, far[0]), (bold, far[1]), (bold, far[2]), (bold, far[3])]
}

const fn bold_by_n(bold: [f64; 4], far: f64) -> Endpoints {
    [(bold[0], far), (bold[1], far), (bold[2], far), (bold[3], far)]
}

impl SubmodelId {
    pub const ALL: [SubmodelId; 20] = [
        SubmodelId::GedHeavy,
        SubmodelId::THeavy,
        SubmodelId::MixLHeavy,
        SubmodelId::MixNHeavy,
        SubmodelId::NigHeavy,
        SubmodelId::TukeyHeavy,
        SubmodelId::GedLight,
        SubmodelId::TLight,
        SubmodelId::MixLLight,
        SubmodelId::MixNLight,
        SubmodelId::NigLight,
        SubmodelId::TukeyLight,
        SubmodelId::ALp,
        SubmodelId::SkewN,
        SubmodelId::MixLAsym,
        SubmodelId::MixNAsym,
        SubmodelId::NigAsym,
        SubmodelId::LogNormal,
        SubmodelId::Gamma,
        SubmodelId::Weibull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubmodelId::GedHeavy => "GED_heavy",
            SubmodelId::THeavy => "t_heavy",
            SubmodelId::MixLHeavy => "MixL_heavy",
            SubmodelId::MixNHeavy => "MixN_heavy",
            SubmodelId::NigHeavy => "NIG_heavy",
            SubmodelId::TukeyHeavy => "Tu_heavy",
            SubmodelId::GedLight => "GED_light",
            SubmodelId::TLight => "t_light",
            SubmodelId::MixLLight => "MixL_light",
            SubmodelId::MixNLight => "MixN_light",
            SubmodelId::NigLight => "NIG_light",
            SubmodelId::TukeyLight => "Tu_light",
            SubmodelId::ALp => "ALp",
            SubmodelId::SkewN => "SkewN",
            SubmodelId::MixLAsym => "MixL_asym",
            SubmodelId::MixNAsym => "MixN_asym",
            SubmodelId::NigAsym => "NIG_asym",
            SubmodelId::LogNormal => "LN",
            SubmodelId::Gamma => "G",
            SubmodelId::Weibull => "W",
        }
    }

    pub fn group(self) -> Group {
        match self.index() {
            0..=5 => Group::SymmetricHeavy,
            6..=11 => Group::SymmetricLight,
            _ => Group::Asymmetric,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    fn endpoints(self) -> Endpoints {
        match self {
            SubmodelId::GedHeavy => same(1.0, 0.1),
            SubmodelId::THeavy => same(3.5, 0.5),
            SubmodelId::MixLHeavy => far_by_n(1.0, [50.0, 20.0, 12.0, 8.0]),
            SubmodelId::MixNHeavy => far_by_n(3.5, [40.0, 20.0, 12.0, 8.0]),
            SubmodelId::NigHeavy => bold_by_n([0.6, 0.7, 0.7, 0.65], 0.01),
            SubmodelId::TukeyHeavy => [(-0.14, -1.5), (-0.14, -1.5), (-0.18, -1.5), (-0.20, -1.2)],
            SubmodelId::GedLight => far_by_n(1.0, [10.0, 6.2, 4.8, 3.0]),
            SubmodelId::TLight => far_by_n(3.5, [30.0, 30.0, 30.0, 20.0]),
            SubmodelId::MixLLight => far_by_n(0.0, [12.0, 6.0, 4.0, 3.0]),
            SubmodelId::MixNLight => far_by_n(0.0, [10.0, 5.0, 3.0, 3.0]),
            SubmodelId::NigLight => same(0.7, 10.0),
            SubmodelId::TukeyLight => [(-0.14, 1.65), (-0.14, 1.5), (-0.18, 1.5), (-0.16, 0.4)],
            SubmodelId::ALp => far_by_n(1.0, [5.0, 3.0, 2.5, 2.0]),
            SubmodelId::SkewN => far_by_n(0.0, [15.0, 15.0, 10.0, 6.0]),
            SubmodelId::MixLAsym => far_by_n(0.0, [15.0, 8.0, 6.0, 4.0]),
            SubmodelId::MixNAsym => far_by_n(0.0, [15.0, 10.0, 6.0, 4.0]),
            SubmodelId::NigAsym => same(0.0, 0.49),
            SubmodelId::LogNormal => far_by_n(0.1, [3.0, 2.0, 2.0, 2.0]),
            SubmodelId::Gamma => bold_by_n([7.0, 10.5, 15.0, 15.0], 0.5),
            SubmodelId::Weibull => bold_by_n([3.0, 5.0, 8.0, 5.0], 0.1),
        }
    }

    /// The model at parameter value `p` (the one that varies along the grid).
    pub fn spec_at(self, p: f64) -> AlternativeSpec {
        use AlternativeSpec as A;
        match self {
            SubmodelId::GedHeavy | SubmodelId::GedLight => A::GED { k: p },
            SubmodelId::THeavy | SubmodelId::TLight => A::StudentT { k: p },
            SubmodelId::MixLHeavy => A::MixL { omega: 0.5, k1: 0.0, k2: p },
            SubmodelId::MixNHeavy => A::MixN { omega: 0.5, k1: 0.0, k2: p },
            SubmodelId::NigHeavy | SubmodelId::NigLight => A::NIG { k1: p, k2: 0.0 },
            SubmodelId::TukeyHeavy | SubmodelId::TukeyLight => A::Tukey { k: p },
            SubmodelId::MixLLight => A::MixL { omega: 0.5, k1: p, k2: 1.0 },
            SubmodelId::MixNLight => A::MixN { omega: 0.5, k1: p, k2: 1.0 },
            SubmodelId::ALp => A::ALp { k: p },
            SubmodelId::SkewN => A::SkewN { k: p },
            SubmodelId::MixLAsym => A::MixL { omega: 0.25, k1: p, k2: 1.0 },
            SubmodelId::MixNAsym => A::MixN { omega: 0.25, k1: p, k2: 1.0 },
            SubmodelId::NigAsym => A::NIG { k1: 0.5, k2: p },
            SubmodelId::LogNormal => A::LogNormal { k: p },
            SubmodelId::Gamma => A::Gamma { k: p },
            SubmodelId::Weibull => A::Weibull { k: p },
        }
    }

    /// Parses a comma-separated list; `all` selects every submodel.
    pub fn parse_list(s: &str) -> Result<Vec<SubmodelId>> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(Self::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let id: SubmodelId = part.parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        if out.is_empty() {
            return Err(Error::UnknownSubmodel(s.to_string()));
        }
        Ok(out)
    }
}

impl fmt::Display for SubmodelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubmodelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.iter().copied().find(|m| m.name().eq_ignore_ascii_case(s)).ok_or_else(|| Error::UnknownSubmodel(s.to_string()))
    }
}

/// One grid point of a submodel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCase {
    /// 1 (closest to the Laplace) through 20.
    pub index: usize,
    pub param: f64,
    pub spec: AlternativeSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubmodelGrid {
    pub submodel: SubmodelId,
    pub n: usize,
    pub group: Group,
    pub cases: Vec<GridCase>,
}

pub const CASES_PER_SUBMODEL: usize = 20;

/// The 20 evenly spaced cases p_j = p_bold + j(p_far − p_bold)/20, j = 1..20.
pub fn submodel_grid(submodel: SubmodelId, n: usize) -> Result<SubmodelGrid> {
    let slot = STUDY_NS.iter().position(|&m| m == n).ok_or(Error::UnsupportedN { n, what: "submodel grids" })?;
    let (bold, far) = submodel.endpoints()[slot];
    let steps = CASES_PER_SUBMODEL as f64;
    let cases = (1..=CASES_PER_SUBMODEL)
        .map(|j| {
            let param = if j == CASES_PER_SUBMODEL { far } else { bold + j as f64 * (far - bold) / steps };
            GridCase { index: j, param, spec: submodel.spec_at(param) }
        })
        .collect();
    Ok(SubmodelGrid { submodel, n, group: submodel.group(), cases })
}
