//! Moment-based statistics: the two score-test statistics built on
//! first-power skewness and kurtosis, Gel's Jarque-Bera analogue, the
//! scale-ratio statistics, and the trigonometric-moment statistic.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::laplace::{laplace_cdf, standardize, Sample, StandardizedSample};
use crate::numeric;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Inverse asymptotic variance constant of the trigonometric-moment statistic.
pub const LK_INV_VARIANCE: f64 = 0.928;

const GEL_C1: f64 = 60.0;
const GEL_C2: f64 = 1200.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentKind {
    DloX,
    DloZ,
    Ge,
    GV,
    HoK,
    HoU,
    HoV,
    HoW,
    LK,
}

impl MomentKind {
    pub const ALL: [MomentKind; 9] = [
        MomentKind::DloX,
        MomentKind::DloZ,
        MomentKind::Ge,
        MomentKind::GV,
        MomentKind::HoK,
        MomentKind::HoU,
        MomentKind::HoV,
        MomentKind::HoW,
        MomentKind::LK,
    ];
}

/// Skewness and net-kurtosis components with their z-scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DloComponents {
    pub z_s1: f64,
    pub z_k1net: f64,
    pub s1: f64,
    pub k1: f64,
    pub k1net: f64,
}

impl DloComponents {
    pub fn dlo_x(&self) -> f64 {
        self.z_s1 * self.z_s1 + self.z_k1net * self.z_k1net
    }

    pub fn dlo_z(&self) -> f64 {
        self.z_k1net
    }
}

/// Finite-sample centering and variance constants; they differ by parity of n.
struct DloConstants {
    s1_c: f64,
    s1_p: f64,
    k_mean_c: f64,
    k_mean_p: f64,
    // variance correction: 1 − v1/n^p1 + v2/n^p2
    k_var_c1: f64,
    k_var_p1: f64,
    k_var_c2: f64,
    k_var_p2: f64,
}

const DLO_EVEN: DloConstants = DloConstants {
    s1_c: 1.856,
    s1_p: 1.06,
    k_mean_c: 0.422,
    k_mean_p: 1.01,
    k_var_c1: 1.950,
    k_var_p1: 0.92,
    k_var_c2: 39.349,
    k_var_p2: 2.3,
};

const DLO_ODD: DloConstants = DloConstants {
    s1_c: 0.281,
    s1_p: 1.03,
    k_mean_c: 0.198,
    k_mean_p: 0.86,
    k_var_c1: 3.827,
    k_var_p1: 1.04,
    k_var_c2: 0.0,
    k_var_p2: 1.0,
};

pub fn dlo_components(sample: &Sample) -> Result<DloComponents> {
    Ok(dlo_from_standardized(&standardize(sample)?))
}

pub(crate) fn dlo_from_standardized(s: &StandardizedSample) -> DloComponents {
    let n = s.n();
    let nf = n as f64;
    let s1 = numeric::mean(s.z_sorted.iter().copied());
    let k1 = numeric::mean(s.z_sorted.iter().map(|&z| {
        let a = z.abs();
        if a == 0.0 {
            0.0
        } else {
            a * a.ln()
        }
    }));
    let k1net = (k1 - 0.5 * s1 * s1).max(0.0);

    let c = if n.is_multiple_of(2) { &DLO_EVEN } else { &DLO_ODD };
    let z_s1 = nf.sqrt() * s1 / (1.0 - c.s1_c / nf.powf(c.s1_p)).sqrt();
    let one_m_gamma = 1.0 - EULER_GAMMA;
    let centre = one_m_gamma.powf(0.25) * (1.0 - c.k_mean_c / nf.powf(c.k_mean_p));
    let var =
        one_m_gamma.powf(-1.5) * (PI * PI / 3.0 - 3.0) / 16.0 * (1.0 - c.k_var_c1 / nf.powf(c.k_var_p1) + c.k_var_c2 / nf.powf(c.k_var_p2));
    let z_k1net = nf.sqrt() * (k1net.powf(0.25) - centre) / var.sqrt();
    DloComponents { z_s1, z_k1net, s1, k1, k1net }
}

pub fn moment_statistic(kind: MomentKind, sample: &Sample) -> Result<f64> {
    moment_from_standardized(kind, &standardize(sample)?)
}

pub(crate) fn moment_from_standardized(kind: MomentKind, s: &StandardizedSample) -> Result<f64> {
    let e = &s.estimates;
    let nf = s.n() as f64;
    let x = &s.sorted;
    let range = x[x.len() - 1] - x[0];
    Ok(match kind {
        MomentKind::DloX => dlo_from_standardized(s).dlo_x(),
        MomentKind::DloZ => dlo_from_standardized(s).dlo_z(),
        MomentKind::Ge => {
            let scale = SQRT_2 * e.sigma_ml;
            let m3 = numeric::mean(x.iter().map(|xi| ((xi - e.mean) / scale).powi(3)));
            let m4 = numeric::mean(x.iter().map(|xi| ((xi - e.mean) / scale).powi(4)));
            nf / GEL_C1 * m3 * m3 + nf / GEL_C2 * (m4 - 6.0) * (m4 - 6.0)
        }
        MomentKind::GV => {
            let mad_mean = numeric::mean(x.iter().map(|xi| (xi - e.mean).abs()));
            if !(mad_mean > 0.0) {
                return Err(Error::DegenerateDenominator("GV"));
            }
            (4.0 * nf).sqrt() * (e.sigma_mom / mad_mean - 1.0)
        }
        MomentKind::HoK => numeric::mean(x.iter().map(|xi| ((xi - e.mean) / e.sd).powi(4))),
        MomentKind::HoU => e.sd / e.sigma_ml,
        MomentKind::HoV => range / (2.0 * e.sigma_ml),
        MomentKind::HoW => range / (2.0 * e.sd),
        MomentKind::LK => {
            let (mut w1, mut w2) = (0.0, 0.0);
            for xi in x {
                let angle = 2.0 * PI * laplace_cdf((xi - e.mean) / e.sigma_mom);
                let (sin, cos) = angle.sin_cos();
                w1 += cos;
                w2 += sin;
            }
            w1 /= nf;
            w2 /= nf;
            LK_INV_VARIANCE * 2.0 * nf * (w1 * w1 + w2 * w2)
        }
    })
}
