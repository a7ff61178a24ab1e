//! Statistics built on the empirical cdf of the probability transforms.
//!
//! Logarithms of û and 1 − û are taken analytically from ẑ so that far-tail
//! observations (where 1 − Ψ(ẑ) underflows) keep finite contributions.

use crate::error::Result;
use crate::laplace::{laplace_log_cdf, laplace_log_sf, StandardizedSample};
use crate::numeric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EcdfKind {
    AD,
    CvM,
    KS,
    Ku,
    Wa,
    ZK,
    ZA,
    ZC,
}

impl EcdfKind {
    pub const ALL: [EcdfKind; 8] =
        [EcdfKind::AD, EcdfKind::CvM, EcdfKind::KS, EcdfKind::Ku, EcdfKind::Wa, EcdfKind::ZK, EcdfKind::ZA, EcdfKind::ZC];
}

pub fn ecdf_statistic(kind: EcdfKind, s: &StandardizedSample) -> Result<f64> {
    Ok(match kind {
        EcdfKind::AD => anderson_darling(s),
        EcdfKind::CvM => cramer_von_mises(s),
        EcdfKind::KS => {
            let (dm, dp) = d_minus_plus(s);
            (s.n() as f64).sqrt() * dm.max(dp)
        }
        EcdfKind::Ku => {
            let (dm, dp) = d_minus_plus(s);
            (s.n() as f64).sqrt() * (dm + dp)
        }
        EcdfKind::Wa => watson(s),
        EcdfKind::ZK => zhang_k(s),
        EcdfKind::ZA => zhang_a(s),
        EcdfKind::ZC => zhang_c(s),
    })
}

fn anderson_darling(s: &StandardizedSample) -> f64 {
    let n = s.n();
    let nf = n as f64;
    let acc = numeric::sum(s.z_sorted.iter().enumerate().map(|(idx, &z)| {
        let i = (idx + 1) as f64;
        (2.0 * i - 1.0) * laplace_log_cdf(z) + (2.0 * (nf - i) + 1.0) * laplace_log_sf(z)
    }));
    -nf - acc / nf
}

fn cramer_von_mises(s: &StandardizedSample) -> f64 {
    let nf = s.n() as f64;
    let acc = numeric::sum(s.u_sorted.iter().enumerate().map(|(idx, &u)| {
        let d = (2.0 * (idx + 1) as f64 - 1.0) / (2.0 * nf) - u;
        d * d
    }));
    1.0 / (12.0 * nf) + acc
}

fn watson(s: &StandardizedSample) -> f64 {
    let nf = s.n() as f64;
    let ubar = numeric::mean(s.u_sorted.iter().copied());
    cramer_von_mises(s) - nf * (ubar - 0.5) * (ubar - 0.5)
}

/// (D⁻, D⁺) with D⁻ built from the left limit of the empirical cdf.
pub fn d_minus_plus(s: &StandardizedSample) -> (f64, f64) {
    let nf = s.n() as f64;
    let mut dm = f64::NEG_INFINITY;
    let mut dp = f64::NEG_INFINITY;
    for (idx, &u) in s.u_sorted.iter().enumerate() {
        let i = (idx + 1) as f64;
        dm = dm.max(u - (i - 1.0) / nf);
        dp = dp.max(i / nf - u);
    }
    (dm, dp)
}

fn zhang_k(s: &StandardizedSample) -> f64 {
    let nf = s.n() as f64;
    let ln_n = nf.ln();
    s.z_sorted
        .iter()
        .enumerate()
        .map(|(idx, &z)| {
            let a = (idx + 1) as f64 - 0.5;
            let b = nf - (idx + 1) as f64 + 0.5;
            a * (a.ln() - ln_n - laplace_log_cdf(z)) + b * (b.ln() - ln_n - laplace_log_sf(z))
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn zhang_a(s: &StandardizedSample) -> f64 {
    let nf = s.n() as f64;
    -numeric::sum(s.z_sorted.iter().enumerate().map(|(idx, &z)| {
        let i = (idx + 1) as f64;
        laplace_log_cdf(z) / (nf - i + 0.5) + laplace_log_sf(z) / (i - 0.5)
    }))
}

fn zhang_c(s: &StandardizedSample) -> f64 {
    let nf = s.n() as f64;
    numeric::sum(s.z_sorted.iter().enumerate().map(|(idx, &z)| {
        let i = (idx + 1) as f64;
        // log(1/û − 1) = log(1 − û) − log û
        let num = laplace_log_sf(z) - laplace_log_cdf(z);
        let den = ((nf - 0.5) / (i - 0.75) - 1.0).ln();
        let t = num - den;
        t * t
    }))
}
