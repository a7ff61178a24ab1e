//! Divergence, informational-energy, regression, symmetry, characteristic
//! function and energy-distance statistics.

use std::f64::consts::PI;

use crate::entropy::{window_size, WindowFamily};
use crate::error::{Error, Result};
use crate::laplace::{laplace_pdf, standardize, Sample, StandardizedSample};
use crate::numeric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OtherKind {
    AbKl,
    AbHe,
    AbJe,
    AbTv,
    AbChi2,
    AJ,
    BS,
    KP,
    Me1A2,
    Me2A05,
    SD,
    SRstar,
}

impl OtherKind {
    pub const ALL: [OtherKind; 12] = [
        OtherKind::AbKl,
        OtherKind::AbHe,
        OtherKind::AbJe,
        OtherKind::AbTv,
        OtherKind::AbChi2,
        OtherKind::AJ,
        OtherKind::BS,
        OtherKind::KP,
        OtherKind::Me1A2,
        OtherKind::Me2A05,
        OtherKind::SD,
        OtherKind::SRstar,
    ];

    pub fn is_divergence(self) -> bool {
        matches!(self, OtherKind::AbKl | OtherKind::AbHe | OtherKind::AbJe | OtherKind::AbTv | OtherKind::AbChi2)
    }
}

/// Gaussian-kernel density estimate settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KdeConfig {
    pub bandwidth: f64,
}

impl KdeConfig {
    /// Bandwidth σ̂ (2/(n√π))^{1/5}, optimal for a Gaussian kernel under a Laplace law.
    pub fn laplace_optimal(sigma_ml: f64, n: usize) -> Self {
        let h = sigma_ml * (2.0 / (n as f64 * PI.sqrt())).powf(0.2);
        Self { bandwidth: h }
    }
}

/// Kernel density estimate ĝ evaluated at each observation, in the order given.
pub fn kde_at_sample_points(sample: &Sample, cfg: KdeConfig) -> Result<Vec<f64>> {
    kde_at(sample.values(), cfg)
}

pub(crate) fn kde_at(x: &[f64], cfg: KdeConfig) -> Result<Vec<f64>> {
    let h = cfg.bandwidth;
    if !(h > 0.0) {
        return Err(Error::ConstantSample);
    }
    let n = x.len();
    let mut acc = vec![0.0; n];
    // φ is even, so each pair contributes to both ends
    for i in 0..n {
        acc[i] += numeric::phi(0.0);
        for j in i + 1..n {
            let k = numeric::phi((x[i] - x[j]) / h);
            acc[i] += k;
            acc[j] += k;
        }
    }
    let scale = 1.0 / (n as f64 * h);
    Ok(acc.into_iter().map(|a| a * scale).collect())
}

/// Half-sample mode of sorted data.
///
/// Repeatedly keeps the ⌈k/2⌉ consecutive points with the smallest range
/// (ties go to the lower index) while k ≥ 4. Three points give the mean of
/// the closer pair, or the middle point when both gaps are equal; one or two
/// points give their mean.
pub fn half_sample_mode(sorted: &[f64]) -> f64 {
    let mut y = sorted;
    while y.len() >= 4 {
        let w = y.len().div_ceil(2);
        let mut best = 0;
        let mut best_range = f64::INFINITY;
        for start in 0..=y.len() - w {
            let r = y[start + w - 1] - y[start];
            if r < best_range {
                best_range = r;
                best = start;
            }
        }
        y = &y[best..best + w];
    }
    match y.len() {
        3 => {
            let (a, b) = (y[1] - y[0], y[2] - y[1]);
            if a < b {
                0.5 * (y[0] + y[1])
            } else if a > b {
                0.5 * (y[1] + y[2])
            } else {
                y[1]
            }
        }
        2 => 0.5 * (y[0] + y[1]),
        _ => y[0],
    }
}

pub fn other_statistic(kind: OtherKind, sample: &Sample) -> Result<f64> {
    let s = standardize(sample)?;
    if kind.is_divergence() {
        let g = kde_at(&s.sorted, KdeConfig::laplace_optimal(s.estimates.sigma_ml, s.n()))?;
        return divergence(kind, &s, &g);
    }
    other_from_standardized(kind, &s)
}

/// Divergence statistic given ĝ at the sorted observations.
pub(crate) fn divergence(kind: OtherKind, s: &StandardizedSample, g_sorted: &[f64]) -> Result<f64> {
    let sigma = s.estimates.sigma_ml;
    let nu: fn(f64) -> f64 = match kind {
        OtherKind::AbKl => |t| t.ln(),
        OtherKind::AbHe => |t| 0.5 * (t.sqrt() - 1.0).powi(2) / t,
        OtherKind::AbJe => |t| (t - 1.0) * t.ln() / t,
        OtherKind::AbTv => |t| (t - 1.0).abs() / t,
        OtherKind::AbChi2 => |t| (t - 1.0).powi(2) / t,
        _ => unreachable!("not a divergence statistic"),
    };
    // (f/ĝ)·ν(ĝ/f) with t = ĝ/f written as ν(t)/t
    Ok(numeric::mean(s.z_sorted.iter().zip(g_sorted).map(|(&z, &g)| {
        let f = laplace_pdf(z) / sigma;
        nu((g / f).clamp(1e-300, 1e300))
    })))
}

pub(crate) fn other_from_standardized(kind: OtherKind, s: &StandardizedSample) -> Result<f64> {
    match kind {
        OtherKind::AJ => informational_energy(s),
        OtherKind::BS => brain_shapiro(s),
        OtherKind::KP => Ok(kozubowski_panorska(s)),
        OtherKind::Me1A2 => Ok(meintanis_1(&s.z_sorted, 2.0)),
        OtherKind::Me2A05 => Ok(meintanis_2(&s.z_sorted, 0.5)),
        OtherKind::SD => Ok(subramanian_dixit(&s.sorted)),
        OtherKind::SRstar => Ok(szekely_rizzo(&s.z_sorted)),
        _ => {
            let g = kde_at(&s.sorted, KdeConfig::laplace_optimal(s.estimates.sigma_ml, s.n()))?;
            divergence(kind, s, &g)
        }
    }
}

fn informational_energy(s: &StandardizedSample) -> Result<f64> {
    let n = s.n();
    let nf = n as f64;
    let m = window_size(WindowFamily::Aj, n)?;
    let u = &s.u_sorted;
    let mut acc = 0.0;
    for i in 0..n {
        let (lo, hi) = (i.saturating_sub(m), (i + m).min(n - 1));
        let du = u[hi] - u[lo];
        if !(du > 0.0) {
            return Err(Error::DegenerateTies { lo: lo + 1, hi: hi + 1 });
        }
        acc += 2.0 * m as f64 / (nf * du);
    }
    Ok(acc / nf)
}

fn brain_shapiro(s: &StandardizedSample) -> Result<f64> {
    let n = s.n();
    if n <= 2 {
        return Err(Error::DegenerateDenominator("BS"));
    }
    let nf = n as f64;
    let mut y: Vec<f64> = s.z_sorted.iter().map(|z| z.abs()).collect();
    y.sort_by(f64::total_cmp);
    let mut prev = 0.0;
    let mut cum = Vec::with_capacity(n);
    let mut total = 0.0;
    for (idx, &yj) in y.iter().enumerate() {
        let j = idx + 1;
        total += (n - j + 1) as f64 * (yj - prev);
        cum.push(total);
        prev = yj;
    }
    if !(total > 0.0) {
        return Err(Error::DegenerateDenominator("BS"));
    }
    let v: Vec<f64> = cum[..n - 1].iter().map(|c| c / total).collect();
    let n1 = nf - 1.0;
    let vbar = v.iter().sum::<f64>() / n1;
    let weighted: f64 = v.iter().enumerate().map(|(idx, vi)| (idx + 1) as f64 * vi / n1).sum();
    let t = nf - 2.0 + 6.0 * nf * vbar - 12.0 * weighted;
    Ok(12.0 * n1 * (vbar - 0.5).powi(2) + 5.0 * n1 / ((nf + 2.0) * (nf - 2.0)) * t * t)
}

fn kozubowski_panorska(s: &StandardizedSample) -> f64 {
    let nf = s.n() as f64;
    let mu = s.estimates.mu_ml;
    let left = numeric::mean(s.sorted.iter().map(|x| (mu - x).max(0.0)));
    let right = numeric::mean(s.sorted.iter().map(|x| (x - mu).max(0.0)));
    if left == 0.0 || right == 0.0 {
        // k̂⁴ → 0 or ∞ both give the ratio limit 1
        return nf;
    }
    let k4 = left / right;
    nf * (2.0 - (1.0 + k4.sqrt()).powi(2) / (1.0 + k4))
}

/// Me with weight e^{−a|t|}.
pub fn meintanis_1(z: &[f64], a: f64) -> f64 {
    let nf = z.len() as f64;
    let a2 = a * a;
    let single: f64 = z
        .iter()
        .map(|&zj| {
            let q = a2 + zj * zj;
            1.0 / q + 2.0 * (a2 - 3.0 * zj * zj) / q.powi(3)
        })
        .sum();
    let pair = |d2: f64| {
        let q = a2 + d2;
        1.0 / q + 4.0 * (a2 - 3.0 * d2) / q.powi(3) + 24.0 * (a2 * a2 + 5.0 * d2 * d2 - 10.0 * a2 * d2) / q.powi(5)
    };
    let double = symmetric_pair_sum(z, pair);
    2.0 * nf / a - 4.0 * a * single + 2.0 * a / nf * double
}

/// Me with weight e^{−at²}.
pub fn meintanis_2(z: &[f64], a: f64) -> f64 {
    let nf = z.len() as f64;
    let c = (PI / a).sqrt();
    let single: f64 = z
        .iter()
        .map(|&zj| {
            let z2 = zj * zj;
            (1.0 - (z2 - 2.0 * a) / (4.0 * a * a)) * (-z2 / (4.0 * a)).exp()
        })
        .sum();
    let pair = |d2: f64| {
        (0.5 - (d2 - 2.0 * a) / (4.0 * a * a) + (d2 * d2 + 12.0 * a * a - 12.0 * a * d2) / (32.0 * a.powi(4))) * (-d2 / (4.0 * a)).exp()
    };
    let double = symmetric_pair_sum(z, pair);
    nf * c - 2.0 * c * single + 2.0 / nf * c * double
}

/// Σ_{j,k} g((z_j − z_k)²) using symmetry: diagonal plus twice the upper triangle.
fn symmetric_pair_sum(z: &[f64], g: impl Fn(f64) -> f64) -> f64 {
    let n = z.len();
    let mut off = 0.0;
    for j in 0..n {
        for k in j + 1..n {
            let d = z[j] - z[k];
            off += g(d * d);
        }
    }
    n as f64 * g(0.0) + 2.0 * off
}

fn subramanian_dixit(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    let theta = half_sample_mode(sorted);
    let n1 = sorted.partition_point(|&x| x <= theta).max(1);
    let u: f64 = sorted[..n1].iter().map(|x| sorted[n1 - 1] - x).sum();
    let v: f64 = if n1 < n { sorted[n1..].iter().map(|x| x - sorted[n1]).sum() } else { 0.0 };
    if u + v == 0.0 {
        0.5
    } else {
        u / (u + v)
    }
}

fn szekely_rizzo(z_sorted: &[f64]) -> f64 {
    let n = z_sorted.len();
    let nf = n as f64;
    let expect: f64 = z_sorted.iter().map(|z| z.abs() + (-z.abs()).exp()).sum();
    let ranks: f64 = z_sorted.iter().enumerate().map(|(idx, z)| (2.0 * (idx + 1) as f64 - 1.0 - nf) * z).sum();
    2.0 * expect - 1.5 * nf - 2.0 / nf * ranks
}
