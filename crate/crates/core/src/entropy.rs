//! Entropy-based statistics, the spacing entropy estimators they use, and
//! the window-size rules.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::laplace::{standardize, Sample, StandardizedSample};
use crate::numeric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowFamily {
    /// AP_v, AP_e, AP_y, AP_a and AP_y with the ML scale.
    ApMain,
    ApZ,
    CkV,
    CkC,
    CkE,
    Aj,
    AEnt,
}

fn table_window(family: WindowFamily, n: usize) -> usize {
    let ln_pow = |p: f64| (n as f64).ln().powf(p).round() as usize;
    match family {
        WindowFamily::ApMain => match n {
            0..=8 => 1,
            9..=15 => 2,
            16..=25 => 4,
            26..=40 => 5,
            41..=60 => 6,
            61..=90 => 7,
            91..=120 => 8,
            _ => ln_pow(1.35),
        },
        WindowFamily::ApZ => match n {
            0..=8 => 1,
            9..=25 => 2,
            26..=40 => 3,
            41..=60 => 4,
            61..=90 => 5,
            91..=120 => 6,
            _ => ln_pow(1.15),
        },
        WindowFamily::Aj => match n {
            0..=8 => 2,
            9..=15 => 3,
            16..=25 => 5,
            26..=35 => 6,
            36..=45 => 7,
            46..=60 => 8,
            61..=90 => 9,
            91..=120 => 10,
            _ => ln_pow(1.5),
        },
        WindowFamily::AEnt => match n {
            0..=3 => 1,
            4 | 5 => 2,
            _ => ((n as f64 + 2.0) / 5.0).round() as usize,
        },
        WindowFamily::CkV => match n {
            0..=4 => 1,
            5..=6 => 2,
            7..=23 => 3,
            24..=33 => 4,
            34..=46 => 5,
            47..=50 => 6,
            _ => (n as f64 / 10.0).round() as usize,
        },
        WindowFamily::CkC => match n {
            0..=4 => 1,
            5..=6 => 2,
            7..=8 => 3,
            9..=10 => 4,
            11 => 3,
            12 => 2,
            13..=25 => 3,
            26..=37 => 4,
            38..=50 => 5,
            _ => (n as f64 / 10.0).round() as usize,
        },
        WindowFamily::CkE => match n {
            0..=4 => 1,
            5..=6 => 2,
            7..=8 => 3,
            9..=10 => 4,
            11 => 5,
            _ => 2,
        },
    }
}

/// Window size m for a family at sample size n.
///
/// Beyond n = 50 the CK tables are extended with m = round(n/10) for CK_v and
/// CK_c and m = 2 for CK_e, which gives 10 and 20 at n = 100 and 200. Every
/// value is clamped to 1 ≤ m ≤ ⌈n/2⌉ − 1 (m = 1 when n = 2).
pub fn window_size(family: WindowFamily, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::TooFewObservations { min: 2, got: n });
    }
    let cap = n.div_ceil(2) - 1;
    Ok(table_window(family, n).min(cap).max(1))
}

/// 0-based position of the 1-based index `i` clamped to [1, n].
#[inline]
fn clamp_idx(i: isize, n: usize) -> usize {
    (i.clamp(1, n as isize) - 1) as usize
}

/// Clamped window bounds (0-based) for the 1-based centre `i`.
#[inline]
fn window(i: usize, m: usize, n: usize) -> (usize, usize) {
    let i = i as isize;
    let m = m as isize;
    (clamp_idx(i - m, n), clamp_idx(i + m, n))
}

fn spacing(sorted: &[f64], i: usize, m: usize) -> Result<f64> {
    let (lo, hi) = window(i, m, sorted.len());
    let d = sorted[hi] - sorted[lo];
    if !(d > 0.0) {
        return Err(Error::ZeroSpacing { lo: lo + 1, hi: hi + 1 });
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyEstimator {
    /// Vasicek.
    Hv,
    /// Ebrahimi, Pflughoeft and Soofi.
    He,
    /// Yousefzadeh and Arghami.
    Hy,
    /// Alizadeh Noughabi and Arghami.
    Ha,
    /// Zamanzade and Arghami.
    Hz,
    /// Correa.
    Hc,
    /// van Es.
    HvanEs,
}

pub fn spacing_entropy(kind: EntropyEstimator, sorted: &[f64], m: usize) -> Result<f64> {
    let n = sorted.len();
    if n < 2 {
        return Err(Error::TooFewObservations { min: 2, got: n });
    }
    if m == 0 {
        return Err(Error::EmptyWindowRange(n));
    }
    let nf = n as f64;
    let mf = m as f64;
    match kind {
        EntropyEstimator::Hv => weighted_spacing_entropy(sorted, m, |_| 2.0),
        EntropyEstimator::He => weighted_spacing_entropy(sorted, m, |i| 1.0 + (i - 1).min(m).min(n - i) as f64 / mf),
        EntropyEstimator::Ha => weighted_spacing_entropy(sorted, m, |i| if i <= m || i + m > n { 1.0 } else { 2.0 }),
        EntropyEstimator::Hz => weighted_spacing_entropy(sorted, m, |i| {
            if i <= m {
                i as f64 / mf
            } else if i + m <= n {
                2.0
            } else {
                (n - i + 1) as f64 / mf
            }
        }),
        EntropyEstimator::Hy => yousefzadeh_arghami(sorted, m).map(|(h, _)| h),
        EntropyEstimator::Hc => correa(sorted, m),
        EntropyEstimator::HvanEs => {
            if m >= n {
                return Err(Error::EmptyWindowRange(n));
            }
            let scale = (nf + 1.0) / mf;
            let mut acc = 0.0;
            for i in 1..=n - m {
                let d = sorted[i + m - 1] - sorted[i - 1];
                if !(d > 0.0) {
                    return Err(Error::ZeroSpacing { lo: i, hi: i + m });
                }
                acc += (scale * d).ln();
            }
            let harmonic: f64 = (m..=n).map(|k| 1.0 / k as f64).sum();
            Ok(acc / (nf - mf) + harmonic - scale.ln())
        }
    }
}

/// (1/n) Σ log(n/(w_i m) · spacing_i) for a coefficient schedule w_i.
fn weighted_spacing_entropy(sorted: &[f64], m: usize, coef: impl Fn(usize) -> f64) -> Result<f64> {
    let n = sorted.len();
    let nf = n as f64;
    let mf = m as f64;
    let mut acc = 0.0;
    for i in 1..=n {
        acc += (nf / (coef(i) * mf) * spacing(sorted, i, m)?).ln();
    }
    Ok(acc / nf)
}

/// The piecewise cdf estimate F̂_y at each order statistic.
///
/// At i = n the case x_(n−2) = x_(n−1) < x_(n) takes the first branch, and
/// for n = 2 the missing x_(0) counts as distinct.
pub fn f_hat_y(sorted: &[f64]) -> Vec<f64> {
    let n = sorted.len();
    let nf = n as f64;
    let c = (nf - 1.0) / (nf * (nf + 1.0));
    let x = |i: usize| sorted[i - 1];
    (1..=n)
        .map(|i| {
            let bracket = if i == 1 {
                nf / (nf - 1.0) + if x(1) != x(2) { nf / (2.0 * nf - 1.0) } else { 0.0 }
            } else if i < n {
                let extra = if x(i - 1) != x(i + 1) { (x(i) - x(i - 1)) / (x(i + 1) - x(i - 1)) } else { 0.0 };
                (i as f64 * (nf - 1.0) + 1.0) / (nf - 1.0) + extra
            } else {
                let extra = if n >= 3 && x(n - 2) == x(n) {
                    0.0
                } else if x(n - 1) == x(n) {
                    1.0
                } else {
                    1.0 + (nf - 1.0) / (2.0 * nf - 1.0)
                };
                ((nf - 1.0) * (nf - 1.0) + 1.0) / (nf - 1.0) + extra
            };
            c * bracket
        })
        .collect()
}

/// Returns H_y and the normalising sum Σ_j ΔF̂_y,j.
fn yousefzadeh_arghami(sorted: &[f64], m: usize) -> Result<(f64, f64)> {
    let n = sorted.len();
    let f = f_hat_y(sorted);
    let mut df = Vec::with_capacity(n);
    let mut dx = Vec::with_capacity(n);
    for i in 1..=n {
        let (lo, hi) = window(i, m, n);
        dx.push(spacing(sorted, i, m)?);
        df.push(f[hi] - f[lo]);
    }
    let total = numeric::sum(df.iter().copied());
    if !(total > 0.0) {
        return Err(Error::DegenerateDenominator("H_y"));
    }
    let h = numeric::sum(df.iter().zip(&dx).map(|(&a, &d)| a / total * (d / a).ln()));
    Ok((h, total))
}

fn correa(sorted: &[f64], m: usize) -> Result<f64> {
    let n = sorted.len();
    let nf = n as f64;
    let (ni, mi) = (n as isize, m as isize);
    let mut acc = 0.0;
    for i in 1..=ni {
        let win = |j: isize| sorted[clamp_idx(j, n)];
        let centre = ((i - mi)..=(i + mi)).map(win).sum::<f64>() / (2 * m + 1) as f64;
        let mut num = 0.0;
        let mut den = 0.0;
        for j in (i - mi)..=(i + mi) {
            let d = win(j) - centre;
            num += (j - i) as f64 / nf * d;
            den += d * d;
        }
        if !(den > 0.0) || !(num > 0.0) {
            return Err(Error::ZeroSpacing { lo: clamp_idx(i - mi, n) + 1, hi: clamp_idx(i + mi, n) + 1 });
        }
        acc += (num / den).ln();
    }
    Ok(-acc / nf)
}

/// The signed trapezoidal average θ̂_β of n + 1 values.
pub fn theta_beta(beta: &[f64], n: usize) -> Result<f64> {
    if beta.len() != n + 1 {
        return Err(Error::LengthMismatch { expected: n + 1, got: beta.len() });
    }
    let nf = n as f64;
    // 1-based β_i
    let b = |i: usize| beta[i - 1];
    let trap = |i: usize| 0.5 * (b(i) + b(i + 1));
    Ok(if n.is_multiple_of(2) {
        let h = n / 2;
        (-(1..=h).map(trap).sum::<f64>() + (h + 1..=n).map(trap).sum::<f64>()) / nf
    } else {
        let h = n.div_ceil(2);
        (-(1..h).map(trap).sum::<f64>() + (h + 1..=n).map(trap).sum::<f64>()) / nf + (b(h + 1) - b(h)) / (4.0 * nf)
    })
}

/// ξ_i = (1/2m) Σ_{k=i−m}^{i+m−1} x_((k∧n)∨1) for i = 1..n+1.
pub fn xi_schedule(sorted: &[f64], m: usize) -> Vec<f64> {
    let n = sorted.len();
    let mi = m as isize;
    (1..=(n + 1) as isize).map(|i| ((i - mi)..(i + mi)).map(|k| sorted[clamp_idx(k, n)]).sum::<f64>() / (2.0 * m as f64)).collect()
}

/// Edge-corrected schedules: the lower tail ξ_{m+1} − Σ_{k=i}^m (x_(m+k) − x_(1))/lo(k)
/// and the upper tail ξ_{n−m+1} + Σ_{k=n−m+2}^i (x_(n) − x_(k−m−1))/hi(k).
fn edge_corrected(sorted: &[f64], m: usize, lo_den: impl Fn(usize) -> f64, hi_den: impl Fn(usize) -> f64) -> Vec<f64> {
    let n = sorted.len();
    let xi = xi_schedule(sorted, m);
    let x = |i: usize| sorted[i - 1];
    let mut out = xi.clone();
    for i in 1..=m {
        let corr: f64 = (i..=m).map(|k| (x(m + k) - x(1)) / lo_den(k)).sum();
        out[i - 1] = xi[m] - corr;
    }
    for i in (n - m + 2)..=(n + 1) {
        let corr: f64 = ((n - m + 2)..=i).map(|k| (x(n) - x(k - m - 1)) / hi_den(k)).sum();
        out[i - 1] = xi[n - m] + corr;
    }
    out
}

pub fn eta_schedule(sorted: &[f64], m: usize) -> Vec<f64> {
    let n = sorted.len();
    edge_corrected(sorted, m, |k| (m + k - 1) as f64, |k| (n + m - k + 1) as f64)
}

pub fn nu_schedule(sorted: &[f64], m: usize) -> Vec<f64> {
    edge_corrected(sorted, m, |_| m as f64, |_| m as f64)
}

pub fn tau_schedule(sorted: &[f64], m: usize) -> Vec<f64> {
    let n = sorted.len();
    edge_corrected(sorted, m, |k| k as f64, |k| (n + 2 - k) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyKind {
    /// log of the density-based empirical likelihood ratio.
    ARatLog,
    AEnt,
    APv,
    APe,
    APy,
    APa,
    APz,
    APyMle,
    CKv,
    CKc,
    CKe,
}

impl EntropyKind {
    pub const ALL: [EntropyKind; 11] = [
        EntropyKind::ARatLog,
        EntropyKind::AEnt,
        EntropyKind::APv,
        EntropyKind::APe,
        EntropyKind::APy,
        EntropyKind::APa,
        EntropyKind::APz,
        EntropyKind::APyMle,
        EntropyKind::CKv,
        EntropyKind::CKc,
        EntropyKind::CKe,
    ];
}

pub fn entropy_statistic(kind: EntropyKind, sample: &Sample) -> Result<f64> {
    entropy_from_standardized(kind, &standardize(sample)?)
}

pub(crate) fn entropy_from_standardized(kind: EntropyKind, s: &StandardizedSample) -> Result<f64> {
    let n = s.n();
    let x = &s.sorted;
    let sigma = s.estimates.sigma_ml;
    let ap = |h: f64, theta: f64| -> Result<f64> {
        if !(theta > 0.0) {
            return Err(Error::NumericalOverflow("log(2θ̂)"));
        }
        Ok((2.0 * theta).ln() + 1.0 - h)
    };
    match kind {
        EntropyKind::ARatLog => a_rat_log(s),
        EntropyKind::AEnt => {
            let m = window_size(WindowFamily::AEnt, n)?;
            let nf = n as f64;
            let mut acc = 0.0;
            for i in 1..=n {
                let (lo, hi) = window(i, m, n);
                let du = s.u_sorted[hi] - s.u_sorted[lo];
                if !(du > 0.0) {
                    return Err(Error::DegenerateTies { lo: lo + 1, hi: hi + 1 });
                }
                acc += (nf / (2.0 * m as f64) * du).ln();
            }
            Ok(-acc / nf)
        }
        EntropyKind::APv => {
            let m = window_size(WindowFamily::ApMain, n)?;
            let h = spacing_entropy(EntropyEstimator::Hv, x, m)?;
            ap(h, theta_beta(&xi_schedule(x, m), n)?)
        }
        EntropyKind::APe => {
            let m = window_size(WindowFamily::ApMain, n)?;
            let h = spacing_entropy(EntropyEstimator::He, x, m)?;
            ap(h, theta_beta(&eta_schedule(x, m), n)?)
        }
        EntropyKind::APy => {
            let m = window_size(WindowFamily::ApMain, n)?;
            let (h, total) = yousefzadeh_arghami(x, m)?;
            let zeta: Vec<f64> = xi_schedule(x, m).into_iter().map(|v| 2.0 * m as f64 * v / total).collect();
            ap(h, theta_beta(&zeta, n)?)
        }
        EntropyKind::APa => {
            let m = window_size(WindowFamily::ApMain, n)?;
            let h = spacing_entropy(EntropyEstimator::Ha, x, m)?;
            ap(h, theta_beta(&nu_schedule(x, m), n)?)
        }
        EntropyKind::APz => {
            let m = window_size(WindowFamily::ApZ, n)?;
            let h = spacing_entropy(EntropyEstimator::Hz, x, m)?;
            ap(h, theta_beta(&tau_schedule(x, m), n)?)
        }
        EntropyKind::APyMle => {
            let m = window_size(WindowFamily::ApMain, n)?;
            let h = spacing_entropy(EntropyEstimator::Hy, x, m)?;
            Ok((2.0 * sigma).ln() + 1.0 - h)
        }
        EntropyKind::CKv => {
            let m = window_size(WindowFamily::CkV, n)?;
            Ok(spacing_entropy(EntropyEstimator::Hv, x, m)?.exp() / sigma)
        }
        EntropyKind::CKc => {
            let m = window_size(WindowFamily::CkC, n)?;
            Ok(spacing_entropy(EntropyEstimator::Hc, x, m)?.exp() / sigma)
        }
        EntropyKind::CKe => {
            let m = window_size(WindowFamily::CkE, n)?;
            Ok(spacing_entropy(EntropyEstimator::HvanEs, x, m)?.exp() / sigma)
        }
    }
}

fn a_rat_log(s: &StandardizedSample) -> Result<f64> {
    let n = s.n();
    let nf = n as f64;
    let bound = nf.sqrt().min(nf / 2.0);
    // Σ_j −log f(x_j | μ̂, σ̂) = Σ|ẑ_j| + n log(2σ̂)
    let neg_log_lik = numeric::sum(s.z_sorted.iter().map(|z| z.abs())) + nf * (LN_2 + s.estimates.sigma_ml.ln());
    let mut best = f64::INFINITY;
    let mut m = 1;
    while (m as f64) < bound {
        let mut acc = 0.0;
        for i in 1..=n {
            acc += spacing(&s.sorted, i, m)?.ln();
        }
        let v = nf * ((2.0 * m as f64).ln() - nf.ln()) - acc + neg_log_lik;
        best = best.min(v);
        m += 1;
    }
    if best.is_infinite() {
        return Err(Error::EmptyWindowRange(n));
    }
    Ok(best)
}
