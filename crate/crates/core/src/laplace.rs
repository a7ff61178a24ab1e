//! Laplace distribution functions, maximum-likelihood and moment estimates,
//! and the standardized sample that most statistics consume.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::numeric;

/// Standard Laplace cdf Ψ(z).
pub fn laplace_cdf(z: f64) -> f64 {
    if z <= 0.0 {
        0.5 * z.exp()
    } else {
        1.0 - 0.5 * (-z).exp()
    }
}

/// Standard Laplace density ψ(z) = ½e^{−|z|}.
pub fn laplace_pdf(z: f64) -> f64 {
    0.5 * (-z.abs()).exp()
}

/// log Ψ(z), exact in both tails.
pub fn laplace_log_cdf(z: f64) -> f64 {
    if z <= 0.0 {
        z - LN_2
    } else {
        (-0.5 * (-z).exp()).ln_1p()
    }
}

/// log(1 − Ψ(z)), exact in both tails.
pub fn laplace_log_sf(z: f64) -> f64 {
    laplace_log_cdf(-z)
}

/// Standard Laplace quantile Ψ⁻¹(u) for u in (0, 1).
pub fn laplace_quantile(u: f64) -> f64 {
    if u <= 0.5 {
        (2.0 * u).ln()
    } else {
        -(2.0 * (1.0 - u)).ln()
    }
}

/// Location-scale pair of a Laplace law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceParams {
    pub mu: f64,
    pub sigma: f64,
}

impl LaplaceParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParams { model: "Laplace", reason: format!("mu = {mu}, sigma = {sigma}") });
        }
        Ok(Self { mu, sigma })
    }

    pub fn cdf(&self, x: f64) -> f64 {
        laplace_cdf((x - self.mu) / self.sigma)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        laplace_pdf((x - self.mu) / self.sigma) / self.sigma
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        -((x - self.mu) / self.sigma).abs() - (2.0 * self.sigma).ln()
    }
}

/// Raw observations together with their order statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewObservations { min: 2, got: values.len() });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { values, sorted })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// ML (median, mean absolute deviation about the median) and moment estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimates {
    pub mu_ml: f64,
    pub sigma_ml: f64,
    pub mean: f64,
    /// Standard deviation with the 1/n divisor.
    pub sd: f64,
    pub sigma_mom: f64,
}

/// Median of already sorted data: the central order statistic for odd n,
/// the midpoint of the two central ones for even n.
pub fn sorted_median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

pub fn estimate(sample: &Sample) -> Result<Estimates> {
    estimate_sorted(sample.sorted())
}

pub(crate) fn estimate_sorted(sorted: &[f64]) -> Result<Estimates> {
    let n = sorted.len() as f64;
    let mu_ml = sorted_median(sorted);
    let sigma_ml = numeric::sum(sorted.iter().map(|x| (x - mu_ml).abs())) / n;
    if !(sigma_ml > 0.0) {
        return Err(Error::ConstantSample);
    }
    let mean = mu_ml + numeric::mean(sorted.iter().map(|x| x - mu_ml));
    let var = numeric::sum(sorted.iter().map(|x| (x - mean) * (x - mean))) / n;
    let sd = var.sqrt();
    Ok(Estimates { mu_ml, sigma_ml, mean, sd, sigma_mom: sd / std::f64::consts::SQRT_2 })
}

/// A sample standardized by its ML estimates.
///
/// `z_sorted[i] = (x_(i) − μ̂)/σ̂` and `u_sorted[i] = Ψ(z_sorted[i])`, both
/// ascending. The raw order statistics are kept since several statistics
/// work on spacings of the original data.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedSample {
    pub estimates: Estimates,
    pub sorted: Vec<f64>,
    pub z_sorted: Vec<f64>,
    pub u_sorted: Vec<f64>,
}

impl StandardizedSample {
    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    pub fn from_sorted(sorted: Vec<f64>) -> Result<Self> {
        let estimates = estimate_sorted(&sorted)?;
        let z_sorted: Vec<f64> = sorted.iter().map(|x| (x - estimates.mu_ml) / estimates.sigma_ml).collect();
        let u_sorted = z_sorted.iter().map(|&z| laplace_cdf(z)).collect();
        Ok(Self { estimates, sorted, z_sorted, u_sorted })
    }
}

pub fn standardize(sample: &Sample) -> Result<StandardizedSample> {
    StandardizedSample::from_sorted(sample.sorted().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn cdf_reference_points() {
        assert_eq!(laplace_cdf(0.0), 0.5);
        assert!(close(laplace_cdf(LN_2), 0.75, 1e-15));
        assert!(close(laplace_cdf(-LN_2), 0.25, 1e-15));
    }

    #[test]
    fn pdf_reference_points() {
        assert_eq!(laplace_pdf(0.0), 0.5);
        assert!(close(laplace_pdf(1.0), 0.5 * (-1.0f64).exp(), 1e-15));
        assert_eq!(laplace_pdf(-1.0), laplace_pdf(1.0));
    }

    #[test]
    fn log_cdf_matches_direct_log() {
        for &z in &[-30.0, -2.0, -0.1, 0.0, 0.3, 4.0, 20.0] {
            assert!(close(laplace_log_cdf(z), laplace_cdf(z).ln(), 1e-13), "z = {z}");
            let sf = if z > 0.0 { 0.5 * (-z).exp() } else { 1.0 - 0.5 * z.exp() };
            assert!(close(laplace_log_sf(z), sf.ln(), 1e-13), "z = {z}");
        }
        // far tail where 1 − Ψ(z) underflows in double precision
        assert!(close(laplace_log_sf(800.0), -800.0 - LN_2, 1e-15));
    }

    #[test]
    fn quantile_reference_points() {
        assert_eq!(laplace_quantile(0.5), 0.0);
        assert!(close(laplace_quantile(0.75), LN_2, 1e-15));
    }

    #[test]
    fn estimates_odd_sample() {
        let s = Sample::new(vec![4.0, 1.0, 2.0]).unwrap();
        let e = estimate(&s).unwrap();
        assert_eq!(e.mu_ml, 2.0);
        assert_eq!(e.sigma_ml, 1.0);
    }

    #[test]
    fn estimates_even_sample() {
        let s = Sample::new(vec![3.0, 1.0, 4.0, 2.0]).unwrap();
        let e = estimate(&s).unwrap();
        assert_eq!(e.mu_ml, 2.5);
        assert_eq!(e.sigma_ml, 1.0);
        assert_eq!(e.mean, 2.5);
        assert!(close(e.sd, 1.25f64.sqrt(), 1e-15));
        assert!(close(e.sigma_mom, (1.25f64 / 2.0).sqrt(), 1e-15));
    }

    #[test]
    fn constant_sample_is_rejected() {
        let s = Sample::new(vec![3.0, 3.0, 3.0]).unwrap();
        assert_eq!(estimate(&s), Err(Error::ConstantSample));
        assert_eq!(standardize(&s), Err(Error::ConstantSample));
    }

    #[test]
    fn sample_validation() {
        assert!(matches!(Sample::new(vec![1.0]), Err(Error::TooFewObservations { .. })));
        assert_eq!(Sample::new(vec![1.0, f64::NAN]), Err(Error::NonFinite { index: 1 }));
    }

    #[test]
    fn standardize_three_points() {
        let s = Sample::new(vec![1.0, -1.0, 0.0]).unwrap();
        let st = standardize(&s).unwrap();
        assert!(close(st.estimates.sigma_ml, 2.0 / 3.0, 1e-15));
        let expect_z = [-1.5, 0.0, 1.5];
        let expect_u = [0.5 * (-1.5f64).exp(), 0.5, 1.0 - 0.5 * (-1.5f64).exp()];
        for i in 0..3 {
            assert!(close(st.z_sorted[i], expect_z[i], 1e-15));
            assert!(close(st.u_sorted[i], expect_u[i], 1e-15));
        }
        assert!((st.u_sorted[0] - 0.11157).abs() < 1e-5);
        assert!((st.u_sorted[2] - 0.88843).abs() < 1e-5);
    }

    #[test]
    fn odd_median_maps_to_zero() {
        let st = standardize(&Sample::new(vec![1.0, 2.0, 4.0]).unwrap()).unwrap();
        assert_eq!(st.z_sorted.iter().filter(|&&z| z == 0.0).count(), 1);
    }

    proptest! {
        #[test]
        fn quantile_inverts_cdf(u in 1e-12f64..(1.0 - 1e-12)) {
            let back = laplace_cdf(laplace_quantile(u));
            prop_assert!((back - u).abs() <= 1e-12);
        }

        #[test]
        fn standardization_is_affine_equivariant(
            xs in proptest::collection::vec(-100.0f64..100.0, 3..40),
            a in -1.0e3f64..1.0e3,
            b in 1.0e-3f64..1.0e3,
        ) {
            let Ok(base) = standardize(&Sample::new(xs.clone()).unwrap()) else { return Ok(()) };
            let moved = standardize(&Sample::new(xs.iter().map(|x| a + b * x).collect()).unwrap()).unwrap();
            for (z0, z1) in base.z_sorted.iter().zip(&moved.z_sorted) {
                prop_assert!((z0 - z1).abs() <= 1e-12 * (1.0 + z0.abs()) * 1e3);
            }
            for (u0, u1) in base.u_sorted.iter().zip(&moved.u_sorted) {
                prop_assert!((u0 - u1).abs() <= 1e-9);
            }
        }

        #[test]
        fn estimates_ignore_order(mut xs in proptest::collection::vec(-50.0f64..50.0, 2..30)) {
            let e0 = estimate(&Sample::new(xs.clone()).unwrap());
            xs.reverse();
            let e1 = estimate(&Sample::new(xs).unwrap());
            prop_assert_eq!(e0, e1);
        }

        #[test]
        fn u_strictly_inside_unit_interval(xs in proptest::collection::vec(-1.0e3f64..1.0e3, 2..50)) {
            if let Ok(st) = standardize(&Sample::new(xs).unwrap()) {
                // 1 − ½e^{−z} rounds to 1 in double precision once z exceeds ~37
                for (&u, &z) in st.u_sorted.iter().zip(&st.z_sorted) {
                    if z.abs() < 30.0 {
                        prop_assert!(u > 0.0 && u < 1.0);
                    }
                }
                prop_assert!(st.u_sorted.windows(2).all(|w| w[0] <= w[1]));
                let n = st.n() as f64;
                let s1 = (st.estimates.mean - st.estimates.mu_ml) / st.estimates.sigma_ml;
                let zsum: f64 = st.z_sorted.iter().sum();
                prop_assert!((zsum - n * s1).abs() <= 1e-8 * (1.0 + zsum.abs()));
            }
        }
    }
}
