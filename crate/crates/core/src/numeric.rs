//! Small numeric helpers shared by the statistics.

/// Length above which sums switch to Neumaier compensated summation.
pub const COMPENSATED_THRESHOLD: usize = 10_000;

/// Sums an iterator, using compensated summation for long inputs.
pub fn sum<I>(values: I) -> f64
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: ExactSizeIterator,
{
    let iter = values.into_iter();
    if iter.len() < COMPENSATED_THRESHOLD {
        return iter.sum();
    }
    let mut total = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in iter {
        let t = total + v;
        if total.abs() >= v.abs() {
            comp += (total - t) + v;
        } else {
            comp += (v - t) + total;
        }
        total = t;
    }
    total + comp
}

pub fn mean<I>(values: I) -> f64
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: ExactSizeIterator,
{
    let iter = values.into_iter();
    let n = iter.len();
    sum(iter) / n as f64
}

/// Standard normal density.
pub fn phi(z: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut v = vec![1.0e16];
        v.extend(std::iter::repeat_n(1.0, 20_000));
        v.push(-1.0e16);
        assert_eq!(sum(v), 20_000.0);
    }

    #[test]
    fn short_sums_are_plain() {
        assert_eq!(sum([1.0, 2.0, 3.5]), 6.5);
        assert_eq!(mean([1.0, 2.0, 3.0]), 2.0);
    }
}
