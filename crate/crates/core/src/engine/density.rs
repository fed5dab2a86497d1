//! Proportion of coefficients divisible by a modulus.

use serde::{Deserialize, Serialize};

use crate::arith::{rational, Rational};
use crate::error::{Error, Result};
use crate::qfuncs::{genfun, PartitionFamily};
use crate::series::{CoefficientRing, TruncatedSeries};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    /// Every `1 ≤ n ≤ X`.
    #[default]
    Full,
    /// Only `n = s, 2s, 3s, … ≤ X`.
    Stride(usize),
}

/// `#{n ≤ X : [q^n] series ≡ 0} / #{n ≤ X}` over the sampled `n ≥ 1`.
pub fn zero_density(series: &TruncatedSeries, x: usize, sampling: Sampling) -> Result<Rational> {
    if x < 1 {
        return Err(Error::Invalid("X must be at least 1".into()));
    }
    if series.order() <= x {
        return Err(Error::OrderTooSmall { have: series.order(), need: x + 1 });
    }
    let step = match sampling {
        Sampling::Full => 1,
        Sampling::Stride(0) => return Err(Error::Invalid("stride must be positive".into())),
        Sampling::Stride(s) => s,
    };
    let (mut zeros, mut total) = (0i128, 0i128);
    for n in (step..=x).step_by(step) {
        total += 1;
        if series.coeff_is_zero(n) {
            zeros += 1;
        }
    }
    if total == 0 {
        return Err(Error::Invalid(format!("stride {step} exceeds X = {x}")));
    }
    Ok(rational(zeros, total))
}

pub fn estimate_density(f: PartitionFamily, modulus: u64, x: usize, sampling: Sampling) -> Result<Rational> {
    if x < 1 {
        return Err(Error::Invalid("X must be at least 1".into()));
    }
    let series = genfun(f, CoefficientRing::modulo(modulus)?, x + 1);
    zero_density(&series, x, sampling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::isqrt;

    #[test]
    fn mod4_density_is_forced_by_square_classes() {
        let x = 50_000usize;
        let d = estimate_density(PartitionFamily::overcubic(2), 4, x, Sampling::Full).unwrap();
        let excluded = isqrt(x as u64) + isqrt(x as u64 / 2);
        assert_eq!(excluded, 381);
        assert_eq!(d, rational(1, 1) - rational(excluded as i128, x as i128));
    }

    #[test]
    fn mod2_density() {
        // overcubic counts are even for n ≥ 1
        let d = estimate_density(PartitionFamily::overcubic(2), 2, 10_000, Sampling::Full).unwrap();
        assert_eq!(d, rational(1, 1));
        let d = estimate_density(PartitionFamily::cubic(1), 2, 1, Sampling::Full).unwrap();
        assert_eq!(d, rational(0, 1));
    }

    #[test]
    fn edge_cases() {
        for c in 1..=4 {
            let d = estimate_density(PartitionFamily::overcubic(c), 4, 1, Sampling::Full).unwrap();
            assert!(d == rational(0, 1) || d == rational(1, 1));
        }
        assert!(estimate_density(PartitionFamily::cubic(1), 2, 0, Sampling::Full).is_err());
        assert!(estimate_density(PartitionFamily::cubic(1), 2, 10, Sampling::Stride(0)).is_err());
        let s = estimate_density(PartitionFamily::overcubic(2), 4, 1000, Sampling::Stride(3)).unwrap();
        // multiples of 3 that are squares or twice squares: 9, 36, …, 18, 72, …
        let bad = (1..=333u64)
            .filter(|&j| crate::arith::is_square(3 * j) || (3 * j % 2 == 0 && crate::arith::is_square(3 * j / 2)));
        assert_eq!(s, rational(1, 1) - rational(bad.count() as i128, 333));
    }

    #[test]
    fn mod4_trend_is_non_decreasing() {
        let series = genfun(PartitionFamily::overcubic(2), CoefficientRing::Mod(4), 50_001);
        let ds: Vec<Rational> =
            [5_000, 20_000, 50_000].iter().map(|&x| zero_density(&series, x, Sampling::Full).unwrap()).collect();
        assert!(ds.windows(2).all(|w| w[0] <= w[1]));
    }
}
