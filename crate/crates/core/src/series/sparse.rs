//! Sparse ±1 series and Euler's pentagonal expansion of `f_k`.

use serde::{Deserialize, Serialize};

use super::{CoefficientRing, TruncatedSeries};

/// A series whose nonzero coefficients are all `±1`, stored as
/// `(exponent, sign)` pairs with strictly increasing exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseSignedSeries {
    terms: Vec<(usize, i8)>,
}

impl SparseSignedSeries {
    /// Builds from `(exponent, sign)` pairs. Panics if exponents are not
    /// strictly increasing or a sign is not `±1`.
    pub fn new(terms: Vec<(usize, i8)>) -> Self {
        assert!(terms.windows(2).all(|w| w[0].0 < w[1].0), "sparse exponents must be strictly increasing");
        assert!(terms.iter().all(|&(_, s)| s == 1 || s == -1), "signs must be ±1");
        SparseSignedSeries { terms }
    }

    pub fn terms(&self) -> &[(usize, i8)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Dense series in `ring` truncated at `order`.
    pub fn densify(&self, ring: CoefficientRing, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![0i64; order];
        for &(e, s) in &self.terms {
            if e < order {
                coeffs[e] = s as i64;
            }
        }
        TruncatedSeries::from_i64s(ring, &coeffs)
    }
}

/// `f_k = ∏_{n≥1} (1 − q^{kn})` truncated below `q^order`, via
/// `Σ_j (−1)^j q^{k j(3j−1)/2}` over all integers `j`.
pub fn euler_factor(k: usize, order: usize) -> SparseSignedSeries {
    assert!(k >= 1 && order >= 1, "euler_factor needs k ≥ 1 and order ≥ 1");
    let mut terms = vec![(0usize, 1i8)];
    let mut j: usize = 1;
    loop {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        // generalized pentagonal numbers j(3j−1)/2 and j(3j+1)/2
        let lo = j * (3 * j - 1) / 2 * k;
        if lo >= order {
            break;
        }
        terms.push((lo, sign));
        let hi = j * (3 * j + 1) / 2 * k;
        if hi < order {
            terms.push((hi, sign));
        }
        j += 1;
    }
    SparseSignedSeries { terms }
}
