//! Named q-series: products of `f_k = (q^k; q^k)_∞`, the generalized cubic
//! and overcubic generating functions, Ramanujan's `φ`, `ψ`, `Ω`, and a
//! dynamic-programming partition counter used as an independent oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::series::{euler_factor, CoefficientRing, TruncatedSeries};

/// `∏_δ f_δ^{r_δ}`; zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FProduct {
    factors: BTreeMap<u64, i64>,
}

impl FProduct {
    pub fn one() -> Self {
        FProduct::default()
    }

    pub fn new(pairs: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut p = FProduct::one();
        for (d, r) in pairs {
            p.multiply_factor(d, r);
        }
        p
    }

    pub fn f(delta: u64) -> Self {
        FProduct::new([(delta, 1)])
    }

    fn multiply_factor(&mut self, delta: u64, r: i64) {
        assert!(delta >= 1, "f_0 is not defined");
        let e = self.factors.entry(delta).or_insert(0);
        *e += r;
        if *e == 0 {
            self.factors.remove(&delta);
        }
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn exponent(&self, delta: u64) -> i64 {
        self.factors.get(&delta).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &FProduct) -> FProduct {
        let mut out = self.clone();
        for (&d, &r) in &other.factors {
            out.multiply_factor(d, r);
        }
        out
    }

    pub fn pow(&self, e: i64) -> FProduct {
        FProduct::new(self.factors.iter().map(|(&d, &r)| (d, r * e)))
    }

    pub fn inv(&self) -> FProduct {
        self.pow(-1)
    }

    /// `q → q^d`.
    pub fn dilate(&self, d: u64) -> FProduct {
        FProduct::new(self.factors.iter().map(|(&k, &r)| (k * d, r)))
    }

    /// Congruent product modulo `m`, using `f_δ^{p^k} ≡ f_{δp}^{p^{k−1}}
    /// (mod p^k)` to shrink exponents when `m = p^k`. Factors with
    /// `δ ≥ order` are dropped since they are `1` to that order.
    pub fn reduce_for_modulus(&self, m: u64, order: usize) -> FProduct {
        let mut cur: BTreeMap<u64, i64> = self.factors.clone();
        if let Some((p, _)) = prime_power(m) {
            let pk = m as i64;
            let half = pk / 2;
            loop {
                let big = cur.iter().find(|&(_, &r)| r > half || r < -half).map(|(&d, &r)| (d, r));
                let Some((d, r)) = big else { break };
                // r = a·p^k + b with b in the symmetric window (−p^k/2, p^k/2]
                let mut b = r.rem_euclid(pk);
                if b > half {
                    b -= pk;
                }
                let a = (r - b) / pk;
                let mut next = FProduct { factors: cur };
                next.multiply_factor(d, b - r);
                next.multiply_factor(d * p, a * (pk / p as i64));
                cur = next.factors;
            }
        }
        cur.retain(|&d, _| (d as usize) < order);
        FProduct { factors: cur }
    }

    /// Leading exponent `(1/24) Σ δ r_δ` of the matching eta quotient, times 24.
    pub fn weighted_sum(&self) -> i64 {
        self.factors.iter().map(|(&d, &r)| d as i64 * r).sum()
    }
}

impl fmt::Display for FProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |sign: i64| -> Vec<String> {
            self.factors
                .iter()
                .filter(|(_, &r)| r.signum() == sign)
                .map(|(&d, &r)| if r.abs() == 1 { format!("f{d}") } else { format!("f{d}^{}", r.abs()) })
                .collect()
        };
        let num = part(1);
        let den = part(-1);
        let num_s = if num.is_empty() { "1".to_string() } else { num.join(" ") };
        match den.len() {
            0 => write!(f, "{num_s}"),
            1 => write!(f, "{num_s}/{}", den[0]),
            _ => write!(f, "{num_s}/({})", den.join(" ")),
        }
    }
}

impl FromStr for FProduct {
    type Err = Error;

    /// Accepts forms like `f2^5/(f1^2 f4^2)`, `f1^48 f2^-2 f7^-7`, `1/f1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Expr(format!("{msg} in f-product `{s}`"));
        let mut parts = s.splitn(2, '/');
        let num = parts.next().unwrap_or("");
        let den = parts.next();
        if den.is_some_and(|d| d.contains('/')) {
            return Err(bad("more than one `/`"));
        }
        let mut out = FProduct::one();
        for (text, sign) in [(num, 1i64), (den.unwrap_or(""), -1)] {
            let text = text.trim().trim_start_matches('(').trim_end_matches(')');
            for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
                if tok == "1" {
                    continue;
                }
                let body = tok.strip_prefix('f').ok_or_else(|| bad("expected f<k>"))?;
                let (d, e) = match body.split_once('^') {
                    Some((d, e)) => (d, e.trim_start_matches('(').trim_end_matches(')')),
                    None => (body, "1"),
                };
                let d: u64 = d.parse().map_err(|_| bad("bad index"))?;
                let e: i64 = e.parse().map_err(|_| bad("bad exponent"))?;
                if d == 0 {
                    return Err(bad("f0"));
                }
                out.multiply_factor(d, sign * e);
            }
        }
        Ok(out)
    }
}

/// Rough operation counts for the two ways of building `f_δ^{|r|}`.
fn sparse_cost(delta: u64, r: i64, order: usize) -> f64 {
    let terms = 2.0 * (2.0 * order as f64 / (3.0 * delta as f64)).sqrt() + 1.0;
    r.unsigned_abs() as f64 * terms * order as f64
}

fn transform_cost(n: usize) -> f64 {
    let n = n.max(2) as f64;
    40.0 * n * n.log2()
}

fn dense_power_cost(delta: u64, r: i64, order: usize) -> f64 {
    let n = order.div_ceil(delta as usize);
    let steps = 2.0 * (64 - r.unsigned_abs().leading_zeros()) as f64;
    steps * transform_cost(n)
}

/// Above this many estimated operations the modular path switches from
/// sparse multiply/divide to dense transforms.
const SPARSE_BUDGET: f64 = 3.0e8;

/// `f_δ^e` (`e ≥ 0`) as a dense series of the given order, built by
/// whichever of repeated sparse multiplication or transform powering is
/// cheaper.
fn factor_power(ring: CoefficientRing, delta: u64, e: i64, order: usize) -> TruncatedSeries {
    debug_assert!(e >= 0);
    if sparse_cost(delta, e, order) <= dense_power_cost(delta, e, order) || ring.modulus().is_none() {
        let s = euler_factor(delta as usize, order);
        let mut acc = TruncatedSeries::one(ring, order);
        for _ in 0..e {
            acc = acc.mul_sparse(&s);
        }
        acc
    } else {
        let n = order.div_ceil(delta as usize);
        let base = euler_factor(1, n).densify(ring, n);
        base.pow(e).expect("positive power").dilate_to(delta as usize, order)
    }
}

/// Expands `∏ f_δ^{r_δ}` to `order` coefficients in `ring`.
///
/// Modulo a prime power the product is first rewritten with the freshman's
/// dream. Small jobs multiply and divide by sparse pentagonal series
/// directly; large modular jobs build numerator and denominator densely and
/// invert the denominator once.
pub fn expand_fproduct(p: &FProduct, ring: CoefficientRing, order: usize) -> TruncatedSeries {
    assert!(order >= 1, "order must be positive");
    let p = match ring {
        CoefficientRing::Mod(m) => p.reduce_for_modulus(m as u64, order),
        CoefficientRing::ExactInteger => p.reduce_for_modulus(0, order),
    };
    let total: f64 = p.factors().iter().map(|(&d, &r)| sparse_cost(d, r, order)).sum();
    if ring.modulus().is_none() || total <= SPARSE_BUDGET {
        let mut acc = TruncatedSeries::one(ring, order);
        for (&d, &r) in p.factors() {
            let s = euler_factor(d as usize, order);
            for _ in 0..r.unsigned_abs() {
                acc = if r > 0 { acc.mul_sparse(&s) } else { acc.div_sparse(&s) };
            }
        }
        return acc;
    }
    let powers: Vec<(bool, TruncatedSeries)> =
        p.factors().par_iter().map(|(&d, &r)| (r > 0, factor_power(ring, d, r.abs(), order))).collect();
    let mut num = TruncatedSeries::one(ring, order);
    let mut den = TruncatedSeries::one(ring, order);
    for (positive, s) in powers {
        if positive {
            num = num.mul(&s).expect("same ring");
        } else {
            den = den.mul(&s).expect("same ring");
        }
    }
    let den_inv = den.invert().expect("f-products have constant term 1");
    num.mul(&den_inv).expect("same ring")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `a_c(n)`: generating function `1/(f_1 f_2^{c−1})`.
    GeneralizedCubic,
    /// `ā_c(n)`: generating function `f_4^{c−1}/(f_1^2 f_2^{2c−3})`.
    GeneralizedOvercubic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionFamily {
    pub kind: FamilyKind,
    pub c: u64,
}

impl PartitionFamily {
    pub fn cubic(c: u64) -> Self {
        assert!(c >= 1, "c must be at least 1");
        PartitionFamily { kind: FamilyKind::GeneralizedCubic, c }
    }

    pub fn overcubic(c: u64) -> Self {
        assert!(c >= 1, "c must be at least 1");
        PartitionFamily { kind: FamilyKind::GeneralizedOvercubic, c }
    }

    pub fn fproduct(&self) -> FProduct {
        let c = self.c as i64;
        match self.kind {
            FamilyKind::GeneralizedCubic => FProduct::new([(1, -1), (2, -(c - 1))]),
            FamilyKind::GeneralizedOvercubic => FProduct::new([(4, c - 1), (1, -2), (2, -(2 * c - 3))]),
        }
    }

    /// Short label: `a37`, `abar6`.
    pub fn label(&self) -> String {
        match self.kind {
            FamilyKind::GeneralizedCubic => format!("a{}", self.c),
            FamilyKind::GeneralizedOvercubic => format!("abar{}", self.c),
        }
    }
}

impl fmt::Display for PartitionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn genfun(f: PartitionFamily, ring: CoefficientRing, order: usize) -> TruncatedSeries {
    expand_fproduct(&f.fproduct(), ring, order)
}

pub const ORACLE_LIMIT: usize = 2000;

/// Counts colored (over)partitions of `0..=n` by dynamic programming over the
/// product form, one geometric factor `1/(1 − q^j)` or `(1 + q^j)` at a time.
pub fn oracle_counts(f: PartitionFamily, n: usize) -> Result<Vec<BigInt>> {
    if n > ORACLE_LIMIT {
        return Err(Error::ScaleExceeded { n, limit: ORACLE_LIMIT });
    }
    let mut dp = vec![BigInt::zero(); n + 1];
    dp[0] = BigInt::from(1);
    let unbounded = |dp: &mut Vec<BigInt>, j: usize| {
        for i in j..=n {
            let prev = dp[i - j].clone();
            dp[i] += prev;
        }
    };
    let at_most_once = |dp: &mut Vec<BigInt>, j: usize| {
        for i in (j..=n).rev() {
            let prev = dp[i - j].clone();
            dp[i] += prev;
        }
    };
    let extra = f.c as usize - 1;
    for j in 1..=n {
        // every part size gets one plain color
        match f.kind {
            FamilyKind::GeneralizedCubic => unbounded(&mut dp, j),
            FamilyKind::GeneralizedOvercubic => {
                unbounded(&mut dp, j);
                at_most_once(&mut dp, j);
            }
        }
        // even part sizes get c − 1 further colors
        if j % 2 == 0 {
            for _ in 0..extra {
                match f.kind {
                    FamilyKind::GeneralizedCubic => unbounded(&mut dp, j),
                    FamilyKind::GeneralizedOvercubic => {
                        unbounded(&mut dp, j);
                        at_most_once(&mut dp, j);
                    }
                }
            }
        }
    }
    Ok(dp)
}

pub fn oracle_count(f: PartitionFamily, n: usize) -> Result<BigInt> {
    Ok(oracle_counts(f, n)?.pop().expect("nonempty"))
}

/// `φ(q) = Σ_{k∈Z} q^{k²}` by direct summation.
pub fn phi_theta(ring: CoefficientRing, order: usize) -> TruncatedSeries {
    let mut v = vec![0i64; order];
    if order > 0 {
        v[0] = 1;
    }
    let mut k = 1usize;
    while k * k < order {
        v[k * k] = 2;
        k += 1;
    }
    TruncatedSeries::from_i64s(ring, &v)
}

pub fn phi_fproduct() -> FProduct {
    FProduct::new([(2, 5), (1, -2), (4, -2)])
}

/// `φ(q)`, built by theta summation and checked against `f_2^5/(f_1^2 f_4^2)`.
pub fn phi(ring: CoefficientRing, order: usize) -> TruncatedSeries {
    let theta = phi_theta(ring, order);
    let product = expand_fproduct(&phi_fproduct(), ring, order);
    assert_eq!(theta, product, "theta and product forms of φ disagree");
    theta
}

pub fn psi_fproduct() -> FProduct {
    FProduct::new([(2, 2), (1, -1)])
}

pub fn omega_fproduct() -> FProduct {
    FProduct::new([(2, 2), (3, 1), (12, 1), (1, -1), (4, -1), (6, -1)])
}

/// `ψ(q) = f_2^2/f_1`.
pub fn psi(ring: CoefficientRing, order: usize) -> TruncatedSeries {
    expand_fproduct(&psi_fproduct(), ring, order)
}

/// `Ω(q) = f_2^2 f_3 f_12/(f_1 f_4 f_6)`.
pub fn omega(ring: CoefficientRing, order: usize) -> TruncatedSeries {
    expand_fproduct(&omega_fproduct(), ring, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    const Z: CoefficientRing = CoefficientRing::ExactInteger;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_bigints().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn partition_numbers_from_product() {
        assert_eq!(ints(&expand_fproduct(&FProduct::new([(1, -1)]), Z, 6)), vec![1, 1, 2, 3, 5, 7]);
        assert_eq!(expand_fproduct(&FProduct::one(), Z, 9), TruncatedSeries::one(Z, 9));
        let s = expand_fproduct(&FProduct::new([(1, 48), (2, -2), (7, -7)]), CoefficientRing::Mod(49), 100);
        assert_eq!(s.coeff(0), BigInt::from(1));
    }

    #[test]
    fn freshman_reduction_rewrites_exponents() {
        let p = FProduct::new([(1, 48), (2, -2), (7, -7)]);
        assert_eq!(p.reduce_for_modulus(49, 1000), FProduct::new([(1, -1), (2, -2)]));
        let q = FProduct::new([(1, 960), (2, -24), (31, -31)]);
        assert_eq!(q.reduce_for_modulus(961, 10_000), FProduct::new([(1, -1), (2, -24)]));
        // small exponents and composite moduli are left alone
        assert_eq!(p.reduce_for_modulus(12, 1000), p);
        assert_eq!(FProduct::new([(1, -2)]).reduce_for_modulus(4, 100), FProduct::new([(1, -2)]));
        // factors beyond the order are 1
        assert_eq!(FProduct::new([(1, 1), (50, 3)]).reduce_for_modulus(0, 50), FProduct::f(1));
    }

    #[test]
    fn freshman_reduction_preserves_the_series() {
        let cases = [
            (FProduct::new([(1, 817)]), 43u32),
            (FProduct::new([(1, 48), (2, -2), (7, -7)]), 49),
            (FProduct::new([(1, -37), (2, 9)]), 16),
            (FProduct::new([(3, 20), (1, -5)]), 9),
        ];
        for (p, m) in cases {
            let ring = CoefficientRing::Mod(m);
            let direct = expand_fproduct(&p, Z, 300).reduce(ring).unwrap();
            assert_eq!(expand_fproduct(&p, ring, 300), direct, "{p} mod {m}");
        }
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        let ring = CoefficientRing::Mod(6889);
        let p = FProduct::new([(1, -1), (2, -76)]);
        let order = 60_000;
        let dense = expand_fproduct(&p, ring, order);
        let mut sparse = TruncatedSeries::one(ring, order);
        sparse = sparse.div_sparse(&euler_factor(1, order));
        let f2 = euler_factor(2, order);
        for _ in 0..76 {
            sparse = sparse.div_sparse(&f2);
        }
        assert_eq!(dense, sparse);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["f2^5/(f1^2 f4^2)", "1/f1", "f1^48 f2^-2 f7^-7", "f6 f9 f18/f12^3", "1"] {
            let p: FProduct = s.parse().unwrap();
            let again: FProduct = p.to_string().parse().unwrap();
            assert_eq!(p, again, "{s}");
        }
        assert_eq!("f2^5/(f1^2 f4^2)".parse::<FProduct>().unwrap(), phi_fproduct());
        assert!("f0".parse::<FProduct>().is_err());
        assert!("g1".parse::<FProduct>().is_err());
    }

    #[test]
    fn family_products() {
        assert_eq!(PartitionFamily::cubic(1).fproduct(), FProduct::new([(1, -1)]));
        assert_eq!(PartitionFamily::overcubic(1).fproduct(), FProduct::new([(1, -2), (2, 1)]));
        assert_eq!(PartitionFamily::overcubic(3).fproduct(), FProduct::new([(4, 2), (1, -2), (2, -3)]));
    }

    #[test]
    fn small_values() {
        for c in 1..8 {
            assert_eq!(genfun(PartitionFamily::cubic(c), Z, 3).coeff(0), BigInt::from(1));
        }
        assert_eq!(genfun(PartitionFamily::cubic(1), Z, 6).coeff(5), BigInt::from(7));
        let abar1 = ints(&genfun(PartitionFamily::overcubic(1), Z, 3));
        assert_eq!(abar1, vec![1, 2, 4]);
    }

    #[test]
    fn oracle_agrees_with_genfun() {
        for c in 1..=6 {
            for f in [PartitionFamily::cubic(c), PartitionFamily::overcubic(c)] {
                let oracle = oracle_counts(f, 40).unwrap();
                assert_eq!(genfun(f, Z, 41).to_bigints(), oracle, "{f}");
            }
        }
        assert_eq!(oracle_count(PartitionFamily::cubic(4), 0).unwrap(), BigInt::from(1));
        assert!(oracle_count(PartitionFamily::cubic(2), 2001).is_err());
    }

    #[test]
    fn overpartitions_by_enumeration() {
        // overpartitions of n: partitions where the first occurrence of each
        // distinct part may be overlined, so 2^{#distinct parts} each
        fn parts(n: usize, max: usize, distinct: u32, acc: &mut u64) {
            if n == 0 {
                *acc += 1 << distinct;
                return;
            }
            for p in (1..=max.min(n)).rev() {
                for mult in 1..=n / p {
                    parts(n - p * mult, p - 1, distinct + 1, acc);
                }
            }
        }
        let g = genfun(PartitionFamily::overcubic(1), Z, 15);
        for n in 0..15 {
            let mut acc = 0;
            parts(n, n, 0, &mut acc);
            assert_eq!(g.coeff(n), BigInt::from(acc), "n={n}");
        }
    }

    #[test]
    fn theta_functions() {
        assert_eq!(ints(&phi(Z, 10)), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        assert_eq!(phi_theta(Z, 500), expand_fproduct(&phi_fproduct(), Z, 500));
        assert_eq!(psi(Z, 5).coeff(0), BigInt::from(1));
        assert_eq!(omega(Z, 5).coeff(0), BigInt::from(1));
        // ψ(q) = Σ q^{k(k+1)/2}
        let triangular: Vec<i64> = (0..30).map(|n| if crate::arith::is_square(8 * n + 1) { 1 } else { 0 }).collect();
        assert_eq!(ints(&psi(Z, 30)), triangular);
    }
}
