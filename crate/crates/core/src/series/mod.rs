//! Truncated formal power series in `q` over the integers or `Z/mZ`.
//!
//! A [`TruncatedSeries`] stores the coefficients of `q^0 … q^{N-1}`; `N` is
//! its order. Binary operations truncate to the smaller order of their
//! inputs and never extend a series implicitly.

pub mod conv;
mod sparse;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::inv_mod;
use crate::error::{Error, Result};

pub use sparse::{euler_factor, SparseSignedSeries};

/// Orders above this switch dense inversion from the quadratic recurrence to
/// Newton iteration on top of the convolution backend.
const NEWTON_INVERT_ORDER: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    ExactInteger,
    Mod(u32),
}

impl CoefficientRing {
    /// `Z/mZ` with `2 ≤ m < 2^31`.
    pub fn modulo(m: u64) -> Result<Self> {
        if (2..1 << 31).contains(&m) {
            Ok(CoefficientRing::Mod(m as u32))
        } else {
            Err(Error::InvalidModulus(m))
        }
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            CoefficientRing::ExactInteger => None,
            CoefficientRing::Mod(m) => Some(m),
        }
    }

    fn residue_of(m: u32, v: &BigInt) -> u32 {
        v.mod_floor(&BigInt::from(m)).to_u32().expect("residue fits")
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::ExactInteger => write!(f, "Z"),
            CoefficientRing::Mod(m) => write!(f, "Z/{m}Z"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs {
    Exact(Vec<BigInt>),
    Residues(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: CoefficientRing,
    coeffs: Coeffs,
}

#[inline(always)]
fn add_mod(a: u32, b: u32, m: u32) -> u32 {
    let s = a as u64 + b as u64;
    if s >= m as u64 {
        (s - m as u64) as u32
    } else {
        s as u32
    }
}

#[inline(always)]
fn sub_mod(a: u32, b: u32, m: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + (m - b)
    }
}

impl TruncatedSeries {
    pub fn zero(ring: CoefficientRing, order: usize) -> Self {
        let coeffs = match ring {
            CoefficientRing::ExactInteger => Coeffs::Exact(vec![BigInt::zero(); order]),
            CoefficientRing::Mod(_) => Coeffs::Residues(vec![0; order]),
        };
        TruncatedSeries { ring, coeffs }
    }

    pub fn one(ring: CoefficientRing, order: usize) -> Self {
        Self::monomial(ring, order, 0, 1)
    }

    /// `c · q^e` truncated at `order` (zero if `e ≥ order`).
    pub fn monomial(ring: CoefficientRing, order: usize, e: usize, c: i64) -> Self {
        let mut s = Self::zero(ring, order);
        if e < order {
            s.set(e, &BigInt::from(c));
        }
        s
    }

    pub fn from_i64s(ring: CoefficientRing, values: &[i64]) -> Self {
        match ring {
            CoefficientRing::ExactInteger => {
                TruncatedSeries { ring, coeffs: Coeffs::Exact(values.iter().map(|&v| BigInt::from(v)).collect()) }
            }
            CoefficientRing::Mod(m) => TruncatedSeries {
                ring,
                coeffs: Coeffs::Residues(values.iter().map(|&v| v.rem_euclid(m as i64) as u32).collect()),
            },
        }
    }

    pub fn from_bigints(ring: CoefficientRing, values: Vec<BigInt>) -> Self {
        match ring {
            CoefficientRing::ExactInteger => TruncatedSeries { ring, coeffs: Coeffs::Exact(values) },
            CoefficientRing::Mod(m) => TruncatedSeries {
                ring,
                coeffs: Coeffs::Residues(values.iter().map(|v| CoefficientRing::residue_of(m, v)).collect()),
            },
        }
    }

    /// Residues must already lie in `[0, m)`.
    pub fn from_residues(modulus: u32, values: Vec<u32>) -> Self {
        assert!(values.iter().all(|&v| v < modulus), "residue out of range");
        TruncatedSeries { ring: CoefficientRing::Mod(modulus), coeffs: Coeffs::Residues(values) }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn order(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(v) => v.len(),
            Coeffs::Residues(v) => v.len(),
        }
    }

    /// Coefficient of `q^n` (a representative in `[0, m)` for modular rings).
    pub fn coeff(&self, n: usize) -> BigInt {
        match &self.coeffs {
            Coeffs::Exact(v) => v[n].clone(),
            Coeffs::Residues(v) => BigInt::from(v[n]),
        }
    }

    pub fn coeff_is_zero(&self, n: usize) -> bool {
        match &self.coeffs {
            Coeffs::Exact(v) => v[n].is_zero(),
            Coeffs::Residues(v) => v[n] == 0,
        }
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        (0..self.order()).map(|n| self.coeff(n)).collect()
    }

    pub fn residues(&self) -> Option<&[u32]> {
        match &self.coeffs {
            Coeffs::Residues(v) => Some(v),
            Coeffs::Exact(_) => None,
        }
    }

    pub fn exact_coeffs(&self) -> Option<&[BigInt]> {
        match &self.coeffs {
            Coeffs::Exact(v) => Some(v),
            Coeffs::Residues(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        (0..self.order()).find(|&n| !self.coeff_is_zero(n))
    }

    fn set(&mut self, n: usize, v: &BigInt) {
        match &mut self.coeffs {
            Coeffs::Exact(c) => c[n] = v.clone(),
            Coeffs::Residues(c) => {
                let m = self.ring.modulus().expect("modular ring");
                c[n] = CoefficientRing::residue_of(m, v);
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring, right: other.ring })
        }
    }

    /// Image in `target`: exact series reduce to any `Z/mZ`; `Z/mZ` reduces to
    /// `Z/m'Z` when `m' | m`.
    pub fn reduce(&self, target: CoefficientRing) -> Result<Self> {
        match (self.ring, target) {
            (a, b) if a == b => Ok(self.clone()),
            (CoefficientRing::ExactInteger, CoefficientRing::Mod(_)) => {
                Ok(Self::from_bigints(target, self.exact_coeffs().unwrap().to_vec()))
            }
            (CoefficientRing::Mod(m), CoefficientRing::Mod(m2)) if m % m2 == 0 => {
                let v = self.residues().unwrap().iter().map(|&x| x % m2).collect();
                Ok(Self::from_residues(m2, v))
            }
            (from, to) => Err(Error::IncompatibleReduction { from, to }),
        }
    }

    /// Keeps the first `min(order, self.order())` coefficients.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(v[..n].to_vec()),
            Coeffs::Residues(v) => Coeffs::Residues(v[..n].to_vec()),
        };
        TruncatedSeries { ring: self.ring, coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b, add_mod)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b, sub_mod)
    }

    fn zip_with(
        &self,
        other: &Self,
        exact: impl Fn(&BigInt, &BigInt) -> BigInt,
        modular: impl Fn(u32, u32, u32) -> u32,
    ) -> Result<Self> {
        self.check_ring(other)?;
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => Coeffs::Exact(a.iter().zip(b).map(|(x, y)| exact(x, y)).collect()),
            (Coeffs::Residues(a), Coeffs::Residues(b)) => {
                let m = self.ring.modulus().unwrap();
                Coeffs::Residues(a.iter().zip(b).map(|(&x, &y)| modular(x, y, m)).collect())
            }
            _ => unreachable!("ring checked"),
        };
        Ok(TruncatedSeries { ring: self.ring, coeffs })
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(v.iter().map(|x| x * c).collect()),
            Coeffs::Residues(v) => {
                let m = self.ring.modulus().unwrap() as u64;
                let c = CoefficientRing::residue_of(m as u32, c) as u64;
                Coeffs::Residues(v.iter().map(|&x| (x as u64 * c % m) as u32).collect())
            }
        };
        TruncatedSeries { ring: self.ring, coeffs }
    }

    /// `q^s · self`, keeping the same order.
    pub fn shift(&self, s: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(self.ring, n);
        match (&mut out.coeffs, &self.coeffs) {
            (Coeffs::Exact(o), Coeffs::Exact(a)) => {
                if s < n {
                    o[s..n].clone_from_slice(&a[..n - s]);
                }
            }
            (Coeffs::Residues(o), Coeffs::Residues(a)) => {
                if s < n {
                    o[s..].copy_from_slice(&a[..n - s]);
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => Coeffs::Exact(exact_convolve(a, b, n)),
            (Coeffs::Residues(a), Coeffs::Residues(b)) => {
                let m = self.ring.modulus().unwrap();
                Coeffs::Residues(conv::convolve_mod(a, b, m, n))
            }
            _ => unreachable!(),
        };
        Ok(TruncatedSeries { ring: self.ring, coeffs })
    }

    pub fn square(&self) -> Self {
        let n = self.order();
        let coeffs = match &self.coeffs {
            Coeffs::Exact(a) => Coeffs::Exact(exact_convolve(a, a, n)),
            Coeffs::Residues(a) => Coeffs::Residues(conv::square_mod(a, self.ring.modulus().unwrap(), n)),
        };
        TruncatedSeries { ring: self.ring, coeffs }
    }

    /// Product with a sparse ±1 series, `O(order · terms)`.
    pub fn mul_sparse(&self, s: &SparseSignedSeries) -> Self {
        let n = self.order();
        let mut out = Self::zero(self.ring, n);
        match (&mut out.coeffs, &self.coeffs) {
            (Coeffs::Exact(o), Coeffs::Exact(a)) => {
                for &(e, sign) in s.terms() {
                    if e >= n {
                        break;
                    }
                    for (dst, src) in o[e..].iter_mut().zip(a) {
                        if sign > 0 {
                            *dst += src;
                        } else {
                            *dst -= src;
                        }
                    }
                }
            }
            (Coeffs::Residues(o), Coeffs::Residues(a)) => {
                let m = self.ring.modulus().unwrap();
                for &(e, sign) in s.terms() {
                    if e >= n {
                        break;
                    }
                    if sign > 0 {
                        for (dst, &src) in o[e..].iter_mut().zip(a) {
                            *dst = add_mod(*dst, src, m);
                        }
                    } else {
                        for (dst, &src) in o[e..].iter_mut().zip(a) {
                            *dst = sub_mod(*dst, src, m);
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// `self / s` for a sparse series with constant term `+1`, by the forward
    /// recurrence `b(n) = a(n) − Σ_{e>0} sign_e · b(n−e)`.
    pub fn div_sparse(&self, s: &SparseSignedSeries) -> Self {
        assert_eq!(s.terms().first(), Some(&(0, 1)), "sparse divisor must have constant term 1");
        let n = self.order();
        let tail: Vec<(usize, i8)> = s.terms()[1..].iter().copied().filter(|&(e, _)| e < n).collect();
        let mut out = self.clone();
        match &mut out.coeffs {
            Coeffs::Exact(b) => {
                for i in 0..n {
                    let mut acc = BigInt::zero();
                    for &(e, sign) in &tail {
                        if e > i {
                            break;
                        }
                        if sign > 0 {
                            acc += &b[i - e];
                        } else {
                            acc -= &b[i - e];
                        }
                    }
                    b[i] -= acc;
                }
            }
            Coeffs::Residues(b) => {
                let m = self.ring.modulus().unwrap() as i64;
                for i in 0..n {
                    let mut acc: i64 = 0;
                    for &(e, sign) in &tail {
                        if e > i {
                            break;
                        }
                        // at most ~2^21 terms of size < 2^31 stay well inside i64
                        acc += sign as i64 * b[i - e] as i64;
                    }
                    b[i] = (b[i] as i64 - acc).rem_euclid(m) as u32;
                }
            }
        }
        out
    }

    fn constant_inverse(&self) -> Result<BigInt> {
        let c0 = self.coeff(0);
        let non_unit = || Error::NonUnit { constant: c0.to_string(), ring: self.ring };
        match self.ring {
            CoefficientRing::ExactInteger => {
                if c0.abs().is_one() {
                    Ok(c0.clone())
                } else {
                    Err(non_unit())
                }
            }
            CoefficientRing::Mod(m) => {
                let c = c0.to_u64().unwrap();
                inv_mod(c, m as u64).map(BigInt::from).ok_or_else(non_unit)
            }
        }
    }

    /// Multiplicative inverse at full order; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let c_inv = self.constant_inverse()?;
        let coeffs = match &self.coeffs {
            Coeffs::Exact(a) => {
                let mut b: Vec<BigInt> = Vec::with_capacity(n);
                b.push(c_inv.clone());
                for i in 1..n {
                    let mut acc = BigInt::zero();
                    for j in 1..=i {
                        if !a[j].is_zero() {
                            acc += &a[j] * &b[i - j];
                        }
                    }
                    b.push(-(&c_inv * acc));
                }
                Coeffs::Exact(b)
            }
            Coeffs::Residues(a) => {
                let m = self.ring.modulus().unwrap();
                let c_inv = c_inv.to_u32().unwrap();
                if n > NEWTON_INVERT_ORDER {
                    Coeffs::Residues(invert_newton(a, c_inv, m, n))
                } else {
                    Coeffs::Residues(invert_recurrence(a, c_inv, m, n))
                }
            }
        };
        Ok(TruncatedSeries { ring: self.ring, coeffs })
    }

    /// `self^e` by binary exponentiation; negative `e` inverts first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.square();
        }
        Ok(acc.unwrap_or_else(|| Self::one(self.ring, self.order())))
    }

    /// `Σ_n a(dn + r) q^n` of order `ceil((N − r)/d)`; the zero series of
    /// order 1 when `r ≥ N`.
    pub fn extract_progression(&self, d: usize, r: usize) -> Self {
        assert!(d >= 1 && r < d, "need d ≥ 1 and 0 ≤ r < d");
        let n = self.order();
        if r >= n {
            return Self::zero(self.ring, 1);
        }
        let len = (n - r).div_ceil(d);
        let coeffs = match &self.coeffs {
            Coeffs::Exact(a) => Coeffs::Exact((0..len).map(|i| a[d * i + r].clone()).collect()),
            Coeffs::Residues(a) => Coeffs::Residues((0..len).map(|i| a[d * i + r]).collect()),
        };
        TruncatedSeries { ring: self.ring, coeffs }
    }

    /// `a(q^d)` truncated at order `d · N`.
    pub fn dilate(&self, d: usize) -> Self {
        self.dilate_to(d, d * self.order())
    }

    /// `a(q^d)` truncated at `order`. The caller must ensure
    /// `order ≤ d · self.order()` so that no unknown coefficient is exposed.
    pub fn dilate_to(&self, d: usize, order: usize) -> Self {
        assert!(d >= 1);
        assert!(order <= d * self.order(), "dilation would expose unknown coefficients");
        let mut out = Self::zero(self.ring, order);
        match (&mut out.coeffs, &self.coeffs) {
            (Coeffs::Exact(o), Coeffs::Exact(a)) => {
                for (i, x) in a.iter().enumerate() {
                    if d * i >= order {
                        break;
                    }
                    o[d * i] = x.clone();
                }
            }
            (Coeffs::Residues(o), Coeffs::Residues(a)) => {
                for (i, &x) in a.iter().enumerate() {
                    if d * i >= order {
                        break;
                    }
                    o[d * i] = x;
                }
            }
            _ => unreachable!(),
        }
        out
    }
}

fn exact_convolve(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (dst, y) in out[i..].iter_mut().zip(b) {
            if !y.is_zero() {
                *dst += x * y;
            }
        }
    }
    out
}

fn invert_recurrence(a: &[u32], c_inv: u32, m: u32, n: usize) -> Vec<u32> {
    let mm = m as u128;
    let mut b = Vec::with_capacity(n);
    b.push(c_inv);
    for i in 1..n {
        let mut acc: u128 = 0;
        for j in 1..=i {
            acc += a[j] as u128 * b[i - j] as u128;
        }
        let acc = (acc % mm) as u64;
        let v = (m as u64 - acc) % m as u64 * c_inv as u64 % m as u64;
        b.push(v as u32);
    }
    b
}

/// `b ← b(2 − a b)` doubling the precision each round.
fn invert_newton(a: &[u32], c_inv: u32, m: u32, n: usize) -> Vec<u32> {
    let mut b = vec![c_inv];
    let mut len = 1;
    while len < n {
        let next = (2 * len).min(n);
        let mut e = conv::convolve_mod(&a[..next.min(a.len())], &b, m, next);
        for x in e.iter_mut() {
            *x = if *x == 0 { 0 } else { m - *x };
        }
        e[0] = add_mod(e[0], 2 % m, m);
        b = conv::convolve_mod(&b, &e, m, next);
        len = next;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientRing = CoefficientRing::ExactInteger;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_bigints().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    fn f(k: usize, ring: CoefficientRing, order: usize) -> TruncatedSeries {
        euler_factor(k, order).densify(ring, order)
    }

    #[test]
    fn geometric_series_cancels() {
        let a = TruncatedSeries::from_i64s(Z, &[1, -1, 0, 0, 0]);
        let b = TruncatedSeries::from_i64s(Z, &[1; 5]);
        assert_eq!(a.mul(&b).unwrap(), TruncatedSeries::one(Z, 5));
    }

    #[test]
    fn product_with_inverse_is_one() {
        let f1 = f(1, Z, 50);
        assert_eq!(f1.mul(&f1.invert().unwrap()).unwrap(), TruncatedSeries::one(Z, 50));
    }

    #[test]
    fn partition_numbers() {
        let p = f(1, Z, 10).invert().unwrap();
        assert_eq!(ints(&p), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(ints(&TruncatedSeries::one(Z, 10).div_sparse(&euler_factor(1, 10))), ints(&p));
    }

    #[test]
    fn modular_square_is_reduced_exact_square() {
        let r4 = CoefficientRing::Mod(4);
        let exact = f(1, Z, 6).square();
        assert_eq!(f(1, r4, 6).square(), exact.reduce(r4).unwrap());
        assert_eq!(ints(&exact), vec![1, -2, -1, 2, 1, 2]);
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let a = TruncatedSeries::one(Z, 3);
        let b = TruncatedSeries::one(CoefficientRing::Mod(5), 3);
        let c = TruncatedSeries::one(CoefficientRing::Mod(7), 3);
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(b.add(&c), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        let a = TruncatedSeries::from_i64s(Z, &[2, 1]);
        assert!(matches!(a.invert(), Err(Error::NonUnit { .. })));
        let b = TruncatedSeries::from_i64s(CoefficientRing::Mod(49), &[7, 1]);
        assert!(matches!(b.pow(-1), Err(Error::NonUnit { .. })));
        let c = TruncatedSeries::from_i64s(CoefficientRing::Mod(49), &[3, 1]);
        assert!(c.invert().is_ok());
    }

    #[test]
    fn invalid_moduli() {
        assert!(CoefficientRing::modulo(1).is_err());
        assert!(CoefficientRing::modulo(1 << 31).is_err());
        assert_eq!(CoefficientRing::modulo(43).unwrap(), CoefficientRing::Mod(43));
    }

    #[test]
    fn truncation_follows_shorter_input() {
        let a = f(1, Z, 10);
        let b = f(2, Z, 4);
        assert_eq!(a.mul(&b).unwrap().order(), 4);
        assert_eq!(a.add(&b).unwrap().order(), 4);
    }

    #[test]
    fn pow_zero_and_exponent_law() {
        let a = f(1, Z, 30);
        assert_eq!(a.pow(0).unwrap(), TruncatedSeries::one(Z, 30));
        assert_eq!(a.pow(2).unwrap().pow(3).unwrap(), a.pow(6).unwrap());
        assert_eq!(a.pow(-3).unwrap().mul(&a.pow(3).unwrap()).unwrap(), TruncatedSeries::one(Z, 30));
    }

    #[test]
    fn pow_49_is_freshman_image_mod_49() {
        let r = CoefficientRing::Mod(49);
        let lhs = f(1, Z, 200).pow(49).unwrap().reduce(r).unwrap();
        let rhs = f(7, Z, 200).pow(7).unwrap().reduce(r).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ramanujan_mod_5_progression() {
        let p = f(1, Z, 500).invert().unwrap();
        let sub = p.extract_progression(5, 4).reduce(CoefficientRing::Mod(5)).unwrap();
        assert_eq!(sub.order(), 100);
        assert!(sub.is_zero());
    }

    #[test]
    fn progression_edge_cases() {
        let a = TruncatedSeries::from_i64s(Z, &[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(a.extract_progression(1, 0), a);
        assert_eq!(ints(&a.extract_progression(3, 1)), vec![2, 5]);
        assert_eq!(a.extract_progression(3, 0).order(), 3);
        let short = TruncatedSeries::from_i64s(Z, &[1, 2]);
        let z = short.extract_progression(5, 3);
        assert_eq!((z.order(), z.is_zero()), (1, true));
    }

    #[test]
    fn progressions_reassemble() {
        let a = f(1, Z, 40).invert().unwrap();
        for d in 1..6 {
            let mut acc = TruncatedSeries::zero(Z, 40);
            for r in 0..d {
                let part = a.extract_progression(d, r).dilate_to(d, 40 - r).shift_into(r, 40);
                acc = acc.add(&part).unwrap();
            }
            assert_eq!(acc, a, "d={d}");
        }
    }

    #[test]
    fn dilation_round_trip() {
        let a = f(1, Z, 40);
        assert_eq!(a.dilate(1), a);
        assert_eq!(a.dilate(2).truncate(40), f(2, Z, 40));
        assert_eq!(a.dilate(3).extract_progression(3, 0), a);
    }

    #[test]
    fn newton_and_recurrence_agree() {
        let m = 6889;
        let n = 10_000;
        let a = euler_factor(1, n).densify(CoefficientRing::Mod(m), n);
        let a = a.residues().unwrap();
        let newton = invert_newton(a, 1, m, n);
        let slow = invert_recurrence(&a[..3000], 1, m, 3000);
        assert_eq!(&newton[..3000], &slow[..]);
        let t = TruncatedSeries::from_residues(m, newton);
        let fa = TruncatedSeries::from_residues(m, a.to_vec());
        assert_eq!(t.mul(&fa).unwrap(), TruncatedSeries::one(CoefficientRing::Mod(m), n));
    }

    impl TruncatedSeries {
        /// `q^r · self`, zero-padded or truncated to `order`.
        fn shift_into(&self, r: usize, order: usize) -> Self {
            let mut v = vec![BigInt::zero(); order];
            for i in 0..self.order() {
                if i + r < order {
                    v[i + r] = self.coeff(i);
                }
            }
            TruncatedSeries::from_bigints(self.ring, v)
        }
    }
}
