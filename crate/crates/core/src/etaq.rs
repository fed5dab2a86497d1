//! Eta-quotients `∏_{δ|N} η(δz)^{r_δ}` and their modular data: weight,
//! the two mod-24 conditions, cusp orders, holomorphy, Nebentypus character,
//! Sturm bound and minimal level.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{divisors, factorize, gcd, kronecker, prime_divisors, rational, Rational};
use crate::error::{Error, Result};
use crate::qfuncs::FProduct;

/// Largest level multiplier tried by [`min_level`].
pub const MIN_LEVEL_CAP: u64 = 576;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    level: u64,
    exponents: BTreeMap<u64, i64>,
    exponents_divide_level: bool,
}

impl EtaQuotient {
    /// Every `δ` with `r_δ ≠ 0` must divide `level`.
    pub fn new(level: u64, exponents: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let q = Self::lenient(level, exponents);
        if let Some(&delta) = q.exponents.keys().find(|&&d| level % d != 0) {
            return Err(Error::NotADivisor { delta, level });
        }
        Ok(q)
    }

    /// Accepts exponents at `δ ∤ N` and records that fact; the cusp-order and
    /// 24-condition formulas are then evaluated over the rationals as written.
    pub fn lenient(level: u64, exponents: impl IntoIterator<Item = (u64, i64)>) -> Self {
        assert!(level >= 1, "level must be positive");
        let mut map = BTreeMap::new();
        for (d, r) in exponents {
            assert!(d >= 1, "η(0·z) is not defined");
            *map.entry(d).or_insert(0) += r;
        }
        map.retain(|_, r| *r != 0);
        let divides = map.keys().all(|&d| level % d == 0);
        EtaQuotient { level, exponents: map, exponents_divide_level: divides }
    }

    pub fn from_fproduct(level: u64, p: &FProduct) -> Result<Self> {
        Self::new(level, p.factors().iter().map(|(&d, &r)| (d, r)))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    pub fn exponents_divide_level(&self) -> bool {
        self.exponents_divide_level
    }

    pub fn to_fproduct(&self) -> FProduct {
        FProduct::new(self.exponents.iter().map(|(&d, &r)| (d, r)))
    }

    pub fn weight(&self) -> HalfInteger {
        HalfInteger { twice: self.exponents.values().sum() }
    }

    /// `Σ δ r_δ`, which is 24 times the order at infinity.
    pub fn sum_delta_r(&self) -> i64 {
        self.exponents.iter().map(|(&d, &r)| d as i64 * r).sum()
    }

    /// `(Σ δ r_δ ≡ 0, Σ (N/δ) r_δ ≡ 0)` modulo 24; the second sum is taken
    /// over the rationals and must be an integer.
    pub fn check_24_conditions(&self) -> (bool, bool) {
        (self.sum_delta_r() % 24 == 0, level_sum_ok(self.level, &self.exponents))
    }

    /// Order of vanishing at the cusps `c/d`:
    /// `(N/24) Σ gcd(d,δ)² r_δ / (gcd(d, N/d) d δ)`.
    pub fn cusp_order(&self, d: u64) -> Result<Rational> {
        let n = self.level;
        if d == 0 || n % d != 0 {
            return Err(Error::NotADivisor { delta: d, level: n });
        }
        let mut acc = Rational::zero();
        for (&delta, &r) in &self.exponents {
            let g = gcd(d, delta) as i128;
            acc += rational(g * g * r as i128, gcd(d, n / d) as i128 * d as i128 * delta as i128);
        }
        Ok(acc * rational(n as i128, 24))
    }

    pub fn cusp_orders(&self) -> BTreeMap<u64, Rational> {
        divisors(self.level).into_iter().map(|d| (d, self.cusp_order(d).expect("divisor"))).collect()
    }

    /// Holomorphic at every cusp iff every order is non-negative.
    pub fn is_holomorphic(&self) -> (bool, BTreeMap<u64, Rational>) {
        let orders = self.cusp_orders();
        (orders.values().all(|o| !o.is_negative()), orders)
    }

    /// `χ(d) = ((−1)^ℓ ∏ δ^{r_δ} / d)`; needs integral weight.
    pub fn character(&self) -> Result<Character> {
        let w = self.weight();
        let ell = w.integral().ok_or(Error::NonIntegralWeight { twice: w.twice })?;
        let mut prime_exp: BTreeMap<u64, i64> = BTreeMap::new();
        for (&delta, &r) in &self.exponents {
            for (p, e) in factorize(delta) {
                *prime_exp.entry(p).or_insert(0) += e as i64 * r;
            }
        }
        let support: Vec<u64> = prime_exp.iter().filter(|(_, &e)| e != 0).map(|(&p, _)| p).collect();
        let sign: i64 = if ell.rem_euclid(2) == 0 { 1 } else { -1 };
        let kernel: i64 = prime_exp.iter().filter(|(_, &e)| e.rem_euclid(2) == 1).map(|(&p, _)| p as i64).product();
        Ok(Character { discriminant: sign * kernel, support, prime_exponents: prime_exp })
    }

    pub fn meta(&self) -> FormMeta {
        let w = self.weight();
        let (holomorphic, cusp_orders) = self.is_holomorphic();
        let sturm = w.integral().filter(|&k| k >= 0).map(|k| sturm_bound(k as u64, self.level));
        FormMeta {
            level: self.level,
            weight_twice: w.twice,
            character: self.character().ok(),
            cusp_orders,
            holomorphic,
            sturm_bound: sturm,
            index: index_gamma0(self.level),
            cond24: self.check_24_conditions(),
            exponents_divide_level: self.exponents_divide_level,
        }
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(&d, &r)| {
                let z = if d == 1 { "z".to_string() } else { format!("{d}z") };
                format!("η({z})^{r}")
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1 [N={}]", self.level)
        } else {
            write!(f, "{} [N={}]", parts.join(" "), self.level)
        }
    }
}

fn level_sum_ok(level: u64, exps: &BTreeMap<u64, i64>) -> bool {
    let mut s = Rational::zero();
    for (&d, &r) in exps {
        s += rational(level as i128 * r as i128, d as i128);
    }
    s.is_integer() && (s.to_integer() % BigInt::from(24)).is_zero()
}

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HalfInteger {
    pub twice: i64,
}

impl HalfInteger {
    pub fn integral(self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.integral() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// Quadratic character `d ↦ (s/d)` with `s` the squarefree kernel of
/// `(−1)^ℓ ∏ δ^{r_δ}`. It vanishes on `d` sharing a prime with that product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub discriminant: i64,
    pub support: Vec<u64>,
    pub prime_exponents: BTreeMap<u64, i64>,
}

impl Character {
    pub fn trivial() -> Self {
        Character { discriminant: 1, support: Vec::new(), prime_exponents: BTreeMap::new() }
    }

    pub fn eval(&self, d: u64) -> i8 {
        if self.support.iter().any(|&p| d % p == 0) {
            return 0;
        }
        kronecker(self.discriminant, d as i64)
    }

    /// True when `χ(d) = 1` for every `d` coprime to the support.
    pub fn is_trivial(&self) -> bool {
        self.discriminant == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormMeta {
    pub level: u64,
    pub weight_twice: i64,
    pub character: Option<Character>,
    #[serde(serialize_with = "rational_map")]
    pub cusp_orders: BTreeMap<u64, Rational>,
    pub holomorphic: bool,
    pub sturm_bound: Option<u64>,
    pub index: u64,
    pub cond24: (bool, bool),
    pub exponents_divide_level: bool,
}

impl FormMeta {
    pub fn weight(&self) -> HalfInteger {
        HalfInteger { twice: self.weight_twice }
    }
}

fn rational_map<S: Serializer>(m: &BTreeMap<u64, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: BTreeMap<u64, String> = m.iter().map(|(k, v)| (*k, v.to_string())).collect();
    strings.serialize(s)
}

/// `[SL_2(Z) : Γ_0(N)] = N ∏_{p|N} (1 + 1/p)`.
pub fn index_gamma0(n: u64) -> u64 {
    assert!(n >= 1);
    prime_divisors(n).into_iter().fold(n, |acc, p| acc / p * (p + 1))
}

/// `⌊k · [SL_2(Z) : Γ_0(N)] / 12⌋`.
pub fn sturm_bound(k: u64, n: u64) -> u64 {
    k * index_gamma0(n) / 12
}

/// Smallest `base · M` (`M ≤ 576`) such that `Σ δ r_δ ≡ 0` and
/// `Σ (base·M/δ) r_δ ≡ 0` modulo 24, the latter read over the rationals.
pub fn min_level(exponents: &BTreeMap<u64, i64>, base: u64) -> Result<u64> {
    let sum: i64 = exponents.iter().map(|(&d, &r)| d as i64 * r).sum();
    if sum % 24 != 0 {
        return Err(Error::NoLevel { cap: MIN_LEVEL_CAP });
    }
    (1..=MIN_LEVEL_CAP)
        .map(|m| base * m)
        .find(|&n| level_sum_ok(n, exponents))
        .ok_or(Error::NoLevel { cap: MIN_LEVEL_CAP })
}

/// Level at which both lifted quotients below are studied:
/// `2^8·3` for the mod-3 lift and `2^8·3^2` for the prime-power lift.
pub const MOD3_LIFT_LEVEL: u64 = 768;
pub const PRIME_POWER_LIFT_LEVEL: u64 = 2304;

/// `η(24z)^{3^{k+1}−2} η(96z)^{2^α m−1} / (η(48z)^{2^{α+1}m−3} η(72z)^{3^k})`,
/// congruent mod `3^{k+1}` to `Σ ā_{2^α m}(n) q^{24n}`.
pub fn mod3_lift(alpha: u32, m: u64, k: u32) -> BTreeMap<u64, i64> {
    let c = (1i64 << alpha) * m as i64;
    let t = 3i64.pow(k);
    BTreeMap::from([(24, 3 * t - 2), (48, -(2 * c - 3)), (72, -t), (96, c - 1)])
}

/// `η(24z)^{p^{a+k}−2} η(96z)^{t−1} / (η(48z)^{2t−3} η(24p^a z)^{p^k})`,
/// congruent mod `p^{k+1}` to `Σ ā_t(n) q^{24n}`.
pub fn prime_power_lift(p: u64, a: u32, k: u32, t: u64) -> BTreeMap<u64, i64> {
    let pa = p.pow(a);
    let mut out = BTreeMap::new();
    for (d, r) in
        [(24, p.pow(a + k) as i64 - 2), (96, t as i64 - 1), (48, -(2 * t as i64 - 3)), (24 * pa, -(p.pow(k) as i64))]
    {
        *out.entry(d).or_insert(0) += r;
    }
    out.retain(|_, r| *r != 0);
    out
}

/// Hypothesis region for the mod-3 lift: `k ≥ 2`, `α ≥ 1`, `m` odd and
/// `3^{k−2} ≥ 2^{α−3} m` (compared over the rationals).
pub fn mod3_lift_hypothesis(alpha: u32, m: u64, k: u32) -> bool {
    k >= 2 && alpha >= 1 && m % 2 == 1 && rational(3i128.pow(k - 2) * 8, 1) >= rational((1i128 << alpha) * m as i128, 1)
}

/// Hypothesis region for the prime-power lift: `p ≥ 5` prime with `p^a ∥ t`,
/// every prime of `t` at least 5, `k ≥ 1` and `2 p^{k+a} ≥ 5t`.
pub fn prime_power_lift_hypothesis(p: u64, a: u32, k: u32, t: u64) -> bool {
    let pa = p.pow(a);
    k >= 1
        && a >= 1
        && p >= 5
        && crate::arith::is_prime(p)
        && t % pa == 0
        && (t / pa) % p != 0
        && prime_divisors(t).iter().all(|&q| q >= 5)
        && 2 * (p as u128).pow(a + k) >= 5 * t as u128
}

/// One row of a simplified holomorphy table: the divisors it covers and the
/// value whose sign is claimed to decide holomorphy there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityRow {
    pub divisors: Vec<u64>,
    pub lhs: Rational,
}

/// Simplified per-divisor inequalities for the mod-3 lift at level 768.
pub fn mod3_lift_table(alpha: u32, m: u64, k: u32) -> Vec<InequalityRow> {
    let c = (1i128 << alpha) * m as i128;
    let t = 3i128.pow(k);
    let row = |ds: &[u64], lhs: Rational| InequalityRow { divisors: ds.to_vec(), lhs };
    vec![
        row(&[1, 2, 4, 8, 24], rational(32 * t - 9 * c - 9, 1)),
        row(&[3, 6, 12], rational(t, 1) - rational(9 * (c + 1), 32)),
        row(&[16, 48], rational(8 * t - 9 * c + 9, 1)),
        row(&[32, 64, 128, 256], rational(t, 9)),
        row(&[96, 192, 384, 768], rational(t, 1)),
    ]
}

/// Simplified per-divisor inequalities for the prime-power lift at level 2304.
pub fn prime_power_lift_table(p: u64, a: u32, k: u32, t: u64) -> Vec<InequalityRow> {
    let x = (p as i128).pow(a + k);
    let t = t as i128;
    let row = |ds: &[u64], v: i128| InequalityRow { divisors: ds.to_vec(), lhs: rational(v, 1) };
    vec![
        row(&[1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72], 8 * x - (1 + 5 * t)),
        row(&[16, 48, 144], 2 * x + 5 * (1 - t)),
        row(&[32, 64, 96, 128, 192, 256, 288, 384, 576, 768, 1152, 2304], 2 * x + 8 * (1 - t)),
    ]
}

/// For each table row and divisor, whether `lhs ≥ 0` agrees with the sign of
/// the raw cusp order. Returns the divisors where they disagree.
pub fn table_disagreements(q: &EtaQuotient, table: &[InequalityRow]) -> Vec<u64> {
    let mut bad = BTreeSet::new();
    for row in table {
        let claimed = !row.lhs.is_negative();
        for &d in &row.divisors {
            let raw = !q.cusp_order(d).expect("table divisor divides level").is_negative();
            if raw != claimed {
                bad.insert(d);
            }
        }
    }
    bad.into_iter().collect()
}

/// Leading `q`-exponent `(1/24) Σ δ r_δ` when it is an integer.
pub fn leading_exponent(q: &EtaQuotient) -> Option<i64> {
    let s = q.sum_delta_r();
    (s % 24 == 0).then_some(s / 24)
}

/// Squarefree kernel of an integer given as prime exponents, used to
/// cross-check [`Character`].
pub fn kernel_from_exponents(exps: &BTreeMap<u64, i64>) -> i64 {
    exps.iter().filter(|(_, &e)| e.rem_euclid(2) == 1).map(|(&p, _)| p as i64).product()
}
