//! Radu's finite criterion for progression congruences of eta-quotient
//! coefficients: the admissibility conditions Δ*, the orbit `P(t)`, coset
//! representatives for `Γ_0(N)`, the lower bounds `p(γ)`, `p'(γ)` and the
//! bound `ν` up to which a congruence has to be checked.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, floor_rational, gcd, is_squarefree, prime_divisors, rational, valuation, Rational};
use crate::error::{Error, Result};
use crate::etaq::index_gamma0;
use crate::qfuncs::{expand_fproduct, FProduct};
use crate::series::CoefficientRing;

/// `(m, M, N, t, (r_δ)_{δ|M})` with auxiliary `(r'_δ)_{δ|N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaduInstance {
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub t: u64,
    pub r: BTreeMap<u64, i64>,
    #[serde(default)]
    pub r_prime: BTreeMap<u64, i64>,
}

/// An instance together with the modulus it is meant to prove, as stored in
/// fixture files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaduFile {
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub t: u64,
    pub r: BTreeMap<u64, i64>,
    #[serde(default)]
    pub r_prime: BTreeMap<u64, i64>,
    pub u: u64,
    /// Optional f-product the expanded `∏ f_δ^{r_δ}` must agree with mod `u`.
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default)]
    pub label: Option<String>,
}

impl RaduFile {
    pub fn instance(&self) -> Result<RaduInstance> {
        RaduInstance {
            m: self.m,
            big_m: self.big_m,
            n: self.n,
            t: self.t,
            r: self.r.clone(),
            r_prime: self.r_prime.clone(),
        }
        .normalized()
    }

    pub fn target(&self) -> Result<Option<FProduct>> {
        self.target.as_deref().map(str::parse).transpose()
    }
}

impl RaduInstance {
    /// Checks index sets and `0 ≤ t < m`, and fills unlisted divisors with 0.
    pub fn new(m: u64, big_m: u64, n: u64, t: u64, r: &[(u64, i64)], r_prime: &[(u64, i64)]) -> Result<Self> {
        let inst =
            RaduInstance { m, big_m, n, t, r: r.iter().copied().collect(), r_prime: r_prime.iter().copied().collect() };
        inst.normalized()
    }

    pub fn normalized(mut self) -> Result<Self> {
        if self.m == 0 || self.big_m == 0 || self.n == 0 {
            return Err(Error::Invalid("m, M and N must be positive".into()));
        }
        if self.t >= self.m {
            return Err(Error::Invalid(format!("t = {} not in [0, {})", self.t, self.m)));
        }
        for (map, level, name) in [(&mut self.r, self.big_m, "r"), (&mut self.r_prime, self.n, "r'")] {
            if let Some(&d) = map.keys().find(|&&d| d == 0 || level % d != 0) {
                return Err(Error::Invalid(format!("{name} indexed by {d}, which does not divide {level}")));
            }
            for d in divisors(level) {
                map.entry(d).or_insert(0);
            }
        }
        Ok(self)
    }

    /// The instance with the listed vector forms, in increasing divisor order.
    pub fn with_vectors(m: u64, big_m: u64, n: u64, t: u64, r: &[i64], r_prime: &[i64]) -> Result<Self> {
        let dm = divisors(big_m);
        let dn = divisors(n);
        if r.len() != dm.len() || r_prime.len() != dn.len() {
            return Err(Error::Invalid("exponent vectors must list every divisor".into()));
        }
        let r: Vec<(u64, i64)> = dm.into_iter().zip(r.iter().copied()).collect();
        let rp: Vec<(u64, i64)> = dn.into_iter().zip(r_prime.iter().copied()).collect();
        Self::new(m, big_m, n, t, &r, &rp)
    }

    /// `κ = gcd(m² − 1, 24)`.
    pub fn kappa(&self) -> u64 {
        gcd(self.m * self.m - 1, 24)
    }

    pub fn sum_r(&self) -> i64 {
        self.r.values().sum()
    }

    pub fn sum_delta_r(&self) -> i64 {
        self.r.iter().map(|(&d, &r)| d as i64 * r).sum()
    }

    pub fn fproduct(&self) -> FProduct {
        FProduct::new(self.r.iter().map(|(&d, &r)| (d, r)))
    }

    pub fn with_t(&self, t: u64) -> Self {
        RaduInstance { t, ..self.clone() }
    }
}

/// Squares of units modulo `n`.
pub fn squares_mod(n: u64) -> BTreeSet<u64> {
    if n == 1 {
        return BTreeSet::from([0]);
    }
    (1..n).filter(|&x| gcd(x, n) == 1).map(|x| (x as u128 * x as u128 % n as u128) as u64).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    pub p_t: BTreeSet<u64>,
    pub t_min: u64,
}

/// `P(t) = { ts + ((s−1)/24) Σ δ r_δ mod m : s ∈ S_{24m} }`.
pub fn orbit_p(inst: &RaduInstance) -> OrbitResult {
    let m = inst.m as i128;
    let sdr = inst.sum_delta_r() as i128;
    let mut p_t = BTreeSet::new();
    for s in squares_mod(24 * inst.m) {
        assert_eq!((s - 1) % 24, 0, "square unit {s} mod 24m is not 1 mod 24");
        let s = s as i128;
        let t2 = (inst.t as i128 * s + (s - 1) / 24 * sdr).rem_euclid(m);
        p_t.insert(t2 as u64);
    }
    let t_min = *p_t.iter().next().expect("s = 1 always contributes t");
    OrbitResult { p_t, t_min }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvenModulusBranch {
    /// `4 | κN` and `8 | sN`
    KappaN,
    /// `2 | s` and `8 | (1 − j)N`
    OddPart,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaStar {
    pub conditions: [bool; 6],
    /// Every term `r_δ m N / δ` of condition (3) is an integer.
    pub cond3_terms_integral: bool,
    /// Which alternative of condition (6) held; `None` for odd `m` or when
    /// neither did.
    pub cond6_branch: Option<EvenModulusBranch>,
}

impl DeltaStar {
    pub fn all(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }
}

pub fn delta_star_check(inst: &RaduInstance) -> DeltaStar {
    let (m, n, kappa) = (inst.m, inst.n, inst.kappa() as i128);
    let nz: Vec<(u64, i64)> = inst.r.iter().filter(|(_, &r)| r != 0).map(|(&d, &r)| (d, r)).collect();

    let c1 = prime_divisors(m).iter().all(|&p| n % p == 0);
    let c2 = nz.iter().all(|&(d, _)| (m * n) % d == 0);

    let cond3_terms_integral = nz.iter().all(|&(d, _)| (m * n) % d == 0);
    let c3 = cond3_terms_integral && {
        let s: i128 = nz.iter().map(|&(d, r)| r as i128 * (m * n / d) as i128).sum();
        (kappa * n as i128 * s) % 24 == 0
    };

    let c4 = (kappa * n as i128 * inst.sum_r() as i128) % 8 == 0;

    let c5 = {
        let lhs = -24 * kappa * inst.t as i128 - kappa * inst.sum_delta_r() as i128;
        let g = gcd(lhs.unsigned_abs() as u64, 24 * m);
        n % (24 * m / g) == 0
    };

    let (c6, cond6_branch) = if m % 2 == 1 {
        (true, None)
    } else {
        // ∏ δ^{|r_δ|} = 2^s · j with j odd; only j mod 8 matters
        let s: u64 = nz.iter().map(|&(d, r)| valuation(d, 2) as u64 * r.unsigned_abs()).sum();
        let j_mod8 = nz.iter().fold(1u64, |acc, &(d, r)| {
            let odd = d >> valuation(d, 2);
            acc * crate::arith::pow_mod(odd, r.unsigned_abs(), 8) % 8
        });
        let first = (kappa * n as i128) % 4 == 0 && (s as u128 * n as u128) % 8 == 0;
        let second = s % 2 == 0 && ((1 + 8 - j_mod8 as i128) * n as i128) % 8 == 0;
        let branch = if first {
            Some(EvenModulusBranch::KappaN)
        } else if second {
            Some(EvenModulusBranch::OddPart)
        } else {
            None
        };
        (first || second, branch)
    };

    DeltaStar { conditions: [c1, c2, c3, c4, c5, c6], cond3_terms_integral, cond6_branch }
}

/// `2×2` integer matrix `[[a, b], [c, d]]`.
pub type Matrix = [[i64; 2]; 2];

/// `{[[1, 0], [δ, 1]] : δ | N}`, a complete set of double-coset
/// representatives when `N` or `N/2` is squarefree.
pub fn coset_reps(n: u64) -> Result<Vec<Matrix>> {
    let ok = is_squarefree(n) || (n % 2 == 0 && is_squarefree(n / 2));
    if !ok {
        return Err(Error::CosetHypothesis(n));
    }
    Ok(divisors(n).into_iter().map(|d| [[1, 0], [d as i64, 1]]).collect())
}

/// `p(γ) = min_λ (1/24) Σ_{δ|M} r_δ gcd(δ(a + κλc), mc)² / (δ m)` for `γ` with
/// top-left entry `a` and bottom-left entry `c`.
pub fn p_lower(inst: &RaduInstance, gamma: &Matrix) -> Rational {
    let (a, c) = (gamma[0][0] as i128, gamma[1][0] as i128);
    let m = inst.m as i128;
    let kappa = inst.kappa() as i128;
    let mc = (m * c).unsigned_abs() as u64;
    let mut best: Option<Rational> = None;
    for lambda in 0..inst.m as i128 {
        let mut acc = Rational::zero();
        for (&d, &r) in &inst.r {
            if r == 0 {
                continue;
            }
            let x = (d as i128 * (a + kappa * lambda * c)).unsigned_abs() as u64;
            let g = gcd(x, mc) as i128;
            acc += rational(r as i128 * g * g, d as i128 * m);
        }
        let val = acc / rational(24, 1);
        if best.as_ref().is_none_or(|b| val < *b) {
            best = Some(val);
        }
    }
    best.unwrap_or_else(Rational::zero)
}

/// `p'(γ) = (1/24) Σ_{δ|N} r'_δ gcd(δ, c)² / δ`.
pub fn p_prime_lower(inst: &RaduInstance, gamma: &Matrix) -> Rational {
    let c = gamma[1][0].unsigned_abs();
    let mut acc = Rational::zero();
    for (&d, &r) in &inst.r_prime {
        let g = gcd(d, c) as i128;
        acc += rational(r as i128 * g * g, d as i128);
    }
    acc / rational(24, 1)
}

/// `ν = (1/24){(Σr + Σr')·[Γ:Γ_0(N)] − Σ δ r'_δ − (1/m) Σ δ r_δ} − t_min/m`.
pub fn nu_bound(inst: &RaduInstance, orbit: &OrbitResult) -> Rational {
    let sum_rp: i64 = inst.r_prime.values().sum();
    let sum_drp: i64 = inst.r_prime.iter().map(|(&d, &r)| d as i64 * r).sum();
    let index = index_gamma0(inst.n) as i128;
    let m = inst.m as i128;
    let brace = rational((inst.sum_r() + sum_rp) as i128 * index - sum_drp as i128, 1)
        - rational(inst.sum_delta_r() as i128, m);
    brace / rational(24, 1) - rational(orbit.t_min as i128, m)
}

pub fn floor_nu(nu: &Rational) -> i64 {
    i64::try_from(floor_rational(nu)).expect("ν fits in i64")
}

/// Smallest (by total, then lexicographically) `(r'_δ) ∈ [0, bound]^{d(N)}`
/// with `p(γ_δ) + p'(γ_δ) ≥ 0` at every coset representative. Gives up
/// after `budget` candidates.
pub fn search_r_prime(inst: &RaduInstance, bound: i64, budget: usize) -> Result<Option<BTreeMap<u64, i64>>> {
    let reps = coset_reps(inst.n)?;
    let ps: Vec<Rational> = reps.iter().map(|g| p_lower(inst, g)).collect();
    let divs = divisors(inst.n);
    // p' is linear in r', so precompute each divisor's contribution per rep
    let unit: Vec<Vec<Rational>> = reps
        .iter()
        .map(|g| {
            let c = g[1][0] as u64;
            divs.iter()
                .map(|&d| {
                    let gg = gcd(d, c) as i128;
                    rational(gg * gg, 24 * d as i128)
                })
                .collect()
        })
        .collect();
    let k = divs.len();
    let mut tried = 0usize;
    for total in 0..=(bound * k as i64) {
        let mut found = None;
        compositions(k, total, bound, &mut |v| {
            tried += 1;
            let ok = (0..reps.len()).all(|i| {
                let mut s = ps[i].clone();
                for (j, &x) in v.iter().enumerate() {
                    if x != 0 {
                        s += &unit[i][j] * rational(x as i128, 1);
                    }
                }
                !s.is_negative()
            });
            if ok {
                found = Some(v.to_vec());
            }
            found.is_none() && tried < budget
        });
        if let Some(v) = found {
            return Ok(Some(divs.iter().copied().zip(v).collect()));
        }
        if tried >= budget {
            break;
        }
    }
    Ok(None)
}

/// Visits vectors of length `k` with entries in `[0, bound]` summing to
/// `total`, in lexicographically decreasing order of the first entry. Stops
/// when `visit` returns false.
fn compositions(k: usize, total: i64, bound: i64, visit: &mut dyn FnMut(&[i64]) -> bool) {
    fn rec(v: &mut Vec<i64>, k: usize, left: i64, bound: i64, visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if v.len() + 1 == k {
            if left <= bound {
                v.push(left);
                let go = visit(v);
                v.pop();
                return go;
            }
            return true;
        }
        for x in (0..=left.min(bound)).rev() {
            v.push(x);
            let go = rec(v, k, left - x, bound, visit);
            v.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if k == 0 {
        return;
    }
    rec(&mut Vec::with_capacity(k), k, total, bound, visit);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetBound {
    pub delta: u64,
    pub p: String,
    pub p_prime: String,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RaduOutcome {
    /// Hypotheses hold and the finite check reached `⌊ν⌋`.
    Proved,
    /// The finite check passed to `depth < ⌊ν⌋`.
    Consistent {
        depth: usize,
    },
    RefutedAt {
        n: usize,
        t_prime: u64,
    },
    /// The finite check passed but these hypotheses failed.
    HypothesisFailed {
        reasons: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaduVerdict {
    pub instance: RaduInstance,
    pub u: u64,
    pub kappa: u64,
    pub delta_star: DeltaStar,
    pub orbit: OrbitResult,
    pub coset_hypothesis: bool,
    pub bounds: Vec<CosetBound>,
    pub nu: String,
    pub floor_nu: i64,
    pub checked_to: usize,
    pub target_agrees: Option<bool>,
    pub outcome: RaduOutcome,
}

impl RaduVerdict {
    pub fn proved(&self) -> bool {
        self.outcome == RaduOutcome::Proved
    }
}

/// Order used when comparing the instance's product with a target series.
pub const TARGET_CHECK_ORDER: usize = 500;

/// Evaluates every hypothesis and checks `A(mn + t') ≡ 0 (mod u)` for
/// `t' ∈ P(t)` and `n ≤ min(⌊ν⌋, depth_cap)`, where `Σ A(n) q^n = ∏ f_δ^{r_δ}`.
pub fn radu_verify(
    inst: &RaduInstance,
    u: u64,
    target: Option<&FProduct>,
    depth_cap: Option<usize>,
) -> Result<RaduVerdict> {
    let ring = CoefficientRing::modulo(u)?;
    let delta_star = delta_star_check(inst);
    let orbit = orbit_p(inst);
    let nu = nu_bound(inst, &orbit);
    let fnu = floor_nu(&nu);
    let reps = coset_reps(inst.n);
    let coset_hypothesis = reps.is_ok();
    let bounds: Vec<CosetBound> = reps
        .unwrap_or_default()
        .iter()
        .map(|g| {
            let p = p_lower(inst, g);
            let pp = p_prime_lower(inst, g);
            let nonnegative = !(&p + &pp).is_negative();
            CosetBound { delta: g[1][0] as u64, p: p.to_string(), p_prime: pp.to_string(), nonnegative }
        })
        .collect();

    let full = fnu.max(0) as usize;
    let depth = depth_cap.map_or(full, |c| c.min(full));
    let t_max = *orbit.p_t.iter().next_back().unwrap() as usize;
    let m = inst.m as usize;
    let order = (m * (depth + 1) + t_max).max(TARGET_CHECK_ORDER);
    let a = expand_fproduct(&inst.fproduct(), ring, order);

    let target_agrees = target.map(|t| {
        let n = TARGET_CHECK_ORDER;
        expand_fproduct(t, ring, n) == a.truncate(n)
    });

    let mut refuted = None;
    'outer: for n in 0..=depth {
        for &tp in &orbit.p_t {
            if !a.coeff_is_zero(m * n + tp as usize) {
                refuted = Some((n, tp));
                break 'outer;
            }
        }
    }

    let mut reasons = Vec::new();
    for (i, ok) in delta_star.conditions.iter().enumerate() {
        if !ok {
            reasons.push(format!("Δ* condition {}", i + 1));
        }
    }
    if !coset_hypothesis {
        reasons.push(format!("neither {0} nor {0}/2 is squarefree", inst.n));
    }
    for b in bounds.iter().filter(|b| !b.nonnegative) {
        reasons.push(format!("p + p' < 0 at δ = {}", b.delta));
    }
    if target_agrees == Some(false) {
        reasons.push("product differs from the target series".into());
    }
    let outcome = if let Some((n, t_prime)) = refuted {
        RaduOutcome::RefutedAt { n, t_prime }
    } else if !reasons.is_empty() {
        RaduOutcome::HypothesisFailed { reasons }
    } else if depth < full {
        RaduOutcome::Consistent { depth }
    } else {
        RaduOutcome::Proved
    };

    Ok(RaduVerdict {
        instance: inst.clone(),
        u,
        kappa: inst.kappa(),
        delta_star,
        orbit,
        coset_hypothesis,
        bounds,
        nu: nu.to_string(),
        floor_nu: fnu,
        checked_to: depth,
        target_agrees,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic3() -> RaduInstance {
        RaduInstance::with_vectors(49, 14, 14, 39, &[48, -2, -7, 0], &[18, 0, 0, 0]).unwrap()
    }

    #[test]
    fn unit_squares() {
        assert_eq!(squares_mod(8), BTreeSet::from([1]));
        for n in [1u64, 2, 3, 10, 24 * 49] {
            assert!(squares_mod(n).contains(&(1 % n)));
        }
        for m in [49u64, 961, 2209, 4489] {
            assert!(squares_mod(24 * m).iter().all(|s| s % 24 == 1), "m={m}");
        }
    }

    #[test]
    fn orbit_examples() {
        let o = orbit_p(&cubic3());
        assert_eq!(o.p_t, BTreeSet::from([39]));
        assert_eq!(o.t_min, 39);
        let trivial = RaduInstance::with_vectors(1, 1, 1, 0, &[5], &[0]).unwrap();
        assert_eq!(orbit_p(&trivial).p_t, BTreeSet::from([0]));
    }

    #[test]
    fn orbit_is_closed() {
        for t in [0, 5, 17, 38] {
            let inst = cubic3().with_t(t);
            let o = orbit_p(&inst);
            assert!(o.p_t.contains(&t));
            for &t2 in &o.p_t {
                assert_eq!(orbit_p(&inst.with_t(t2)).p_t, o.p_t);
            }
        }
    }

    #[test]
    fn delta_star_examples() {
        let d = delta_star_check(&cubic3());
        assert!(d.all(), "{d:?}");
        let big = RaduInstance::with_vectors(961, 62, 62, 644, &[960, -24, -31, 0], &[49, 0, 0, 0]).unwrap();
        assert!(delta_star_check(&big).all());
        let even = RaduInstance::with_vectors(2, 1, 3, 0, &[1], &[0, 0]).unwrap();
        assert!(!delta_star_check(&even).conditions[0]);
    }

    #[test]
    fn coset_representatives() {
        assert_eq!(coset_reps(14).unwrap().len(), 4);
        assert_eq!(coset_reps(1).unwrap(), vec![[[1, 0], [1, 1]]]);
        assert_eq!(coset_reps(12).unwrap().len(), 6);
        assert!(matches!(coset_reps(36), Err(Error::CosetHypothesis(36))));
    }

    #[test]
    fn coset_bounds_and_nu() {
        let inst = cubic3();
        for g in coset_reps(14).unwrap() {
            assert!(!(p_lower(&inst, &g) + p_prime_lower(&inst, &g)).is_negative(), "{g:?}");
        }
        let zero = RaduInstance::with_vectors(1, 1, 1, 0, &[0], &[0]).unwrap();
        assert_eq!(p_lower(&zero, &[[1, 0], [1, 1]]), Rational::zero());
        assert_eq!(nu_bound(&zero, &orbit_p(&zero)), Rational::zero());
        let nu = nu_bound(&inst, &orbit_p(&inst));
        let f = floor_nu(&nu);
        assert!(rational(f as i128, 1) <= nu && nu < rational(f as i128 + 1, 1));
    }

    #[test]
    fn p_lower_minimises_over_lambda() {
        // brute force over λ with plain integers, scaled by 24·δ·m
        let inst = cubic3();
        let g = [[1i64, 0], [1, 1]];
        let kappa = inst.kappa() as i64;
        let mut best = f64::INFINITY;
        for lambda in 0..49i64 {
            let mut s = 0f64;
            for (&d, &r) in &inst.r {
                let x = (d as i64 * (1 + kappa * lambda)).unsigned_abs();
                let gg = gcd(x, 49) as f64;
                s += r as f64 * gg * gg / (d as f64 * 49.0);
            }
            best = best.min(s / 24.0);
        }
        let exact = p_lower(&inst, &g);
        let approx =
            exact.numer().to_string().parse::<f64>().unwrap() / exact.denom().to_string().parse::<f64>().unwrap();
        assert!((approx - best).abs() < 1e-9);
    }

    #[test]
    fn r_prime_search_finds_a_witness() {
        let mut inst = cubic3();
        inst.r_prime.values_mut().for_each(|v| *v = 0);
        let found = search_r_prime(&inst, 200, 1_000_000).unwrap().expect("witness");
        inst.r_prime = found;
        for g in coset_reps(14).unwrap() {
            assert!(!(p_lower(&inst, &g) + p_prime_lower(&inst, &g)).is_negative());
        }
    }

    #[test]
    fn verification_and_refutation() {
        let target: FProduct = "1/(f1 f2^2)".parse().unwrap();
        let v = radu_verify(&cubic3(), 49, Some(&target), None).unwrap();
        assert_eq!(v.outcome, RaduOutcome::Proved);
        assert_eq!(v.target_agrees, Some(true));
        let bad = radu_verify(&cubic3().with_t(38), 49, None, None).unwrap();
        assert!(!bad.proved());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"m":49,"M":14,"N":14,"t":39,"r":{"1":48,"2":-2,"7":-7,"14":0},"r_prime":{"1":18},"u":49}"#;
        let f: RaduFile = serde_json::from_str(text).unwrap();
        let inst = f.instance().unwrap();
        assert_eq!(inst, cubic3());
        let back: RaduFile = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
