//! Hecke operators `T_p` on q-expansions, and the Sturm-bound pipeline that
//! reduces `a_c(pn + b) ≡ 0 (mod p)` to a finite coefficient check on
//! `(q^s f_1^a / f_2^{c−1}) | T_p` with `η(z)^a/η(2z)^{c−1}` a modular form.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};
use crate::etaq::{Character, EtaQuotient, HalfInteger};
use crate::qfuncs::{expand_fproduct, genfun, FProduct, PartitionFamily};
use crate::series::{CoefficientRing, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeContext {
    p: u64,
    weight: i64,
    character: Character,
    ring: CoefficientRing,
}

impl HeckeContext {
    pub fn new(p: u64, weight: i64, character: Character, ring: CoefficientRing) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if weight < 1 {
            return Err(Error::Invalid(format!("Hecke weight must be at least 1, got {weight}")));
        }
        Ok(HeckeContext { p, weight, character, ring })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `χ(p) p^{ℓ−1}` as an element of the ring, carried as an integer.
    fn second_term_factor(&self) -> BigInt {
        let chi = self.character.eval(self.p) as i64;
        match self.ring {
            CoefficientRing::ExactInteger => BigInt::from(chi) * BigInt::from(self.p).pow((self.weight - 1) as u32),
            CoefficientRing::Mod(m) => {
                let pk = pow_mod(self.p, (self.weight - 1) as u64, m as u64);
                BigInt::from(chi) * BigInt::from(pk)
            }
        }
    }
}

/// `(f | T_p)(n) = a(pn) + χ(p) p^{ℓ−1} a(n/p)`, with `a(n/p) = 0` unless
/// `p | n`. The result has order `⌊N/p⌋`.
pub fn apply_tp(ctx: &HeckeContext, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.ring() != ctx.ring {
        return Err(Error::RingMismatch { left: f.ring(), right: ctx.ring });
    }
    let p = ctx.p as usize;
    if f.order() < p {
        return Err(Error::OrderTooSmall { have: f.order(), need: p });
    }
    let n_out = f.order() / p;
    let first = f.extract_progression(p, 0).truncate(n_out);
    let factor = ctx.second_term_factor();
    if factor.is_zero() {
        return Ok(first);
    }
    let dilated = f.truncate(n_out.div_ceil(p)).dilate_to(p, n_out);
    first.add(&dilated.scale(&factor))
}

/// One row of the table proving `a_c(pn + b) ≡ 0 (mod p)` through the
/// modular form `η(z)^{eta_num}/η(2z)^{eta_den}` of the given level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeRow {
    pub c: u64,
    pub p: u64,
    pub b: u64,
    pub eta_num: i64,
    pub eta_den: i64,
    pub level: u64,
}

impl HeckeRow {
    /// `(a − 2·den)/24`, the power of `q` in `η(z)^a/η(2z)^{den}`.
    pub fn shift(&self) -> Option<i64> {
        let s = self.eta_num - 2 * self.eta_den;
        (s % 24 == 0).then_some(s / 24)
    }

    /// Exponent `e` with `η(z)^a/η(2z)^{c−1} = q^s · f_1^e/(f_1 f_2^{c−1})`.
    pub fn f1_exponent(&self) -> i64 {
        self.eta_num + 1
    }

    pub fn eta_quotient(&self) -> Result<EtaQuotient> {
        EtaQuotient::new(self.level, [(1, self.eta_num), (2, -self.eta_den)])
    }
}

/// The seven cubic-partition rows handled by this pipeline.
pub fn cubic_rows() -> Vec<HeckeRow> {
    let row = |c, p, b, eta_num, eta_den, level| HeckeRow { c, p, b, eta_num, eta_den, level };
    vec![
        row(37, 43, 12, 816, 36, 4),
        row(41, 47, 21, 704, 40, 2),
        row(53, 59, 56, 176, 52, 4),
        row(61, 67, 19, 1272, 60, 4),
        row(65, 71, 32, 1064, 64, 2),
        row(73, 79, 62, 552, 72, 2),
        row(77, 83, 79, 248, 76, 4),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HeckeOutcome {
    /// Every coefficient up to the Sturm bound vanishes and all modularity
    /// checks pass; conditional on the image lying in the same space.
    Proved,
    Counterexample {
        n: usize,
        residue: u64,
    },
    /// Depth below the Sturm bound; coefficients up to `depth` vanish.
    Insufficient {
        depth: usize,
        sturm_bound: u64,
    },
    /// Coefficients vanish but a modularity check failed.
    Unsupported {
        reasons: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeVerdict {
    pub row: HeckeRow,
    pub weight: HalfInteger,
    pub sturm_bound: Option<u64>,
    pub cond24: (bool, bool),
    pub holomorphic: bool,
    pub integral_weight: bool,
    /// `den = c − 1` and `b ≡ −s (mod p)`.
    pub eta_shift_consistent: bool,
    pub shift_used: i64,
    pub constant_term_zero: bool,
    pub depth: usize,
    pub order: usize,
    pub outcome: HeckeOutcome,
}

impl HeckeVerdict {
    pub fn passed(&self) -> bool {
        self.outcome == HeckeOutcome::Proved
    }
}

/// Builds `G = q^{s'} · Σ a_c(n) q^n · f_1^e` modulo `p` to order
/// `p·(depth+2)`, where `s' ≡ −b (mod p)` is the row's shift adjusted to
/// the requested residue, applies `T_p`, and checks the image vanishes up to
/// `depth`.
pub fn verify_row(row: &HeckeRow, depth: usize) -> Result<HeckeVerdict> {
    let q = row.eta_quotient()?;
    let meta = q.meta();
    let weight = q.weight();
    let integral_weight = weight.integral().is_some();
    let s = row.shift().ok_or_else(|| Error::Invalid(format!("η-quotient of row {row:?} has fractional q-shift")))?;
    let p = row.p as i64;
    // smallest s' ≥ 0 congruent to s with s' ≡ −b (mod p)
    let adjust = (row.b as i64 + s).rem_euclid(p);
    let mut shift_used = s - adjust;
    if shift_used < 0 {
        shift_used += p;
    }
    let consistent = row.eta_den == row.c as i64 - 1 && adjust == 0;

    let ring = CoefficientRing::modulo(row.p)?;
    let order = row.p as usize * (depth + 2);
    let body = PartitionFamily::cubic(row.c).fproduct().mul(&FProduct::new([(1, row.f1_exponent())]));
    let g = expand_fproduct(&body, ring, order).shift(shift_used as usize);
    let ell = weight.integral().unwrap_or(0).max(1);
    let chi = meta.character.clone().unwrap_or_else(Character::trivial);
    let ctx = HeckeContext::new(row.p, ell, chi, ring)?;
    let image = apply_tp(&ctx, &g)?;

    let first_bad = (0..=depth).find(|&n| !image.coeff_is_zero(n));
    let constant_term_zero = image.coeff_is_zero(0);
    let mut reasons = Vec::new();
    if meta.cond24 != (true, true) {
        reasons.push("24-conditions".to_string());
    }
    if !meta.holomorphic {
        reasons.push("holomorphy".to_string());
    }
    if !integral_weight {
        reasons.push("integral weight".to_string());
    }
    if !consistent {
        reasons.push("η-quotient does not match the residue".to_string());
    }
    let outcome = match (first_bad, meta.sturm_bound) {
        (Some(n), _) => HeckeOutcome::Counterexample { n, residue: image.coeff(n).try_into().unwrap_or(0) },
        (None, Some(sb)) if (depth as u64) < sb => HeckeOutcome::Insufficient { depth, sturm_bound: sb },
        (None, _) if !reasons.is_empty() => HeckeOutcome::Unsupported { reasons },
        (None, None) => HeckeOutcome::Unsupported { reasons: vec!["no Sturm bound".into()] },
        (None, Some(_)) => HeckeOutcome::Proved,
    };
    Ok(HeckeVerdict {
        row: *row,
        weight,
        sturm_bound: meta.sturm_bound,
        cond24: meta.cond24,
        holomorphic: meta.holomorphic,
        integral_weight,
        eta_shift_consistent: consistent,
        shift_used,
        constant_term_zero,
        depth,
        order,
        outcome,
    })
}

/// Runs [`verify_row`] at exactly the row's Sturm bound.
pub fn verify_row_at_sturm(row: &HeckeRow) -> Result<HeckeVerdict> {
    let depth =
        row.eta_quotient()?.meta().sturm_bound.ok_or(Error::NonIntegralWeight { twice: row.eta_num - row.eta_den })?;
    verify_row(row, depth as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceCheck {
    pub family: PartitionFamily,
    pub a: usize,
    pub b: usize,
    pub modulus: u64,
    pub depth: usize,
    /// First `n` with `value(An + B) ≢ 0`, with that residue.
    pub first_failure: Option<(usize, u64)>,
}

impl CongruenceCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `value(An + B) ≡ 0 (mod u)` for `0 ≤ n ≤ depth` straight from the
/// generating function.
pub fn direct_congruence(f: PartitionFamily, a: usize, b: usize, u: u64, depth: usize) -> Result<CongruenceCheck> {
    if a < 1 || b >= a {
        return Err(Error::Invalid(format!("progression {a}n+{b} needs A ≥ 1 and 0 ≤ B < A")));
    }
    let ring = CoefficientRing::modulo(u)?;
    let series = genfun(f, ring, a * depth + b + 1);
    Ok(check_progression(&series, f, a, b, u, depth))
}

/// Progression check on an already expanded series (order ≥ `A·depth+B+1`).
pub fn check_progression(
    series: &TruncatedSeries,
    f: PartitionFamily,
    a: usize,
    b: usize,
    u: u64,
    depth: usize,
) -> CongruenceCheck {
    assert!(series.order() > a * depth + b, "series too short for the progression");
    let first_failure = (0..=depth).find_map(|n| {
        let k = a * n + b;
        (!series.coeff_is_zero(k)).then(|| (n, series.coeff(k).try_into().unwrap_or(0)))
    });
    CongruenceCheck { family: f, a, b, modulus: u, depth, first_failure }
}
