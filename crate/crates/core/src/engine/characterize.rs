//! Closed-form residues of `ā_c(n)` modulo 4 and 8 from square and
//! `k² + 2ℓ²` representations, checked against the expanded series.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{is_square, isqrt};
use crate::error::{Error, Result};
use crate::qfuncs::{genfun, PartitionFamily};
use crate::series::CoefficientRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharMismatch {
    pub n: usize,
    pub actual: u64,
    pub predicted: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationResult {
    pub c: u64,
    pub modulus: u64,
    pub n_max: usize,
    pub first_mismatch: Option<CharMismatch>,
    /// How many `n ≤ n_max` fall in each class (classes may overlap).
    pub class_counts: BTreeMap<String, usize>,
}

impl CharacterizationResult {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

fn square_root(n: u64) -> Option<u64> {
    is_square(n).then(|| isqrt(n))
}

/// `#{(k, ℓ) : k, ℓ ≥ 1, n = k² + 2ℓ²}`
pub fn count_k2_plus_2l2(n: u64) -> u64 {
    let mut count = 0;
    let mut l = 1u64;
    while 2 * l * l < n {
        if is_square(n - 2 * l * l) {
            count += 1;
        }
        l += 1;
    }
    count
}

fn is_positive_square(n: u64) -> bool {
    n >= 1 && is_square(n)
}

/// `n = 2k²` with `k ≥ 1`; returns `k`.
fn twice_square(n: u64) -> Option<u64> {
    if n % 2 == 1 || n == 0 {
        return None;
    }
    square_root(n / 2)
}

/// Predicted `ā_c(n) mod 4` for `n ≥ 1`.
pub fn predict_mod4(c: u64, n: u64) -> u64 {
    if is_positive_square(n) {
        2
    } else if twice_square(n).is_some() {
        2 * (c + 1) % 4
    } else {
        0
    }
}

/// Predicted `ā_c(n) mod 8` for `n ≥ 1`: the sum of the contributions of
/// every class containing `n`, with `k² + 2ℓ²` counted once per
/// representation.
pub fn predict_mod8(c: u64, n: u64) -> u64 {
    let c1 = (c + 1) % 8;
    let mut total = 0u64;
    if is_positive_square(n) {
        total += 2;
    }
    if let Some(k) = twice_square(n) {
        total += if k % 2 == 1 { 2 * c1 } else { 6 * c1 };
    }
    if n % 4 == 0 && is_positive_square(n / 4) {
        total += 2 * c1 * ((c + 2) % 8);
    }
    total += 4 * c1 * (count_k2_plus_2l2(n) % 2);
    total % 8
}

fn classes_mod4(n: u64) -> Vec<&'static str> {
    let mut v = Vec::new();
    if is_positive_square(n) {
        v.push("k^2");
    }
    if twice_square(n).is_some() {
        v.push("2k^2");
    }
    v
}

fn classes_mod8(n: u64) -> Vec<&'static str> {
    let mut v = Vec::new();
    if is_positive_square(n) {
        v.push("k^2");
    }
    match twice_square(n) {
        Some(k) if k % 2 == 1 => v.push("2(2k-1)^2"),
        Some(_) => v.push("2(2k)^2"),
        None => {}
    }
    if n % 4 == 0 && is_positive_square(n / 4) {
        v.push("4k^2");
    }
    if count_k2_plus_2l2(n) > 0 {
        v.push("k^2+2l^2");
    }
    v
}

fn check(
    c: u64,
    n_max: usize,
    modulus: u64,
    predict: fn(u64, u64) -> u64,
    classes: fn(u64) -> Vec<&'static str>,
) -> Result<CharacterizationResult> {
    if c < 1 || n_max < 1 {
        return Err(Error::Invalid(format!("need c ≥ 1 and n_max ≥ 1, got c = {c}, n_max = {n_max}")));
    }
    let series = genfun(PartitionFamily::overcubic(c), CoefficientRing::modulo(modulus)?, n_max + 1);
    let residues = series.residues().expect("modular series");
    let mut class_counts = BTreeMap::new();
    let mut first_mismatch = None;
    for (n, &actual) in residues.iter().enumerate().take(n_max + 1).skip(1) {
        for cl in classes(n as u64) {
            *class_counts.entry(cl.to_string()).or_insert(0) += 1;
        }
        let predicted = predict(c, n as u64);
        let actual = actual as u64;
        if first_mismatch.is_none() && actual != predicted {
            first_mismatch = Some(CharMismatch { n, actual, predicted });
        }
    }
    Ok(CharacterizationResult { c, modulus, n_max, first_mismatch, class_counts })
}

pub fn check_characterization_mod4(c: u64, n_max: usize) -> Result<CharacterizationResult> {
    check(c, n_max, 4, predict_mod4, classes_mod4)
}

pub fn check_characterization_mod8(c: u64, n_max: usize) -> Result<CharacterizationResult> {
    check(c, n_max, 8, predict_mod8, classes_mod8)
}
