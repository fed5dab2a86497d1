//! q-series identities as pairs of expression trees, expanded and compared
//! coefficientwise.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::qfuncs::{expand_fproduct, omega, phi, psi, FProduct, PartitionFamily};
use crate::series::{CoefficientRing, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Product(FProduct),
    Phi,
    Psi,
    Omega,
    /// `e(q^d)`
    Dilate(u64, Box<Expr>),
    /// `Σ_n [q^{dn+r}] e · q^n`
    Extract {
        d: u64,
        r: u64,
        inner: Box<Expr>,
    },
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Scalar(BigInt, Box<Expr>),
    /// `q^s · e`
    Shift(u64, Box<Expr>),
}

impl Expr {
    pub fn product(p: FProduct) -> Self {
        Expr::Product(p)
    }

    pub fn fproduct(s: &str) -> Self {
        Expr::Product(s.parse().expect("well-formed f-product literal"))
    }

    pub fn dilate(self, d: u64) -> Self {
        Expr::Dilate(d, Box::new(self))
    }

    pub fn extract(self, d: u64, r: u64) -> Self {
        Expr::Extract { d, r, inner: Box::new(self) }
    }

    pub fn pow(self, e: u32) -> Self {
        Expr::Pow(Box::new(self), e)
    }

    pub fn times(self, c: impl Into<BigInt>) -> Self {
        Expr::Scalar(c.into(), Box::new(self))
    }

    pub fn shift(self, s: u64) -> Self {
        Expr::Shift(s, Box::new(self))
    }

    pub fn eval(&self, ring: CoefficientRing, order: usize) -> Result<TruncatedSeries> {
        self.eval_inner(ring, order).map_err(|e| match e {
            Error::Expr(msg) => Error::Expr(msg),
            other => Error::Expr(format!("{other} in {self}")),
        })
    }

    fn eval_inner(&self, ring: CoefficientRing, order: usize) -> Result<TruncatedSeries> {
        if order == 0 {
            return Err(Error::Expr(format!("order 0 requested for {self}")));
        }
        Ok(match self {
            Expr::Product(p) => expand_fproduct(p, ring, order),
            Expr::Phi => phi(ring, order),
            Expr::Psi => psi(ring, order),
            Expr::Omega => omega(ring, order),
            Expr::Dilate(d, e) => {
                if *d == 0 {
                    return Err(Error::Expr(format!("dilation by 0 in {self}")));
                }
                let d = *d as usize;
                e.eval(ring, order.div_ceil(d))?.dilate_to(d, order)
            }
            Expr::Extract { d, r, inner } => {
                if *d == 0 || r >= d {
                    return Err(Error::Expr(format!("bad progression in {self}")));
                }
                let (d, r) = (*d as usize, *r as usize);
                inner.eval(ring, d * order + r)?.extract_progression(d, r).truncate(order)
            }
            Expr::Sum(terms) => {
                let mut acc = TruncatedSeries::zero(ring, order);
                for t in terms {
                    acc = acc.add(&t.eval(ring, order)?)?;
                }
                acc
            }
            Expr::Prod(factors) => {
                let mut acc = TruncatedSeries::one(ring, order);
                for f in factors {
                    acc = acc.mul(&f.eval(ring, order)?)?;
                }
                acc
            }
            Expr::Pow(e, k) => e.eval(ring, order)?.pow(*k as i64)?,
            Expr::Scalar(c, e) => e.eval(ring, order)?.scale(c),
            Expr::Shift(s, e) => e.eval(ring, order)?.shift(*s as usize),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, items: &[Expr], sep: &str| -> fmt::Result {
            for (i, e) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "({e})")?;
            }
            Ok(())
        };
        match self {
            Expr::Product(p) => write!(f, "{p}"),
            Expr::Phi => f.write_str("φ(q)"),
            Expr::Psi => f.write_str("ψ(q)"),
            Expr::Omega => f.write_str("Ω(q)"),
            Expr::Dilate(d, e) => write!(f, "[{e}](q→q^{d})"),
            Expr::Extract { d, r, inner } => write!(f, "extract[{d}n+{r}]({inner})"),
            Expr::Sum(t) => join(f, t, " + "),
            Expr::Prod(t) => join(f, t, " · "),
            Expr::Pow(e, k) => write!(f, "({e})^{k}"),
            Expr::Scalar(c, e) => write!(f, "{c}·({e})"),
            Expr::Shift(s, e) => write!(f, "q^{s}·({e})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    /// An identity or congruence as displayed.
    Display,
    /// A corrected form of a display that does not hold as written.
    Corrected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub id: String,
    pub label: String,
    pub kind: CaseKind,
    pub lhs: Expr,
    pub rhs: Expr,
    pub check_order: usize,
    /// Compare modulo this instead of exactly.
    pub modulus: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub id: String,
    pub label: String,
    pub kind: CaseKind,
    pub order: usize,
    pub modulus: Option<u64>,
    pub mismatch: Option<Mismatch>,
    pub error: Option<String>,
    pub wall_ms: u64,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.error.is_none()
    }

    pub fn summary(&self) -> String {
        let ring = self.modulus.map_or("exact".to_string(), |m| format!("mod {m}"));
        let body = match (&self.mismatch, &self.error) {
            (_, Some(e)) => format!("ERROR {e}"),
            (Some(m), _) => format!("FAIL at q^{}: {} vs {}", m.n, m.lhs, m.rhs),
            (None, None) => "equal".to_string(),
        };
        format!("{} ({ring}, order {}): {body} [{} ms]", self.id, self.order, self.wall_ms)
    }
}

pub fn verify_identity(case: &IdentityCase) -> IdentityResult {
    let start = Instant::now();
    let mut result = IdentityResult {
        id: case.id.clone(),
        label: case.label.clone(),
        kind: case.kind,
        order: case.check_order,
        modulus: case.modulus,
        mismatch: None,
        error: None,
        wall_ms: 0,
    };
    let ring = match case.modulus {
        None => Ok(CoefficientRing::ExactInteger),
        Some(m) => CoefficientRing::modulo(m),
    };
    let sides =
        ring.and_then(|ring| Ok((case.lhs.eval(ring, case.check_order)?, case.rhs.eval(ring, case.check_order)?)));
    match sides {
        Err(e) => result.error = Some(e.to_string()),
        Ok((l, r)) => {
            result.mismatch = (0..case.check_order).find(|&n| l.coeff(n) != r.coeff(n)).map(|n| Mismatch {
                n,
                lhs: l.coeff(n).to_string(),
                rhs: r.coeff(n).to_string(),
            });
        }
    }
    result.wall_ms = start.elapsed().as_millis() as u64;
    result
}

pub const DEFAULT_CHECK_ORDER: usize = 400;

fn fp(pairs: &[(u64, i64)]) -> FProduct {
    FProduct::new(pairs.iter().copied())
}

fn overcubic(c: u64) -> Expr {
    Expr::Product(PartitionFamily::overcubic(c).fproduct())
}

/// `Σ_k coeff(k) q^k · base · step^k`
fn series_in_q(base: &FProduct, step: &FProduct, coeffs: impl IntoIterator<Item = (u64, BigInt)>) -> Expr {
    Expr::Sum(coeffs.into_iter().map(|(k, c)| Expr::Product(base.mul(&step.pow(k as i64))).shift(k).times(c)).collect())
}

fn four_pow(k: u64) -> BigInt {
    BigInt::from(4).pow(k as u32)
}

/// Progressions `4n+1`, `4n+3` and `4n+2` of `ā_{2i}` as products times a
/// finite sum in `q f_2^4 f_8^8 / f_4^12`. For `4n+2` the `f_4` exponent is
/// `10i + f4_offset`, so the catalog can carry both the displayed prefactor
/// and the corrected one.
fn even_c_quarter(i: u64, r: u64, f4_offset: i64) -> Expr {
    let ii = i as i64;
    let step = fp(&[(2, 4), (8, 8), (4, -12)]);
    let odd = |k: u64| binomial(2 * i + 1, 2 * k + 1);
    match r {
        1 => {
            let base = fp(&[(4, 10 * ii + 7), (1, -(8 * ii + 4)), (2, -1), (8, -(4 * ii + 2))]);
            series_in_q(&base, &step, (0..=i).map(|k| (k, 2 * four_pow(k) * binomial(2 * i + 1, 2 * k))))
        }
        3 => {
            let base = fp(&[(2, 1), (4, 10 * ii + 1), (1, -(8 * ii + 4)), (8, -(4 * ii - 2))]);
            series_in_q(&base, &step, (0..=i).map(|k| (k, 4 * four_pow(k) * odd(k))))
        }
        2 => {
            let base = fp(&[(2, 7), (4, 10 * ii + f4_offset), (1, -(8 * ii + 6)), (8, -(4 * ii - 2))]);
            series_in_q(&base, &step, (0..=i).map(|k| (k, 2 * four_pow(k) * odd(k))))
        }
        _ => unreachable!(),
    }
}

/// `ā_c(4n+1)` and `ā_c(4n+3)` modulo `2^{k+2}` for `c = 2^k i − 2^{k−1} − 2`.
fn two_power_quarter(k: u32, r: u64) -> Expr {
    let h = 1i64 << (k - 1);
    let kk = 1i64 << k;
    let top = 1u64 << (k - 2);
    let terms = (0..=top).map(|s| {
        let si = s as i64;
        let (exps, c) = if r == 1 {
            (
                [(4, 5 * h - 12 * si + 7), (2, -(kk - 4 * si + 3)), (8, -(kk - 8 * si + 2))],
                2 * four_pow(s) * binomial(h as u64 + 1, 2 * s),
            )
        } else {
            (
                [(4, 5 * h - 12 * si + 1), (2, -(kk - 4 * si + 1)), (8, -(kk - 8 * si - 2))],
                -4 * four_pow(s) * binomial(h as u64 + 1, 2 * s + 1),
            )
        };
        Expr::Product(fp(&exps)).shift(s).times(c)
    });
    Expr::Sum(terms.collect())
}

/// Every catalogued identity, compared to `order` coefficients.
pub fn identity_catalog(order: usize) -> Vec<IdentityCase> {
    let mut out = Vec::new();
    let mut push = |id: String, label: &str, kind: CaseKind, lhs: Expr, rhs: Expr, modulus: Option<u64>| {
        out.push(IdentityCase { id, label: label.into(), kind, lhs, rhs, check_order: order, modulus });
    };
    let d = CaseKind::Display;
    let two_diss = "2-dissection";
    let three_diss = "3-dissection";

    push(
        "phi-2-dissection".into(),
        two_diss,
        d,
        Expr::Phi,
        Expr::Sum(vec![Expr::Phi.dilate(4), Expr::Psi.dilate(8).shift(1).times(2)]),
        None,
    );
    push(
        "f1^2-2-dissection".into(),
        two_diss,
        d,
        Expr::fproduct("f1^2"),
        Expr::Sum(vec![Expr::fproduct("f2 f8^5/(f4^2 f16^2)"), Expr::fproduct("f2 f16^2/f8").shift(1).times(-2)]),
        None,
    );
    push(
        "1/f1^2-2-dissection".into(),
        two_diss,
        d,
        Expr::fproduct("1/f1^2"),
        Expr::Sum(vec![Expr::fproduct("f8^5/(f2^5 f16^2)"), Expr::fproduct("f4^2 f16^2/(f2^5 f8)").shift(1).times(2)]),
        None,
    );
    push(
        "phi-3-dissection".into(),
        three_diss,
        d,
        Expr::Phi,
        Expr::Sum(vec![Expr::Phi.dilate(9), Expr::Omega.dilate(3).shift(1).times(2)]),
        None,
    );
    push(
        "f2^2/f1-3-dissection".into(),
        three_diss,
        d,
        Expr::fproduct("f2^2/f1"),
        Expr::Sum(vec![Expr::fproduct("f6 f9^2/(f3 f18)"), Expr::fproduct("f18^2/f9").shift(1)]),
        None,
    );
    push(
        "f1/f4-3-dissection".into(),
        three_diss,
        d,
        Expr::fproduct("f1/f4"),
        Expr::Sum(vec![
            Expr::fproduct("f6 f9 f18/f12^3"),
            Expr::fproduct("f3 f18^4/(f9^2 f12^3)").shift(1).times(-1),
            Expr::fproduct("f6^2 f9 f36^3/(f12^4 f18^2)").shift(2).times(-1),
        ]),
        None,
    );
    push(
        "f6f12^2f18^2f36^2/f3-split".into(),
        "auxiliary dissection",
        d,
        Expr::fproduct("f6 f12^2 f18^2 f36^2/f3"),
        Expr::Sum(vec![Expr::fproduct("f18^9/f9^3"), Expr::fproduct("f6^3 f36^6/(f3 f12^2)").shift(3)]),
        None,
    );
    push(
        "f9^3f12-split".into(),
        "auxiliary dissection",
        d,
        Expr::fproduct("f9^3 f12"),
        Expr::Sum(vec![Expr::fproduct("f3 f12^4 f18^2/(f6^2 f36)"), Expr::fproduct("f3 f36^3").shift(3)]),
        None,
    );
    push(
        "f1/f2^2-3-dissection".into(),
        "auxiliary dissection",
        d,
        Expr::fproduct("f1/f2^2"),
        Expr::Sum(vec![
            Expr::fproduct("f3^2 f9^3/f6^6"),
            Expr::fproduct("f3^3 f18^3/f6^7").shift(1).times(-1),
            Expr::fproduct("f3^4 f18^6/(f6^8 f9^3)").shift(2),
        ]),
        None,
    );
    push(
        "f1f4/f2-3-dissection".into(),
        "auxiliary dissection",
        d,
        Expr::fproduct("f1 f4/f2"),
        Expr::Sum(vec![
            Expr::fproduct("f3 f12 f18^5/(f6^2 f9^2 f36^2)"),
            Expr::fproduct("f9 f36/f18").shift(1).times(-1),
        ]),
        None,
    );

    for c in 1..=6u64 {
        push(
            format!("abar{c}-functional-equation"),
            "functional equation",
            d,
            overcubic(c),
            Expr::Prod(vec![Expr::Phi, Expr::Phi.dilate(2).pow(c as u32 - 1), overcubic(c).dilate(2).pow(2)]),
            None,
        );
    }
    for c in 3..=7u64 {
        // φ(q) ∏_{j ≥ 1} φ(q^{2^j})^{c·2^{j−1}}, truncated where q^{2^j} leaves the window
        let mut factors = vec![Expr::Phi];
        let mut j = 1u32;
        while (1usize << j) < order {
            factors.push(Expr::Phi.dilate(1 << j).pow((c as u32) << (j - 1)));
            j += 1;
        }
        push(
            format!("abar{}-theta-product", c - 1),
            "infinite theta product",
            d,
            overcubic(c - 1),
            Expr::Prod(factors),
            None,
        );
    }
    for c in 1..=6u64 {
        let ci = c as i64;
        push(
            format!("abar{c}-even-part"),
            "even and odd parts",
            d,
            overcubic(c).extract(2, 0),
            Expr::Product(fp(&[(2, ci - 1), (4, 5), (1, -(2 * ci + 2)), (8, -2)])),
            None,
        );
        push(
            format!("abar{c}-odd-part"),
            "even and odd parts",
            d,
            overcubic(c).extract(2, 1),
            Expr::Product(fp(&[(8, 2), (4, -1), (2, ci + 1), (1, -2 * (ci + 1))])).times(2),
            None,
        );
    }
    for i in 1..=3u64 {
        let c = 2 * i;
        push(
            format!("abar{c}-4n+1"),
            "even c, quarter progressions",
            d,
            overcubic(c).extract(4, 1),
            even_c_quarter(i, 1, 0),
            None,
        );
        push(
            format!("abar{c}-4n+3"),
            "even c, quarter progressions",
            d,
            overcubic(c).extract(4, 3),
            even_c_quarter(i, 3, 0),
            None,
        );
        push(
            format!("abar{c}-4n+2"),
            "even c, quarter progressions",
            d,
            overcubic(c).extract(4, 2),
            even_c_quarter(i, 2, 1),
            None,
        );
        push(
            format!("abar{c}-4n+2-corrected"),
            "even c, quarter progressions",
            CaseKind::Corrected,
            overcubic(c).extract(4, 2),
            even_c_quarter(i, 2, -3),
            None,
        );
    }
    for k in 3..=4u32 {
        for i in 1..=2u64 {
            let c = (1u64 << k) * i - (1 << (k - 1)) - 2;
            let m = 1u64 << (k + 2);
            for r in [1u64, 3] {
                push(
                    format!("abar{c}-4n+{r}-mod{m}"),
                    "2^k family, quarter progressions",
                    d,
                    overcubic(c).extract(4, r),
                    two_power_quarter(k, r),
                    Some(m),
                );
            }
        }
    }
    out
}
