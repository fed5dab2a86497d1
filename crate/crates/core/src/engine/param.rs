//! Integer expressions over the catalog parameters `i`, `k`, `alpha`.
//!
//! Grammar: `expr := term (('+' | '-') term)*`,
//! `term := unary (('*' | '·') unary)*`, `unary := '-' unary | power`,
//! `power := atom ('^' unary)?`, `atom := integer | name | '(' expr ')'`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamExpr {
    Const(i64),
    Var(String),
    Neg(Box<ParamExpr>),
    Add(Box<ParamExpr>, Box<ParamExpr>),
    Sub(Box<ParamExpr>, Box<ParamExpr>),
    Mul(Box<ParamExpr>, Box<ParamExpr>),
    Pow(Box<ParamExpr>, Box<ParamExpr>),
}

pub type Bindings = BTreeMap<String, i64>;

const VARIABLES: [&str; 3] = ["i", "k", "alpha"];

impl ParamExpr {
    pub fn eval(&self, env: &Bindings) -> Result<i64> {
        let overflow = || Error::Expr(format!("overflow evaluating {self}"));
        Ok(match self {
            ParamExpr::Const(v) => *v,
            ParamExpr::Var(name) => *env.get(name).ok_or_else(|| Error::Expr(format!("unbound parameter {name}")))?,
            ParamExpr::Neg(a) => a.eval(env)?.checked_neg().ok_or_else(overflow)?,
            ParamExpr::Add(a, b) => a.eval(env)?.checked_add(b.eval(env)?).ok_or_else(overflow)?,
            ParamExpr::Sub(a, b) => a.eval(env)?.checked_sub(b.eval(env)?).ok_or_else(overflow)?,
            ParamExpr::Mul(a, b) => a.eval(env)?.checked_mul(b.eval(env)?).ok_or_else(overflow)?,
            ParamExpr::Pow(a, b) => {
                let e = b.eval(env)?;
                let e = u32::try_from(e).map_err(|_| Error::Expr(format!("negative exponent in {self}")))?;
                a.eval(env)?.checked_pow(e).ok_or_else(overflow)?
            }
        })
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            ParamExpr::Const(_) => {}
            ParamExpr::Var(v) => out.push(v.clone()),
            ParamExpr::Neg(a) => a.collect_vars(out),
            ParamExpr::Add(a, b) | ParamExpr::Sub(a, b) | ParamExpr::Mul(a, b) | ParamExpr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamExpr::Const(v) => write!(f, "{v}"),
            ParamExpr::Var(v) => f.write_str(v),
            ParamExpr::Neg(a) => write!(f, "-({a})"),
            ParamExpr::Add(a, b) => write!(f, "({a} + {b})"),
            ParamExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            ParamExpr::Mul(a, b) => write!(f, "{a}*{b}"),
            ParamExpr::Pow(a, b) => write!(f, "{a}^{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(i64),
    Name(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&ch) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
        } else if ch.is_ascii_digit() {
            let mut v: i64 = 0;
            while let Some(&d) = chars.peek() {
                let Some(digit) = d.to_digit(10) else { break };
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(digit as i64))
                    .ok_or_else(|| Error::Expr(format!("integer literal too large in {s:?}")))?;
                chars.next();
            }
            out.push(Token::Num(v));
        } else if ch.is_ascii_alphabetic() {
            let mut name = String::new();
            while let Some(&c) = chars.peek() {
                if !c.is_ascii_alphanumeric() && c != '_' {
                    break;
                }
                name.push(c);
                chars.next();
            }
            if !VARIABLES.contains(&name.as_str()) {
                return Err(Error::Expr(format!("unknown parameter {name:?} in {s:?}")));
            }
            out.push(Token::Name(name));
        } else {
            let op = match ch {
                '·' | '*' => '*',
                '−' | '-' => '-',
                '+' | '^' | '(' | ')' => ch,
                _ => return Err(Error::Expr(format!("unexpected {ch:?} in {s:?}"))),
            };
            out.push(Token::Op(op));
            chars.next();
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ParamExpr> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs =
                if op == '+' { ParamExpr::Add(lhs.into(), rhs.into()) } else { ParamExpr::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ParamExpr> {
        let mut lhs = self.unary()?;
        while self.peek_op() == Some('*') {
            self.pos += 1;
            lhs = ParamExpr::Mul(lhs.into(), self.unary()?.into());
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ParamExpr> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(ParamExpr::Neg(self.unary()?.into()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ParamExpr> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            return Ok(ParamExpr::Pow(base.into(), self.unary()?.into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParamExpr> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(v)) => Ok(ParamExpr::Const(v)),
            Some(Token::Name(n)) => Ok(ParamExpr::Var(n)),
            Some(Token::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Expr("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Expr(format!("unexpected token {other:?}"))),
        }
    }
}

impl FromStr for ParamExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { tokens: tokenize(s)?, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Expr(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, pairs: &[(&str, i64)]) -> i64 {
        let env: Bindings = pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        s.parse::<ParamExpr>().unwrap().eval(&env).unwrap()
    }

    #[test]
    fn evaluates_catalog_shapes() {
        assert_eq!(ev("2*i", &[("i", 3)]), 6);
        assert_eq!(ev("2^k*i - 2^(k-1) - 2", &[("k", 3), ("i", 1)]), 2);
        assert_eq!(ev("2^k*i + 2^(k-1) - 3", &[("k", 1), ("i", 0)]), -2);
        assert_eq!(ev("2^alpha*4", &[("alpha", 0)]), 4);
        assert_eq!(ev("2^(k+1)", &[("k", 4)]), 32);
        assert_eq!(ev("9·i+4", &[("i", 2)]), 22);
        assert_eq!(ev("-2^2", &[]), -4);
        assert_eq!(ev("2^3^2", &[]), 512);
        assert_eq!(ev("10 - 3 - 2", &[]), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!("2*j".parse::<ParamExpr>().is_err());
        assert!("(1+2".parse::<ParamExpr>().is_err());
        assert!("1 2".parse::<ParamExpr>().is_err());
        let e: ParamExpr = "2^(0-1)".parse().unwrap();
        assert!(e.eval(&Bindings::new()).is_err());
        let e: ParamExpr = "i".parse().unwrap();
        assert!(e.eval(&Bindings::new()).is_err());
        assert_eq!("alpha + i*k".parse::<ParamExpr>().unwrap().variables(), vec!["alpha", "i", "k"]);
    }
}
