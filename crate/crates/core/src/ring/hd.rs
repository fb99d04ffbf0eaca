use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use super::laurent::split_signed_terms;
use super::{LaurentL, Ring};
use crate::error::{Error, Result};

/// A Laurent polynomial in two variables `u`, `v` with integer coefficients,
/// used for Hodge–Deligne (E-)polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HdPoly {
    coeffs: BTreeMap<(i64, i64), BigInt>,
}

impl HdPoly {
    pub fn monomial(p: i64, q: i64, c: BigInt) -> Self {
        let mut out = HdPoly::default();
        out.add_term(p, q, &c);
        out
    }

    /// `(uv)^k`, the image of `L^k`.
    pub fn uv_pow(k: i64) -> Self {
        HdPoly::monomial(k, k, BigInt::one())
    }

    pub fn from_laurent(c: &LaurentL) -> Self {
        let mut out = HdPoly::default();
        for (k, v) in c.terms() {
            out.add_term(k, k, v);
        }
        out
    }

    /// The polynomial in `L = uv` this equals, if it only involves powers of
    /// `uv`.
    pub fn as_laurent(&self) -> Option<LaurentL> {
        let mut out = LaurentL::default();
        for (&(p, q), c) in &self.coeffs {
            if p != q {
                return None;
            }
            out.add_term(p, c);
        }
        Some(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, p: i64, q: i64) -> BigInt {
        self.coeffs.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, p: i64, q: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((p, q)).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(p, q));
        }
    }

    /// Value at `u = v = 1`, the Euler characteristic.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

impl Ring for HdPoly {
    fn zero() -> Self {
        HdPoly::default()
    }
    fn one() -> Self {
        HdPoly::uv_pow(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (&(p, q), c) in &other.coeffs {
            self.add_term(p, q, c);
        }
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = HdPoly::default();
        for (&(p1, q1), c1) in &self.coeffs {
            for (&(p2, q2), c2) in &other.coeffs {
                out.add_term(p1 + p2, q1 + q2, &(c1 * c2));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        HdPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn from_bigint(n: &BigInt) -> Self {
        HdPoly::monomial(0, 0, n.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (&(p, q), c) = self.coeffs.iter().next()?;
        (c.abs() == BigInt::from(1)).then(|| HdPoly::monomial(-p, -q, c.clone()))
    }
}

impl fmt::Display for HdPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(p, q), c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            write!(f, "{mag}")?;
            if p != 0 {
                write!(f, "*u^{p}")?;
            }
            if q != 0 {
                write!(f, "*v^{q}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for HdPoly {
    type Err = Error;

    /// Parses sums of terms such as `1+uv`, `1 - u - v + uv`, `2*u^2*v`,
    /// `3*u^1*v^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = HdPoly::default();
        for (sign, term) in split_signed_terms(s)? {
            let digits = term
                .find(|c: char| !c.is_ascii_digit() && !c.is_whitespace())
                .unwrap_or(term.len());
            let coeff: BigInt = if term[..digits].trim().is_empty() {
                BigInt::one()
            } else {
                term[..digits]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?
            };
            let (p, q) = parse_uv(&term[digits..])
                .ok_or_else(|| Error::Parse(format!("bad Hodge-Deligne term `{term}`")))?;
            out.add_term(p, q, &(coeff * sign));
        }
        Ok(out)
    }
}

fn parse_uv(s: &str) -> Option<(i64, i64)> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (mut p, mut q) = (0i64, 0i64);
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '*' => i += 1,
            var @ ('u' | 'v') => {
                i += 1;
                let mut exp = 1i64;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let start = i;
                    if i < chars.len() && chars[i] == '-' {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = chars[start..i].iter().collect::<String>().parse().ok()?;
                }
                if var == 'u' {
                    p += exp;
                } else {
                    q += exp;
                }
            }
            _ => return None,
        }
    }
    Some((p, q))
}
