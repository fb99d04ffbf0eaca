use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::Ring;
use crate::error::{Error, Result};

/// A Laurent polynomial in the Lefschetz symbol `L` with big-integer
/// coefficients. No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentL {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentL {
    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentL { coeffs }
    }

    /// `L^k`.
    pub fn l_pow(k: i64) -> Self {
        LaurentL::monomial(k, BigInt::one())
    }

    pub fn constant(c: i64) -> Self {
        LaurentL::monomial(0, BigInt::from(c))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut out = LaurentL::default();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Highest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn mul_l_power(&self, k: i64) -> Self {
        LaurentL {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentL::default();
        }
        LaurentL {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Terms with exponent `>= min`, and the largest dropped exponent.
    pub fn split_at(&self, min: i64) -> (Self, Option<i64>) {
        let kept = LaurentL {
            coeffs: self.coeffs.range(min..).map(|(e, c)| (*e, c.clone())).collect(),
        };
        let dropped = self.coeffs.range(..min).next_back().map(|(e, _)| *e);
        (kept, dropped)
    }

    /// Substitutes `L = value`.
    pub fn eval_rational(&self, value: &BigRational) -> Result<BigRational> {
        if value.is_zero() && self.low_degree().is_some_and(|e| e < 0) {
            return Err(Error::InvalidInput("negative power of L at L = 0".into()));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 {
                Ring::pow(value, *e as u32)
            } else {
                Ring::pow(&value.recip(), (-*e) as u32)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Substitutes `L = 1`.
    pub fn sum_of_coefficients(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

impl Ring for LaurentL {
    fn zero() -> Self {
        LaurentL::default()
    }
    fn one() -> Self {
        LaurentL::l_pow(0)
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
        for (e, c) in &other.coeffs {
            self.add_term(*e, c);
        }
    }
    fn times(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                *coeffs.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentL { coeffs }
    }
    fn negate(&self) -> Self {
        LaurentL {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
    fn from_bigint(n: &BigInt) -> Self {
        LaurentL::monomial(0, n.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next()?;
        (c.abs() == BigInt::from(1)).then(|| LaurentL::monomial(-e, c.clone()))
    }
}

impl fmt::Display for LaurentL {
    /// Highest power first, e.g. `1*L^5 - 1*L^2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*L^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentL {
    type Err = Error;

    /// Parses sums such as `L^2 + 3*L - 1` or `1*L^-2 - 4`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = LaurentL::default();
        for (sign, term) in split_signed_terms(s)? {
            let (coeff, rest) = match term.split_once('*') {
                Some((c, rest)) => (parse_int(c)?, rest.trim()),
                None if term.contains('L') => (BigInt::one(), term),
                None => (parse_int(term)?, ""),
            };
            let exp = if rest.is_empty() {
                0
            } else {
                let body = rest
                    .strip_prefix('L')
                    .ok_or_else(|| Error::Parse(format!("bad L-term `{term}`")))?;
                if body.is_empty() {
                    1
                } else {
                    let e = body
                        .strip_prefix('^')
                        .ok_or_else(|| Error::Parse(format!("bad L-term `{term}`")))?;
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
                }
            };
            out.add_term(exp, &(coeff * sign));
        }
        Ok(out)
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

/// Splits `a + b - c` into signed terms, leaving `^-k` exponents intact.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(i64, &str)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut start = 0;
    let mut i = 0;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && i > start && bytes[i - 1] != b'^' {
            let term = s[start..i].trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            out.push((sign, term));
            sign = if c == b'-' { -1 } else { 1 };
            start = i + 1;
        }
        i += 1;
    }
    let term = s[start..].trim();
    if term.is_empty() {
        return Err(Error::Parse(format!("empty term in `{s}`")));
    }
    out.push((sign, term));
    Ok(out)
}
