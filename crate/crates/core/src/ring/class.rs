use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{LaurentL, Ring};

/// Dimension of a class; the zero class has dimension `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    NegInfinity,
    Finite(i64),
}

impl Dimension {
    pub fn finite(self) -> Option<i64> {
        match self {
            Dimension::NegInfinity => None,
            Dimension::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::NegInfinity => write!(f, "-inf"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A monomial `Π S_i^{e_i}` in the symmetric-power generators, stored as
/// `(i, e_i)` pairs with increasing `i >= 1` and `e_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SMonomial(Vec<(u32, u32)>);

impl SMonomial {
    pub fn one() -> Self {
        SMonomial(Vec::new())
    }

    /// `S_n`; `S_0` is the unit.
    pub fn generator(n: u32) -> Self {
        if n == 0 {
            SMonomial::one()
        } else {
            SMonomial(vec![(n, 1)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, e) in pairs {
            if i > 0 && e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        SMonomial(map.into_iter().collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ i·e_i`, the number of points the monomial accounts for.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&(i, e)| u64::from(i) * u64::from(e)).sum()
    }

    pub fn max_index(&self) -> u32 {
        self.0.last().map_or(0, |&(i, _)| i)
    }

    pub fn times(&self, other: &SMonomial) -> SMonomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        SMonomial(out)
    }
}

impl fmt::Display for SMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "S_{i}^{e}")?;
        }
        Ok(())
    }
}

/// An integer polynomial in `S_1, S_2, …` with Laurent coefficients in `L`.
///
/// `S_n` stands for `[Sym^n X]` with the generators treated as algebraically
/// independent; `S_1 = [X]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MotivicClass {
    terms: BTreeMap<SMonomial, LaurentL>,
}

impl MotivicClass {
    pub fn s(n: u32) -> Self {
        MotivicClass::from_monomial(SMonomial::generator(n), LaurentL::one())
    }

    pub fn l_pow(k: i64) -> Self {
        MotivicClass::from_laurent(LaurentL::l_pow(k))
    }

    pub fn from_laurent(c: LaurentL) -> Self {
        MotivicClass::from_monomial(SMonomial::one(), c)
    }

    pub fn from_monomial(m: SMonomial, c: LaurentL) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MotivicClass { terms }
    }

    /// `Π S_{p}` over the parts `p` of a multiplicity profile.
    pub fn s_product(parts: &[u32]) -> Self {
        MotivicClass::from_monomial(
            SMonomial::from_pairs(parts.iter().map(|&p| (p, 1))),
            LaurentL::one(),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SMonomial, &LaurentL)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SMonomial) -> LaurentL {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The pure-`L` value when no symmetric-power generator occurs.
    pub fn as_laurent(&self) -> Option<LaurentL> {
        match self.terms.len() {
            0 => Some(LaurentL::zero()),
            1 => self.terms.get(&SMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn max_generator(&self) -> u32 {
        self.terms.keys().map(SMonomial::max_index).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: &SMonomial, c: &LaurentL) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return MotivicClass::default();
        }
        MotivicClass {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect(),
        }
    }

    pub fn mul_l_power(&self, k: i64) -> Self {
        MotivicClass {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.mul_l_power(k)))
                .collect(),
        }
    }

    /// `max d·weight(m) + k` over the terms `c·L^k·m`.
    pub fn dimension(&self, d: i64) -> Dimension {
        self.terms
            .iter()
            .filter_map(|(m, c)| c.degree().map(|k| d * m.weight() as i64 + k))
            .max()
            .map_or(Dimension::NegInfinity, Dimension::Finite)
    }

    /// Terms of dimension `>= min_dim` and the dimension of the largest
    /// dropped term.
    pub fn split_at(&self, min_dim: i64, d: i64) -> (Self, Dimension) {
        let mut kept = MotivicClass::default();
        let mut dropped = Dimension::NegInfinity;
        for (m, c) in &self.terms {
            let shift = d * m.weight() as i64;
            let (k, drop) = c.split_at(min_dim - shift);
            if !k.is_zero() {
                kept.terms.insert(m.clone(), k);
            }
            if let Some(e) = drop {
                dropped = dropped.max(Dimension::Finite(e + shift));
            }
        }
        (kept, dropped)
    }
}

impl Ring for MotivicClass {
    fn zero() -> Self {
        MotivicClass::default()
    }
    fn one() -> Self {
        MotivicClass::from_laurent(LaurentL::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m, c);
        }
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = MotivicClass::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(&m1.times(m2), &c1.times(c2));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        MotivicClass {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negate())).collect(),
        }
    }
    fn from_bigint(n: &BigInt) -> Self {
        MotivicClass::from_laurent(LaurentL::from_bigint(n))
    }
    fn try_inverse(&self) -> Option<Self> {
        self.as_laurent()?.try_inverse().map(MotivicClass::from_laurent)
    }
}

impl fmt::Display for MotivicClass {
    /// Sum of `c*L^k*S_i^e…` monomials with explicit integer coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            for (k, v) in c.terms().rev() {
                let mag = v.abs();
                match (first, v.is_negative()) {
                    (true, false) => {}
                    (true, true) => write!(f, "-")?,
                    (false, false) => write!(f, " + ")?,
                    (false, true) => write!(f, " - ")?,
                }
                first = false;
                write!(f, "{mag}")?;
                if k != 0 {
                    write!(f, "*L^{k}")?;
                }
                if !m.is_one() {
                    write!(f, "*{m}")?;
                }
            }
        }
        Ok(())
    }
}

impl From<LaurentL> for MotivicClass {
    fn from(c: LaurentL) -> Self {
        MotivicClass::from_laurent(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_examples() {
        let c = MotivicClass::s(3).mul_l_power(-2);
        assert_eq!(c.dimension(1), Dimension::Finite(1));
        assert_eq!(MotivicClass::l_pow(7).dimension(3), Dimension::Finite(7));
        assert_eq!(MotivicClass::zero().dimension(1), Dimension::NegInfinity);
    }

    #[test]
    fn product_and_display() {
        let s1 = MotivicClass::s(1);
        let s2 = MotivicClass::s(2);
        let w = s2.minus(&s1);
        let sq = w.times(&w);
        // S2^2 - 2 S1 S2 + S1^2
        assert_eq!(sq.coefficient(&SMonomial::from_pairs([(2, 2)])), LaurentL::one());
        assert_eq!(
            sq.coefficient(&SMonomial::from_pairs([(1, 1), (2, 1)])),
            LaurentL::constant(-2)
        );
        assert_eq!(w.to_string(), "1*S_2^1 - 1*S_1^1");
        assert_eq!(MotivicClass::one().to_string(), "1");
    }

    #[test]
    fn split_by_dimension() {
        let c = MotivicClass::s(2)
            .mul_l_power(-3)
            .plus(&MotivicClass::l_pow(-4))
            .plus(&MotivicClass::one());
        let (kept, dropped) = c.split_at(-1, 1);
        assert_eq!(kept, MotivicClass::s(2).mul_l_power(-3).plus(&MotivicClass::one()));
        assert_eq!(dropped, Dimension::Finite(-4));
    }

    #[test]
    fn inverse_of_units_only() {
        assert_eq!(
            MotivicClass::l_pow(2).negate().try_inverse(),
            Some(MotivicClass::l_pow(-2).negate())
        );
        assert_eq!(MotivicClass::s(1).try_inverse(), None);
    }
}
