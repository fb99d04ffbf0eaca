use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A symbol of the generator alphabet.
///
/// `Unit` is the distinguished generator standing for the integer 1, so an
/// integer part `n` is the vector `n·Unit`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Unit,
    Named(Arc<str>),
}

impl Generator {
    pub fn named(name: &str) -> Result<Self> {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => {
                return Err(Error::Parse(format!(
                    "generator name `{name}` must start with a letter"
                )))
            }
        }
        if !chars.all(|c| c.is_ascii_alphanumeric()) {
            return Err(Error::Parse(format!(
                "generator name `{name}` must be alphanumeric"
            )));
        }
        Ok(Generator::Named(Arc::from(name)))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Generator::Unit)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Unit => write!(f, "1"),
            Generator::Named(name) => write!(f, "{name}"),
        }
    }
}

/// A nonnegative integer vector over the generator alphabet.
///
/// Entries are kept sorted by generator with strictly positive coefficients.
/// The empty vector is the zero vector; it never occurs as a part of a
/// [`GenPartition`] but is the value of the total of an empty partition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Part(Vec<(Generator, u64)>);

impl Part {
    pub fn zero() -> Self {
        Part(Vec::new())
    }

    pub fn integer(n: u64) -> Self {
        if n == 0 {
            Part::zero()
        } else {
            Part(vec![(Generator::Unit, n)])
        }
    }

    pub fn generator(g: Generator, coeff: u64) -> Self {
        if coeff == 0 {
            Part::zero()
        } else {
            Part(vec![(g, coeff)])
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Generator, u64)>>(terms: I) -> Self {
        let mut map: BTreeMap<Generator, u64> = BTreeMap::new();
        for (g, c) in terms {
            *map.entry(g).or_insert(0) += c;
        }
        Part(map.into_iter().filter(|(_, c)| *c > 0).collect())
    }

    pub fn terms(&self) -> &[(Generator, u64)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, g: &Generator) -> u64 {
        self.0
            .binary_search_by(|(h, _)| h.cmp(g))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// The integer value if the part only involves the unit generator.
    pub fn as_integer(&self) -> Option<u64> {
        match self.0.as_slice() {
            [] => Some(0),
            [(Generator::Unit, n)] => Some(*n),
            _ => None,
        }
    }

    /// Sum of all coefficients.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|(_, c)| c).sum()
    }

    pub fn plus(&self, other: &Part) -> Part {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Part(out)
    }

    /// Componentwise `self <= other`.
    pub fn fits_in(&self, other: &Part) -> bool {
        self.0.iter().all(|(g, c)| other.coefficient(g) >= *c)
    }

    /// Componentwise difference; `None` unless `other.fits_in(self)`.
    pub fn minus(&self, other: &Part) -> Option<Part> {
        if !other.fits_in(self) {
            return None;
        }
        Some(Part(
            self.0
                .iter()
                .filter_map(|(g, c)| {
                    let rest = c - other.coefficient(g);
                    (rest > 0).then(|| (g.clone(), rest))
                })
                .collect(),
        ))
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let named = self.0.iter().filter(|(g, _)| !g.is_unit());
        let unit = self.0.iter().filter(|(g, _)| g.is_unit());
        for (g, c) in named.chain(unit) {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (g, c) {
                (Generator::Unit, c) => write!(f, "{c}")?,
                (g, 1) => write!(f, "{g}")?,
                (g, c) => write!(f, "{c}{g}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in part `{s}`")));
            }
            let split = term
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(term.len());
            let (digits, name) = term.split_at(split);
            let coeff: u64 = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?
            };
            if name.is_empty() {
                terms.push((Generator::Unit, coeff));
            } else {
                terms.push((Generator::named(name)?, coeff));
            }
        }
        let part = Part::from_terms(terms);
        if part.is_zero() {
            return Err(Error::Parse(format!("part `{s}` is zero")));
        }
        Ok(part)
    }
}

/// A generalized partition: a finite multiset of nonzero [`Part`]s.
///
/// Parts are stored in ascending canonical order, so derived equality and
/// hashing are multiset equality and hashing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenPartition(Vec<Part>);

impl GenPartition {
    pub fn new(mut parts: Vec<Part>) -> Result<Self> {
        if parts.iter().any(Part::is_zero) {
            return Err(Error::InvalidInput(
                "a partition cannot contain a zero part".into(),
            ));
        }
        parts.sort();
        Ok(GenPartition(parts))
    }

    /// Builds from parts already known to be nonzero.
    pub(crate) fn from_nonzero(mut parts: Vec<Part>) -> Self {
        debug_assert!(parts.iter().all(|p| !p.is_zero()));
        parts.sort();
        GenPartition(parts)
    }

    pub fn empty() -> Self {
        GenPartition(Vec::new())
    }

    pub fn from_ints(parts: &[u64]) -> Result<Self> {
        GenPartition::new(parts.iter().map(|&n| Part::integer(n)).collect())
    }

    pub fn parts(&self) -> &[Part] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<Part> {
        self.0
    }

    /// `|λ|`, the number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `‖λ‖`, the number of distinct parts.
    pub fn distinct_count(&self) -> usize {
        distinct_runs(&self.0).count()
    }

    /// `Σλ` as a vector.
    pub fn total(&self) -> Part {
        self.0.iter().fold(Part::zero(), |acc, p| acc.plus(p))
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.len(),
            distinct: self.distinct_count(),
            total: self.total(),
        }
    }

    /// `m(λ)`: multiplicities of the distinct parts, sorted decreasingly.
    pub fn multiplicity_profile(&self) -> IntPartition {
        IntPartition::from_unsorted(distinct_runs(&self.0).map(|(_, n)| n as u32).collect())
    }

    /// The integer partition this represents, if every part is an integer.
    pub fn as_int_partition(&self) -> Option<IntPartition> {
        let parts: Option<Vec<u32>> = self
            .0
            .iter()
            .map(|p| p.as_integer().map(|n| n as u32))
            .collect();
        parts.map(IntPartition::from_unsorted)
    }

    /// Multiset union `λμ`.
    pub fn concat(&self, other: &GenPartition) -> GenPartition {
        let mut parts = self.0.clone();
        parts.extend(other.0.iter().cloned());
        GenPartition::from_nonzero(parts)
    }

    /// The formalization `f(λ)`: each distinct value replaced by a fresh
    /// generator `a1, a2, …` (numbered by first appearance in canonical
    /// order), multiplicities preserved.
    pub fn formalize(&self) -> GenPartition {
        let mut parts = Vec::with_capacity(self.len());
        for (i, (_, mult)) in distinct_runs(&self.0).enumerate() {
            let g = Generator::Named(Arc::from(format!("a{}", i + 1)));
            parts.extend(std::iter::repeat_n(Part::generator(g, 1), mult));
        }
        GenPartition::from_nonzero(parts)
    }

    /// A formalization with the given multiplicity profile.
    pub fn formal_from_profile(profile: &IntPartition) -> GenPartition {
        let mut parts = Vec::new();
        for (i, &mult) in profile.parts().iter().enumerate() {
            let g = Generator::Named(Arc::from(format!("a{}", i + 1)));
            parts.extend(std::iter::repeat_n(Part::generator(g, 1), mult as usize));
        }
        GenPartition::from_nonzero(parts)
    }
}

/// Iterates over (value, multiplicity) runs of a sorted slice.
pub(crate) fn distinct_runs<T: PartialEq>(sorted: &[T]) -> impl Iterator<Item = (&T, usize)> {
    let mut i = 0;
    std::iter::from_fn(move || {
        if i >= sorted.len() {
            return None;
        }
        let start = i;
        while i < sorted.len() && sorted[i] == sorted[start] {
            i += 1;
        }
        Some((&sorted[start], i - start))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: usize,
    pub distinct: usize,
    pub total: Part,
}

impl fmt::Display for GenPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "[]");
        }
        for (i, (part, mult)) in distinct_runs(&self.0).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if mult == 1 {
                write!(f, "{part}")?;
            } else {
                write!(f, "{part}^{mult}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GenPartition {
    type Err = Error;

    /// Parses the compact form `1^3,2^2` or `x^2,2x+1`; `[]` or an empty
    /// string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(GenPartition::empty());
        }
        let mut parts = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let (body, mult) = match item.split_once('^') {
                Some((body, mult)) => (
                    body,
                    mult.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in `{item}`")))?,
                ),
                None => (item, 1),
            };
            let part: Part = body.parse()?;
            parts.extend(std::iter::repeat_n(part, mult));
        }
        GenPartition::new(parts)
    }
}

/// A partition of a positive integer in the traditional sense, parts kept in
/// nonincreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntPartition(Vec<u32>);

/// Multiplicity profiles are ordinary integer partitions.
pub type MultiplicityProfile = IntPartition;

impl IntPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "integer partitions have positive parts".into(),
            ));
        }
        Ok(IntPartition::from_unsorted(parts))
    }

    pub(crate) fn from_unsorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(!parts.contains(&0));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition(parts)
    }

    pub fn empty() -> Self {
        IntPartition(Vec::new())
    }

    /// `1^k` followed by the given parts.
    pub fn with_ones(&self, ones: usize) -> IntPartition {
        let mut parts = self.0.clone();
        parts.extend(std::iter::repeat_n(1, ones));
        IntPartition::from_unsorted(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn distinct_count(&self) -> usize {
        distinct_runs(&self.0).count()
    }

    pub fn multiplicity_profile(&self) -> IntPartition {
        IntPartition::from_unsorted(distinct_runs(&self.0).map(|(_, n)| n as u32).collect())
    }

    /// (value, multiplicity) pairs in decreasing value order.
    pub fn value_multiplicities(&self) -> Vec<(u32, u32)> {
        distinct_runs(&self.0).map(|(v, n)| (*v, n as u32)).collect()
    }

    pub fn concat(&self, other: &IntPartition) -> IntPartition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        IntPartition::from_unsorted(parts)
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn to_gen(&self) -> GenPartition {
        GenPartition::from_nonzero(self.0.iter().map(|&n| Part::integer(n.into())).collect())
    }

    /// Sub-multiset of parts `>= threshold`.
    pub fn parts_at_least(&self, threshold: u32) -> IntPartition {
        IntPartition(self.0.iter().copied().filter(|&p| p >= threshold).collect())
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for IntPartition {
    type Err = Error;

    /// Accepts `2,2,3`, `[2,2,3]`, `2^2,3` and the empty forms `[]` / ``.
    fn from_str(s: &str) -> Result<Self> {
        let gp: GenPartition = s.parse()?;
        gp.as_int_partition()
            .ok_or_else(|| Error::Parse(format!("`{s}` is not an integer partition")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GenPartition {
        s.parse().unwrap()
    }

    #[test]
    fn profile_examples() {
        assert_eq!(gp("a^2,b").multiplicity_profile().parts(), &[2, 1]);
        assert!(gp("").multiplicity_profile().is_empty());
        let lam = gp("1^3,2^3,3,4^2,5");
        assert_eq!(lam.multiplicity_profile().parts(), &[3, 3, 2, 1, 1]);
    }

    #[test]
    fn stats_examples() {
        let lam = gp("1^3,2^3,3,4^2,5");
        let st = lam.stats();
        assert_eq!((st.size, st.distinct), (10, 5));
        assert_eq!(st.total, Part::integer(25));

        let st = GenPartition::empty().stats();
        assert_eq!((st.size, st.distinct), (0, 0));
        assert!(st.total.is_zero());

        let st = gp("x,x,2x").stats();
        assert_eq!((st.size, st.distinct), (3, 2));
        assert_eq!(st.total, "4x".parse().unwrap());
    }

    #[test]
    fn formalize_examples() {
        assert_eq!(gp("1,1,2").formalize(), gp("a1^2,a2"));
        assert_eq!(gp("2").formalize(), gp("a1"));
        let f = gp("1,1,2,2,3").formalize();
        assert_eq!(f, gp("a1^2,a2^2,a3"));
        assert_eq!(f.multiplicity_profile().parts(), &[2, 2, 1]);
    }

    #[test]
    fn text_round_trip() {
        for s in ["1^3,2^2", "x^2,2x+1", "[]", "a1^2,a2", "3x+2y+4"] {
            let p = gp(s);
            assert_eq!(gp(&p.to_string()), p, "{s}");
        }
        assert_eq!(gp("x^2,2x+1").len(), 3);
        assert_eq!(gp("2x+1").parts()[0].coefficient(&Generator::Unit), 1);
    }

    #[test]
    fn parse_errors() {
        assert!("1,,2".parse::<GenPartition>().is_err());
        assert!("x^q".parse::<GenPartition>().is_err());
        assert!("x-y".parse::<GenPartition>().is_err());
        assert!("2_y".parse::<GenPartition>().is_err());
        assert!("0".parse::<GenPartition>().is_err());
        assert!("x".parse::<IntPartition>().is_err());
    }

    #[test]
    fn int_partition_basics() {
        let p: IntPartition = "3,1,2,2".parse().unwrap();
        assert_eq!(p.parts(), &[3, 2, 2, 1]);
        assert_eq!(p.sum(), 8);
        assert_eq!(p.multiplicity_profile().parts(), &[2, 1, 1]);
        assert_eq!(p.parts_at_least(2).parts(), &[3, 2, 2]);
        assert_eq!(p.with_ones(2).parts(), &[3, 2, 2, 1, 1, 1]);
        assert!(IntPartition::new(vec![0]).is_err());
    }
}
