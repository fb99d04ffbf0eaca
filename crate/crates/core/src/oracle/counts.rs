use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::field::FiniteField;
use super::poly::{for_each_monic, multiplicity_pattern};
use crate::error::{Error, Result};
use crate::partitions::IntPartition;

/// Default cap on the number of enumerated states.
pub const DEFAULT_GUARD: u64 = 10_000_000;
/// No guard may be raised beyond this.
pub const MAX_GUARD: u64 = 100_000_000;

/// Refuses enumerations of more than `guard` states.
pub fn check_guard(states: u128, guard: u64) -> Result<()> {
    if guard > MAX_GUARD {
        return Err(Error::InvalidInput(format!("guard {guard} exceeds the hard limit {MAX_GUARD}")));
    }
    if states > u128::from(guard) {
        return Err(Error::GuardExceeded { states, guard: u128::from(guard) });
    }
    Ok(())
}

/// The curves on which divisors are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    AffineLine,
    ProjectiveLine,
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::AffineLine => write!(f, "A1"),
            Curve::ProjectiveLine => write!(f, "P1"),
        }
    }
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A1" | "A^1" => Ok(Curve::AffineLine),
            "P1" | "P^1" => Ok(Curve::ProjectiveLine),
            other => Err(Error::Parse(format!("the oracle supports A1 and P1, not `{other}`"))),
        }
    }
}

fn pow_u128(q: u32, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(u128::from(q)))
}

/// Number of effective divisors of degree `n` enumerated on `curve`.
fn divisor_states(curve: Curve, q: u32, n: usize) -> u128 {
    match curve {
        Curve::AffineLine => pow_u128(q, n),
        Curve::ProjectiveLine => (0..=n).map(|e| pow_u128(q, e)).sum(),
    }
}

/// Calls `visit` with the multiplicity multiset of every F_q-rational
/// effective divisor of degree `n` on `curve`. On the projective line a
/// divisor is a monic polynomial of degree `e <= n` plus `n - e` times the
/// point at infinity.
fn for_each_divisor_pattern(
    curve: Curve,
    field: &FiniteField,
    n: usize,
    visit: &mut dyn FnMut(&[u32]),
) {
    let degrees: Vec<usize> = match curve {
        Curve::AffineLine => vec![n],
        Curve::ProjectiveLine => (0..=n).collect(),
    };
    let mut mults: Vec<u32> = Vec::with_capacity(n);
    for e in degrees {
        for_each_monic(field, e, &mut |poly| {
            mults.clear();
            for (m, count) in multiplicity_pattern(poly, field) {
                mults.extend(std::iter::repeat_n(m, count));
            }
            if n > e {
                mults.push((n - e) as u32);
            }
            visit(&mults);
        });
    }
}

/// F_q-points of `w_λ` for every partition `λ` of `n`: counts of divisors
/// of degree `n` by their geometric multiplicity pattern.
pub fn tabulate_w_counts(
    curve: Curve,
    q: u32,
    n: usize,
    guard: u64,
) -> Result<BTreeMap<IntPartition, u64>> {
    check_guard(divisor_states(curve, q, n), guard)?;
    let field = FiniteField::new(q)?;
    let mut table: BTreeMap<IntPartition, u64> = BTreeMap::new();
    let mut err = None;
    for_each_divisor_pattern(curve, &field, n, &mut |mults| match IntPartition::new(mults.to_vec()) {
        Ok(p) => *table.entry(p).or_insert(0) += 1,
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(table),
    }
}

/// `#w_λ(F_q)`: tuples of pairwise disjoint squarefree divisors `(D_a)`,
/// one for each distinct part `a` of `λ` with degree its multiplicity,
/// counted as the divisors `Σ a·D_a` with geometric multiplicity pattern
/// exactly `λ`.
pub fn count_w_lambda(curve: Curve, q: u32, lambda: &IntPartition, guard: u64) -> Result<u64> {
    let table = tabulate_w_counts(curve, q, lambda.sum() as usize, guard)?;
    Ok(table.get(lambda).copied().unwrap_or(0))
}

/// Monic polynomials of degree `j` (divisors of degree `j` on `curve`) with
/// exactly `s` geometric points of multiplicity at least 2.
pub fn count_sym_s(curve: Curve, q: u32, j: usize, s: usize, guard: u64) -> Result<u64> {
    Ok(tabulate_sym_s(curve, q, j, guard)?.get(s).copied().unwrap_or(0))
}

/// `[count_sym_s(.., s) for s in 0..]`.
pub fn tabulate_sym_s(curve: Curve, q: u32, j: usize, guard: u64) -> Result<Vec<u64>> {
    check_guard(divisor_states(curve, q, j), guard)?;
    let field = FiniteField::new(q)?;
    let mut by_s = vec![0u64; j + 1];
    for_each_divisor_pattern(curve, &field, j, &mut |mults| {
        by_s[mults.iter().filter(|&&m| m >= 2).count()] += 1;
    });
    Ok(by_s)
}

/// Sections of `O(j)` on the projective line with a given number of
/// multiple points, out of all `q^{j+1}` sections (the zero section only
/// counts towards the total).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCount {
    pub q: u32,
    pub j: usize,
    pub s: usize,
    pub count: BigInt,
    pub total: BigInt,
}

impl HyperCount {
    pub fn fraction(&self) -> BigRational {
        BigRational::new(self.count.clone(), self.total.clone())
    }

    /// `(numerator, denominator)` in lowest terms.
    pub fn reduced(&self) -> (BigInt, BigInt) {
        let g = self.count.gcd(&self.total);
        if g == BigInt::from(0) {
            return (BigInt::from(0), BigInt::from(1));
        }
        (&self.count / &g, &self.total / &g)
    }
}

/// Binary forms of degree `j` over F_q whose divisor has exactly `s`
/// multiple geometric points. Every nonzero form is a nonzero scalar times
/// a divisor of degree `j`.
pub fn count_hyper_s(q: u32, j: usize, s: usize, guard: u64) -> Result<HyperCount> {
    check_guard(pow_u128(q, j + 1), guard)?;
    let by_s = tabulate_sym_s(Curve::ProjectiveLine, q, j, guard)?;
    let divisors = BigInt::from(by_s.get(s).copied().unwrap_or(0));
    Ok(HyperCount {
        q,
        j,
        s,
        count: divisors * BigInt::from(q - 1),
        total: BigInt::from(q).pow(j as u32 + 1),
    })
}

/// `#Sym^n X(F_q)` for `n <= n_max` from the point counts `N_r = #X(F_{q^r})`
/// through `exp(Σ N_r t^r / r)`, i.e. `n·a_n = Σ_{r=1}^{n} N_r a_{n-r}`.
///
/// Fails unless every `a_n` is a nonnegative integer.
pub fn exp_formula_sym_counts(counts: &[BigInt], n_max: usize) -> Result<Vec<BigInt>> {
    if counts.len() < n_max {
        return Err(Error::InsufficientModelData(format!(
            "point counts N_1..N_{n_max}; only {} given",
            counts.len()
        )));
    }
    let mut a = vec![BigInt::from(1)];
    for n in 1..=n_max {
        let mut acc = BigInt::from(0);
        for r in 1..=n {
            acc += &counts[r - 1] * &a[n - r];
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(n));
        if rem != BigInt::from(0) {
            return Err(Error::InvalidCounts(format!(
                "#Sym^{n} would be {acc}/{n}, not an integer"
            )));
        }
        if quot < BigInt::from(0) {
            return Err(Error::InvalidCounts(format!("#Sym^{n} would be negative ({quot})")));
        }
        a.push(quot);
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPartition {
        s.parse().unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn w_counts_examples() {
        let g = DEFAULT_GUARD;
        assert_eq!(count_w_lambda(Curve::AffineLine, 2, &ip("[1,1]"), g).unwrap(), 2);
        assert_eq!(count_w_lambda(Curve::ProjectiveLine, 2, &ip("[1,1]"), g).unwrap(), 4);
        for q in [2, 3, 4] {
            for n in 1..=4 {
                let lam = IntPartition::new(vec![n]).unwrap();
                assert_eq!(count_w_lambda(Curve::AffineLine, q, &lam, g).unwrap(), u64::from(q));
            }
        }
    }

    #[test]
    fn tables_sum_to_divisor_counts() {
        for (curve, q, n) in [(Curve::AffineLine, 3, 4), (Curve::ProjectiveLine, 2, 5)] {
            let total: u64 = tabulate_w_counts(curve, q, n, DEFAULT_GUARD).unwrap().values().sum();
            assert_eq!(u128::from(total), divisor_states(curve, q, n));
        }
    }

    #[test]
    fn sym_s_examples() {
        let g = DEFAULT_GUARD;
        assert_eq!(count_sym_s(Curve::AffineLine, 2, 2, 1, g).unwrap(), 2);
        assert_eq!(count_sym_s(Curve::AffineLine, 2, 3, 1, g).unwrap(), 4);
        for q in [2u64, 3] {
            for j in 2..=6 {
                let sf = count_sym_s(Curve::AffineLine, q as u32, j, 0, g).unwrap();
                assert_eq!(sf, q.pow(j as u32) - q.pow(j as u32 - 1));
            }
        }
    }

    #[test]
    fn hyper_counts() {
        let g = DEFAULT_GUARD;
        let h = count_hyper_s(2, 3, 0, g).unwrap();
        assert_eq!(h.count, BigInt::from(6));
        assert_eq!(h.reduced(), (BigInt::from(3), BigInt::from(8)));
        for (q, j) in [(2, 4), (3, 3)] {
            let mut acc = BigRational::from_integer(0.into());
            for s in 0..=j {
                acc += count_hyper_s(q, j, s, g).unwrap().fraction();
            }
            let total = BigInt::from(q).pow(j as u32 + 1);
            assert_eq!(acc, BigRational::new(&total - 1, total));
        }
    }

    #[test]
    fn guard_refuses() {
        assert!(matches!(
            count_sym_s(Curve::AffineLine, 2, 30, 0, DEFAULT_GUARD),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(check_guard(1, MAX_GUARD + 1).is_err());
    }

    #[test]
    fn exp_formula() {
        assert_eq!(exp_formula_sym_counts(&big(&[2, 4, 8, 16]), 4).unwrap(), big(&[1, 2, 4, 8, 16]));
        assert_eq!(exp_formula_sym_counts(&big(&[1, 1, 1]), 3).unwrap(), big(&[1, 1, 1, 1]));
        assert_eq!(exp_formula_sym_counts(&big(&[3, 5, 9]), 3).unwrap(), big(&[1, 3, 7, 15]));
        assert!(exp_formula_sym_counts(&big(&[1, 2]), 2).is_err());
        assert!(exp_formula_sym_counts(&big(&[1]), 2).is_err());
    }

    #[test]
    fn exp_formula_is_multiplicative() {
        // P1 = A1 ⊔ pt: N_r add, Sym counts convolve.
        let q = 3i64;
        let a1: Vec<BigInt> = (1..=6).map(|r| BigInt::from(q.pow(r))).collect();
        let pt = big(&[1; 6]);
        let p1: Vec<BigInt> = a1.iter().zip(&pt).map(|(x, y)| x + y).collect();
        let sa = exp_formula_sym_counts(&a1, 6).unwrap();
        let sp = exp_formula_sym_counts(&pt, 6).unwrap();
        let sp1 = exp_formula_sym_counts(&p1, 6).unwrap();
        for n in 0..=6 {
            let conv: BigInt = (0..=n).map(|k| &sa[k] * &sp[n - k]).sum();
            assert_eq!(conv, sp1[n]);
        }
    }
}
