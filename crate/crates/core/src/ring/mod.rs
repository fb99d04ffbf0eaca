//! Exact coefficient rings and truncated power series.

mod class;
mod eval;
mod hd;
mod laurent;
mod series;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use class::{Dimension, MotivicClass, SMonomial};
pub use eval::{eval_at_l_power, inverse_truncated, Dimensioned, EvalReport};
pub use hd::HdPoly;
pub use laurent::LaurentL;
pub use series::{Grading, TruncSeries};

/// A commutative ring with exact arithmetic.
///
/// Method names avoid the `std::ops` vocabulary so that implementations for
/// foreign types (big integers, rationals) do not collide with it.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
    fn try_inverse(&self) -> Option<Self> {
        (self.abs() == One::one()).then(|| self.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

/// Binomial coefficient `C(top, k)` for any integer `top` (generalized).
pub fn gen_binomial(top: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= top - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomials() {
        let b = |t: i64, k: u32| gen_binomial(&BigInt::from(t), k);
        assert_eq!(b(5, 2), BigInt::from(10));
        assert_eq!(b(2, 3), BigInt::from(0));
        assert_eq!(b(-2, 3), BigInt::from(-4));
        assert_eq!(b(-1, 4), BigInt::from(1));
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(BigInt::from(3).pow(5), BigInt::from(243));
        assert_eq!(Ring::pow(&BigInt::from(7), 0), BigInt::from(1));
    }
}
