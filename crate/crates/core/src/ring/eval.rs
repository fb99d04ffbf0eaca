use super::{Dimension, LaurentL, MotivicClass, Ring, TruncSeries};
use crate::error::{Error, Result};

/// Coefficients carrying a dimension: `L` has dimension 1 and `S_i` has
/// dimension `d·i` for an ambient dimension `d`.
pub trait Dimensioned: Ring {
    fn dimension(&self, d: i64) -> Dimension;
    fn mul_l_power(&self, k: i64) -> Self;
    /// Terms of dimension `>= min_dim`, and the largest dropped dimension.
    fn split_at(&self, min_dim: i64, d: i64) -> (Self, Dimension);
    /// Whether symmetric-power generators occur.
    fn is_symbolic(&self) -> bool;
}

impl Dimensioned for LaurentL {
    fn dimension(&self, _d: i64) -> Dimension {
        self.degree().map_or(Dimension::NegInfinity, Dimension::Finite)
    }
    fn mul_l_power(&self, k: i64) -> Self {
        LaurentL::mul_l_power(self, k)
    }
    fn split_at(&self, min_dim: i64, _d: i64) -> (Self, Dimension) {
        let (kept, dropped) = LaurentL::split_at(self, min_dim);
        (kept, dropped.map_or(Dimension::NegInfinity, Dimension::Finite))
    }
    fn is_symbolic(&self) -> bool {
        false
    }
}

impl Dimensioned for MotivicClass {
    fn dimension(&self, d: i64) -> Dimension {
        MotivicClass::dimension(self, d)
    }
    fn mul_l_power(&self, k: i64) -> Self {
        MotivicClass::mul_l_power(self, k)
    }
    fn split_at(&self, min_dim: i64, d: i64) -> (Self, Dimension) {
        MotivicClass::split_at(self, min_dim, d)
    }
    fn is_symbolic(&self) -> bool {
        self.as_laurent().is_none()
    }
}

/// A dimension-truncated value.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport<R> {
    pub value: R,
    /// Largest dimension of anything not included in `value`: dropped terms
    /// and the bound on coefficients beyond the truncation order.
    pub tail: Dimension,
    /// Whether every term of dimension `>= -cutoff` is accounted for.
    pub complete: bool,
}

/// `Σ_{n<=N} f_n L^{-mn}`, keeping terms of dimension `>= -cutoff`.
///
/// Each coefficient of index `n` is assumed to have dimension at most
/// `d·n`, so terms beyond the truncation order have dimension at most
/// `-(m-d)(N+1)`. Symbolic coefficients are accepted only when
/// `allow_symbolic` is set; the result is then a symbolic partial sum.
pub fn eval_at_l_power<R: Dimensioned>(
    f: &TruncSeries<R>,
    m: i64,
    d: i64,
    cutoff: i64,
    allow_symbolic: bool,
) -> Result<EvalReport<R>> {
    if m <= d {
        return Err(Error::Divergence { m, d });
    }
    if !allow_symbolic && f.coeffs().iter().any(Dimensioned::is_symbolic) {
        return Err(Error::InsufficientModelData(
            "an explicit L-expansion; coefficients involve symmetric-power generators, \
             apply a specialization first"
                .into(),
        ));
    }
    let mut value = R::zero();
    let mut tail = Dimension::NegInfinity;
    for (n, c) in f.coeffs().iter().enumerate() {
        let shifted = c.mul_l_power(-m * n as i64);
        let (kept, dropped) = shifted.split_at(-cutoff, d);
        value.add_assign_ref(&kept);
        tail = tail.max(dropped);
    }
    let unseen = -(m - d) * (f.order() as i64 + 1);
    tail = tail.max(Dimension::Finite(unseen));
    Ok(EvalReport {
        value,
        tail,
        complete: unseen < -cutoff,
    })
}

/// Inverse of `x` modulo terms of dimension `< -cutoff`.
///
/// The top-dimensional part of `x` must be a unit `±L^k`; the rest is
/// inverted as a geometric series.
pub fn inverse_truncated<R: Dimensioned>(x: &R, d: i64, cutoff: i64) -> Result<R> {
    let Dimension::Finite(top) = x.dimension(d) else {
        return Err(Error::NotInvertible("0".into()));
    };
    let (lead, _) = x.split_at(top, d);
    let lead_inv = lead
        .try_inverse()
        .ok_or_else(|| Error::NotInvertible(lead.to_string()))?;
    // x·lead⁻¹ = 1 - y with y of negative dimension.
    let y = R::one().minus(&x.times(&lead_inv));
    let floor = -cutoff + top;
    let mut acc = R::one();
    let mut power = R::one();
    loop {
        power = power.times(&y).split_at(floor, d).0;
        if power.is_zero() {
            break;
        }
        acc.add_assign_ref(&power);
    }
    Ok(acc.times(&lead_inv).split_at(-cutoff, d).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Grading;

    fn l(s: &str) -> LaurentL {
        s.parse().unwrap()
    }

    #[test]
    fn affine_line_zeta_at_two() {
        let z = TruncSeries::from_fn(8, Grading::MultiplicitySum, |n| LaurentL::l_pow(n as i64));
        let r = eval_at_l_power(&z, 2, 1, 8, false).unwrap();
        let want = LaurentL::from_terms((-8..=0).map(|k| (k, 1.into())));
        assert_eq!(r.value, want);
        assert!(r.complete);
        assert_eq!(r.tail, Dimension::Finite(-9));
    }

    #[test]
    fn point_zeta_at_one() {
        let z = TruncSeries::from_fn(5, Grading::MultiplicitySum, |_| LaurentL::one());
        let r = eval_at_l_power(&z, 1, 0, 10, false).unwrap();
        assert_eq!(r.value, LaurentL::from_terms((-5..=0).map(|k| (k, 1.into()))));
        assert!(!r.complete);
    }

    #[test]
    fn divergence_and_symbolic_guard() {
        let z = TruncSeries::from_fn(4, Grading::MultiplicitySum, |n| LaurentL::l_pow(n as i64));
        assert_eq!(
            eval_at_l_power(&z, 1, 1, 8, false),
            Err(Error::Divergence { m: 1, d: 1 })
        );
        let s = TruncSeries::from_fn(4, Grading::MultiplicitySum, |n| MotivicClass::s(n as u32));
        assert!(eval_at_l_power(&s, 2, 1, 8, false).is_err());
        assert!(eval_at_l_power(&s, 2, 1, 8, true).is_ok());
    }

    #[test]
    fn truncated_inverse_of_geometric_series() {
        // 1 + L^-1 + L^-2 + ... inverts to 1 - L^-1.
        let z = LaurentL::from_terms((-10..=0).map(|k| (k, 1.into())));
        assert_eq!(inverse_truncated(&z, 1, 10).unwrap(), l("1 - L^-1"));
        let x = l("L^2 - L");
        assert_eq!(
            inverse_truncated(&x, 1, 5).unwrap(),
            l("L^-2 + L^-3 + L^-4 + L^-5")
        );
    }

    #[test]
    fn truncated_inverse_symbolic() {
        // 1 - S1 L^-2 inverts to Σ S1^k L^-2k with dimension -k at d = 1.
        let x = MotivicClass::one().minus(&MotivicClass::s(1).mul_l_power(-2));
        let inv = inverse_truncated(&x, 1, 3).unwrap();
        let back = inv.times(&x).split_at(-3, 1).0;
        assert_eq!(back, MotivicClass::one());
    }
}
