use std::fmt;

use serde::Serialize;

use super::Ring;
use crate::error::{Error, Result};

/// What the exponent of `t` counts.
///
/// Configuration series grade by the multiplicity sum `Σλ`; the inverse
/// series attached to hypersurfaces grade by the number of points. Mixing
/// the two in arithmetic is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grading {
    MultiplicitySum,
    Points,
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::MultiplicitySum => write!(f, "multiplicity-sum"),
            Grading::Points => write!(f, "points"),
        }
    }
}

/// A power series in `t` known modulo `t^{order+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R> {
    order: usize,
    grading: Grading,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Pads with zeros or drops coefficients beyond `order`.
    pub fn new(order: usize, grading: Grading, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncSeries { order, grading, coeffs }
    }

    pub fn from_fn(order: usize, grading: Grading, f: impl FnMut(usize) -> R) -> Self {
        TruncSeries {
            order,
            grading,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn try_from_fn(
        order: usize,
        grading: Grading,
        f: impl FnMut(usize) -> Result<R>,
    ) -> Result<Self> {
        Ok(TruncSeries {
            order,
            grading,
            coeffs: (0..=order).map(f).collect::<Result<_>>()?,
        })
    }

    pub fn zero(order: usize, grading: Grading) -> Self {
        TruncSeries::new(order, grading, Vec::new())
    }

    pub fn one(order: usize, grading: Grading) -> Self {
        TruncSeries::monomial(order, grading, 0, R::one())
    }

    /// `c·t^k`.
    pub fn monomial(order: usize, grading: Grading, k: usize, c: R) -> Self {
        let mut s = TruncSeries::zero(order, grading);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: R) {
        self.coeffs[i] = c;
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::SeriesMismatch(format!(
                "truncation orders {} and {} differ",
                self.order, other.order
            )));
        }
        if self.grading != other.grading {
            return Err(Error::SeriesMismatch(format!(
                "gradings {} and {} differ",
                self.grading, other.grading
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncSeries {
            order: self.order,
            grading: self.grading,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncSeries {
            order: self.order,
            grading: self.grading,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map_same(|c| c.negate())
    }

    /// Cauchy product modulo `t^{order+1}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order;
        let mut coeffs = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j].add_assign_ref(&a.times(b));
            }
        }
        Ok(TruncSeries { order: n, grading: self.grading, coeffs })
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_same(|x| x.times(c))
    }

    fn map_same(&self, f: impl Fn(&R) -> R) -> Self {
        TruncSeries {
            order: self.order,
            grading: self.grading,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// The multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible(self.coeffs[0].to_string()))?;
        let n = self.order;
        let mut g: Vec<R> = Vec::with_capacity(n + 1);
        g.push(c0.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for i in 1..=k {
                let f = &self.coeffs[i];
                if !f.is_zero() && !g[k - i].is_zero() {
                    acc.add_assign_ref(&f.times(&g[k - i]));
                }
            }
            g.push(acc.times(&c0).negate());
        }
        Ok(TruncSeries { order: n, grading: self.grading, coeffs: g })
    }

    /// `self · other⁻¹`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// `f(t^a)`.
    pub fn compose_power(&self, a: usize) -> Result<Self> {
        if a < 1 {
            return Err(Error::InvalidInput("compose_power needs a >= 1".into()));
        }
        let mut out = TruncSeries::zero(self.order, self.grading);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * a > self.order {
                break;
            }
            out.coeffs[i * a] = c.clone();
        }
        Ok(out)
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = TruncSeries::zero(self.order, self.grading);
        for i in k..=self.order {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Division by `t^k`. The first `k` coefficients must vanish; the result
    /// is known to order `order - k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order {
            return Err(Error::InvalidInput(format!(
                "cannot divide a series of order {} by t^{k}",
                self.order
            )));
        }
        if let Some(i) = (0..k).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(Error::Internal(format!(
                "coefficient of t^{} survives division by t^{k}: {}",
                i as i64 - k as i64,
                self.coeffs[i]
            )));
        }
        Ok(TruncSeries {
            order: self.order - k,
            grading: self.grading,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Lowers the truncation order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(Error::InvalidInput(format!(
                "cannot extend a series known to order {} to order {order}",
                self.order
            )));
        }
        Ok(TruncSeries {
            order,
            grading: self.grading,
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Reinterprets the exponent of `t` under another grading. Callers use
    /// this only where an identity is known to hold across gradings.
    pub fn regrade(&self, grading: Grading) -> Self {
        TruncSeries { grading, ..self.clone() }
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> TruncSeries<S> {
        TruncSeries {
            order: self.order,
            grading: self.grading,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl FnMut(&R) -> Result<S>) -> Result<TruncSeries<S>> {
        Ok(TruncSeries {
            order: self.order,
            grading: self.grading,
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// `{order, coeffs}` with each coefficient rendered as text.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "grading": self.grading,
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl<R: Ring> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LaurentL, MotivicClass};
    use num_bigint::BigInt;

    const G: Grading = Grading::MultiplicitySum;

    fn int_series(order: usize, c: &[i64]) -> TruncSeries<BigInt> {
        TruncSeries::new(order, G, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn product_examples() {
        let p = int_series(4, &[1, 1]).mul(&int_series(4, &[1, -1])).unwrap();
        assert_eq!(p, int_series(4, &[1, 0, -1]));

        let l = LaurentL::l_pow(1);
        let z = TruncSeries::from_fn(8, G, |n| Ring::pow(&l, n as u32));
        let factor = TruncSeries::new(8, G, vec![LaurentL::one(), l.negate()]);
        assert_eq!(z.mul(&factor).unwrap(), TruncSeries::one(8, G));
    }

    #[test]
    fn generic_zeta_times_inverse() {
        let z = TruncSeries::from_fn(6, G, |n| MotivicClass::s(n as u32));
        let inv = z.inverse().unwrap();
        assert_eq!(z.mul(&inv).unwrap(), TruncSeries::one(6, G));
        // 1/Z = 1 - S1 t + (S1^2 - S2) t^2 - ...
        assert_eq!(inv.coeff(2), &MotivicClass::s(1).times(&MotivicClass::s(1)).minus(&MotivicClass::s(2)));
    }

    #[test]
    fn inverse_examples() {
        let geo = int_series(5, &[1, -1]).inverse().unwrap();
        assert_eq!(geo, int_series(5, &[1, 1, 1, 1, 1, 1]));
        let inv = int_series(3, &[1, -2]).inverse().unwrap();
        assert_eq!(inv, int_series(3, &[1, 2, 4, 8]));
        assert!(matches!(int_series(3, &[2, 1]).inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(int_series(4, &[1, 1]).compose_power(2).unwrap(), int_series(4, &[1, 0, 1]));
        let l = LaurentL::l_pow(1);
        let z = TruncSeries::from_fn(7, G, |n| Ring::pow(&l, n as u32));
        let want = TruncSeries::new(
            7,
            G,
            vec![
                LaurentL::one(),
                LaurentL::zero(),
                LaurentL::zero(),
                l.clone(),
                LaurentL::zero(),
                LaurentL::zero(),
                l.times(&l),
            ],
        );
        assert_eq!(z.compose_power(3).unwrap(), want);
        assert!(z.compose_power(0).is_err());
    }

    #[test]
    fn mismatches_are_errors() {
        let a = int_series(3, &[1]);
        let b = int_series(4, &[1]);
        assert!(a.mul(&b).is_err());
        let c = a.regrade(Grading::Points);
        assert!(matches!(a.add(&c), Err(Error::SeriesMismatch(_))));
    }

    #[test]
    fn shifts() {
        let a = int_series(5, &[0, 0, 3, 4]);
        let down = a.shift_down(2).unwrap();
        assert_eq!(down, int_series(3, &[3, 4]));
        assert_eq!(down.shift_up(1), int_series(3, &[0, 3, 4]));
        assert!(int_series(5, &[0, 1]).shift_down(2).is_err());
    }
}
