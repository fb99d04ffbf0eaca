use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{Specializer, TargetValue};
use crate::partitions::IntPartition;
use crate::ring::{gen_binomial, Dimension, EvalReport, Grading, Ring, TruncSeries};

use super::classes::{ordered_labels, star_power, w_value, zeta_s_series, zeta_series, zinv_lambda};

/// Largest truncation order tried by [`stable_limit`] before giving up.
pub const MAX_LIMIT_ORDER: usize = 1024;

/// The alternating sums over `Q` need `w` classes of long multiplicity
/// profiles, whose cost grows like the Bell numbers; the hypersurface
/// densities check them against the zeta-quotient form up to this order and
/// evaluate the quotient beyond it.
pub const Q_CHECK_ORDER: usize = 10;

/// How the coefficients `Y_j` are normalized before `j → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "by")]
pub enum Normalization {
    /// `Y_j / [Sym^{j+offset} X]`.
    Sym { offset: u32 },
    /// `Y_j / M^{j+offset}` with `M = L^d`.
    MPower { offset: u32 },
}

impl std::fmt::Display for Normalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Normalization::Sym { offset } => write!(f, "Sym^(j+{offset})"),
            Normalization::MPower { offset } => write!(f, "M^(j+{offset})"),
        }
    }
}

/// A limit truncated at codimension `codim_cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport<V> {
    pub value: V,
    pub codim_cutoff: i64,
    /// Dimension (or, for numeric values, `log_q` magnitude) of the first
    /// discarded term.
    pub tail: Dimension,
    pub order_used: usize,
    pub normalization: Normalization,
}

/// A limiting density of hypersurface sections with prescribed singular
/// points.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceDensity<V> {
    /// Which singular-point condition, e.g. `s=1`, `ordered s=2`, `m=3`.
    pub label: String,
    pub d: i64,
    pub value: V,
    pub expression: String,
    pub tail: Dimension,
    pub complete: bool,
}

/// `f(L^{-m})` in the specializer's ring.
pub fn evaluate<S: Specializer>(
    sp: &S,
    f: &TruncSeries<S::Value>,
    m: i64,
    cutoff: i64,
) -> Result<EvalReport<S::Value>> {
    S::Value::eval_at_l_power(f, m, sp.dim(), cutoff, &sp.l_power(-m)?)
}

/// Truncation order after which every unseen term of `Z_X(L^{-m})` has
/// dimension below `-cutoff`.
fn order_for(cutoff: i64, m: i64, d: i64) -> usize {
    (cutoff.max(0) / (m - d).max(1)) as usize
}

/// `ζ_X(m) = Z_X(L^{-m})`, truncated at codimension `cutoff`.
pub fn zeta_value<S: Specializer>(sp: &S, m: i64, cutoff: i64) -> Result<EvalReport<S::Value>> {
    let d = sp.dim();
    if m <= d {
        return Err(Error::Divergence { m, d });
    }
    let z = zeta_series(sp, order_for(cutoff, m, d))?;
    evaluate(sp, &z, m, cutoff)
}

fn check_dim<S: Specializer>(sp: &S, d: i64) -> Result<()> {
    if d < 1 {
        return Err(Error::InvalidInput(format!("ambient dimension d = {d} must be at least 1")));
    }
    if sp.dim() != d {
        return Err(Error::InvalidInput(format!(
            "d = {d} does not match the dimension {} of the model",
            sp.dim()
        )));
    }
    Ok(())
}

fn trunc<V: TargetValue>(v: &V, cutoff: i64, d: i64) -> (V, Dimension) {
    v.truncate_dim(-cutoff, d)
}

/// Density of sections singular at exactly `s` geometric points:
/// `ζ^{[s]}_X(d+1) / ζ_X(d+1)`.
///
/// Computed as `Z^{[s]}(L^{-(d+1)}) · ζ_X(d+1)^{-1}` and as the series
/// `Z^{[s]}(t)/Z(t)` evaluated at `L^{-(d+1)}`. That series is checked
/// against the alternating sum `Z^{-1}_{X,*^s}(t)` over `Q` exactly through
/// `t^`[`Q_CHECK_ORDER`] (reading both sides by powers of `t`), and for
/// dimension-truncated values the two evaluations must agree.
pub fn hyper_density<S: Specializer>(
    sp: &S,
    d: i64,
    s: usize,
    cutoff: i64,
) -> Result<HypersurfaceDensity<S::Value>> {
    check_dim(sp, d)?;
    let m = d + 1;
    let order = order_for(cutoff, m, d).max(s);
    let z = zeta_series(sp, order)?;
    let zs = zeta_s_series(sp, s, order)?;
    let ratio = zs.div(&z)?.regrade(Grading::Points);
    let check = order.min(Q_CHECK_ORDER);
    if ratio.truncate(check)? != zinv_lambda(sp, &star_power(s), check)? {
        return Err(Error::Internal(format!(
            "Z^[{s}](t)/Z(t) differs from the alternating sum over Q"
        )));
    }

    let zeta = evaluate(sp, &z, m, cutoff)?;
    let zeta_s = evaluate(sp, &zs, m, cutoff)?;
    let direct = evaluate(sp, &ratio, m, cutoff)?;
    let via_ratio = trunc(&zeta_s.value.times(&zeta.value.inverse_value(d, cutoff)?), cutoff, d).0;
    let (value, dropped) = trunc(&direct.value, cutoff, d);
    if S::Value::truncates() && via_ratio != value {
        return Err(Error::Internal(format!(
            "density with {s} singular points: {via_ratio} from zeta values, {value} from the alternating sum"
        )));
    }
    Ok(HypersurfaceDensity {
        label: format!("s={s}"),
        d,
        value,
        expression: format!("zeta^[{s}]_X({m}) / zeta_X({m})"),
        tail: direct.tail.max(dropped),
        complete: direct.complete && zeta.complete && zeta_s.complete,
    })
}

/// Density of sections singular at `s` ordered points:
/// `[X^s ∖ Δ] / ζ_X(d+1) · (L^{-(d+1)}/(1 - L^{-(d+1)}))^s`,
/// cross-checked against `Z^{-1}_{X,1·2·…·s}`.
pub fn hyper_ordered_density<S: Specializer>(
    sp: &S,
    d: i64,
    s: usize,
    cutoff: i64,
) -> Result<HypersurfaceDensity<S::Value>> {
    check_dim(sp, d)?;
    let m = d + 1;
    let order = order_for(cutoff, m, d).max(s);
    let lambda = ordered_labels(s);
    let w = w_value(sp, &IntPartition::new(vec![1; s])?)?;

    // Series form: Z^{-1}_{X,λ}(t) = w t^s Z^{-1}(t) / (1-t)^s.
    let z = zeta_series(sp, order)?.regrade(Grading::Points);
    let one_minus_t = TruncSeries::new(order, Grading::Points, vec![S::Value::one(), S::Value::one().negate()]);
    let mut closed = TruncSeries::monomial(order, Grading::Points, s, w.clone()).div(&z)?;
    for _ in 0..s {
        closed = closed.div(&one_minus_t)?;
    }
    let check = order.min(Q_CHECK_ORDER);
    if closed.truncate(check)? != zinv_lambda(sp, &lambda, check)? {
        return Err(Error::Internal(format!(
            "ordered density series for s = {s} disagrees with the alternating sum over Q"
        )));
    }

    let wide = cutoff + d * s as i64;
    let zeta = zeta_value(sp, m, wide)?;
    let x = sp.l_power(-m)?;
    let geom = x.times(&S::Value::one().minus(&x).inverse_value(d, wide)?);
    let mut value = w.times(&zeta.value.inverse_value(d, wide)?);
    for _ in 0..s {
        value = trunc(&value.times(&geom), wide, d).0;
    }
    let (value, dropped) = trunc(&value, cutoff, d);
    let direct = evaluate(sp, &closed, m, cutoff)?;
    if S::Value::truncates() && trunc(&direct.value, cutoff, d).0 != value {
        return Err(Error::Internal(format!(
            "ordered density for s = {s}: closed form and alternating sum disagree"
        )));
    }
    Ok(HypersurfaceDensity {
        label: format!("ordered s={s}"),
        d,
        value,
        expression: format!("[X^{s} - diagonals] / zeta_X({m}) * (L^-{m} / (1 - L^-{m}))^{s}"),
        tail: zeta.tail.max(dropped),
        complete: zeta.complete,
    })
}

/// Density of sections with no point of multiplicity `m`:
/// `1 / ζ_X(C(d+m-1, d))`.
pub fn multi_point_density<S: Specializer>(
    sp: &S,
    d: i64,
    m: u32,
    cutoff: i64,
) -> Result<HypersurfaceDensity<S::Value>> {
    check_dim(sp, d)?;
    if m < 2 {
        return Err(Error::InvalidInput(format!("multiplicity m = {m} must be at least 2")));
    }
    let k: i64 = gen_binomial(&(d + i64::from(m) - 1).into(), d as u32)
        .try_into()
        .map_err(|_| Error::InvalidInput("binomial coefficient too large".into()))?;
    let zeta = zeta_value(sp, k, cutoff)?;
    let (value, dropped) = trunc(&zeta.value.inverse_value(d, cutoff)?, cutoff, d);
    Ok(HypersurfaceDensity {
        label: format!("m={m}"),
        d,
        value,
        expression: format!("1 / zeta_X({k})"),
        tail: zeta.tail.max(dropped),
        complete: zeta.complete,
    })
}

/// `E(M^{-1})` for `E = e(N)` computed at increasing orders until the terms
/// in the upper half of the window all fall below codimension `cutoff`.
fn eval_at_m_inverse<S: Specializer>(
    sp: &S,
    e: &dyn Fn(usize) -> Result<TruncSeries<S::Value>>,
    cutoff: i64,
) -> Result<(S::Value, Dimension, usize)> {
    let d = sp.dim();
    if d < 1 {
        return Err(Error::Divergence { m: d, d });
    }
    let mut order = (2 * cutoff.max(1) as usize + 2).max(8);
    loop {
        let series = e(order)?;
        let mut value = S::Value::zero();
        let mut quiet = true;
        let mut last = S::Value::zero();
        for (n, c) in series.coeffs().iter().enumerate() {
            let term = trunc(&c.times(&sp.l_power(-d * n as i64)?), cutoff, d).0;
            if n > order / 2 && !term.is_zero() {
                quiet = false;
            }
            if !term.is_zero() {
                last = term.clone();
            }
            value.add_assign_ref(&term);
        }
        if !S::Value::truncates() {
            return Ok((value, numeric_magnitude(sp, &last), order));
        }
        if quiet {
            return Ok((value, Dimension::NegInfinity, order));
        }
        order *= 2;
        if order > MAX_LIMIT_ORDER {
            return Err(Error::Divergence { m: d, d });
        }
    }
}

/// `log_q |v|` rounded down, for reporting numeric tails.
fn numeric_magnitude<S: Specializer>(sp: &S, v: &S::Value) -> Dimension {
    let text = v.to_string();
    let parsed = match text.split_once('/') {
        Some((a, b)) => a.parse::<f64>().ok().zip(b.parse::<f64>().ok()).map(|(a, b)| a / b),
        None => text.parse::<f64>().ok(),
    };
    let base = match sp.target() {
        crate::models::Specialization::Count(q) => q as f64,
        _ => return Dimension::NegInfinity,
    };
    match parsed {
        Some(x) if x != 0.0 => Dimension::Finite((x.abs().ln() / base.ln()).floor() as i64),
        _ => Dimension::NegInfinity,
    }
}

/// `lim Y_j` under `normalization`, from `E(t) = Y(t)/Z_X(t)` evaluated at
/// `t = M^{-1}`: `Y_j/[Sym^j X] → E(M^{-1})`, and `[Sym^j X]/M^j` tends to
/// `((1 - Mt) Z_X(t))` at `t = M^{-1}`.
///
/// `y(N)` must return `Y` to order `N`. The order is raised until the tail
/// is quiet, up to [`MAX_LIMIT_ORDER`].
pub fn stable_limit<S: Specializer>(
    sp: &S,
    y: &dyn Fn(usize) -> Result<TruncSeries<S::Value>>,
    normalization: Normalization,
    cutoff: i64,
) -> Result<LimitReport<S::Value>> {
    let d = sp.dim();
    let offset = match normalization {
        Normalization::Sym { offset } | Normalization::MPower { offset } => offset,
    };
    let wide = cutoff + d * i64::from(offset) + 1;
    let e = |n: usize| -> Result<TruncSeries<S::Value>> { y(n)?.div(&zeta_series(sp, n)?) };
    let (mut value, _, order_used) = eval_at_m_inverse(sp, &e, wide)?;
    if let Normalization::MPower { .. } = normalization {
        let m_pow = sp.l_power(d)?;
        let residue = |n: usize| -> Result<TruncSeries<S::Value>> {
            let one_minus_mt =
                TruncSeries::new(n, Grading::MultiplicitySum, vec![S::Value::one(), m_pow.negate()]);
            zeta_series(sp, n)?.mul(&one_minus_mt)
        };
        let (r, _, _) = eval_at_m_inverse(sp, &residue, wide)?;
        value = trunc(&value.times(&r), wide, d).0;
    }
    value = value.times(&sp.l_power(-d * i64::from(offset))?);
    let (value, tail) = trunc(&value, cutoff, d);
    let tail = if S::Value::truncates() {
        tail
    } else {
        Dimension::Finite(-wide)
    };
    Ok(LimitReport {
        value,
        codim_cutoff: cutoff,
        tail,
        order_used,
        normalization,
    })
}

/// Limit of `[w_{1^j ν}] / [Sym^{j+Σν}]` for `ν` with distinct parts `> 1`:
/// `(w_ν / ζ_X(2d)) · L^{-dΣν} / (1 + L^{-d})^{|ν|}`.
pub fn distinct_nu_limit<S: Specializer>(
    sp: &S,
    nu: &IntPartition,
    cutoff: i64,
) -> Result<LimitReport<S::Value>> {
    if nu.parts().iter().any(|&p| p < 2) || nu.distinct_count() != nu.len() {
        return Err(Error::InvalidInput(format!(
            "{nu} must have distinct parts, all at least 2"
        )));
    }
    let d = sp.dim();
    let wide = cutoff + d * nu.len() as i64 + 1;
    let zeta = zeta_value(sp, 2 * d, wide)?;
    let w = w_value(sp, &nu.multiplicity_profile())?;
    let one_plus = S::Value::one().plus(&sp.l_power(-d)?);
    let denom = Ring::pow(&one_plus, nu.len() as u32).inverse_value(d, wide)?;
    let value = w
        .times(&zeta.value.inverse_value(d, wide)?)
        .times(&sp.l_power(-d * nu.sum() as i64)?);
    let value = trunc(&value, wide, d).0.times(&denom);
    let (value, tail) = trunc(&value, cutoff, d);
    Ok(LimitReport {
        value,
        codim_cutoff: cutoff,
        tail: if S::Value::truncates() { tail } else { zeta.tail },
        order_used: order_for(wide, 2 * d, d),
        normalization: Normalization::Sym { offset: nu.sum() as u32 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::config::{k_lt_a, k_lt_a_nu, kbar_nu};
    use crate::models::{CountSpec, LaurentSpec, SymbolicSpec, XModel};
    use crate::ring::LaurentL;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Signed;

    fn l(s: &str) -> LaurentL {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn smooth_density_on_the_projective_line() {
        let p1: XModel = "P1".parse().unwrap();
        let sp = LaurentSpec::new(&p1).unwrap();
        let h = hyper_density(&sp, 1, 0, 8).unwrap();
        // (1 - L^-1)(1 - L^-2)
        assert_eq!(h.value, l("1 - L^-1 - L^-2 + L^-3"));
        assert!(h.complete);
        let cs = CountSpec::new(&p1, 2).unwrap();
        assert_eq!(hyper_density(&cs, 1, 0, 8).unwrap().value, rat(3, 8));
    }

    #[test]
    fn one_singular_point() {
        // s = 1: X L^-(d+1) / (1 - L^-(d+1)) / ζ(d+1).
        let sp = LaurentSpec::new(&XModel::affine(1)).unwrap();
        let cutoff = 10;
        let h = hyper_density(&sp, 1, 1, cutoff).unwrap();
        let x = LaurentL::l_pow(-2);
        let geom = x.times(&LaurentL::one().minus(&x).inverse_value(1, cutoff).unwrap());
        let inv_zeta = l("1 - L^-1");
        let want = LaurentL::l_pow(1).times(&geom).times(&inv_zeta).split_at(-cutoff).0;
        assert_eq!(h.value, want);
        let o = hyper_ordered_density(&sp, 1, 1, cutoff).unwrap();
        assert_eq!(o.value, h.value);
    }

    #[test]
    fn ordered_density_symbolic() {
        let sp = SymbolicSpec::new(1);
        assert!(hyper_ordered_density(&sp, 1, 2, 5).is_ok());
        assert!(hyper_density(&sp, 1, 2, 5).is_ok());
    }

    #[test]
    fn multi_point_reduces_to_zeta() {
        let sp = LaurentSpec::new(&XModel::affine(2)).unwrap();
        let a = multi_point_density(&sp, 2, 2, 8).unwrap();
        let b = hyper_density(&sp, 2, 0, 8).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(multi_point_density(&sp, 2, 3, 8).unwrap().expression, "1 / zeta_X(6)");
        assert!(multi_point_density(&sp, 2, 1, 8).is_err());
    }

    #[test]
    fn limit_of_distinct_points() {
        // K_(<2) / Sym^j → 1/ζ(2d) = 1 - L^-1 on the affine line.
        let sp = LaurentSpec::new(&XModel::affine(1)).unwrap();
        let r = stable_limit(&sp, &|n| k_lt_a(&sp, 2, n), Normalization::Sym { offset: 0 }, 8).unwrap();
        assert_eq!(r.value, l("1 - L^-1"));
        let m = stable_limit(&sp, &|n| k_lt_a(&sp, 2, n), Normalization::MPower { offset: 0 }, 8).unwrap();
        assert_eq!(m.value, r.value);
    }

    #[test]
    fn limit_normalizations_differ_on_projective_line() {
        // Sym^j P1 / L^j → 1 / (1 - L^-1).
        let sp = LaurentSpec::new(&"P1".parse().unwrap()).unwrap();
        let z = |n| zeta_series(&sp, n);
        let by_sym = stable_limit(&sp, &z, Normalization::Sym { offset: 0 }, 6).unwrap();
        assert_eq!(by_sym.value, LaurentL::one());
        let by_m = stable_limit(&sp, &z, Normalization::MPower { offset: 0 }, 6).unwrap();
        assert_eq!(by_m.value, LaurentL::from_terms((-6..=0).map(|k| (k, 1.into()))));
    }

    #[test]
    fn distinct_nu_matches_stable_limit() {
        let sp = LaurentSpec::new(&XModel::affine(1)).unwrap();
        for nu in ["[2]", "[3,2]"] {
            let nu: IntPartition = nu.parse().unwrap();
            let a = distinct_nu_limit(&sp, &nu, 8).unwrap();
            let b = stable_limit(
                &sp,
                &|n| k_lt_a_nu(&sp, &nu, 2, n),
                Normalization::Sym { offset: nu.sum() as u32 },
                8,
            )
            .unwrap();
            assert_eq!(a.value, b.value, "{nu}");
        }
        assert!(distinct_nu_limit(&sp, &"[2,2]".parse().unwrap(), 8).is_err());
    }

    #[test]
    fn cutoff_monotone() {
        let sp = LaurentSpec::new(&"P1".parse().unwrap()).unwrap();
        let nu: IntPartition = "[2]".parse().unwrap();
        let y = |n| kbar_nu(&sp, &nu, n);
        let lo = stable_limit(&sp, &y, Normalization::Sym { offset: 2 }, 4).unwrap();
        let hi = stable_limit(&sp, &y, Normalization::Sym { offset: 2 }, 9).unwrap();
        assert_eq!(hi.value.split_at(-4).0, lo.value);
    }

    #[test]
    fn numeric_limit_close_to_exact() {
        let model: XModel = "counts:q=3".parse().unwrap();
        let cs = CountSpec::new(&model, 3).unwrap();
        let r = stable_limit(&cs, &|n| k_lt_a(&cs, 2, n), Normalization::Sym { offset: 0 }, 10).unwrap();
        // 1 - 1/3 up to 3^-10.
        let err = &r.value - rat(2, 3);
        assert!(err.abs() < rat(1, 3i64.pow(10)));
    }
}
