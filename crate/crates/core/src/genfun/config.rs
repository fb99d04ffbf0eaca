use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::models::Specializer;
use crate::partitions::{add_lt_a, s_set, GenPartition, IntPartition, ProfileRelation};
use crate::ring::{Grading, Ring, TruncSeries};

use super::classes::{w_value, zeta_s_series, zeta_series};

const G: Grading = Grading::MultiplicitySum;

/// `Z(t) / Z(t^a)`: configurations with every multiplicity below `a`.
pub fn k_lt_a<S: Specializer>(sp: &S, a: u32, order: usize) -> Result<TruncSeries<S::Value>> {
    if a < 1 {
        return Err(Error::InvalidInput("K_(<a) needs a >= 1".into()));
    }
    let z = zeta_series(sp, order)?;
    z.div(&z.compose_power(a as usize)?)
}

/// `K_{(<a)ν}(t)`: configurations whose points of multiplicity `>= a` have
/// multiplicities exactly `ν`, all others below `a`; the coefficient of
/// `t^j` lives in `Sym^{j+Σν}`.
pub fn k_lt_a_nu<S: Specializer>(
    sp: &S,
    nu: &IntPartition,
    a: u32,
    order: usize,
) -> Result<TruncSeries<S::Value>> {
    if a < 2 {
        return Err(Error::InvalidInput("K_(<a)nu needs a >= 2".into()));
    }
    if let Some(p) = nu.parts().iter().find(|&&p| p < a) {
        return Err(Error::InvalidInput(format!("part {p} of {nu} is below a = {a}")));
    }
    let base = k_lt_a(sp, a, order)?;
    let mut memo = HashMap::new();
    k_profile(sp, &nu.multiplicity_profile(), a, &base, &mut memo)
}

/// The series only depends on `m(ν)`: small parts never equal big ones.
/// Writing `ν` as a formalization, every configuration counted by
/// `K_{(<a)} · w_ν` splits uniquely as a member `ν'` of `A_{<a}(ν)` plus
/// small parts, so
/// `K_{(<a)}·w_ν = Σ_{ν'} K_{(<a)ν'} t^{Σν'-Σν}`.
/// Members with the same profile as `ν` contribute `K_{(<a)ν}` times a
/// polynomial with constant term 1; the others have strictly finer profiles.
fn k_profile<S: Specializer>(
    sp: &S,
    m: &IntPartition,
    a: u32,
    base: &TruncSeries<S::Value>,
    memo: &mut HashMap<IntPartition, TruncSeries<S::Value>>,
) -> Result<TruncSeries<S::Value>> {
    if let Some(k) = memo.get(m) {
        return Ok(k.clone());
    }
    if m.is_empty() {
        return Ok(base.clone());
    }
    let order = base.order();
    let nu = GenPartition::formal_from_profile(m);
    let nu_weight = nu.total().weight();
    let mut numer = base.scale(&w_value(sp, m)?);
    let mut denom = TruncSeries::<S::Value>::zero(order, G);
    for (member, rel) in add_lt_a(&nu, a)? {
        let shift = (member.total().weight() - nu_weight) as usize;
        if shift > order {
            continue;
        }
        match rel {
            ProfileRelation::Equal => {
                let mut c = denom.coeff(shift).clone();
                c.add_assign_ref(&S::Value::one());
                denom.set_coeff(shift, c);
            }
            ProfileRelation::Finer => {
                let finer = k_profile(sp, &member.multiplicity_profile(), a, base, memo)?;
                numer = numer.sub(&finer.shift_up(shift))?;
            }
        }
    }
    let k = numer.div(&denom)?;
    memo.insert(m.clone(), k.clone());
    Ok(k)
}

/// `K̄_{1•ν}(t)`: configurations whose multiplicity pattern lies in the
/// closure of `1^j ν`, with `t^j` in `Sym^{j+Σν}`.
///
/// Peels the smallest part `a` of `ν = a·ν'`:
/// `K̄_{1•aν'} = t^{-a}(K̄_{1•ν'} - Σ_{μ∈S(ν',a)} K_{(<a)μ} t^{Σμ-Σν'})`,
/// checking that the division by `t^a` is exact.
pub fn kbar_nu<S: Specializer>(sp: &S, nu: &IntPartition, order: usize) -> Result<TruncSeries<S::Value>> {
    if let Some(p) = nu.parts().iter().find(|&&p| p < 2) {
        return Err(Error::InvalidInput(format!("part {p} of {nu} is below 2")));
    }
    let Some(a) = nu.smallest() else {
        return zeta_series(sp, order);
    };
    let mut rest: Vec<u32> = nu.parts().to_vec();
    rest.pop();
    let rest = IntPartition::new(rest)?;
    let ext = order + a as usize;
    let mut acc = kbar_nu(sp, &rest, ext)?;
    let rest_sum = rest.sum();
    for mu in s_set(&rest, a)? {
        let shift = (mu.sum() - rest_sum) as usize;
        if shift > ext {
            continue;
        }
        let k = k_lt_a_nu(sp, &mu, a, ext)?;
        acc = acc.sub(&k.shift_up(shift))?;
    }
    acc.shift_down(a as usize)
}

/// Closed form of `K̄_{1•ab^r}`:
/// `t^{-a-rb}(Z - Z/Z(t^b)·Σ_{i<r} S_i t^{bi} - Z/Z(t^a)·S_r t^{rb})`.
pub fn kbar_abr_closed<S: Specializer>(
    sp: &S,
    a: u32,
    b: u32,
    r: u32,
    order: usize,
) -> Result<TruncSeries<S::Value>> {
    if !(1 < a && a <= b) {
        return Err(Error::InvalidInput(format!("need 1 < a <= b, got a = {a}, b = {b}")));
    }
    let top = (a + r * b) as usize;
    let ext = order + top;
    let z = zeta_series(sp, ext)?;
    let za = k_lt_a(sp, a, ext)?;
    let zb = k_lt_a(sp, b, ext)?;
    let mut poly = TruncSeries::<S::Value>::zero(ext, G);
    for i in 0..r {
        poly.set_coeff((b * i) as usize, sp.sym(i)?);
    }
    let last = TruncSeries::monomial(ext, G, (r * b) as usize, sp.sym(r)?);
    z.sub(&zb.mul(&poly)?)?.sub(&za.mul(&last)?)?.shift_down(top)
}

/// `Σ_j [Sym^j_s X] t^j = Z^{[s]}(t²)·Z(t)/Z(t²)`: configurations with exactly
/// `s` points of multiplicity at least 2.
pub fn sym_s_series<S: Specializer>(sp: &S, s: usize, order: usize) -> Result<TruncSeries<S::Value>> {
    let zs = zeta_s_series(sp, s, order)?.compose_power(2)?;
    zs.mul(&k_lt_a(sp, 2, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::classes::w_profile;
    use crate::models::{CountSpec, LaurentSpec, SymbolicSpec, XModel};
    use crate::ring::{LaurentL, MotivicClass};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn ip(s: &str) -> IntPartition {
        s.parse().unwrap()
    }

    fn q_int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn line_counts(q: u64) -> CountSpec {
        CountSpec::new(&format!("counts:q={q}").parse().unwrap(), q).unwrap()
    }

    #[test]
    fn squarefree_counts_on_the_line() {
        let sp = line_counts(3);
        let k = k_lt_a_nu(&sp, &IntPartition::empty(), 2, 6).unwrap();
        let want = [1, 3, 6, 18, 54, 162, 486];
        for (j, w) in want.iter().enumerate() {
            assert_eq!(k.coeff(j), &q_int(*w), "j = {j}");
        }
    }

    #[test]
    fn distinct_parts_formula() {
        // K_(<2)ν = Z/Z(t²) · w_ν / (1+t)^{|ν|} for distinct parts > 1.
        let sp = SymbolicSpec::new(1);
        let n = 7;
        for nu in ["[2]", "[3,2]", "[4,3,2]"] {
            let nu = ip(nu);
            let got = k_lt_a_nu(&sp, &nu, 2, n).unwrap();
            let one_plus_t = TruncSeries::new(n, G, vec![MotivicClass::one(), MotivicClass::one()]);
            let mut denom = TruncSeries::one(n, G);
            for _ in 0..nu.len() {
                denom = denom.mul(&one_plus_t).unwrap();
            }
            let want = k_lt_a(&sp, 2, n)
                .unwrap()
                .scale(&w_profile(&nu.multiplicity_profile()))
                .div(&denom)
                .unwrap();
            assert_eq!(got, want, "{nu}");
        }
    }

    #[test]
    fn kbar_single_part_base_case() {
        // K̄_{1•a} = t^{-a} Z (1 - 1/Z(t^a)), and K_(<a) + t^a K̄_{1•a} = Z.
        let sp = SymbolicSpec::new(1);
        let n = 8;
        for a in 2..=4u32 {
            let kbar = kbar_nu(&sp, &IntPartition::new(vec![a]).unwrap(), n).unwrap();
            let z = zeta_series(&sp, n).unwrap();
            let lhs = k_lt_a(&sp, a, n).unwrap().add(&kbar.shift_up(a as usize)).unwrap();
            assert_eq!(lhs, z, "a = {a}");
        }
    }

    #[test]
    fn kbar_two_double_points_on_the_line() {
        let q = 2i64;
        let sp = line_counts(q as u64);
        let k = kbar_nu(&sp, &ip("[2,2]"), 8).unwrap();
        for j in 0..=8 {
            assert_eq!(k.coeff(j), &q_int(q.pow(j as u32 + 2)), "j = {j}");
        }
    }

    #[test]
    fn closed_form_matches_recursion() {
        let sp = SymbolicSpec::new(1);
        for (a, b, r) in [(2, 2, 0), (2, 2, 1), (2, 3, 1), (3, 3, 2), (2, 3, 2)] {
            let mut parts = vec![a];
            parts.extend(std::iter::repeat_n(b, r as usize));
            let nu = IntPartition::new(parts).unwrap();
            assert_eq!(
                kbar_nu(&sp, &nu, 5).unwrap(),
                kbar_abr_closed(&sp, a, b, r, 5).unwrap(),
                "(a, b, r) = ({a}, {b}, {r})"
            );
        }
    }

    #[test]
    fn closed_form_on_affine_space() {
        for d in 1..=2u32 {
            let sp = LaurentSpec::new(&XModel::affine(d)).unwrap();
            let k = kbar_abr_closed(&sp, 2, 3, 1, 6).unwrap();
            for j in 0..=6 {
                assert_eq!(k.coeff(j), &LaurentL::l_pow(i64::from(d) * (j as i64 + 2)));
            }
        }
    }

    #[test]
    fn sym_s_examples() {
        for q in [2i64, 3] {
            let sp = line_counts(q as u64);
            let s1 = sym_s_series(&sp, 1, 6).unwrap();
            assert_eq!(s1.coeff(2), &q_int(q));
            assert_eq!(s1.coeff(3), &q_int(q * q));
        }
        let sp = SymbolicSpec::new(1);
        let n = 8;
        let mut acc = TruncSeries::zero(n, G);
        for s in 0..=n {
            acc = acc.add(&sym_s_series(&sp, s, n).unwrap()).unwrap();
        }
        assert_eq!(acc, zeta_series(&sp, n).unwrap());
    }

    #[test]
    fn rejects_small_parts() {
        let sp = SymbolicSpec::new(1);
        assert!(k_lt_a_nu(&sp, &ip("[2,1]"), 2, 4).is_err());
        assert!(k_lt_a_nu(&sp, &ip("[3]"), 4, 4).is_err());
        assert!(kbar_nu(&sp, &ip("[1]"), 4).is_err());
        assert!(kbar_abr_closed(&sp, 3, 2, 1, 4).is_err());
    }
}
