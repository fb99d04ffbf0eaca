use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::models::Specializer;
use crate::partitions::{
    enumerate_k_parts, formal_closure_profiles, merge_closure, partitions_of, GenPartition,
    IntPartition,
};
use crate::ring::{Grading, MotivicClass, Ring, TruncSeries};

type Memo = RwLock<HashMap<IntPartition, MotivicClass>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `w` of any partition with multiplicity profile `m`, as a polynomial in
/// the symmetric-power generators.
///
/// The closure of a formalization with profile `m` has class `Π S_{m_i}`
/// and is the disjoint union of the strata of its members, so
/// `w(m) = Π S_{m_i} - Σ count(p)·w(p)` over the strictly coarser
/// profiles `p` occurring in that closure.
pub fn w_profile(m: &IntPartition) -> MotivicClass {
    if let Some(c) = memo().read().unwrap().get(m) {
        return c.clone();
    }
    let mut acc = MotivicClass::s_product(m.parts());
    for (p, count) in formal_closure_profiles(m) {
        if &p == m {
            continue;
        }
        let sub = w_profile(&p).scale_int(&count.into());
        acc = acc.minus(&sub);
    }
    memo().write().unwrap().insert(m.clone(), acc.clone());
    acc
}

/// `[w_λ]`: configurations with multiplicity pattern exactly `λ`.
pub fn w_class(lambda: &GenPartition) -> MotivicClass {
    w_profile(&lambda.multiplicity_profile())
}

/// `[w̄_λ] = Σ_{λ <= μ} [w_μ]`.
pub fn wbar_class(lambda: &GenPartition) -> MotivicClass {
    let mut counts: HashMap<IntPartition, u64> = HashMap::new();
    for mu in merge_closure(lambda).iter() {
        *counts.entry(mu.multiplicity_profile()).or_insert(0) += 1;
    }
    let mut acc = MotivicClass::zero();
    for (p, n) in counts {
        acc.add_assign_ref(&w_profile(&p).scale_int(&n.into()));
    }
    acc
}

/// `[w_m]` under a specialization.
pub fn w_value<S: Specializer>(sp: &S, m: &IntPartition) -> Result<S::Value> {
    sp.specialize(&w_profile(m))
}

/// `Z_X(t) = Σ [Sym^n X] t^n`, graded by multiplicity sum.
pub fn zeta_series<S: Specializer>(sp: &S, order: usize) -> Result<TruncSeries<S::Value>> {
    TruncSeries::try_from_fn(order, Grading::MultiplicitySum, |n| sp.sym(n as u32))
}

/// `Z^{[s]}_X(t) = Σ_{|λ|=s} w_λ t^{Σλ}`: configurations supported on exactly
/// `s` geometric points.
pub fn zeta_s_series<S: Specializer>(sp: &S, s: usize, order: usize) -> Result<TruncSeries<S::Value>> {
    let mut out: TruncSeries<S::Value> = TruncSeries::zero(order, Grading::MultiplicitySum);
    let mut cache: HashMap<IntPartition, S::Value> = HashMap::new();
    for lam in enumerate_k_parts(s, order as u64) {
        let m = lam.multiplicity_profile();
        let w = match cache.get(&m) {
            Some(w) => w.clone(),
            None => {
                let w = w_value(sp, &m)?;
                cache.insert(m, w.clone());
                w
            }
        };
        let k = lam.sum() as usize;
        let mut c = out.coeff(k).clone();
        c.add_assign_ref(&w);
        out.set_coeff(k, c);
    }
    Ok(out)
}

/// Highest order [`zinv_lambda`] accepts; each further order costs roughly
/// six times as much.
pub const MAX_Q_ORDER: usize = 12;

/// `Σ_{μ∈Q} (-1)^{‖μ‖} w_{λ·μ} t^{|λ·μ|}`, graded by number of points.
///
/// `λ·μ` is the disjoint concatenation, so only the multiplicity profile of
/// `λ` matters; `μ` runs over partitions using exactly the labels `1..k`.
pub fn zinv_lambda<S: Specializer>(
    sp: &S,
    lambda: &GenPartition,
    order: usize,
) -> Result<TruncSeries<S::Value>> {
    if order > MAX_Q_ORDER {
        return Err(Error::GuardExceeded {
            states: bell(order),
            guard: bell(MAX_Q_ORDER),
        });
    }
    let base = lambda.multiplicity_profile();
    let mut out = TruncSeries::zero(order, Grading::Points);
    if lambda.len() > order {
        return Ok(out);
    }
    // Members of Q with the same multiset of counts contribute equally;
    // there are k!/Π(repeats)! orderings of k counts.
    for n in 0..=order - lambda.len() {
        for counts in partitions_of(n as u32) {
            let k = counts.len();
            let orderings = counts
                .value_multiplicities()
                .iter()
                .fold(factorial(k), |acc, &(_, r)| acc / factorial(r as usize));
            let w = w_value(sp, &base.concat(&counts))?;
            let mut term = w.times(&S::Value::from_bigint(&orderings));
            if k % 2 == 1 {
                term = term.negate();
            }
            let i = lambda.len() + n;
            let mut c = out.coeff(i).clone();
            c.add_assign_ref(&term);
            out.set_coeff(i, c);
        }
    }
    Ok(out)
}

/// Set partitions of `n` points, the size of the merge closure behind the
/// longest profile an alternating sum of order `n` needs.
fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap().saturating_add(x));
        }
        row = next;
    }
    row[0]
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

/// `*^s`: `s` copies of one label.
pub fn star_power(s: usize) -> GenPartition {
    GenPartition::from_ints(&vec![1; s]).expect("unit parts are nonzero")
}

/// `1·2·…·s`: `s` distinct labels.
pub fn ordered_labels(s: usize) -> GenPartition {
    GenPartition::from_ints(&(1..=s as u64).collect::<Vec<_>>()).expect("parts are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_w_lambda, Curve, DEFAULT_GUARD};
    use crate::models::{CountSpec, LaurentSpec, SymbolicSpec, XModel};
    use crate::ring::LaurentL;
    use num_rational::BigRational;

    fn ip(s: &str) -> IntPartition {
        s.parse().unwrap()
    }

    fn gp(s: &str) -> GenPartition {
        s.parse().unwrap()
    }

    fn s(n: u32) -> MotivicClass {
        MotivicClass::s(n)
    }

    #[test]
    fn small_w_classes() {
        assert_eq!(w_class(&gp("[1,1]")), s(2).minus(&s(1)));
        assert_eq!(w_class(&gp("[1,2]")), s(1).times(&s(1)).minus(&s(1)));
        assert_eq!(w_class(&gp("[1,1,1]")), s(3).minus(&s(1).times(&s(1))));
        assert_eq!(w_profile(&IntPartition::empty()), MotivicClass::one());
    }

    #[test]
    fn symmetric_power_is_sum_of_strata() {
        // S_n = Σ over partitions λ of n of w_λ.
        for n in 1..=6u32 {
            let mut acc = MotivicClass::zero();
            for lam in crate::partitions::partitions_of(n) {
                acc.add_assign_ref(&w_profile(&lam.multiplicity_profile()));
            }
            assert_eq!(acc, s(n), "n = {n}");
        }
    }

    #[test]
    fn w_agrees_with_chain_sum() {
        for lam in ["[1,1,1]", "[1,1,2]", "[1,2,3]", "[2,2,2,1]"] {
            let lam = gp(lam);
            let mut acc = MotivicClass::zero();
            for chain in crate::partitions::ll_chains(&lam, 16) {
                let last = chain.last().unwrap();
                let term = MotivicClass::s_product(last.multiplicity_profile().parts());
                if chain.len() % 2 == 1 {
                    acc.add_assign_ref(&term);
                } else {
                    acc = acc.minus(&term);
                }
            }
            assert_eq!(acc, w_class(&lam), "{lam}");
        }
    }

    #[test]
    fn wbar_of_formalization_is_sym_product() {
        assert_eq!(wbar_class(&gp("[a,a,b]")), s(2).times(&s(1)));
        assert_eq!(
            wbar_class(&gp("[x,x,y,y,z]")),
            MotivicClass::s_product(&[2, 2, 1])
        );
    }

    #[test]
    fn wbar_on_affine_line() {
        let sp = LaurentSpec::new(&XModel::affine(1)).unwrap();
        let lam = gp("[1,1,2,2,3]");
        let v = sp.specialize(&wbar_class(&lam)).unwrap();
        // Exhaustive counts of the closure over F_2 and F_3 are 34 and 249.
        assert_eq!(v, "L^5 + L^2 - L".parse::<LaurentL>().unwrap());
        for q in [2u32, 3] {
            let mut seen = std::collections::BTreeSet::new();
            let mut total = 0u64;
            for mu in merge_closure(&lam).iter() {
                let ip = mu.as_int_partition().unwrap();
                if seen.insert(ip.clone()) {
                    total += count_w_lambda(Curve::AffineLine, q, &ip, DEFAULT_GUARD).unwrap();
                }
            }
            let at_q = v.eval_rational(&BigRational::from_integer(q.into())).unwrap();
            assert_eq!(at_q, BigRational::from_integer(total.into()), "q = {q}");
        }
        let cs = CountSpec::new(&"counts:q=5".parse().unwrap(), 5).unwrap();
        assert_eq!(
            cs.specialize(&wbar_class(&gp("[2,2]"))).unwrap(),
            BigRational::from_integer(25.into())
        );
    }

    #[test]
    fn zeta_s_low_cases() {
        let sp = SymbolicSpec::new(1);
        let n = 7;
        assert_eq!(zeta_s_series(&sp, 0, n).unwrap(), TruncSeries::one(n, Grading::MultiplicitySum));
        let one = zeta_s_series(&sp, 1, n).unwrap();
        for k in 1..=n {
            assert_eq!(one.coeff(k), &s(1));
        }
        // Z^[2] = t²S2/(1-t²) + t³S1²/((1-t²)(1-t)) - t²S1/((1-t²)(1-t)).
        let g = Grading::MultiplicitySum;
        let inv = |p: TruncSeries<MotivicClass>| p.inverse().unwrap();
        let poly = |c: &[i64]| {
            TruncSeries::from_fn(n, g, |k| MotivicClass::from_i64(c.get(k).copied().unwrap_or(0)))
        };
        let d1 = inv(poly(&[1, 0, -1]));
        let d2 = d1.mul(&inv(poly(&[1, -1]))).unwrap();
        let want = TruncSeries::monomial(n, g, 2, s(2))
            .mul(&d1)
            .unwrap()
            .add(&TruncSeries::monomial(n, g, 3, s(1).times(&s(1))).mul(&d2).unwrap())
            .unwrap()
            .sub(&TruncSeries::monomial(n, g, 2, s(1)).mul(&d2).unwrap())
            .unwrap();
        assert_eq!(zeta_s_series(&sp, 2, n).unwrap(), want);
    }

    #[test]
    fn zinv_empty_inverts_zeta() {
        let sp = SymbolicSpec::new(1);
        let z = zeta_series(&sp, 8).unwrap().regrade(Grading::Points);
        let zi = zinv_lambda(&sp, &GenPartition::empty(), 8).unwrap();
        assert_eq!(zi, z.inverse().unwrap());
    }

    #[test]
    fn zinv_stars_sum_to_one() {
        let sp = SymbolicSpec::new(1);
        let n = 7;
        let mut acc = TruncSeries::zero(n, Grading::Points);
        for k in 0..=n {
            acc = acc.add(&zinv_lambda(&sp, &star_power(k), n).unwrap()).unwrap();
        }
        assert_eq!(acc, TruncSeries::one(n, Grading::Points));
    }

    #[test]
    fn zinv_multiplicity_profile_only() {
        let sp = SymbolicSpec::new(1);
        assert_eq!(
            zinv_lambda(&sp, &ip("[2,2,5]").to_gen(), 6).unwrap(),
            zinv_lambda(&sp, &gp("[x,x,y]"), 6).unwrap()
        );
    }
}
