use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use motdisc::models::{LaurentSpec, Specializer, XModel};
use motdisc::oracle::exp_formula_sym_counts;
use motdisc::partitions::{int_leq, int_merge_closure, merge_closure, GenPartition, IntPartition};
use motdisc::ring::{Grading, LaurentL, MotivicClass, Ring, TruncSeries};

fn laurent() -> impl Strategy<Value = LaurentL> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..5)
        .prop_map(|t| LaurentL::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn class() -> impl Strategy<Value = MotivicClass> {
    prop::collection::vec((prop::collection::vec(1u32..=4, 0..3), laurent()), 0..4).prop_map(|terms| {
        let mut acc = MotivicClass::zero();
        for (parts, c) in terms {
            acc = acc.plus(&MotivicClass::s_product(&parts).times(&MotivicClass::from_laurent(c)));
        }
        acc
    })
}

fn int_partition(max_len: usize) -> impl Strategy<Value = IntPartition> {
    prop::collection::vec(1u32..=4, 0..=max_len).prop_map(|p| IntPartition::new(p).unwrap())
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries<BigRational>> {
    prop::collection::vec(-6i64..=6, order).prop_map(move |tail| {
        let mut c = vec![BigRational::from_integer(1.into())];
        c.extend(tail.into_iter().map(|x| BigRational::from_integer(x.into())));
        TruncSeries::new(c.len() - 1, Grading::MultiplicitySum, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.minus(&a).is_zero());
    }

    #[test]
    fn class_ring_axioms(a in class(), b in class(), c in class()) {
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
    }

    #[test]
    fn series_inverse_is_an_involution(f in unit_series(12)) {
        let inv = f.inverse().unwrap();
        prop_assert_eq!(inv.inverse().unwrap(), f.clone());
        prop_assert_eq!(f.mul(&inv).unwrap(), TruncSeries::one(12, Grading::MultiplicitySum));
    }

    #[test]
    fn specialization_is_a_ring_map(a in class(), b in class()) {
        for model in [XModel::proj_line(), XModel::affine(2), XModel::proj_space(2)] {
            let sp = LaurentSpec::new(&model).unwrap();
            let (va, vb) = (sp.specialize(&a).unwrap(), sp.specialize(&b).unwrap());
            prop_assert_eq!(sp.specialize(&a.plus(&b)).unwrap(), va.plus(&vb));
            prop_assert_eq!(sp.specialize(&a.times(&b)).unwrap(), va.times(&vb));
        }
    }

    #[test]
    fn merges_preserve_total_and_dominate(p in int_partition(5)) {
        let closure = int_merge_closure(&p);
        prop_assert!(closure.contains(&p));
        for mu in closure.iter() {
            prop_assert_eq!(mu.sum(), p.sum());
            prop_assert!(mu.len() <= p.len());
            prop_assert!(int_leq(&p, mu));
        }
    }

    #[test]
    fn generalized_merges_preserve_total(p in int_partition(5)) {
        let g: GenPartition = p.to_gen();
        for mu in merge_closure(&g).iter() {
            prop_assert_eq!(mu.total(), g.total());
            prop_assert_eq!(mu.multiplicity_profile().sum() as usize, mu.len());
        }
    }

    #[test]
    fn exp_formula_is_multiplicative(a in prop::collection::vec(0u32..=4, 1..4), b in prop::collection::vec(0u32..=4, 1..4)) {
        // Point counts of disjoint unions of finite sets of closed points of
        // degrees listed in `a` and `b`: N_r counts points whose degree divides r.
        let n = 6;
        let counts = |degs: &[u32]| -> Vec<BigInt> {
            (1..=n as u32)
                .map(|r| degs.iter().filter(|&&e| e > 0 && r % e == 0).map(|&e| BigInt::from(e)).sum())
                .collect()
        };
        let (ca, cb) = (counts(&a), counts(&b));
        let both: Vec<BigInt> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        let (sa, sb, sab) = (
            exp_formula_sym_counts(&ca, n).unwrap(),
            exp_formula_sym_counts(&cb, n).unwrap(),
            exp_formula_sym_counts(&both, n).unwrap(),
        );
        for k in 0..=n {
            let conv: BigInt = (0..=k).map(|i| &sa[i] * &sb[k - i]).sum();
            prop_assert_eq!(&conv, &sab[k]);
        }
    }
}
