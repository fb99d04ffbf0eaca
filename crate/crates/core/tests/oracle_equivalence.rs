use num_bigint::BigInt;
use num_rational::BigRational;

use motdisc::genfun::{hyper_density, sym_s_series, w_class};
use motdisc::models::{CountSpec, Specializer, XModel};
use motdisc::oracle::{count_hyper_s, tabulate_sym_s, tabulate_w_counts, Curve, DEFAULT_GUARD};
use motdisc::partitions::partitions_of;

fn model(curve: Curve) -> XModel {
    match curve {
        Curve::AffineLine => XModel::affine(1),
        Curve::ProjectiveLine => XModel::proj_line(),
    }
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn configuration_classes_count_divisors() {
    for q in [2u32, 3, 4] {
        for curve in [Curve::AffineLine, Curve::ProjectiveLine] {
            let sp = CountSpec::new(&model(curve), u64::from(q)).unwrap();
            for n in 1..=6 {
                let table = tabulate_w_counts(curve, q, n, DEFAULT_GUARD).unwrap();
                for lam in partitions_of(n as u32) {
                    let want = table.get(&lam).copied().unwrap_or(0);
                    let got = sp.specialize(&w_class(&lam.to_gen())).unwrap();
                    assert_eq!(got, rat(want), "{curve}, q = {q}, λ = {lam}");
                }
            }
        }
    }
}

#[test]
fn multiple_point_strata_count_divisors() {
    for q in [2u32, 3, 4] {
        let max_j = if q == 4 { 7 } else { 9 };
        for curve in [Curve::AffineLine, Curve::ProjectiveLine] {
            let sp = CountSpec::new(&model(curve), u64::from(q)).unwrap();
            let series: Vec<_> = (0..=4).map(|s| sym_s_series(&sp, s, max_j).unwrap()).collect();
            for j in 0..=max_j {
                let counts = tabulate_sym_s(curve, q, j, DEFAULT_GUARD).unwrap();
                for (s, ser) in series.iter().enumerate() {
                    let want = counts.get(s).copied().unwrap_or(0);
                    assert_eq!(*ser.coeff(j), rat(want), "{curve}, q = {q}, j = {j}, s = {s}");
                }
            }
        }
    }
}

#[test]
fn squarefree_binary_forms_stabilize_exactly() {
    for q in [2u32, 3] {
        let sp = CountSpec::new(&XModel::proj_line(), u64::from(q)).unwrap();
        let limit = hyper_density(&sp, 1, 0, 40).unwrap().value;
        let qr = rat(u64::from(q));
        let one = rat(1);
        let want = (&one - one.clone() / &qr) * (&one - one.clone() / (&qr * &qr));
        // Exact partial sums of ζ(2)^{-1} stop changing once the series is exhausted.
        assert_eq!(limit, want);
        let max_j = if q == 2 { 12 } else { 8 };
        for j in 3..=max_j {
            let f = count_hyper_s(q, j, 0, DEFAULT_GUARD).unwrap().fraction();
            assert_eq!(f, want, "q = {q}, j = {j}");
        }
    }
}

#[test]
fn one_singular_point_approaches_its_limit() {
    let sp = CountSpec::new(&XModel::proj_line(), 3).unwrap();
    let limit = hyper_density(&sp, 1, 1, 40).unwrap().value;
    let f = count_hyper_s(3, 8, 1, DEFAULT_GUARD).unwrap().fraction();
    let gap = num_traits::ToPrimitive::to_f64(&(f - limit)).unwrap().abs();
    assert!(gap < 1e-2, "gap {gap}");
}
