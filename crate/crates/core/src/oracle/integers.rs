use num_bigint::BigInt;
use num_rational::BigRational;

use super::counts::MAX_GUARD;
use crate::error::{Error, Result};
use crate::partitions::IntPartition;

/// Primes up to this bound enter the prime sums of [`integer_power_prediction`].
pub const PRIME_SUM_BOUND: u64 = 1_000_000;

const SEGMENT: u64 = 1 << 18;
/// `n <= 10^8` has at most five primes with exponent at least 2.
const MAX_BINS: usize = 8;

/// Proportion of `1 <= n <= bound` divisible by `Π c_i^{ν_i}` for some
/// integers `c_i > 1`, not necessarily distinct.
///
/// Taking each `c_i` prime loses nothing, so `n` qualifies exactly when the
/// parts of `ν` can be packed into the prime exponents of `n`: part `ν_i`
/// goes to a prime `p` and the parts sent to `p` sum to at most `v_p(n)`.
pub fn integer_nu_power_density(nu: &IntPartition, bound: u64) -> Result<BigRational> {
    if nu.is_empty() || nu.parts().iter().any(|&e| e < 2) {
        return Err(Error::InvalidInput(format!("exponents must all be at least 2, got {nu}")));
    }
    if bound == 0 || bound > MAX_GUARD {
        return Err(Error::GuardExceeded { states: u128::from(bound), guard: u128::from(MAX_GUARD) });
    }
    let mut items: Vec<u32> = nu.parts().to_vec();
    items.sort_unstable_by(|a, b| b.cmp(a));
    let min_exp = *items.last().unwrap();
    let need: u32 = items.iter().sum();

    // Only primes with p^{min_exp} <= bound can carry a part.
    let prime_limit = integer_root(bound, min_exp);
    let primes = primes_up_to(prime_limit);

    let mut hits: u64 = 0;
    let mut bins = vec![[0u32; MAX_BINS]; SEGMENT as usize];
    let mut lens = vec![0u8; SEGMENT as usize];
    let mut lo = 1u64;
    while lo <= bound {
        let hi = (lo + SEGMENT - 1).min(bound);
        let width = (hi - lo + 1) as usize;
        lens[..width].fill(0);
        for &p in &primes {
            let Some(pk) = p.checked_pow(min_exp) else { break };
            if pk > hi {
                break;
            }
            let mut m = lo.div_ceil(pk) * pk;
            while m <= hi {
                let mut x = m / pk;
                let mut e = min_exp;
                while x % p == 0 {
                    x /= p;
                    e += 1;
                }
                let i = (m - lo) as usize;
                let l = lens[i] as usize;
                if l < MAX_BINS {
                    bins[i][l] = e;
                    lens[i] += 1;
                }
                m += pk;
            }
        }
        for i in 0..width {
            let l = lens[i] as usize;
            if l == 0 {
                continue;
            }
            let caps = &mut bins[i][..l];
            if caps.iter().sum::<u32>() >= need && pack(&items, caps) {
                hits += 1;
            }
        }
        lo = hi + 1;
    }
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(bound)))
}

/// [`integer_nu_power_density`] for the exponent multiset `a·b^r`.
pub fn integer_power_density(a: u32, b: u32, r: usize, bound: u64) -> Result<BigRational> {
    if a < 2 || b < a {
        return Err(Error::InvalidInput(format!("need 2 <= a <= b, got a = {a}, b = {b}")));
    }
    let mut parts = vec![a];
    parts.extend(std::iter::repeat_n(b, r));
    integer_nu_power_density(&IntPartition::new(parts)?, bound)
}

/// Backtracking: place `items` (descending) into bins of capacity `caps`.
fn pack(items: &[u32], caps: &mut [u32]) -> bool {
    let Some((&first, rest)) = items.split_first() else { return true };
    for j in 0..caps.len() {
        // Bins with equal remaining capacity are interchangeable.
        if caps[j] < first || caps[..j].contains(&caps[j]) {
            continue;
        }
        caps[j] -= first;
        let ok = pack(rest, caps);
        caps[j] += first;
        if ok {
            return true;
        }
    }
    false
}

fn integer_root(n: u64, k: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / f64::from(k)) as u64;
    while r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin after 1000 terms.
pub fn riemann_zeta(s: f64) -> f64 {
    assert!(s > 1.0, "riemann_zeta needs s > 1");
    let n = 1000.0f64;
    let head: f64 = (1..1000).map(|k| (k as f64).powf(-s)).sum();
    head + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0
}

/// Predicted density of integers that are at least an `a·b^r`-power,
/// `1 - ζ(b)^{-1} Σ_{i<r} h_i - ζ(a)^{-1} h_r`, where `h_i` is the complete
/// homogeneous sum of degree `i` in the `p^{-b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerPrediction {
    pub value: f64,
    /// `|value - exact|` is at most this, from primes above [`PRIME_SUM_BOUND`].
    pub tail_bound: f64,
}

pub fn integer_power_prediction(a: u32, b: u32, r: usize) -> Result<PowerPrediction> {
    if a < 2 || b < a {
        return Err(Error::InvalidInput(format!("need 2 <= a <= b, got a = {a}, b = {b}")));
    }
    let primes = primes_up_to(PRIME_SUM_BOUND);
    let cutoff = PRIME_SUM_BOUND as f64;
    // Power sums P_k = Σ_p p^{-kb}, and upper bounds including every n > cutoff.
    let mut lower = Vec::with_capacity(r);
    let mut upper = Vec::with_capacity(r);
    for k in 1..=r {
        let s = (k as f64) * f64::from(b);
        let head: f64 = primes.iter().map(|&p| (p as f64).powf(-s)).sum();
        lower.push(head);
        upper.push(head + cutoff.powf(1.0 - s) / (s - 1.0));
    }
    let (za, zb) = (riemann_zeta(f64::from(a)), riemann_zeta(f64::from(b)));
    let eval = |power_sums: &[f64]| -> f64 {
        let h = complete_from_power_sums(power_sums, r);
        1.0 - h[..r].iter().sum::<f64>() / zb - h[r] / za
    };
    // Each h_i is a positive combination of power-sum products, so the
    // prediction decreases in every P_k.
    let value = eval(&lower);
    let tail_bound = value - eval(&upper);
    Ok(PowerPrediction { value, tail_bound })
}

/// `h_0..=h_n` from power sums `P_1..P_n` via `n h_n = Σ_{k=1}^{n} P_k h_{n-k}`.
fn complete_from_power_sums(p: &[f64], n: usize) -> Vec<f64> {
    let mut h = vec![1.0];
    for m in 1..=n {
        let acc: f64 = (1..=m).map(|k| p[k - 1] * h[m - k]).sum();
        h.push(acc / m as f64);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn brute(nu: &[u32], bound: u64) -> u64 {
        // Direct search over tuples of primes.
        let primes = primes_up_to(bound);
        fn rec(nu: &[u32], n: u64, primes: &[u64]) -> bool {
            let Some((&e, rest)) = nu.split_first() else { return true };
            primes.iter().any(|&p| {
                let pe = p.pow(e);
                n.is_multiple_of(pe) && rec(rest, n / pe, primes)
            })
        }
        (1..=bound).filter(|&n| rec(nu, n, &primes)).count() as u64
    }

    #[test]
    fn matches_brute_force() {
        for nu in [vec![2], vec![3], vec![2, 2], vec![3, 2], vec![2, 2, 2], vec![4, 2]] {
            let bound = 3000;
            let got = integer_nu_power_density(&IntPartition::new(nu.clone()).unwrap(), bound).unwrap();
            let want = BigRational::new(brute(&nu, bound).into(), bound.into());
            assert_eq!(got, want, "nu = {nu:?}");
        }
    }

    #[test]
    fn small_examples() {
        // 4, 8, 9 among 1..=10.
        let d = integer_power_density(2, 2, 0, 10).unwrap();
        assert_eq!(d, BigRational::new(3.into(), 10.into()));
        // 16 = 2^2·2^2, 32 and 36 = 2^2·3^2.
        assert_eq!(integer_power_density(2, 2, 1, 36).unwrap(), BigRational::new(3.into(), 36.into()));
        assert!(integer_power_density(1, 2, 0, 10).is_err());
        assert!(integer_power_density(2, 2, 0, MAX_GUARD + 1).is_err());
    }

    #[test]
    fn squarefree_complement() {
        let d = integer_power_density(2, 2, 0, 200_000).unwrap().to_f64().unwrap();
        assert!((d - (1.0 - 6.0 / std::f64::consts::PI.powi(2))).abs() < 1e-3);
    }

    #[test]
    fn zeta_values() {
        assert!((riemann_zeta(2.0) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
        assert!((riemann_zeta(3.0) - 1.202_056_903_159_594).abs() < 1e-12);
    }

    #[test]
    fn prediction_r0_is_power_free_complement() {
        let p = integer_power_prediction(3, 3, 0).unwrap();
        assert!((p.value - (1.0 - 1.0 / riemann_zeta(3.0))).abs() < 1e-14);
        assert_eq!(p.tail_bound, 0.0);
        let p = integer_power_prediction(2, 2, 1).unwrap();
        assert!(p.tail_bound > 0.0 && p.tail_bound < 1e-5);
        let d = integer_power_density(2, 2, 1, 1_000_000).unwrap().to_f64().unwrap();
        assert!((d - p.value).abs() < 2e-3, "{d} vs {}", p.value);
    }
}
