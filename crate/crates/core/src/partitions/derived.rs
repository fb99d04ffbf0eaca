use std::collections::BTreeSet;

use super::merge::{int_leq, int_merge_closure};
use super::part::{distinct_runs, GenPartition, IntPartition, Part};
use crate::error::{Error, Result};

/// How the profile of a member of `A_{<a}(ν)` relates to `m(ν)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileRelation {
    Equal,
    Finer,
}

/// `A_{<a}(ν)`: add `k·1` with `0 <= k < a` independently to each part of
/// `ν`, tagging each result by how its multiplicity profile compares to
/// `m(ν)`.
///
/// Parts with equal value are interchangeable, so the increments of a run of
/// `r` equal parts range over multisets of size `r`. Fails if a profile is
/// incomparable with `m(ν)`.
pub fn add_lt_a(nu: &GenPartition, a: u32) -> Result<Vec<(GenPartition, ProfileRelation)>> {
    if a == 0 {
        return Err(Error::InvalidInput("add_lt_a needs a >= 1".into()));
    }
    let runs: Vec<(Part, usize)> = distinct_runs(nu.parts())
        .map(|(p, n)| (p.clone(), n))
        .collect();
    let mut members: BTreeSet<GenPartition> = BTreeSet::new();
    let mut acc: Vec<Part> = Vec::with_capacity(nu.len());
    extend_runs(&runs, 0, a, &mut acc, &mut members);

    let base = nu.multiplicity_profile();
    members
        .into_iter()
        .map(|member| {
            let m = member.multiplicity_profile();
            let rel = if m == base {
                ProfileRelation::Equal
            } else if int_leq(&m, &base) {
                ProfileRelation::Finer
            } else {
                return Err(Error::IncomparableProfiles(m.to_string(), base.to_string()));
            };
            Ok((member, rel))
        })
        .collect()
}

fn extend_runs(
    runs: &[(Part, usize)],
    idx: usize,
    a: u32,
    acc: &mut Vec<Part>,
    out: &mut BTreeSet<GenPartition>,
) {
    if idx == runs.len() {
        out.insert(GenPartition::from_nonzero(acc.clone()));
        return;
    }
    let (part, mult) = &runs[idx];
    let mut incs = Vec::with_capacity(*mult);
    multisets(*mult, 0, a, &mut incs, &mut |incs| {
        let len = acc.len();
        for &k in incs.iter() {
            acc.push(part.plus(&Part::integer(u64::from(k))));
        }
        extend_runs(runs, idx + 1, a, acc, out);
        acc.truncate(len);
    });
}

/// Calls `f` on each nondecreasing sequence of length `size` with entries in
/// `lo..hi`.
fn multisets(size: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for k in lo..hi {
        cur.push(k);
        multisets(size, k, hi, cur, f);
        cur.pop();
    }
}

/// `S(ν, a)`: big parts (those `>= a`) of members of the merge closure of
/// `1^{j₀}ν` with `j₀ = |ν|(a-1)`, excluding members that lie above
/// `1^{j₀-a}·a·ν`.
pub fn s_set(nu: &IntPartition, a: u32) -> Result<BTreeSet<IntPartition>> {
    let j0 = nu.len() * (a.saturating_sub(1) as usize);
    s_set_with_ones(nu, a, j0)
}

/// [`s_set`] computed with an explicit number `j` of ones; the result is the
/// same for every `j >= |ν|(a-1)`.
pub fn s_set_with_ones(nu: &IntPartition, a: u32, j: usize) -> Result<BTreeSet<IntPartition>> {
    if a < 2 {
        return Err(Error::InvalidInput("S(nu, a) needs a >= 2".into()));
    }
    if let Some(small) = nu.parts().iter().find(|&&p| p < a) {
        return Err(Error::InvalidInput(format!(
            "part {small} of {nu} is below a = {a}"
        )));
    }
    let start = nu.with_ones(j);
    let excluded = (j >= a as usize).then(|| nu.with_ones(j - a as usize).concat(&IntPartition::from_unsorted(vec![a])));
    let mut out = BTreeSet::new();
    for lam in int_merge_closure(&start).iter() {
        if let Some(ex) = &excluded {
            if int_leq(ex, lam) {
                continue;
            }
        }
        out.insert(lam.parts_at_least(a));
    }
    Ok(out)
}

/// A member of `Q`: the partition using exactly the values `1..=k`, with
/// value `i` repeated `counts[i-1]` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMember {
    pub partition: IntPartition,
    pub counts: Vec<u32>,
}

impl QMember {
    /// `‖μ‖`.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// `|μ|`.
    pub fn size(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }
}

/// All `μ ∈ Q` with `|μ| <= max_size`, ordered by size then composition.
pub fn enumerate_q(max_size: usize) -> Vec<QMember> {
    let mut out = Vec::new();
    for n in 0..=max_size {
        let mut cur = Vec::new();
        compositions(n, &mut cur, &mut |counts| {
            let mut parts = Vec::with_capacity(n);
            for (i, &c) in counts.iter().enumerate() {
                parts.extend(std::iter::repeat_n(i as u32 + 1, c as usize));
            }
            out.push(QMember {
                partition: IntPartition::from_unsorted(parts),
                counts: counts.to_vec(),
            });
        });
    }
    out
}

/// Calls `f` on each composition of `n` into positive parts.
pub(crate) fn compositions(n: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if n == 0 {
        f(cur);
        return;
    }
    for first in 1..=n {
        cur.push(first as u32);
        compositions(n - first, cur, f);
        cur.pop();
    }
}

/// Integer partitions with exactly `k` positive parts and sum `<= max_sum`.
pub fn enumerate_k_parts(k: usize, max_sum: u64) -> Vec<IntPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    k_parts(k, max_sum, u32::MAX, &mut cur, &mut out);
    out.sort_by(|a, b| a.sum().cmp(&b.sum()).then_with(|| b.cmp(a)));
    out
}

fn k_parts(k: usize, budget: u64, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
    if cur.len() == k {
        out.push(IntPartition::from_unsorted(cur.clone()));
        return;
    }
    let left = (k - cur.len()) as u64;
    if budget < left {
        return;
    }
    // Leave at least 1 for each later part.
    let hi = (budget - (left - 1)).min(u64::from(cap));
    for p in 1..=hi as u32 {
        cur.push(p);
        k_parts(k, budget - u64::from(p), p, cur, out);
        cur.pop();
    }
}

/// All partitions of `n`, largest parts first.
pub fn partitions_of(n: u32) -> Vec<IntPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    parts_of(n, n, &mut cur, &mut out);
    out
}

fn parts_of(n: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
    if n == 0 {
        out.push(IntPartition::from_unsorted(cur.clone()));
        return;
    }
    for p in (1..=n.min(cap)).rev() {
        cur.push(p);
        parts_of(n - p, p, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GenPartition {
        s.parse().unwrap()
    }

    fn ip(s: &str) -> IntPartition {
        s.parse().unwrap()
    }

    #[test]
    fn add_lt_a_examples() {
        let got = add_lt_a(&gp("x^3,y^2"), 3).unwrap();
        assert!(got.iter().any(|(p, _)| *p == gp("x+2,x+2,x,y+1,y")));
        assert!(got.iter().any(|(p, r)| *p == gp("x^3,y^2") && *r == ProfileRelation::Equal));

        let got: BTreeSet<_> = add_lt_a(&gp("x"), 2).unwrap().into_iter().map(|(p, _)| p).collect();
        assert_eq!(got, [gp("x"), gp("x+1")].into_iter().collect());

        let got = add_lt_a(&gp("x,y"), 2).unwrap();
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|(_, r)| *r == ProfileRelation::Equal));
    }

    #[test]
    fn add_lt_a_relations() {
        let got = add_lt_a(&gp("x^2"), 2).unwrap();
        let finer: Vec<_> = got
            .iter()
            .filter(|(_, r)| *r == ProfileRelation::Finer)
            .map(|(p, _)| p.clone())
            .collect();
        assert_eq!(finer, vec![gp("x,x+1")]);
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn s_set_examples() {
        let empty = s_set(&IntPartition::empty(), 2).unwrap();
        assert_eq!(empty.into_iter().collect::<Vec<_>>(), vec![IntPartition::empty()]);

        let two = s_set(&ip("2"), 2).unwrap();
        assert_eq!(two.into_iter().collect::<Vec<_>>(), vec![ip("2"), ip("3")]);

        assert!(s_set(&ip("1,2"), 2).is_err());
        assert!(s_set(&ip("2"), 1).is_err());
    }

    #[test]
    fn s_set_three() {
        // Closure of 1,1,3 is {113, 23, 14, 5}; with j0 = 2 < 3 nothing is
        // excluded, so the big parts are {3}, {3}, {4}, {5}.
        let got = s_set(&ip("3"), 3).unwrap();
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![ip("3"), ip("4"), ip("5")]);
    }

    #[test]
    fn s_set_stabilizes() {
        for nu in ["2", "3", "2,2", "4", "2,3", "3,3", "2,2,2", "2,4", "5", "6"] {
            let nu = ip(nu);
            for a in 2..=nu.smallest().unwrap() {
                let j0 = nu.len() * (a as usize - 1);
                let base = s_set(&nu, a).unwrap();
                let later = s_set_with_ones(&nu, a, j0 + a as usize).unwrap();
                assert_eq!(base, later, "nu={nu} a={a}");
            }
        }
    }

    #[test]
    fn q_examples() {
        let q1: Vec<_> = enumerate_q(1).into_iter().map(|m| m.partition).collect();
        assert_eq!(q1, vec![IntPartition::empty(), ip("1")]);
        let q2: Vec<_> = enumerate_q(2).into_iter().map(|m| m.partition).collect();
        assert_eq!(q2, vec![IntPartition::empty(), ip("1"), ip("1,2"), ip("1,1")]);
        let q7 = enumerate_q(7);
        let member = q7.iter().find(|m| m.partition == ip("1^4,2,3^2")).unwrap();
        assert_eq!(member.distinct(), 3);
        // Σ_{n<=N} 2^{n-1} plus the empty one.
        assert_eq!(enumerate_q(8).len(), 256);
    }

    #[test]
    fn k_parts_examples() {
        assert_eq!(enumerate_k_parts(1, 3), vec![ip("1"), ip("2"), ip("3")]);
        assert_eq!(
            enumerate_k_parts(2, 4),
            vec![ip("1,1"), ip("1,2"), ip("1,3"), ip("2,2")]
        );
        assert_eq!(enumerate_k_parts(0, 5), vec![IntPartition::empty()]);
    }

    #[test]
    fn partition_counts() {
        let p: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }
}
