use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

use super::part::{GenPartition, IntPartition, Part};

/// Values that can be summed and compared componentwise.
pub(crate) trait MergeValue: Clone + Ord + Hash {
    fn merged(&self, other: &Self) -> Self;
    fn fits_in(&self, cap: &Self) -> bool;
    /// `self - other`; only called when `other.fits_in(self)`.
    fn reduced(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl MergeValue for u32 {
    fn merged(&self, other: &Self) -> Self {
        self + other
    }
    fn fits_in(&self, cap: &Self) -> bool {
        self <= cap
    }
    fn reduced(&self, other: &Self) -> Self {
        self - other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl MergeValue for Part {
    fn merged(&self, other: &Self) -> Self {
        self.plus(other)
    }
    fn fits_in(&self, cap: &Self) -> bool {
        Part::fits_in(self, cap)
    }
    fn reduced(&self, other: &Self) -> Self {
        self.minus(other).expect("reduced called on a non-fitting part")
    }
    fn is_zero(&self) -> bool {
        Part::is_zero(self)
    }
}

fn merges_of<T: MergeValue>(parts: &[T]) -> BTreeSet<Vec<T>> {
    let mut out = BTreeSet::new();
    for i in 0..parts.len() {
        if i > 0 && parts[i] == parts[i - 1] {
            continue;
        }
        for j in i + 1..parts.len() {
            if j > i + 1 && parts[j] == parts[j - 1] {
                continue;
            }
            let mut next: Vec<T> = Vec::with_capacity(parts.len() - 1);
            for (k, p) in parts.iter().enumerate() {
                if k != i && k != j {
                    next.push(p.clone());
                }
            }
            next.push(parts[i].merged(&parts[j]));
            next.sort();
            out.insert(next);
        }
    }
    out
}

fn closure_of<T: MergeValue>(parts: &[T]) -> Vec<Vec<T>> {
    let mut seen: BTreeSet<Vec<T>> = BTreeSet::new();
    let mut layer: BTreeSet<Vec<T>> = BTreeSet::new();
    layer.insert(parts.to_vec());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for p in &layer {
            for m in merges_of(p) {
                if !seen.contains(&m) && !layer.contains(&m) {
                    next.insert(m);
                }
            }
        }
        seen.extend(layer);
        layer = next;
    }
    seen.into_iter().collect()
}

/// Decides whether the sorted slice `fine` can be grouped into blocks whose
/// sums are the parts of `coarse`.
fn refines<T: MergeValue>(fine: &[T], coarse: &[T]) -> bool {
    if fine.len() < coarse.len() {
        return false;
    }
    let total_fine = fine.iter().fold(None::<T>, |acc, p| {
        Some(acc.map_or_else(|| p.clone(), |a| a.merged(p)))
    });
    let total_coarse = coarse.iter().fold(None::<T>, |acc, p| {
        Some(acc.map_or_else(|| p.clone(), |a| a.merged(p)))
    });
    if total_fine != total_coarse {
        return false;
    }
    // Place the largest fine parts first; they have the fewest options.
    let mut order: Vec<T> = fine.to_vec();
    order.sort_by(|a, b| b.cmp(a));
    let mut caps: Vec<T> = coarse.to_vec();
    place(&order, 0, &mut caps)
}

fn place<T: MergeValue>(items: &[T], idx: usize, caps: &mut [T]) -> bool {
    if idx == items.len() {
        return caps.iter().all(MergeValue::is_zero);
    }
    let item = &items[idx];
    for k in 0..caps.len() {
        // Skip blocks whose remaining capacity equals an earlier one: the
        // search below is symmetric in them.
        if caps[..k].contains(&caps[k]) {
            continue;
        }
        if caps[k].is_zero() || !item.fits_in(&caps[k]) {
            continue;
        }
        let old = caps[k].clone();
        caps[k] = old.reduced(item);
        let done = place(items, idx + 1, caps);
        caps[k] = old;
        if done {
            return true;
        }
    }
    false
}

/// All partitions reachable from `λ` by merging one unordered pair of parts.
pub fn elementary_merges(lambda: &GenPartition) -> BTreeSet<GenPartition> {
    merges_of(lambda.parts())
        .into_iter()
        .map(GenPartition::from_nonzero)
        .collect()
}

type ClosureCache<K> = RwLock<HashMap<K, Arc<Vec<K>>>>;

fn gen_cache() -> &'static ClosureCache<GenPartition> {
    static CACHE: OnceLock<ClosureCache<GenPartition>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn int_cache() -> &'static ClosureCache<IntPartition> {
    static CACHE: OnceLock<ClosureCache<IntPartition>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `{μ : λ ≤ μ}`, including `λ`, in canonical order.
pub fn merge_closure(lambda: &GenPartition) -> Arc<Vec<GenPartition>> {
    if let Some(hit) = gen_cache().read().unwrap().get(lambda) {
        return hit.clone();
    }
    let result: Arc<Vec<GenPartition>> = Arc::new(
        closure_of(lambda.parts())
            .into_iter()
            .map(GenPartition::from_nonzero)
            .collect(),
    );
    gen_cache()
        .write()
        .unwrap()
        .entry(lambda.clone())
        .or_insert(result)
        .clone()
}

/// Merge closure of an integer partition.
pub fn int_merge_closure(lambda: &IntPartition) -> Arc<Vec<IntPartition>> {
    if let Some(hit) = int_cache().read().unwrap().get(lambda) {
        return hit.clone();
    }
    let mut asc = lambda.parts().to_vec();
    asc.reverse();
    let result: Arc<Vec<IntPartition>> = Arc::new(
        closure_of(&asc)
            .into_iter()
            .map(IntPartition::from_unsorted)
            .collect(),
    );
    int_cache()
        .write()
        .unwrap()
        .entry(lambda.clone())
        .or_insert(result)
        .clone()
}

/// `λ ≤ μ` in the refinement order.
pub fn leq(lambda: &GenPartition, mu: &GenPartition) -> bool {
    refines(lambda.parts(), mu.parts())
}

/// `λ ≤ μ` for integer partitions (used for multiplicity profiles).
pub fn int_leq(lambda: &IntPartition, mu: &IntPartition) -> bool {
    refines(lambda.parts(), mu.parts())
}

/// Multiplicity profiles of the merge closure of the formalization with
/// profile `m`, with the number of closure members carrying each profile.
///
/// Members of that closure are exactly the multiset partitions of a multiset
/// with multiplicities `m`; they are enumerated directly as block vectors
/// rather than through pairwise merges.
pub fn formal_closure_profiles(m: &IntPartition) -> Vec<(IntPartition, u64)> {
    let mut remaining: Vec<u32> = m.parts().to_vec();
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut out: HashMap<Vec<u32>, u64> = HashMap::new();
    multiset_partitions(&mut remaining, &mut blocks, &mut out);
    let mut v: Vec<(IntPartition, u64)> = out
        .into_iter()
        .map(|(k, n)| (IntPartition::from_unsorted(k), n))
        .collect();
    v.sort();
    v
}

fn multiset_partitions(
    remaining: &mut [u32],
    blocks: &mut Vec<Vec<u32>>,
    out: &mut HashMap<Vec<u32>, u64>,
) {
    let Some(first) = remaining.iter().position(|&r| r > 0) else {
        let mut profile = Vec::new();
        let mut i = 0;
        while i < blocks.len() {
            let mut j = i;
            while j < blocks.len() && blocks[j] == blocks[i] {
                j += 1;
            }
            profile.push((j - i) as u32);
            i = j;
        }
        profile.sort_unstable_by(|a, b| b.cmp(a));
        *out.entry(profile).or_insert(0) += 1;
        return;
    };
    // Blocks are produced in lexicographically nonincreasing order and each
    // must contain the first remaining element type; this makes every
    // multiset partition appear exactly once with no dead ends.
    let prev = blocks.last().cloned();
    let mut block = vec![0u32; remaining.len()];
    let tight = prev.as_ref().is_some_and(|p| p[..first].iter().all(|&x| x == 0));
    choose_block(remaining, first, first, tight, prev.as_deref(), &mut block, blocks, out);
}

#[allow(clippy::too_many_arguments)]
fn choose_block(
    remaining: &mut [u32],
    first: usize,
    idx: usize,
    tight: bool,
    prev: Option<&[u32]>,
    block: &mut Vec<u32>,
    blocks: &mut Vec<Vec<u32>>,
    out: &mut HashMap<Vec<u32>, u64>,
) {
    if idx == remaining.len() {
        for (r, b) in remaining.iter_mut().zip(block.iter()) {
            *r -= b;
        }
        blocks.push(block.clone());
        multiset_partitions(remaining, blocks, out);
        blocks.pop();
        for (r, b) in remaining.iter_mut().zip(block.iter()) {
            *r += b;
        }
        return;
    }
    let mut upper = remaining[idx];
    if tight {
        upper = upper.min(prev.expect("tight implies a previous block")[idx]);
    }
    let lower = u32::from(idx == first);
    if upper < lower {
        return;
    }
    for v in (lower..=upper).rev() {
        block[idx] = v;
        let still_tight = tight && prev.is_some_and(|p| p[idx] == v);
        choose_block(remaining, first, idx + 1, still_tight, prev, block, blocks, out);
    }
    block[idx] = 0;
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
    fn elementary_merge_examples() {
        let got = elementary_merges(&gp("1,2,3"));
        let want: BTreeSet<_> = ["3,3", "2,4", "1,5"].iter().map(|s| gp(s)).collect();
        assert_eq!(got, want);
        let got = elementary_merges(&gp("a,a"));
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![gp("2a")]);
        assert!(elementary_merges(&gp("1")).is_empty());
    }

    #[test]
    fn closure_examples() {
        let got: BTreeSet<_> = merge_closure(&gp("1,2,3")).iter().cloned().collect();
        let want: BTreeSet<_> = ["1,2,3", "3,3", "2,4", "1,5", "6"]
            .iter()
            .map(|s| gp(s))
            .collect();
        assert_eq!(got, want);
        assert_eq!(merge_closure(&gp("a")).as_slice(), &[gp("a")]);
        assert_eq!(merge_closure(&gp("1,1")).len(), 2);
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&gp("1,2,3"), &gp("3,3")));
        assert!(leq(&gp("3,3"), &gp("6")));
        let lam = gp("x^2,2x+1,y");
        assert!(leq(&lam, &lam));
        assert!(!leq(&gp("1,1,1"), &gp("2,2")));
        assert!(!leq(&gp("3,3"), &gp("1,5")));
        assert!(leq(&gp("a,a,b"), &gp("2a+b")));
        assert!(!leq(&gp("a,a,b"), &gp("a+b,b")));
        assert!(int_leq(&ip("1,1,2"), &ip("2,2")));
        assert!(!int_leq(&ip("3,1"), &ip("2,2")));
    }

    #[test]
    fn closure_agrees_with_leq() {
        let samples = ["1,1,2,3", "1,2,2,2", "1^3,3", "1,1,1,1,2", "2,2,3", "a,a,b,c", "x,x,y,y"];
        for s in samples {
            let lam = gp(s);
            let closure: BTreeSet<_> = merge_closure(&lam).iter().cloned().collect();
            for mu in &closure {
                assert!(leq(&lam, mu), "{lam} <= {mu}");
            }
            // Everything with the same total and fewer parts that is not in the
            // closure must fail leq; check against closures of coarser shapes.
            let total = lam.total();
            for other in merge_closure(&GenPartition::from_nonzero(
                lam.parts().iter().flat_map(unit_split).collect(),
            ))
            .iter()
            {
                if other.total() == total {
                    assert_eq!(closure.contains(other), leq(&lam, other), "{lam} vs {other}");
                }
            }
        }
    }

    fn unit_split(p: &Part) -> Vec<Part> {
        p.terms()
            .iter()
            .flat_map(|(g, c)| std::iter::repeat_n(Part::generator(g.clone(), 1), *c as usize))
            .collect()
    }

    #[test]
    fn formal_profiles_match_merge_closure() {
        for m in ["1", "1,1", "2", "2,1", "1,1,1", "3,1", "2,2", "2,1,1", "1,1,1,1", "3,2", "2,2,1"] {
            let m = ip(m);
            let formal = GenPartition::formal_from_profile(&m);
            let mut counts: HashMap<IntPartition, u64> = HashMap::new();
            for mu in merge_closure(&formal).iter() {
                *counts.entry(mu.multiplicity_profile()).or_insert(0) += 1;
            }
            let mut want: Vec<_> = counts.into_iter().collect();
            want.sort();
            assert_eq!(formal_closure_profiles(&m), want, "profile {m}");
        }
    }

    #[test]
    fn formal_profile_counts_are_bell_numbers() {
        // Set partitions of an n-element set.
        let bell = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140];
        for n in 1..=8 {
            let total: u64 = formal_closure_profiles(&IntPartition::from_unsorted(vec![1; n]))
                .iter()
                .map(|(_, c)| c)
                .sum();
            assert_eq!(total, bell[n]);
        }
    }

    #[test]
    fn int_closure_counts() {
        // Closure of 1^n is every partition of n.
        let p = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
        for n in 1..=8 {
            assert_eq!(int_merge_closure(&IntPartition::from_unsorted(vec![1; n])).len(), p[n]);
        }
    }
}
