use super::merge::{leq, merge_closure};
use super::part::GenPartition;

/// All chains `λ = μ₀ ≪ μ₁ ≪ … ≪ μ_k` with `k <= max_len`, where `μ ≪ μ'`
/// means `f(μ) < μ'` strictly.
///
/// The successors of `μ` are the members of the closure of `f(μ)` other than
/// `f(μ)` itself; each step strictly lowers the part count.
pub fn ll_chains(lambda: &GenPartition, max_len: usize) -> Vec<Vec<GenPartition>> {
    let mut out = Vec::new();
    let mut chain = vec![lambda.clone()];
    extend(&mut chain, max_len, &mut out);
    out
}

fn extend(chain: &mut Vec<GenPartition>, max_len: usize, out: &mut Vec<Vec<GenPartition>>) {
    out.push(chain.clone());
    if chain.len() > max_len {
        return;
    }
    let formal = chain.last().expect("chains are nonempty").formalize();
    for next in merge_closure(&formal).iter() {
        if *next == formal {
            continue;
        }
        debug_assert!(leq(&formal, next));
        chain.push(next.clone());
        extend(chain, max_len, out);
        chain.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GenPartition {
        s.parse().unwrap()
    }

    #[test]
    fn chains_of_pair() {
        let chains = ll_chains(&gp("1,1"), 2);
        assert_eq!(chains.len(), 2);
        assert_eq!(chains[1], vec![gp("1,1"), gp("2a1")]);
    }

    #[test]
    fn single_part_has_trivial_chain() {
        assert_eq!(ll_chains(&gp("5"), 3), vec![vec![gp("5")]]);
    }

    #[test]
    fn triple_has_four_chains() {
        let chains = ll_chains(&gp("1,1,1"), 3);
        assert_eq!(chains.len(), 4);
        let lengths: Vec<usize> = chains.iter().map(|c| c.len() - 1).collect();
        let mut sorted = lengths.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 1, 2]);
    }

    #[test]
    fn max_len_truncates() {
        assert_eq!(ll_chains(&gp("1,1,1"), 0).len(), 1);
    }
}
