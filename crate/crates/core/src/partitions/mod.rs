//! Generalized partitions and the merge (refinement) order.
//!
//! A generalized partition is a multiset of nonnegative integer vectors over
//! a generator alphabet; ordinary partitions use only the unit generator.
//! `λ <= μ` when `μ` arises from `λ` by repeatedly replacing two parts by
//! their sum.

mod chains;
mod derived;
mod merge;
mod part;

pub use chains::ll_chains;
pub use derived::{
    add_lt_a, enumerate_k_parts, enumerate_q, partitions_of, s_set, s_set_with_ones,
    ProfileRelation, QMember,
};
pub use merge::{
    elementary_merges, formal_closure_profiles, int_leq, int_merge_closure, leq, merge_closure,
};
pub use part::{
    Generator, GenPartition, IntPartition, MultiplicityProfile, Part, PartitionStats,
};
