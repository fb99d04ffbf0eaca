//! Brute-force ground truth, independent of the generating-function code.
//!
//! Finite fields are table driven, divisors on the affine and projective
//! line are enumerated exhaustively, and their multiplicity patterns come
//! from squarefree decomposition (with p-th roots in characteristic p), so
//! no factorization into irreducibles is needed. Every enumeration is
//! bounded by a state guard.

mod counts;
mod field;
mod integers;
mod poly;

pub use counts::{
    check_guard, count_hyper_s, count_sym_s, count_w_lambda, exp_formula_sym_counts,
    tabulate_sym_s, tabulate_w_counts, Curve, HyperCount, DEFAULT_GUARD, MAX_GUARD,
};
pub use field::{FiniteField, MAX_FIELD_SIZE};
pub use integers::{
    integer_nu_power_density, integer_power_density, integer_power_prediction, primes_up_to,
    riemann_zeta, PowerPrediction, PRIME_SUM_BOUND,
};
pub use poly::{for_each_monic, multiplicity_pattern, squarefree_decomposition, Poly};
