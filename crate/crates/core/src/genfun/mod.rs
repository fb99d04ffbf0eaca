//! Generating functions of configuration strata and hypersurface densities.
//!
//! Everything is computed first in the free model (classes are polynomials
//! in `L` and the symmetric-power generators `S_i`) and then pushed through
//! a [`Specializer`](crate::models::Specializer), so a single code path
//! serves motivic, point-count, Euler and Hodge–Deligne answers.
//!
//! Two gradings of `t` coexist: configuration series count points with
//! multiplicity, while the alternating sums over `Q` used for hypersurfaces
//! count points without multiplicity. [`TruncSeries`](crate::ring::TruncSeries)
//! tags each series with its grading and refuses to mix them.

mod classes;
mod config;
mod limits;

pub use classes::{
    ordered_labels, star_power, w_class, MAX_Q_ORDER, w_profile, w_value, wbar_class, zeta_s_series,
    zeta_series, zinv_lambda,
};
pub use config::{k_lt_a, k_lt_a_nu, kbar_abr_closed, kbar_nu, sym_s_series};
pub use limits::{
    distinct_nu_limit, evaluate, hyper_density, hyper_ordered_density, multi_point_density,
    stable_limit, zeta_value, HypersurfaceDensity, LimitReport, Normalization, MAX_LIMIT_ORDER,
    Q_CHECK_ORDER,
};
