//! Classes of discriminants in the Grothendieck ring of varieties.
//!
//! Configuration strata of points and loci of singular divisors are computed
//! as truncated generating series over a free model of symmetric powers,
//! evaluated at powers of the Lefschetz class, and checked against
//! exhaustive finite-field counts.

pub mod error;
pub mod genfun;
pub mod models;
pub mod oracle;
pub mod partitions;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
