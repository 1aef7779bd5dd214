//! Star-operation ideal arithmetic and star-homogeneous factorization.
//!
//! Two computable backends are provided: orders in quadratic fields, with
//! ideals kept as Hermite-normal-form lattices, and Krull monoid models, with
//! ideals kept as divisors. On top of them sit the d, v, t and w closures,
//! detection of star-homogeneous ideals, comaximal factorization, the ideal
//! taxonomy, and a randomized property harness.

mod arith;
pub mod domains;
pub mod error;
pub mod classify;
pub mod homog;
pub mod star;
pub mod verify;

pub use domains::{Domain, DomainSpec, Element, GroupDescriptor, Ideal, Limits, MaxIdeal};
pub use error::{Error, Result};
pub use star::StarOp;
