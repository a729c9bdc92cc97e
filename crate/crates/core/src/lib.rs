//! Exact-arithmetic feasibility analysis of spherical 3-distance 5-design
//! parameters (n, M): cardinality bounds, divisibility, inner-product cubics,
//! distance distributions, derived codes, and ground-truth design fixtures.

pub mod derived;
pub mod design;
pub mod exact;
pub mod feasibility;
pub mod ortho;
pub mod report;

pub use exact::{Rat, RatInterval};
