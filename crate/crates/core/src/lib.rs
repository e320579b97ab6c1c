//! Sublinear-time estimation of degree-distribution moments.
//!
//! For a graph on `n` vertices the `s`-th moment is `M = sum_v d_v^s` and its
//! normalized form is `M / n`. The estimator in [`estimator`] only touches the
//! graph through an [`oracle::Oracle`]: uniform vertices, degrees, uniform
//! neighbors. Everything else in the crate exists to plan its sample sizes,
//! check it against exact values, or build graphs to run it on.
//!
//! The crate is `no_std` (with `alloc`). IO, the CLI and experiment drivers
//! live in the `degmom` companion crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod analysis;
pub mod degeneracy;
pub mod enumerate;
pub mod estimator;
pub mod generators;
pub mod graph;
pub mod num;
pub mod oracle;
pub mod weights;

pub use degeneracy::{core_number, verify_alpha_moment_bound};
pub use estimator::{
    estimate_once, estimate_planned, geometric_search, EstimateReport, EstimatorConfig, Mode,
};
pub use graph::{DegreeOrderKey, Graph, GraphError, Vertex};
pub use oracle::{Oracle, QueryError, QueryOracle, QueryStats};
pub use weights::{exact_moment, weight_profile, ExactMoment, WeightProfile};

/// Exact non-negative rational used for accuracy and confidence parameters.
///
/// Planning and condition checks compare against thresholds such as
/// `c / (eps^2 * delta)`; keeping `eps` and `delta` exact avoids spurious
/// off-by-one results from values like `1/3`.
pub type Fraction = num_rational::Ratio<u64>;
