//! Decides and constructs metric realizations of 3-uniform hypergraphs.
//!
//! A finite metric space induces a 3-uniform hypergraph on its points whose
//! edges are the collinear triples (one point exactly between the other
//! two). This crate provides:
//!
//! * hypergraph and exact-rational metric types with validation,
//!   sparsity predicates and betweenness extraction;
//! * constructive realizers for hypergraphs that are sparse enough, built
//!   from a three-valued distance pattern plus dense-core stitching;
//! * a complete branch-and-certify metricity oracle for small instances;
//! * a computationally derived catalog of the dense cores that sparse
//!   hypergraphs can contain;
//! * generators for named and random test instances, and text formats for
//!   hypergraphs and metrics.
//!
//! All distance arithmetic is exact rational; collinearity is an equality
//! and floating point would corrupt it. Floats appear only as a steering
//! heuristic inside the oracle, where every conclusion they suggest is
//! re-proved with exact arithmetic before being trusted.

pub mod canon;
pub mod catalog;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod lp;
pub mod metric;
pub mod oracle;
pub mod realize;
pub mod search;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use hypergraph::{Hypergraph, HypergraphError, SparsityParams, Triple};
pub use metric::{FiniteMetric, MetricError, Rat};
pub use oracle::{decide_metric, MetricityVerdict, OracleBudget};
pub use realize::{realize_62sparse, realize_f0, Realization};
