//! Graphical designs (quadrature rules) on positively weighted graphs.
//!
//! A positively weighted k-design is a nonnegative vertex weighting that
//! averages the first `k` Laplacian eigenspaces exactly. Minimal designs are
//! the complements of facets of an eigenpolytope of the same graph, which
//! this crate uses both ways: to enumerate designs, and to build graphs whose
//! eigenpolytopes realize a prescribed polytope.
//!
//! Module map:
//! - [`spectral`]: graphs, Laplacians, grouped eigendecomposition, orderings.
//! - [`polytope`]: vector configurations, facets, Gale dual bases.
//! - [`designs`]: verification, LP search and enumeration of minimal designs.
//! - [`constructors`]: graphs from partitioned bases and from polytopes,
//!   barbell graphs.
//! - [`io`]: JSON file formats and reports.
//! - [`cli`]: the `graphdesign` command-line tool.

pub mod cli;
pub mod constructors;
pub mod designs;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod spectral;

pub use error::{Error, Result};
