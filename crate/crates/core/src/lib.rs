//! Definiteness analysis for graph Laplacians with negative edge weights.
//!
//! A weighted Laplacian `L = E W Eᵀ` is always positive semidefinite when the
//! weights are positive. With negative weights it may not be, and whether it
//! is depends on effective resistance: a single negative edge `(u, v)` keeps
//! `L` PSD exactly when `|w| <= 1 / R_uv(G₊)`, where `G₊` is the positive
//! part of the graph.
//!
//! - [`graph`]: signed graphs, incidence matrices, forest/cycle decomposition
//! - [`paths`]: path-edge sets from biconnected components
//! - [`laplacian`]: Laplacian, cut-space Gram and essential edge Laplacian
//! - [`spectra`]: matrix signatures under an explicit zero tolerance
//! - [`resistance`]: effective resistance along two independent routes
//! - [`definiteness`]: threshold verdicts and the total-resistance test
//! - [`consensus`]: `ẋ = -L x` simulation and cluster prediction
//! - [`cli`]: the `signlap` command-line tool

pub mod cli;
pub mod consensus;
pub mod definiteness;
pub mod error;
pub mod graph;
pub mod io;
pub mod laplacian;
pub mod paths;
pub mod resistance;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{decompose, incidence_matrix, ForestDecomposition, SignedGraph};
pub use spectra::{signature, Signature};
