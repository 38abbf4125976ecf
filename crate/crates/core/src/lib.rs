//! Catalogues of rigid crystallizations of closed 3-manifolds.
//!
//! A crystallization is a 4-edge-coloured graph whose dual pseudocomplex
//! triangulates a closed 3-manifold with one vertex per colour. This crate
//! enumerates the rigid ones up to a vertex budget, rewrites them with
//! dipole-type moves, sorts them into classes of graphs representing the same
//! manifold, and checks everything against integral homology.

// Adjacency rows are indexed by colour throughout; index loops read best.
#![allow(clippy::needless_range_loop)]

pub mod catalog_io;
pub mod classifier;
pub mod code;
pub mod generator;
pub mod graph;
pub mod invariants;
pub mod moves;
pub mod partial;
pub mod surface;

pub use code::{canonical_code, code_of, Code};
pub use graph::{manifold_check, ColouredGraph, GraphError, ManifoldCheck, TextError};
pub use invariants::{first_homology, homology, HomologyResult};
