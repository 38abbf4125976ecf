//! Combinatorial rewritings of coloured graphs.
//!
//! Every operation is a pure function of a graph and a move descriptor.
//! Graphs returned by a move are renumbered compactly: surviving vertices keep
//! their relative order and new vertices are appended.

mod cluster;
mod dipole;
mod gdipole;
mod rho;
mod simplify;
mod sum;

pub use cluster::{eliminate_clusters, find_cluster_vertices, ClusterVertex};
pub use dipole::{cancel_dipole, find_dipoles, insert_dipole, is_proper, Dipole, DipoleSite};
pub use gdipole::{cancel_generalized_dipole, find_generalized_dipoles, GeneralizedDipole};
pub use rho::{exchange_edges, find_rho_pairs, is_rigid, switch_rho_pair, RhoPair};
pub use simplify::{simplify_to_rigid, simplify_to_rigid_traced};
pub use sum::{graph_connected_sum, split_connected_sum, split_connected_sum_all, Split};

use std::fmt;

use crate::graph::{ColouredGraph, COLOURS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("vertices {v} and {w} do not form a proper dipole")]
    NonProperDipole { v: usize, w: usize },
    #[error("invalid dipole insertion site: {0}")]
    InvalidSite(String),
    #[error("edges do not form a switchable rho-pair")]
    InvalidPair,
    #[error("invalid generalized dipole: {0}")]
    InvalidConfiguration(String),
    #[error("graph has no cluster vertex")]
    NoCluster,
}

/// One applied move, for debugging logs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub name: &'static str,
    pub descriptor: String,
    pub before: usize,
    pub after: usize,
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}->{}", self.name, self.descriptor, self.before, self.after)
    }
}

/// Sequence of moves applied to a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveTrace {
    pub records: Vec<MoveRecord>,
}

impl MoveTrace {
    pub(crate) fn push(&mut self, name: &'static str, descriptor: String, before: usize, after: usize) {
        log::trace!("{name} {descriptor} {before}->{after}");
        self.records.push(MoveRecord { name, descriptor, before, after });
    }

    pub fn to_text(&self) -> String {
        self.records.iter().map(|r| format!("{r}\n")).collect()
    }
}

/// Drops the vertices marked in `removed` and renumbers the rest in order.
/// The adjacency rows of survivors must not point at removed vertices.
pub(crate) fn compact(adj: &[[usize; COLOURS]], removed: &[bool]) -> ColouredGraph {
    let mut map = vec![usize::MAX; adj.len()];
    let mut next = 0;
    for v in 0..adj.len() {
        if !removed[v] {
            map[v] = next;
            next += 1;
        }
    }
    let out = (0..adj.len())
        .filter(|&v| !removed[v])
        .map(|v| adj[v].map(|w| map[w]))
        .collect();
    ColouredGraph::from_adjacency_unchecked(out)
}
