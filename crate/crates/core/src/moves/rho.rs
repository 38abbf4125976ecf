//! ρ-pairs: two edges of one colour sharing two or three bicoloured cycles.

use std::collections::HashMap;

use crate::graph::{cycle_census, manifold_check, pair_index, Colour, ColouredGraph, CycleCensus, COLOURS};

use super::MoveError;

/// Two `colour`-edges `e = (a, b)`, `f = (c, d)` (each with the smaller end
/// first, `e < f`) lying together on `multiplicity` bicoloured cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RhoPair {
    pub colour: Colour,
    pub e: (usize, usize),
    pub f: (usize, usize),
    pub multiplicity: usize,
}

fn shared(census: &CycleCensus, colour: Colour, a: usize, c: usize) -> usize {
    (0..COLOURS)
        .filter(|&j| j != colour)
        .filter(|&j| {
            let p = pair_index(colour, j);
            census.cycle_of[a][p] == census.cycle_of[c][p]
        })
        .count()
}

/// Every ρ₂- and ρ₃-pair, sorted.
pub fn find_rho_pairs(g: &ColouredGraph) -> Vec<RhoPair> {
    let census = cycle_census(g);
    let mut out = Vec::new();
    for colour in 0..COLOURS {
        let edges: Vec<(usize, usize)> = g.edges(colour).collect();
        for (s, &e) in edges.iter().enumerate() {
            for &f in &edges[s + 1..] {
                let m = shared(&census, colour, e.0, f.0);
                if m >= 2 {
                    out.push(RhoPair { colour, e, f, multiplicity: m });
                }
            }
        }
    }
    out.sort();
    out
}

/// True when no two edges of one colour share two bicoloured cycles.
pub fn is_rigid(g: &ColouredGraph) -> bool {
    let census = cycle_census(g);
    for colour in 0..COLOURS {
        let others: Vec<usize> = (0..COLOURS).filter(|&j| j != colour).map(|j| pair_index(colour, j)).collect();
        // Two edges share two cycles iff they agree on one of the three
        // pairs of coordinates.
        for skip in 0..3 {
            let mut seen = HashMap::new();
            for (a, _) in g.edges(colour) {
                let key: Vec<usize> =
                    (0..3).filter(|&t| t != skip).map(|t| census.cycle_of[a][others[t]]).collect();
                if seen.insert(key, a).is_some() {
                    return false;
                }
            }
        }
    }
    true
}

/// Replaces the `colour`-edges `(a, b)` and `(c, d)` by `(a, d)` and `(c, b)`.
pub fn exchange_edges(g: &ColouredGraph, colour: Colour, e: (usize, usize), f: (usize, usize)) -> ColouredGraph {
    let (a, b) = e;
    let (c, d) = f;
    assert_eq!(g.neighbour(a, colour), b);
    assert_eq!(g.neighbour(c, colour), d);
    let mut adj = g.adjacency().to_vec();
    adj[a][colour] = d;
    adj[d][colour] = a;
    adj[c][colour] = b;
    adj[b][colour] = c;
    ColouredGraph::from_adjacency_unchecked(adj)
}

/// Walking along the `{i,j}`-cycle from `a` over `e` to `b` and onwards,
/// whether `c` is met before `d`.
fn meets_first(g: &ColouredGraph, i: Colour, j: Colour, e: (usize, usize), f: (usize, usize)) -> bool {
    let mut v = e.1;
    let mut colour = j;
    loop {
        if v == f.0 {
            return true;
        }
        if v == f.1 {
            return false;
        }
        v = g.neighbour(v, colour);
        colour = if colour == i { j } else { i };
    }
}

/// Switches a ρ-pair so that each shared cycle splits in two.
///
/// The new edges are chosen so that walking a shared cycle from `a` over `e`
/// the arc from `b` closes up on its own; the choice has to agree on every
/// shared cycle and the result has to be a connected gem.
pub fn switch_rho_pair(g: &ColouredGraph, r: RhoPair) -> Result<ColouredGraph, MoveError> {
    let i = r.colour;
    let valid_edge = |(x, y): (usize, usize)| x < g.order() && y < g.order() && g.neighbour(x, i) == y;
    if !valid_edge(r.e) || !valid_edge(r.f) || r.e == r.f || r.e == (r.f.1, r.f.0) {
        return Err(MoveError::InvalidPair);
    }
    let census = cycle_census(g);
    let shared_pairs: Vec<Colour> = (0..COLOURS)
        .filter(|&j| j != i && census.cycle_of[r.e.0][pair_index(i, j)] == census.cycle_of[r.f.0][pair_index(i, j)])
        .collect();
    if shared_pairs.len() != r.multiplicity || r.multiplicity < 2 {
        return Err(MoveError::InvalidPair);
    }
    let mut choice = None;
    for &j in &shared_pairs {
        let c_first = meets_first(g, i, j, r.e, r.f);
        if choice.is_some_and(|x| x != c_first) {
            return Err(MoveError::InvalidPair);
        }
        choice = Some(c_first);
    }
    // (b, c) and (a, d) when c comes first, otherwise (b, d) and (a, c).
    let f = if choice == Some(true) { r.f } else { (r.f.1, r.f.0) };
    let out = exchange_edges(g, i, r.e, f);
    let before = census.total();
    let after = cycle_census(&out).total();
    let expected = before + 2 * r.multiplicity - 3;
    // On a gem that is not contracted the switch may disconnect the graph,
    // splitting off a summand rather than a handle; such switches are refused.
    if after != expected || !out.is_connected() || !manifold_check(&out).is_gem {
        return Err(MoveError::InvalidPair);
    }
    Ok(out)
}
