//! Graph connected sums and their detection.

use crate::graph::{ColouredGraph, COLOURS};

/// Deletes `v1` and `v2` and joins, colour by colour, the two dangling
/// edges. Vertices of `g1` come first, then those of `g2`, both in their
/// original order.
pub fn graph_connected_sum(g1: &ColouredGraph, v1: usize, g2: &ColouredGraph, v2: usize) -> ColouredGraph {
    let (n1, n2) = (g1.order(), g2.order());
    assert!(v1 < n1 && v2 < n2);
    let map1 = |x: usize| if x < v1 { x } else { x - 1 };
    let map2 = |x: usize| n1 - 1 + if x < v2 { x } else { x - 1 };
    let mut adj = Vec::with_capacity(n1 + n2 - 2);
    for x in (0..n1).filter(|&x| x != v1) {
        let mut row = [0; COLOURS];
        for c in 0..COLOURS {
            let y = g1.neighbour(x, c);
            row[c] = if y == v1 { map2(g2.neighbour(v2, c)) } else { map1(y) };
        }
        adj.push(row);
    }
    for x in (0..n2).filter(|&x| x != v2) {
        let mut row = [0; COLOURS];
        for c in 0..COLOURS {
            let y = g2.neighbour(x, c);
            row[c] = if y == v2 { map1(g1.neighbour(v1, c)) } else { map2(y) };
        }
        adj.push(row);
    }
    ColouredGraph::from_adjacency_unchecked(adj)
}

/// A decomposition along four edges, one of each colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    /// The cut edges, `edges[c]` of colour `c`, written from the side of
    /// `left`.
    pub edges: [(usize, usize); COLOURS],
    /// The component containing the smallest vertex, capped by a new last
    /// vertex.
    pub left: ColouredGraph,
    pub right: ColouredGraph,
}

fn cap(g: &ColouredGraph, side: &[bool], keep: bool) -> ColouredGraph {
    let mut index = vec![usize::MAX; g.order()];
    let mut next = 0;
    for v in 0..g.order() {
        if side[v] == keep {
            index[v] = next;
            next += 1;
        }
    }
    let cap = next;
    let mut adj = Vec::with_capacity(next + 1);
    let mut cap_row = [0; COLOURS];
    for v in (0..g.order()).filter(|&v| side[v] == keep) {
        let mut row = [0; COLOURS];
        for c in 0..COLOURS {
            let w = g.neighbour(v, c);
            if side[w] == keep {
                row[c] = index[w];
            } else {
                row[c] = cap;
                cap_row[c] = index[v];
            }
        }
        adj.push(row);
    }
    adj.push(cap_row);
    ColouredGraph::from_adjacency_unchecked(adj)
}

/// Every non-trivial split: four edges, one per colour, whose removal
/// leaves two components of at least three vertices each.
pub fn split_connected_sum_all(g: &ColouredGraph) -> Vec<Split> {
    let n = g.order();
    let edges: Vec<Vec<(usize, usize)>> = (0..COLOURS).map(|c| g.edges(c).collect()).collect();
    let mut out = Vec::new();
    let mut side = vec![false; n];
    let mut stack = Vec::new();
    for &e0 in &edges[0] {
        for &e1 in &edges[1] {
            for &e2 in &edges[2] {
                for &e3 in &edges[3] {
                    let cut = [e0, e1, e2, e3];
                    let is_cut = |v: usize, c: usize| {
                        let (x, y) = cut[c];
                        v == x || v == y
                    };
                    // Flood from vertex 0 without crossing the cut.
                    side.fill(false);
                    side[0] = true;
                    stack.clear();
                    stack.push(0);
                    let mut size = 1;
                    while let Some(v) = stack.pop() {
                        for c in 0..COLOURS {
                            if is_cut(v, c) {
                                continue;
                            }
                            let w = g.neighbour(v, c);
                            if !side[w] {
                                side[w] = true;
                                size += 1;
                                stack.push(w);
                            }
                        }
                    }
                    if size < 3 || n - size < 3 {
                        continue;
                    }
                    // The other side must be connected as well.
                    let start = (0..n).find(|&v| !side[v]).unwrap();
                    let mut other = vec![false; n];
                    other[start] = true;
                    stack.push(start);
                    let mut size2 = 1;
                    while let Some(v) = stack.pop() {
                        for c in 0..COLOURS {
                            if is_cut(v, c) {
                                continue;
                            }
                            let w = g.neighbour(v, c);
                            if !other[w] {
                                other[w] = true;
                                size2 += 1;
                                stack.push(w);
                            }
                        }
                    }
                    if size + size2 != n || cut.iter().any(|&(x, y)| side[x] == side[y]) {
                        continue;
                    }
                    let oriented = cut.map(|(x, y)| if side[x] { (x, y) } else { (y, x) });
                    out.push(Split { edges: oriented, left: cap(g, &side, true), right: cap(g, &side, false) });
                }
            }
        }
    }
    out
}

/// The most balanced split, if any (ties broken by the order of the cut
/// edges).
pub fn split_connected_sum(g: &ColouredGraph) -> Option<(ColouredGraph, ColouredGraph)> {
    split_connected_sum_all(g)
        .into_iter()
        .min_by_key(|s| s.left.order().abs_diff(s.right.order()))
        .map(|s| (s.left, s.right))
}
