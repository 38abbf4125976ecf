//! Generalized dipoles.
//!
//! An `(m, n)`-generalized dipole of type `{i, j}` at `v̄` is an `{i,j}`-cycle
//!
//! ```text
//! v̄ -i- a1 -j- a2 -i- ... -i- am -j- v̄
//! ```
//!
//! and a `{k,l}`-cycle `v̄ -k- b1 -l- b2 -k- ... -k- bn -l- v̄` meeting only
//! in `v̄`. Cancelling it replaces these `m + n + 1` vertices by an `m × n`
//! grid `(r, c)`: rows are joined alternately by `j` (between rows 0 and 1)
//! and `i`, columns alternately by `l` and `k`. Row `r` takes over the outer
//! `k`- and `l`-edges of `a(r+1)` at its two ends, column `c` the outer `i`-
//! and `j`-edges of `b(c+1)`. For `m = 1` this is the cancellation of the
//! 2-dipole `(v̄, a1)`; for `m = n = 3` the centre of the grid is a cluster
//! vertex.

use crate::graph::{cycle_census, manifold_check, pair_index, Colour, ColouredGraph, COLOURS};

use super::{compact, MoveError};

/// See the module documentation for the naming of the cycle vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedDipole {
    /// `(i, j)` with `i < j`.
    pub colours: (Colour, Colour),
    pub apex: usize,
    pub m: usize,
    pub n: usize,
    /// `a1 .. am`.
    pub a: Vec<usize>,
    /// `b1 .. bn`.
    pub b: Vec<usize>,
}

impl GeneralizedDipole {
    /// `(k, l)` with `k < l`, the complementary pair.
    pub fn other_colours(&self) -> (Colour, Colour) {
        crate::graph::complement_pair(self.colours.0, self.colours.1)
    }
}

/// Walks the `{x,y}`-cycle from `v`, starting with colour `x`, and returns
/// the vertices after `v`.
fn walk(g: &ColouredGraph, v: usize, x: Colour, y: Colour) -> Vec<usize> {
    let mut out = Vec::new();
    let mut u = g.neighbour(v, x);
    let mut colour = y;
    while u != v {
        out.push(u);
        u = g.neighbour(u, colour);
        colour = if colour == x { y } else { x };
    }
    out
}

/// All generalized dipoles of type `{i, j}` with `m <= max_m`, `n <= max_n`,
/// ordered by apex.
pub fn find_generalized_dipoles(
    g: &ColouredGraph,
    colours: (Colour, Colour),
    max_m: usize,
    max_n: usize,
) -> Vec<GeneralizedDipole> {
    let (i, j) = if colours.0 < colours.1 { colours } else { (colours.1, colours.0) };
    assert!(i != j && j < COLOURS);
    let (k, l) = crate::graph::complement_pair(i, j);
    let census = cycle_census(g);
    let (pij, pkl) = (pair_index(i, j), pair_index(k, l));
    let mut out = Vec::new();
    for v in 0..g.order() {
        let m = census.cycles[pij][census.cycle_of[v][pij]].len() - 1;
        let n = census.cycles[pkl][census.cycle_of[v][pkl]].len() - 1;
        if m > max_m || n > max_n {
            continue;
        }
        let a = walk(g, v, i, j);
        let b = walk(g, v, k, l);
        let meet = a.iter().any(|&x| census.cycle_of[x][pkl] == census.cycle_of[v][pkl]);
        if meet {
            continue;
        }
        out.push(GeneralizedDipole { colours: (i, j), apex: v, m, n, a, b });
    }
    out
}

fn validate(g: &ColouredGraph, gd: &GeneralizedDipole) -> Result<(), MoveError> {
    let bad = |s: &str| Err(MoveError::InvalidConfiguration(s.to_string()));
    let (i, j) = gd.colours;
    if i >= j || j >= COLOURS || gd.apex >= g.order() {
        return bad("bad colours or apex");
    }
    let (k, l) = gd.other_colours();
    let a = walk(g, gd.apex, i, j);
    let b = walk(g, gd.apex, k, l);
    if a != gd.a || b != gd.b || a.len() != gd.m || b.len() != gd.n {
        return bad("cycles do not match the graph");
    }
    if a.iter().any(|x| b.contains(x)) {
        return bad("the two cycles meet outside the apex");
    }
    Ok(())
}

/// Replaces the two cycles of `gd` by the `m × n` grid.
pub fn cancel_generalized_dipole(g: &ColouredGraph, gd: &GeneralizedDipole) -> Result<ColouredGraph, MoveError> {
    validate(g, gd)?;
    let (i, j) = gd.colours;
    let (k, l) = gd.other_colours();
    let (m, n) = (gd.m, gd.n);
    let old = g.order();
    let cell = |r: usize, c: usize| old + r * n + c;
    // Grid slot taking over the outer `colour`-edge of a cross vertex.
    let mut slot = vec![[usize::MAX; COLOURS]; old];
    for (t, &x) in gd.a.iter().enumerate() {
        slot[x][k] = cell(t, 0);
        slot[x][l] = cell(t, n - 1);
    }
    for (s, &x) in gd.b.iter().enumerate() {
        slot[x][i] = cell(0, s);
        slot[x][j] = cell(m - 1, s);
    }
    let mut adj = g.adjacency().to_vec();
    adj.resize(old + m * n, [usize::MAX; COLOURS]);
    for r in 0..m {
        for c in 0..n {
            let v = cell(r, c);
            if r + 1 < m {
                let colour = if r % 2 == 0 { j } else { i };
                adj[v][colour] = cell(r + 1, c);
                adj[cell(r + 1, c)][colour] = v;
            }
            if c + 1 < n {
                let colour = if c % 2 == 0 { l } else { k };
                adj[v][colour] = cell(r, c + 1);
                adj[cell(r, c + 1)][colour] = v;
            }
        }
    }
    for x in gd.a.iter().chain(&gd.b) {
        for c in 0..COLOURS {
            let s = slot[*x][c];
            if s == usize::MAX {
                continue;
            }
            let y = g.neighbour(*x, c);
            let target = if slot[y][c] != usize::MAX { slot[y][c] } else { y };
            adj[s][c] = target;
            if target == y {
                adj[y][c] = s;
            }
        }
    }
    let mut removed = vec![false; adj.len()];
    removed[gd.apex] = true;
    for &x in gd.a.iter().chain(&gd.b) {
        removed[x] = true;
    }
    let out = compact(&adj, &removed);
    if !manifold_check(&out).is_gem {
        return Err(MoveError::InvalidConfiguration("result is not a gem".into()));
    }
    Ok(out)
}

/// The inverse of a `(3, 3)` cancellation: `grid[r][c]` are the nine grid
/// vertices, joined vertically by `j` then `i` and horizontally by `l` then
/// `k`. Returns the graph with the grid replaced by the two 4-cycles.
pub(crate) fn uncancel_grid(
    g: &ColouredGraph,
    grid: &[[usize; 3]; 3],
    (i, j, k, l): (Colour, Colour, Colour, Colour),
) -> Result<ColouredGraph, MoveError> {
    let bad = |s: &str| Err(MoveError::InvalidConfiguration(s.to_string()));
    for r in 0..3 {
        for c in 0..3 {
            let v = grid[r][c];
            if r < 2 && g.neighbour(v, if r == 0 { j } else { i }) != grid[r + 1][c] {
                return bad("grid column mismatch");
            }
            if c < 2 && g.neighbour(v, if c == 0 { l } else { k }) != grid[r][c + 1] {
                return bad("grid row mismatch");
            }
        }
    }
    let old = g.order();
    // New vertices: apex, a1..a3, b1..b3.
    let apex = old;
    let a = [old + 1, old + 2, old + 3];
    let b = [old + 4, old + 5, old + 6];
    let mut adj = g.adjacency().to_vec();
    adj.resize(old + 7, [usize::MAX; COLOURS]);
    let join = |adj: &mut Vec<[usize; COLOURS]>, x: usize, c: Colour, y: usize| {
        adj[x][c] = y;
        adj[y][c] = x;
    };
    join(&mut adj, apex, i, a[0]);
    join(&mut adj, a[0], j, a[1]);
    join(&mut adj, a[1], i, a[2]);
    join(&mut adj, a[2], j, apex);
    join(&mut adj, apex, k, b[0]);
    join(&mut adj, b[0], l, b[1]);
    join(&mut adj, b[1], k, b[2]);
    join(&mut adj, b[2], l, apex);
    // Cross vertex taking over the outer `colour`-edge of a grid vertex.
    let mut slot = vec![[usize::MAX; COLOURS]; old];
    for t in 0..3 {
        slot[grid[t][0]][k] = a[t];
        slot[grid[t][2]][l] = a[t];
        slot[grid[0][t]][i] = b[t];
        slot[grid[2][t]][j] = b[t];
    }
    for row in grid {
        for &x in row {
            for c in 0..COLOURS {
                let s = slot[x][c];
                if s == usize::MAX {
                    continue;
                }
                let y = g.neighbour(x, c);
                let target = if slot[y][c] != usize::MAX { slot[y][c] } else { y };
                adj[s][c] = target;
                if target == y {
                    adj[y][c] = s;
                }
            }
        }
    }
    let mut removed = vec![false; adj.len()];
    for row in grid {
        for &x in row {
            removed[x] = true;
        }
    }
    let out = compact(&adj, &removed);
    if !manifold_check(&out).is_gem {
        return bad("result is not a gem");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_has_none() {
        let g = ColouredGraph::order_two();
        for (i, j) in crate::graph::PAIRS {
            assert!(find_generalized_dipoles(&g, (i, j), 9, 9).is_empty());
        }
    }

    #[test]
    fn one_one_dipole_is_two_dipole_cancellation() {
        let g = crate::graph::tests::four_vertex_s3();
        // In the 1-dipole insertion every vertex is joined to one other by
        // three colours, so only length-2 cycles appear.
        for (i, j) in crate::graph::PAIRS {
            for gd in find_generalized_dipoles(&g, (i, j), 1, 9) {
                let h = cancel_generalized_dipole(&g, &gd).unwrap();
                assert_eq!(h.order(), g.order() + gd.m * gd.n - gd.m - gd.n - 1);
            }
        }
    }
}
