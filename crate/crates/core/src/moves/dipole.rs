//! Dipole moves.

use crate::graph::{manifold_check, Colour, ColouredGraph, COLOURS};

use super::{compact, MoveError};

/// Two vertices joined by exactly the colours in `colours` (a bit mask).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dipole {
    pub v: usize,
    pub w: usize,
    pub colours: u8,
}

impl Dipole {
    /// Number of joining edges.
    pub fn size(&self) -> u32 {
        self.colours.count_ones()
    }
}

/// `v` and `w` lie in different components of the graph restricted to the
/// colours not joining them.
pub fn is_proper(g: &ColouredGraph, v: usize, w: usize) -> bool {
    let mask = g.joining_colours(v, w);
    if mask == 0 || mask == 0b1111 {
        return false;
    }
    let rest = 0b1111 & !mask;
    // Walk from v inside the rest-coloured subgraph looking for w.
    let mut seen = vec![false; g.order()];
    let mut stack = vec![v];
    seen[v] = true;
    while let Some(x) = stack.pop() {
        for c in 0..COLOURS {
            if rest & (1 << c) == 0 {
                continue;
            }
            let y = g.neighbour(x, c);
            if y == w {
                return false;
            }
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    true
}

/// All proper dipoles, ordered by `(v, w)` with `v < w`.
pub fn find_dipoles(g: &ColouredGraph) -> Vec<Dipole> {
    let mut out = Vec::new();
    for v in 0..g.order() {
        let mut partners: Vec<usize> = g.adjacency()[v].iter().copied().filter(|&w| w > v).collect();
        partners.sort_unstable();
        partners.dedup();
        for w in partners {
            if is_proper(g, v, w) {
                out.push(Dipole { v, w, colours: g.joining_colours(v, w) });
            }
        }
    }
    out
}

/// Removes the two vertices of a proper dipole and welds the dangling edges.
pub fn cancel_dipole(g: &ColouredGraph, d: Dipole) -> Result<ColouredGraph, MoveError> {
    let (v, w) = (d.v, d.w);
    if v >= g.order() || w >= g.order() || g.joining_colours(v, w) != d.colours || !is_proper(g, v, w) {
        return Err(MoveError::NonProperDipole { v, w });
    }
    let mut adj = g.adjacency().to_vec();
    for c in 0..COLOURS {
        if d.colours & (1 << c) != 0 {
            continue;
        }
        let a = adj[v][c];
        let b = adj[w][c];
        adj[a][c] = b;
        adj[b][c] = a;
    }
    let mut removed = vec![false; g.order()];
    removed[v] = true;
    removed[w] = true;
    Ok(compact(&adj, &removed))
}

/// Where to insert a dipole: the joining colours and, for each remaining
/// colour in increasing order, an edge `(x, y)` of that colour to cut. The
/// new vertex `n` is attached to the `x` ends and `n + 1` to the `y` ends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DipoleSite {
    pub colours: u8,
    pub cuts: Vec<(usize, usize)>,
}

impl DipoleSite {
    /// The 3-dipole subdividing the `c`-edge at `x`.
    pub fn on_edge(g: &ColouredGraph, x: usize, c: Colour) -> Self {
        DipoleSite { colours: 0b1111 & !(1 << c), cuts: vec![(x, g.neighbour(x, c))] }
    }
}

/// Inserts a dipole; the inverse of [`cancel_dipole`]. The site is rejected
/// unless the new pair is a proper dipole and the result is still a gem.
pub fn insert_dipole(g: &ColouredGraph, site: &DipoleSite) -> Result<ColouredGraph, MoveError> {
    let mask = site.colours & 0b1111;
    if mask == 0 || mask == 0b1111 {
        return Err(MoveError::InvalidSite(format!("bad colour mask {:#06b}", site.colours)));
    }
    let rest: Vec<Colour> = (0..COLOURS).filter(|&c| mask & (1 << c) == 0).collect();
    if rest.len() != site.cuts.len() {
        return Err(MoveError::InvalidSite(format!("expected {} cut edges", rest.len())));
    }
    let n = g.order();
    let mut adj = g.adjacency().to_vec();
    adj.push([n + 1; COLOURS]);
    adj.push([n; COLOURS]);
    for (&c, &(x, y)) in rest.iter().zip(&site.cuts) {
        if x >= n || y >= n || g.neighbour(x, c) != y {
            return Err(MoveError::InvalidSite(format!("({x},{y}) is not an edge of colour {c}")));
        }
        adj[x][c] = n;
        adj[n][c] = x;
        adj[y][c] = n + 1;
        adj[n + 1][c] = y;
    }
    let out = ColouredGraph::from_adjacency_unchecked(adj);
    if !is_proper(&out, n, n + 1) {
        return Err(MoveError::InvalidSite("inserted pair is not a proper dipole".into()));
    }
    if !manifold_check(&out).is_gem {
        return Err(MoveError::InvalidSite("result is not a gem".into()));
    }
    Ok(out)
}
