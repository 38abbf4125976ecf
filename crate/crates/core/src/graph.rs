//! 4-edge-coloured multigraphs (gems) and the structural queries built on them.
//!
//! A [`ColouredGraph`] stores, for every vertex, its neighbour along each of
//! the four colours `0..4`. For every colour the neighbour map is a
//! fixed-point-free involution, so parallel edges of different colours are
//! allowed but loops are not.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// An edge colour, always in `0..COLOURS`.
pub type Colour = usize;

/// Number of edge colours of a 3-dimensional gem.
pub const COLOURS: usize = 4;

/// The six unordered colour pairs, in lexicographic order.
pub const PAIRS: [(Colour, Colour); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the unordered pair `{i, j}` in [`PAIRS`].
pub fn pair_index(i: Colour, j: Colour) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(a != b && b < COLOURS);
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// The pair complementary to `{i, j}` in `{0,1,2,3}`.
pub fn complement_pair(i: Colour, j: Colour) -> (Colour, Colour) {
    let mut rest = (0..COLOURS).filter(|&c| c != i && c != j);
    let k = rest.next().unwrap();
    let l = rest.next().unwrap();
    (k, l)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} is not a positive even number")]
    BadOrder(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("colour {0} out of range")]
    ColourOutOfRange(usize),
    #[error("loop at vertex {vertex} with colour {colour}")]
    Loop { vertex: usize, colour: Colour },
    #[error("slot (vertex {vertex}, colour {colour}) used twice")]
    SlotClash { vertex: usize, colour: Colour },
    #[error("vertex {vertex} has no edge of colour {colour}")]
    IncompleteColouring { vertex: usize, colour: Colour },
    #[error("colour {colour} is not an involution at vertex {vertex}")]
    NotInvolution { vertex: usize, colour: Colour },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not regular of degree 3")]
    NotRegular,
}

/// A regular 4-edge-coloured graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    adj: Vec<[usize; COLOURS]>,
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColouredGraph({} vertices: {:?})", self.order(), self.adj)
    }
}

impl ColouredGraph {
    /// Builds a graph from an edge list `(v, w, colour)`.
    pub fn from_edges(
        order: usize,
        edges: impl IntoIterator<Item = (usize, usize, Colour)>,
    ) -> Result<Self, GraphError> {
        if order == 0 || order % 2 == 1 {
            return Err(GraphError::BadOrder(order));
        }
        let mut slots = vec![[None::<usize>; COLOURS]; order];
        for (v, w, c) in edges {
            for x in [v, w] {
                if x >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order });
                }
            }
            if c >= COLOURS {
                return Err(GraphError::ColourOutOfRange(c));
            }
            if v == w {
                return Err(GraphError::Loop { vertex: v, colour: c });
            }
            for (x, y) in [(v, w), (w, v)] {
                if slots[x][c].is_some() {
                    return Err(GraphError::SlotClash { vertex: x, colour: c });
                }
                slots[x][c] = Some(y);
            }
        }
        let mut adj = Vec::with_capacity(order);
        for (v, row) in slots.iter().enumerate() {
            let mut out = [0; COLOURS];
            for c in 0..COLOURS {
                out[c] = row[c].ok_or(GraphError::IncompleteColouring { vertex: v, colour: c })?;
            }
            adj.push(out);
        }
        Ok(ColouredGraph { adj })
    }

    /// Builds a graph from its adjacency table, validating the involutions.
    pub fn from_adjacency(adj: Vec<[usize; COLOURS]>) -> Result<Self, GraphError> {
        let order = adj.len();
        if order == 0 || order % 2 == 1 {
            return Err(GraphError::BadOrder(order));
        }
        for (v, row) in adj.iter().enumerate() {
            for (c, &w) in row.iter().enumerate() {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
                if w == v {
                    return Err(GraphError::Loop { vertex: v, colour: c });
                }
                if adj[w][c] != v {
                    return Err(GraphError::NotInvolution { vertex: v, colour: c });
                }
            }
        }
        Ok(ColouredGraph { adj })
    }

    /// Adjacency table without validation; callers guarantee the invariants.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<[usize; COLOURS]>) -> Self {
        debug_assert!(ColouredGraph::from_adjacency(adj.clone()).is_ok(), "{adj:?}");
        ColouredGraph { adj }
    }

    /// The standard order-two gem of the 3-sphere.
    pub fn order_two() -> Self {
        ColouredGraph { adj: vec![[1; COLOURS], [0; COLOURS]] }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbour(&self, v: usize, c: Colour) -> usize {
        self.adj[v][c]
    }

    pub fn adjacency(&self) -> &[[usize; COLOURS]] {
        &self.adj
    }

    /// Edges of colour `c` as `(v, w)` with `v < w`.
    pub fn edges(&self, c: Colour) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter_map(move |(v, row)| (v < row[c]).then_some((v, row[c])))
    }

    /// Colours of the edges joining `v` and `w`, as a bit mask.
    pub fn joining_colours(&self, v: usize, w: usize) -> u8 {
        (0..COLOURS).filter(|&c| self.adj[v][c] == w).fold(0, |m, c| m | 1 << c)
    }

    /// Connected components restricted to the colours in `mask`.
    /// Returns the component id of every vertex and the component count.
    pub fn components(&self, mask: u8) -> (Vec<usize>, usize) {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for c in 0..COLOURS {
                    if mask & (1 << c) != 0 {
                        let w = self.adj[v][c];
                        if comp[w] == usize::MAX {
                            comp[w] = count;
                            stack.push(w);
                        }
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components(0b1111).1 == 1
    }

    /// A 2-colouring of the vertices when the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.order();
        let mut side = vec![None; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Relabels vertices by `vertex_map` (old -> new) and colours by
    /// `colour_map` (old -> new).
    pub fn relabel(&self, vertex_map: &[usize], colour_map: &[Colour; COLOURS]) -> Self {
        let n = self.order();
        let mut adj = vec![[0; COLOURS]; n];
        for v in 0..n {
            for c in 0..COLOURS {
                adj[vertex_map[v]][colour_map[c]] = vertex_map[self.adj[v][c]];
            }
        }
        ColouredGraph::from_adjacency_unchecked(adj)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row.map(|w| w + shift)));
        ColouredGraph { adj }
    }

    /// Serializes in the plain text graph format: `order N` followed by one
    /// line per colour listing the neighbour of every vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.order());
        for c in 0..COLOURS {
            let line: Vec<String> = self.adj.iter().map(|row| row[c].to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format written by [`ColouredGraph::to_text`].
    pub fn from_text(text: &str) -> Result<Self, TextError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or(TextError::new(1, 1, "empty graph record"))?;
        let order: usize = header
            .strip_prefix("order")
            .map(str::trim)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| TextError::new(ln, 1, "expected `order N`"))?;
        let mut adj = vec![[0; COLOURS]; order];
        for c in 0..COLOURS {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| TextError::new(ln + c + 1, 1, format!("missing line for colour {c}")))?;
            let mut count = 0;
            let mut col = 1;
            for tok in line.split_whitespace() {
                if count >= order {
                    return Err(TextError::new(ln, col, "too many entries"));
                }
                adj[count][c] = tok
                    .parse()
                    .map_err(|_| TextError::new(ln, col, format!("bad vertex index `{tok}`")))?;
                count += 1;
                col += tok.len() + 1;
            }
            if count != order {
                return Err(TextError::new(ln, col, format!("expected {order} entries, found {count}")));
            }
        }
        ColouredGraph::from_adjacency(adj).map_err(|e| TextError::new(ln, 1, e.to_string()))
    }
}

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct TextError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl TextError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        TextError { line, column, message: message.into() }
    }
}

/// The bicoloured cycles of a graph, per colour pair.
#[derive(Debug, Clone)]
pub struct CycleCensus {
    /// `cycles[pair_index(i, j)]` lists the `{i,j}`-cycles as vertex sequences.
    pub cycles: [Vec<Vec<usize>>; 6],
    /// `cycle_of[v][pair]` is the index of the cycle through `v`.
    pub cycle_of: Vec<[usize; 6]>,
}

impl CycleCensus {
    pub fn count(&self, i: Colour, j: Colour) -> usize {
        self.cycles[pair_index(i, j)].len()
    }

    /// Total number of bicoloured cycles.
    pub fn total(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn cycle_through(&self, v: usize, i: Colour, j: Colour) -> &[usize] {
        let p = pair_index(i, j);
        &self.cycles[p][self.cycle_of[v][p]]
    }
}

/// Bicoloured cycles of a closed graph.
pub fn cycle_census(g: &ColouredGraph) -> CycleCensus {
    let n = g.order();
    let mut cycles: [Vec<Vec<usize>>; 6] = Default::default();
    let mut cycle_of = vec![[usize::MAX; 6]; n];
    for (p, &(i, j)) in PAIRS.iter().enumerate() {
        for s in 0..n {
            if cycle_of[s][p] != usize::MAX {
                continue;
            }
            let id = cycles[p].len();
            let mut cyc = Vec::new();
            let mut v = s;
            let mut colour = i;
            loop {
                cycle_of[v][p] = id;
                cyc.push(v);
                v = g.neighbour(v, colour);
                colour = if colour == i { j } else { i };
                if v == s && colour == i {
                    break;
                }
            }
            cycles[p].push(cyc);
        }
    }
    CycleCensus { cycles, cycle_of }
}

/// Connected components of each residue `Γ_î`.
#[derive(Debug, Clone)]
pub struct ResidueCensus {
    /// `counts[i]` is the number of components of the graph without colour `i`.
    pub counts: [usize; COLOURS],
    /// `component_of[i][v]` is the component of `v` in that residue.
    pub component_of: [Vec<usize>; COLOURS],
}

impl ResidueCensus {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

pub fn residue_census(g: &ColouredGraph) -> ResidueCensus {
    let mut counts = [0; COLOURS];
    let mut component_of: [Vec<usize>; COLOURS] = Default::default();
    for i in 0..COLOURS {
        let (comp, count) = g.components(0b1111 & !(1 << i));
        counts[i] = count;
        component_of[i] = comp;
    }
    ResidueCensus { counts, component_of }
}

/// Euler characteristic of the dual pseudocomplex `K(Γ)`:
/// vertices are residues, edges bicoloured cycles, triangles graph edges and
/// tetrahedra graph vertices.
pub fn euler_characteristic(g: &ColouredGraph) -> i64 {
    let residues = residue_census(g).total() as i64;
    let cycles = cycle_census(g).total() as i64;
    let n = g.order() as i64;
    residues - cycles + 2 * n - n
}

/// Outcome of [`manifold_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManifoldCheck {
    /// Every residue component is a 2-sphere.
    pub is_gem: bool,
    /// A connected gem with one component per residue.
    pub is_crystallization: bool,
    pub bipartite: bool,
}

/// Checks every 3-residue against the sphere criterion: a connected
/// 3-coloured component with `2q` vertices is planar iff it has `q + 2`
/// bicoloured cycles.
pub fn manifold_check(g: &ColouredGraph) -> ManifoldCheck {
    let cycles = cycle_census(g);
    let residues = residue_census(g);
    let mut is_gem = true;
    for i in 0..COLOURS {
        let count = residues.counts[i];
        let mut size = vec![0usize; count];
        let mut faces = vec![0usize; count];
        for &comp in &residues.component_of[i] {
            size[comp] += 1;
        }
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            if a == i || b == i {
                continue;
            }
            for cyc in &cycles.cycles[p] {
                faces[residues.component_of[i][cyc[0]]] += 1;
            }
        }
        if size.iter().zip(&faces).any(|(&s, &f)| 2 * f != s + 4) {
            is_gem = false;
        }
    }
    let connected = g.is_connected();
    let contracted = residues.counts.iter().all(|&c| c == 1);
    ManifoldCheck {
        is_gem,
        is_crystallization: is_gem && connected && contracted,
        bipartite: g.is_bipartite(),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn four_vertex_s3() -> ColouredGraph {
        // 1-dipole of colour 3 inserted into the order-two gem.
        ColouredGraph::from_edges(
            4,
            [(0, 1, 0), (0, 1, 1), (0, 1, 2), (2, 3, 0), (2, 3, 1), (2, 3, 2), (0, 2, 3), (1, 3, 3)],
        )
        .unwrap()
    }

    #[test]
    fn build_order_two() {
        let g = ColouredGraph::from_edges(2, (0..4).map(|c| (0, 1, c))).unwrap();
        assert_eq!(g, ColouredGraph::order_two());
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            ColouredGraph::from_edges(2, (0..3).map(|c| (0, 1, c))),
            Err(GraphError::IncompleteColouring { vertex: 0, colour: 3 })
        );
        assert_eq!(
            ColouredGraph::from_edges(4, [(0, 0, 1)]),
            Err(GraphError::Loop { vertex: 0, colour: 1 })
        );
        assert_eq!(
            ColouredGraph::from_edges(4, [(0, 1, 1), (0, 2, 1)]),
            Err(GraphError::SlotClash { vertex: 0, colour: 1 })
        );
        assert_eq!(ColouredGraph::from_edges(3, []), Err(GraphError::BadOrder(3)));
    }

    #[test]
    fn census_of_order_two() {
        let g = ColouredGraph::order_two();
        let cc = cycle_census(&g);
        for &(i, j) in &PAIRS {
            assert_eq!(cc.count(i, j), 1);
        }
        assert_eq!(residue_census(&g).counts, [1; 4]);
        assert_eq!(euler_characteristic(&g), 0);
        let mc = manifold_check(&g);
        assert!(mc.is_gem && mc.is_crystallization && mc.bipartite);
    }

    #[test]
    fn disjoint_union_counts() {
        let g = ColouredGraph::order_two().disjoint_union(&ColouredGraph::order_two());
        assert_eq!(residue_census(&g).counts, [2; 4]);
        assert_eq!(euler_characteristic(&g), 0);
        let mc = manifold_check(&g);
        assert!(mc.is_gem && !mc.is_crystallization);
    }

    #[test]
    fn non_contracted_gem() {
        let g = four_vertex_s3();
        assert_eq!(residue_census(&g).counts, [1, 1, 1, 2]);
        let mc = manifold_check(&g);
        assert!(mc.is_gem && !mc.is_crystallization && mc.bipartite);
        assert_eq!(euler_characteristic(&g), 0);
    }

    #[test]
    fn toroidal_residue_is_rejected() {
        // Colours 0,1,2 form K_{3,3}-like torus: 6 vertices, 3 bicoloured cycles
        // (one per pair) so sum = 3 < q + 2 = 5.
        let mut edges = vec![];
        // {0,1}: one hexagon 0-1-2-3-4-5
        for k in 0..3 {
            edges.push((2 * k, 2 * k + 1, 0));
            edges.push((2 * k + 1, (2 * k + 2) % 6, 1));
        }
        // colour 2 joins antipodes
        for k in 0..3 {
            edges.push((k, k + 3, 2));
        }
        // colour 3 parallels colour 2
        for k in 0..3 {
            edges.push((k, k + 3, 3));
        }
        let g = ColouredGraph::from_edges(6, edges).unwrap();
        let mc = manifold_check(&g);
        assert!(!mc.is_gem);
        assert!(!mc.is_crystallization);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let g = four_vertex_s3();
        let text = g.to_text();
        assert_eq!(ColouredGraph::from_text(&text).unwrap(), g);
        let truncated: String = text.lines().take(3).collect::<Vec<_>>().join("\n");
        let err = ColouredGraph::from_text(&truncated).unwrap_err();
        assert!(err.message.contains("missing line"), "{err}");
        let bad = "order 2\n1 0\n1 0\n1 x\n1 0\n";
        let err = ColouredGraph::from_text(bad).unwrap_err();
        assert_eq!((err.line, err.column), (4, 3));
    }

    #[test]
    fn cycles_partition_vertices() {
        let g = four_vertex_s3();
        let cc = cycle_census(&g);
        for p in 0..6 {
            let total: usize = cc.cycles[p].iter().map(Vec::len).sum();
            assert_eq!(total, g.order());
        }
    }
}
