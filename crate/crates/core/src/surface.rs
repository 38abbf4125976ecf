//! 3-coloured graphs: the residues of a gem and the seeds of generation.

use crate::code::canonical_numbers;
use crate::graph::GraphError;

/// A regular 3-edge-coloured graph (colours 0, 1, 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceGraph {
    adj: Vec<[usize; 3]>,
}

impl SurfaceGraph {
    pub fn from_adjacency(adj: Vec<[usize; 3]>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n == 0 || n % 2 == 1 {
            return Err(GraphError::BadOrder(n));
        }
        for (v, row) in adj.iter().enumerate() {
            for (c, &w) in row.iter().enumerate() {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
                if w == v {
                    return Err(GraphError::Loop { vertex: v, colour: c });
                }
                if adj[w][c] != v {
                    return Err(GraphError::NotInvolution { vertex: v, colour: c });
                }
            }
        }
        Ok(SurfaceGraph { adj })
    }

    /// Builds from possibly-partial rows; `None` entries make the graph
    /// non-regular.
    pub fn from_partial(rows: Vec<[Option<usize>; 3]>) -> Result<Self, GraphError> {
        let mut adj = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = [0; 3];
            for c in 0..3 {
                out[c] = row[c].ok_or(GraphError::NotRegular)?;
            }
            adj.push(out);
        }
        SurfaceGraph::from_adjacency(adj)
    }

    /// The order-two graph made of three parallel edges.
    pub fn order_two() -> Self {
        SurfaceGraph { adj: vec![[1; 3], [0; 3]] }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &[[usize; 3]] {
        &self.adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Bicoloured cycle ids: `cycle_of[v][k]` for the pair missing colour `k`
    /// (so `k = 2` is the `{0,1}`-pair), plus the per-pair counts.
    pub fn cycles(&self) -> (Vec<[usize; 3]>, [usize; 3]) {
        let n = self.order();
        let mut cycle_of = vec![[usize::MAX; 3]; n];
        let mut counts = [0; 3];
        for k in 0..3 {
            let (i, j) = match k {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            for s in 0..n {
                if cycle_of[s][k] != usize::MAX {
                    continue;
                }
                let mut v = s;
                loop {
                    cycle_of[v][k] = counts[k];
                    let w = self.adj[v][i];
                    cycle_of[w][k] = counts[k];
                    v = self.adj[w][j];
                    if v == s {
                        break;
                    }
                }
                counts[k] += 1;
            }
        }
        (cycle_of, counts)
    }

    /// Sphere criterion: a connected 3-coloured graph with `2q` vertices
    /// represents the 2-sphere iff it has `q + 2` bicoloured cycles.
    pub fn is_sphere_gem(&self) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let (_, counts) = self.cycles();
        Ok(2 * counts.iter().sum::<usize>() == self.order() + 4)
    }

    /// No two edges of the same colour share both of their bicoloured cycles.
    pub fn is_rigid(&self) -> bool {
        let (cycle_of, _) = self.cycles();
        for c in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&k| k != c).collect();
            let mut seen = std::collections::HashSet::new();
            for v in 0..self.order() {
                let w = self.adj[v][c];
                if v > w {
                    continue;
                }
                // Pair missing colour k contains colour c for k != c.
                let key = (cycle_of[v][others[0]], cycle_of[v][others[1]]);
                if !seen.insert(key) {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical code over vertex relabellings and permutations of the three
    /// colours.
    pub fn code(&self) -> Result<String, GraphError> {
        let numbers = canonical_numbers(&self.adj).ok_or(GraphError::Disconnected)?;
        Ok(crate::code::Code::from_numbers(&numbers, 3).to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_is_sphere_and_rigid() {
        let s = SurfaceGraph::order_two();
        assert_eq!(s.is_sphere_gem(), Ok(true));
        assert!(s.is_rigid());
    }

    #[test]
    fn cube_is_sphere_and_rigid() {
        let s = SurfaceGraph::from_adjacency((0..8).map(|v| [v ^ 1, v ^ 2, v ^ 4]).collect()).unwrap();
        assert_eq!(s.is_sphere_gem(), Ok(true));
        assert!(s.is_rigid());
    }

    #[test]
    fn torus_defect_detected() {
        // Hexagon in colours 0,1 with antipodal colour-2 chords: 3 cycles, q = 3.
        let adj = (0..6)
            .map(|v: usize| {
                let c0 = v ^ 1;
                let c1 = if v % 2 == 1 { (v + 1) % 6 } else { (v + 5) % 6 };
                [c0, c1, (v + 3) % 6]
            })
            .collect();
        let s = SurfaceGraph::from_adjacency(adj).unwrap();
        assert_eq!(s.is_sphere_gem(), Ok(false));
    }

    #[test]
    fn prism_with_double_edges_is_not_rigid() {
        // Two vertices joined by colours 0 and 1: the colour-2 edges at them
        // share the {0,2}- and {1,2}-cycles.
        let adj = vec![[1, 1, 2], [0, 0, 3], [3, 3, 0], [2, 2, 1]];
        let s = SurfaceGraph::from_adjacency(adj).unwrap();
        assert_eq!(s.is_sphere_gem(), Ok(true));
        assert!(!s.is_rigid());
    }

    #[test]
    fn errors() {
        let disconnected = SurfaceGraph::from_adjacency(vec![[1; 3], [0; 3], [3; 3], [2; 3]]).unwrap();
        assert_eq!(disconnected.is_sphere_gem(), Err(GraphError::Disconnected));
        assert_eq!(
            SurfaceGraph::from_partial(vec![[Some(1), Some(1), None], [Some(0), Some(0), None]]),
            Err(GraphError::NotRegular)
        );
    }
}
