//! Cluster-type vertices and their elimination.
//!
//! A vertex `v` is of cluster type when four of the six bicoloured cycles
//! through it have length four and together involve nine vertices: `v`, its
//! four neighbours and four distinct opposite corners.

use crate::graph::{complement_pair, cycle_census, Colour, ColouredGraph, CycleCensus, COLOURS, PAIRS};

use super::dipole::{cancel_dipole, find_dipoles, insert_dipole, DipoleSite};
use super::gdipole::uncancel_grid;
use super::MoveError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClusterVertex {
    pub vertex: usize,
    /// The colour pairs of the four length-4 cycles, in [`PAIRS`] order.
    pub pairs: [(Colour, Colour); 4],
    /// The nine involved vertices, sorted.
    pub vertices: Vec<usize>,
}

impl ClusterVertex {
    /// The two remaining colour pairs through the vertex.
    pub fn long_pairs(&self) -> [(Colour, Colour); 2] {
        let rest: Vec<(Colour, Colour)> = PAIRS.iter().copied().filter(|p| !self.pairs.contains(p)).collect();
        [rest[0], rest[1]]
    }

    /// Whether the two remaining pairs are complementary.
    pub fn is_grid(&self) -> bool {
        let [(a, b), (c, d)] = self.long_pairs();
        complement_pair(a, b) == (c, d)
    }
}

fn cluster_at(census: &CycleCensus, v: usize) -> Option<ClusterVertex> {
    let short: Vec<(Colour, Colour)> = PAIRS
        .iter()
        .copied()
        .filter(|&(i, j)| census.cycle_through(v, i, j).len() == 4)
        .collect();
    if short.len() != 4 {
        return None;
    }
    let mut vertices: Vec<usize> = short
        .iter()
        .flat_map(|&(i, j)| census.cycle_through(v, i, j).iter().copied())
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() != 9 {
        return None;
    }
    Some(ClusterVertex { vertex: v, pairs: [short[0], short[1], short[2], short[3]], vertices })
}

/// Every cluster-type vertex, by vertex index.
pub fn find_cluster_vertices(g: &ColouredGraph) -> Vec<ClusterVertex> {
    let census = cycle_census(g);
    (0..g.order()).filter_map(|v| cluster_at(&census, v)).collect()
}

/// The grid around a cluster vertex whose long cycles have complementary
/// colours, in the layout expected by `uncancel_grid`.
fn grid_around(g: &ColouredGraph, cv: &ClusterVertex) -> ([[usize; 3]; 3], (Colour, Colour, Colour, Colour)) {
    let [(i, j), (k, l)] = cv.long_pairs();
    let v = cv.vertex;
    let mut grid = [[0; 3]; 3];
    grid[1][1] = v;
    grid[0][1] = g.neighbour(v, j);
    grid[2][1] = g.neighbour(v, i);
    grid[1][0] = g.neighbour(v, l);
    grid[1][2] = g.neighbour(v, k);
    for (r, vc) in [(0, j), (2, i)] {
        grid[r][0] = g.neighbour(grid[1][0], vc);
        grid[r][2] = g.neighbour(grid[1][2], vc);
    }
    (grid, (i, j, k, l))
}

/// Every dipole insertion site whose cut edges all touch `verts`, largest
/// joining sets first.
fn local_sites(g: &ColouredGraph, verts: &[usize]) -> Vec<DipoleSite> {
    let mut masks: Vec<u8> = (1u8..15).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut out = Vec::new();
    for mask in masks {
        let per: Vec<Vec<(usize, usize)>> = (0..COLOURS)
            .filter(|c| mask & (1 << c) == 0)
            .map(|c| {
                let mut es: Vec<(usize, usize)> =
                    verts.iter().flat_map(|&x| [(x, g.neighbour(x, c)), (g.neighbour(x, c), x)]).collect();
                es.sort_unstable();
                es.dedup();
                es
            })
            .collect();
        let mut idx = vec![0; per.len()];
        'sites: loop {
            out.push(DipoleSite { colours: mask, cuts: idx.iter().zip(&per).map(|(&i, es)| es[i]).collect() });
            for k in 0..idx.len() {
                idx[k] += 1;
                if idx[k] < per[k].len() {
                    continue 'sites;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    out
}

/// Looks for a vertex-preserving pair of dipole moves (an insertion on the
/// edges around the cluster, then the cancellation of another dipole) after
/// which a proper dipole can be cancelled.
fn switch_and_cancel(g: &ColouredGraph, cv: &ClusterVertex) -> Option<ColouredGraph> {
    let n = g.order();
    for site in local_sites(g, &cv.vertices) {
        let Ok(h) = insert_dipole(g, &site) else { continue };
        for d in find_dipoles(&h) {
            if d.v == n && d.w == n + 1 {
                continue;
            }
            let Ok(k) = cancel_dipole(&h, d) else { continue };
            if let Some(d2) = find_dipoles(&k).first() {
                return cancel_dipole(&k, *d2).ok();
            }
        }
    }
    None
}

/// Removes cluster vertices one at a time until none is left. Every step
/// lowers the order by two.
pub fn eliminate_clusters(g: &ColouredGraph) -> Result<ColouredGraph, MoveError> {
    let clusters = find_cluster_vertices(g);
    if clusters.is_empty() {
        return Err(MoveError::NoCluster);
    }
    let mut current = g.clone();
    loop {
        let clusters = find_cluster_vertices(&current);
        let Some(cv) = clusters.first() else { return Ok(current) };
        let next = if cv.is_grid() {
            let (grid, colours) = grid_around(&current, cv);
            uncancel_grid(&current, &grid, colours)?
        } else {
            switch_and_cancel(&current, cv)
                .ok_or_else(|| MoveError::InvalidConfiguration(format!("no reduction at cluster vertex {}", cv.vertex)))?
        };
        debug_assert!(next.order() < current.order());
        log::trace!("cluster at {} removed: {} -> {}", cv.vertex, current.order(), next.order());
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_has_none() {
        assert!(find_cluster_vertices(&ColouredGraph::order_two()).is_empty());
        assert_eq!(eliminate_clusters(&ColouredGraph::order_two()), Err(MoveError::NoCluster));
    }
}
