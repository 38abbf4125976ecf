//! Graphs whose last colour is only partially placed, as they appear while a
//! colour is being added edge by edge during generation.
//!
//! The planarity bookkeeping works on a "thickened" partial graph: two full
//! colours `a`, `b` and one partial colour `t`. Each connected component,
//! capped along its closed bicoloured cycles and along its boundary walks, is
//! a closed surface. Adding edges can never raise the Euler characteristic of
//! that surface, so a component whose capped surface is not a sphere can
//! never be completed to a planar graph.

use crate::graph::{Colour, ColouredGraph, COLOURS, PAIRS};

pub(crate) const NONE: usize = usize::MAX;

/// Per-component data of a partial 3-coloured graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSurfaceComponent {
    pub vertices: usize,
    /// Partial-colour edges inside the component.
    pub partial_edges: usize,
    /// Closed bicoloured cycles.
    pub closed_cycles: usize,
    /// Boundary walks (zero for a regular component).
    pub boundary_faces: usize,
}

impl PartialSurfaceComponent {
    pub fn is_regular(&self) -> bool {
        self.boundary_faces == 0 && 2 * self.partial_edges == self.vertices
    }

    /// Euler characteristic of the capped surface.
    pub fn euler(&self) -> i64 {
        (self.closed_cycles + self.boundary_faces) as i64 - self.partial_edges as i64
    }
}

/// Reusable scratch space for [`SurfaceScratch::components`].
#[derive(Default)]
pub(crate) struct SurfaceScratch {
    comp: Vec<usize>,
    stack: Vec<usize>,
    seen: Vec<bool>,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    out: Vec<PartialSurfaceComponent>,
}

impl SurfaceScratch {
    /// Analyses the partial graph given by two full involutions and one
    /// partial involution (`NONE` marks a missing edge).
    pub(crate) fn components(
        &mut self,
        full_a: &[usize],
        full_b: &[usize],
        partial: &[usize],
    ) -> &[PartialSurfaceComponent] {
        let n = full_a.len();
        self.comp.clear();
        self.comp.resize(n, NONE);
        self.out.clear();
        for s in 0..n {
            if self.comp[s] != NONE {
                continue;
            }
            let id = self.out.len();
            self.out.push(PartialSurfaceComponent {
                vertices: 0,
                partial_edges: 0,
                closed_cycles: 0,
                boundary_faces: 0,
            });
            self.comp[s] = id;
            self.stack.push(s);
            while let Some(v) = self.stack.pop() {
                self.out[id].vertices += 1;
                for w in [full_a[v], full_b[v], partial[v]] {
                    if w != NONE && self.comp[w] == NONE {
                        self.comp[w] = id;
                        self.stack.push(w);
                    }
                }
                if partial[v] != NONE && partial[v] > v {
                    self.out[id].partial_edges += 1;
                }
            }
        }
        // {a,b}-cycles are always closed.
        self.seen.clear();
        self.seen.resize(n, false);
        for s in 0..n {
            if self.seen[s] {
                continue;
            }
            self.out[self.comp[s]].closed_cycles += 1;
            let mut v = s;
            loop {
                self.seen[v] = true;
                let w = full_a[v];
                self.seen[w] = true;
                v = full_b[w];
                if v == s {
                    break;
                }
            }
        }
        // {a,t}- and {b,t}-walks: open paths first, then closed cycles.
        self.alpha.clear();
        self.alpha.resize(n, NONE);
        self.beta.clear();
        self.beta.resize(n, NONE);
        for (full, ends) in [(full_a, 0), (full_b, 1)] {
            self.seen.fill(false);
            for s in 0..n {
                if partial[s] != NONE || self.seen[s] {
                    continue;
                }
                let mut v = s;
                self.seen[v] = true;
                loop {
                    let w = full[v];
                    self.seen[w] = true;
                    let x = partial[w];
                    if x == NONE {
                        if ends == 0 {
                            self.alpha[s] = w;
                            self.alpha[w] = s;
                        } else {
                            self.beta[s] = w;
                            self.beta[w] = s;
                        }
                        break;
                    }
                    self.seen[x] = true;
                    v = x;
                }
            }
            for s in 0..n {
                if self.seen[s] {
                    continue;
                }
                self.out[self.comp[s]].closed_cycles += 1;
                let mut v = s;
                loop {
                    self.seen[v] = true;
                    let w = full[v];
                    self.seen[w] = true;
                    v = partial[w];
                    if v == s {
                        break;
                    }
                }
            }
        }
        // Boundary walks alternate alpha and beta links between vertices
        // missing the partial colour.
        self.seen.fill(false);
        for s in 0..n {
            if partial[s] != NONE || self.seen[s] {
                continue;
            }
            self.out[self.comp[s]].boundary_faces += 1;
            let mut v = s;
            loop {
                self.seen[v] = true;
                let w = self.alpha[v];
                self.seen[w] = true;
                v = self.beta[w];
                if v == s {
                    break;
                }
            }
        }
        &self.out
    }

    /// True when every component caps off to a sphere.
    pub(crate) fn all_spherical(&mut self, full_a: &[usize], full_b: &[usize], partial: &[usize]) -> bool {
        self.components(full_a, full_b, partial).iter().all(|c| c.euler() == 2)
    }
}

/// A 4-coloured graph whose colour-3 edges are only partially present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialGraph {
    base: Vec<[usize; 3]>,
    top: Vec<usize>,
}

impl PartialGraph {
    /// Starts from a full 3-coloured graph with no colour-3 edges.
    pub fn new(base: Vec<[usize; 3]>) -> Self {
        let n = base.len();
        PartialGraph { base, top: vec![NONE; n] }
    }

    pub fn order(&self) -> usize {
        self.base.len()
    }

    /// Number of colour-3 edges present.
    pub fn filled(&self) -> usize {
        self.top.iter().filter(|&&w| w != NONE).count() / 2
    }

    pub fn top(&self, v: usize) -> Option<usize> {
        (self.top[v] != NONE).then_some(self.top[v])
    }

    pub fn add_top_edge(&mut self, v: usize, w: usize) {
        assert!(v != w && self.top[v] == NONE && self.top[w] == NONE);
        self.top[v] = w;
        self.top[w] = v;
    }

    pub fn remove_top_edge(&mut self, v: usize) {
        let w = self.top[v];
        assert!(w != NONE);
        self.top[v] = NONE;
        self.top[w] = NONE;
    }

    fn column(&self, c: Colour) -> Vec<usize> {
        if c == 3 {
            self.top.clone()
        } else {
            self.base.iter().map(|row| row[c]).collect()
        }
    }

    /// Closed bicoloured cycles, per colour pair in [`PAIRS`] order. Pairs
    /// involving colour 3 count only cycles closed under the partial map.
    pub fn closed_cycle_counts(&self) -> [usize; 6] {
        let mut out = [0; 6];
        for (p, &(i, j)) in PAIRS.iter().enumerate() {
            let (ci, cj) = (self.column(i), self.column(j));
            let n = self.order();
            let mut seen = vec![false; n];
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                // Walk in both directions; the cycle is closed if we return.
                let mut v = s;
                let mut colour_is_i = true;
                let mut closed = false;
                loop {
                    seen[v] = true;
                    let w = if colour_is_i { ci[v] } else { cj[v] };
                    if w == NONE {
                        break;
                    }
                    v = w;
                    colour_is_i = !colour_is_i;
                    if v == s && colour_is_i {
                        closed = true;
                        break;
                    }
                }
                if !closed {
                    let mut v = s;
                    loop {
                        seen[v] = true;
                        let w = cj[v];
                        if w == NONE {
                            break;
                        }
                        seen[w] = true;
                        let x = ci[w];
                        if x == NONE {
                            break;
                        }
                        v = x;
                    }
                } else {
                    out[p] += 1;
                }
            }
        }
        out
    }

    /// For the residue without colour `r` (`r < 3`): the number of components
    /// and the number of components that are not regular.
    pub fn residue_counts(&self, r: Colour) -> (usize, usize) {
        let comps = self.residue_components(r);
        (comps.len(), comps.iter().filter(|c| !c.is_regular()).count())
    }

    /// Capped-surface data of the residue without colour `r` (`r < 3`).
    pub fn residue_components(&self, r: Colour) -> Vec<PartialSurfaceComponent> {
        assert!(r < 3);
        let mut full = (0..3).filter(|&c| c != r);
        let (a, b) = (full.next().unwrap(), full.next().unwrap());
        let mut scratch = SurfaceScratch::default();
        scratch.components(&self.column(a), &self.column(b), &self.top).to_vec()
    }

    /// The partial planarity equation `2 g_r - ∂g_r = Σ ġ_ij - m` taken over
    /// the pairs avoiding `r`. It assumes every non-regular component has a
    /// single boundary walk.
    pub fn single_boundary_planarity(&self, r: Colour) -> bool {
        let (g, boundary) = self.residue_counts(r);
        let counts = self.closed_cycle_counts();
        let sum: usize = PAIRS
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| i != r && j != r)
            .map(|(p, _)| counts[p])
            .sum();
        2 * g as i64 - boundary as i64 == sum as i64 - self.filled() as i64
    }

    /// Exact spherical test on every component of the residue without `r`.
    pub fn residue_is_spherical(&self, r: Colour) -> bool {
        self.residue_components(r).iter().all(|c| c.euler() == 2)
    }

    /// The closed graph, once every colour-3 slot is filled.
    pub fn complete(&self) -> Option<ColouredGraph> {
        if self.top.contains(&NONE) {
            return None;
        }
        let adj = self
            .base
            .iter()
            .zip(&self.top)
            .map(|(row, &t)| {
                let mut out = [0; COLOURS];
                out[..3].copy_from_slice(row);
                out[3] = t;
                out
            })
            .collect();
        Some(ColouredGraph::from_adjacency_unchecked(adj))
    }
}
