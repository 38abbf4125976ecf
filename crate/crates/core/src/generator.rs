//! Exhaustive, isomorph-free generation of rigid crystallizations.
//!
//! Generation runs in two stages. First every connected, rigid, planar
//! 3-coloured graph of the requested order is enumerated: colours 0 and 1
//! are laid out as a union of bicoloured cycles and colour 2 is matched by
//! backtracking. Then colour 3 is added to each seed in all admissible ways.
//! Both searches prune with the capped-surface test of [`crate::partial`],
//! and results are deduplicated by canonical code.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::code::{canonical_code, Code};
use crate::graph::{manifold_check, ColouredGraph};
use crate::moves::{find_cluster_vertices, is_rigid};
use crate::partial::{SurfaceScratch, NONE};
use crate::surface::SurfaceGraph;

/// Partitions of `total` into even parts `>= min_part`, non-increasing.
fn even_partitions(total: usize, min_part: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let mut part = max.min(rest);
        if part % 2 == 1 {
            part -= 1;
        }
        while part >= min {
            cur.push(part);
            rec(rest - part, part, min, cur, out);
            cur.pop();
            part -= 2;
        }
    }
    let mut out = Vec::new();
    rec(total, total, min_part, &mut Vec::new(), &mut out);
    out
}

/// Lays out colours 0 and 1 as consecutive bicoloured cycles.
fn cycle_layout(parts: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n: usize = parts.iter().sum();
    let mut c0 = vec![0; n];
    let mut c1 = vec![0; n];
    let mut start = 0;
    for &len in parts {
        for t in 0..len / 2 {
            let a = start + 2 * t;
            let b = a + 1;
            let c = start + (2 * t + 2) % len;
            c0[a] = b;
            c0[b] = a;
            c1[b] = c;
            c1[c] = b;
        }
        start += len;
    }
    (c0, c1)
}

struct SurfaceSearch<'a> {
    c0: &'a [usize],
    c1: &'a [usize],
    c2: Vec<usize>,
    /// Layout cycle of each vertex, and each cycle's first vertex and length.
    cycle_of: Vec<usize>,
    starts: Vec<usize>,
    lens: Vec<usize>,
    /// Matched vertices per layout cycle.
    touched: Vec<usize>,
    scratch: SurfaceScratch,
    found: BTreeMap<String, SurfaceGraph>,
}

impl SurfaceSearch<'_> {
    fn run(&mut self) {
        let Some(v) = self.c2.iter().position(|&w| w == NONE) else {
            self.finish();
            return;
        };
        for w in v + 1..self.c2.len() {
            if self.c2[w] != NONE || self.c0[v] == w || self.c1[v] == w || !self.representative(v, w) {
                continue;
            }
            self.c2[v] = w;
            self.c2[w] = v;
            self.touched[self.cycle_of[v]] += 1;
            self.touched[self.cycle_of[w]] += 1;
            if self.scratch.all_spherical(self.c0, self.c1, &self.c2) {
                self.run();
            }
            self.touched[self.cycle_of[v]] -= 1;
            self.touched[self.cycle_of[w]] -= 1;
            self.c2[v] = NONE;
            self.c2[w] = NONE;
        }
    }

    /// Untouched layout cycles other than the one of `v` can be rotated by
    /// two steps and permuted among equal lengths without moving `v`, so only
    /// the first two vertices of the first such cycle of each length need to
    /// be tried as partners.
    fn representative(&self, v: usize, w: usize) -> bool {
        let cw = self.cycle_of[w];
        if cw == self.cycle_of[v] || self.touched[cw] > 0 {
            return true;
        }
        if w - self.starts[cw] > 1 {
            return false;
        }
        !(0..cw).any(|c| c != self.cycle_of[v] && self.touched[c] == 0 && self.lens[c] == self.lens[cw])
    }

    fn finish(&mut self) {
        let adj: Vec<[usize; 3]> = (0..self.c2.len()).map(|v| [self.c0[v], self.c1[v], self.c2[v]]).collect();
        let s = SurfaceGraph::from_adjacency(adj).expect("valid involutions");
        if !s.is_connected() || !s.is_rigid() {
            return;
        }
        let code = s.code().expect("connected");
        self.found.entry(code).or_insert(s);
    }
}

/// All connected rigid planar 3-coloured graphs with `2p` vertices, up to
/// colour-isomorphism, keyed and sorted by their 3-colour code.
pub fn generate_surface_catalogue(p: usize) -> Vec<SurfaceGraph> {
    assert!(p >= 1);
    if p == 1 {
        return vec![SurfaceGraph::order_two()];
    }
    // Colours can be renamed so that the {0,1}-pair has the fewest cycles;
    // the three pairs have p + 2 cycles together.
    let parts: Vec<Vec<usize>> = even_partitions(2 * p, 4).into_iter().filter(|q| 3 * q.len() <= p + 2).collect();
    let found: Vec<BTreeMap<String, SurfaceGraph>> = parts
        .par_iter()
        .map(|parts| {
            let (c0, c1) = cycle_layout(parts);
            let mut starts = Vec::new();
            let mut cycle_of = Vec::new();
            for (c, &len) in parts.iter().enumerate() {
                starts.push(cycle_of.len());
                cycle_of.extend(std::iter::repeat_n(c, len));
            }
            let mut search = SurfaceSearch {
                c0: &c0,
                c1: &c1,
                c2: vec![NONE; 2 * p],
                cycle_of,
                starts,
                lens: parts.clone(),
                touched: vec![0; parts.len()],
                scratch: SurfaceScratch::default(),
                found: BTreeMap::new(),
            };
            search.run();
            search.found
        })
        .collect();
    let mut all = BTreeMap::new();
    for map in found {
        all.extend(map);
    }
    all.into_values().collect()
}

/// Pruning switches for [`complete_surface_with`]; the defaults are the
/// production settings, turning them off gives the brute-force oracle.
#[derive(Debug, Clone, Copy)]
pub struct CompletionOptions {
    /// Reject colour-3 edges joining two vertices of a common bicoloured
    /// cycle of the seed.
    pub same_cycle: bool,
    /// Reject partial graphs with a non-spherical capped residue.
    pub planarity: bool,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions { same_cycle: true, planarity: true }
    }
}

struct CompletionSearch<'a> {
    seed: &'a SurfaceGraph,
    cols: [Vec<usize>; 3],
    cycle_of: Vec<[usize; 3]>,
    top: Vec<usize>,
    opts: CompletionOptions,
    scratch: SurfaceScratch,
    out: Vec<ColouredGraph>,
}

impl CompletionSearch<'_> {
    fn admissible(&self, v: usize, w: usize) -> bool {
        if self.seed.order() == 2 {
            return true;
        }
        if self.opts.same_cycle {
            (0..3).all(|k| self.cycle_of[v][k] != self.cycle_of[w][k])
        } else {
            true
        }
    }

    fn residues_ok(&mut self) -> bool {
        if !self.opts.planarity {
            return true;
        }
        for r in 0..3 {
            let (a, b) = match r {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            if !self.scratch.all_spherical(&self.cols[a], &self.cols[b], &self.top) {
                return false;
            }
        }
        true
    }

    fn run(&mut self) {
        let Some(v) = self.top.iter().position(|&w| w == NONE) else {
            self.finish();
            return;
        };
        for w in v + 1..self.top.len() {
            if self.top[w] != NONE || !self.admissible(v, w) {
                continue;
            }
            self.top[v] = w;
            self.top[w] = v;
            if self.residues_ok() {
                self.run();
            }
            self.top[v] = NONE;
            self.top[w] = NONE;
        }
    }

    fn finish(&mut self) {
        let adj = (0..self.top.len())
            .map(|v| [self.cols[0][v], self.cols[1][v], self.cols[2][v], self.top[v]])
            .collect();
        let g = ColouredGraph::from_adjacency_unchecked(adj);
        if manifold_check(&g).is_crystallization {
            self.out.push(g);
        }
    }
}

/// Every crystallization obtained by adding colour-3 edges to `seed`.
pub fn complete_surface(seed: &SurfaceGraph) -> Vec<ColouredGraph> {
    complete_surface_with(seed, CompletionOptions::default())
}

pub fn complete_surface_with(seed: &SurfaceGraph, opts: CompletionOptions) -> Vec<ColouredGraph> {
    let n = seed.order();
    let cols = [0, 1, 2].map(|c| seed.adjacency().iter().map(|row| row[c]).collect::<Vec<_>>());
    let (cycle_of, _) = seed.cycles();
    let mut search = CompletionSearch {
        seed,
        cols,
        cycle_of,
        top: vec![NONE; n],
        opts,
        scratch: SurfaceScratch::default(),
        out: Vec::new(),
    };
    search.run();
    search.out
}

/// Flags describing a catalogue file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalogueFlags {
    pub bipartite: bool,
    pub clusterless: bool,
}

/// A deduplicated, sorted set of codes of rigid crystallizations with a
/// fixed number of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalogue {
    pub p: usize,
    pub flags: CatalogueFlags,
    pub codes: BTreeSet<Code>,
}

impl Catalogue {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn graphs(&self) -> impl Iterator<Item = ColouredGraph> + '_ {
        self.codes.iter().map(|c| c.decode().expect("catalogue codes decode"))
    }
}

/// Rigid crystallizations with `2p` vertices before the cluster filter.
#[derive(Debug, Clone)]
pub struct CatalogueSet {
    pub p: usize,
    pub surfaces: usize,
    pub bipartite: Catalogue,
    pub non_bipartite: Catalogue,
    pub bipartite_clusterless: Catalogue,
    pub non_bipartite_clusterless: Catalogue,
}

/// Generates both rigid catalogues (and their cluster-less sub-catalogues)
/// with `2p` vertices.
pub fn build_catalogue_set(p: usize) -> CatalogueSet {
    build_catalogue_set_with(p, CompletionOptions::default())
}

pub fn build_catalogue_set_with(p: usize, opts: CompletionOptions) -> CatalogueSet {
    let surfaces = generate_surface_catalogue(p);
    let codes: BTreeSet<Code> = surfaces
        .par_iter()
        .flat_map_iter(|s| {
            complete_surface_with(s, opts)
                .into_iter()
                .filter(is_rigid)
                .map(|g| canonical_code(&g).expect("crystallizations are connected").0)
                .collect::<Vec<_>>()
        })
        .collect();
    let mut set = CatalogueSet {
        p,
        surfaces: surfaces.len(),
        bipartite: empty(p, true, false),
        non_bipartite: empty(p, false, false),
        bipartite_clusterless: empty(p, true, true),
        non_bipartite_clusterless: empty(p, false, true),
    };
    let classified: Vec<(Code, bool, bool)> = codes
        .into_par_iter()
        .map(|code| {
            let g = code.decode().expect("fresh code");
            let bip = g.is_bipartite();
            let clusterless = find_cluster_vertices(&g).is_empty();
            (code, bip, clusterless)
        })
        .collect();
    for (code, bip, clusterless) in classified {
        let (all, cl) = if bip {
            (&mut set.bipartite, &mut set.bipartite_clusterless)
        } else {
            (&mut set.non_bipartite, &mut set.non_bipartite_clusterless)
        };
        if clusterless {
            cl.codes.insert(code.clone());
        }
        all.codes.insert(code);
    }
    set
}

fn empty(p: usize, bipartite: bool, clusterless: bool) -> Catalogue {
    Catalogue { p, flags: CatalogueFlags { bipartite, clusterless }, codes: BTreeSet::new() }
}

/// The bipartite and non-bipartite catalogues with `2p` vertices, optionally
/// restricted to cluster-less members.
pub fn build_catalogue(p: usize, clusterless: bool) -> (Catalogue, Catalogue) {
    let set = build_catalogue_set(p);
    if clusterless {
        (set.bipartite_clusterless, set.non_bipartite_clusterless)
    } else {
        (set.bipartite, set.non_bipartite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        assert_eq!(even_partitions(8, 4), vec![vec![8], vec![4, 4]]);
        assert_eq!(even_partitions(2, 4), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn layout_is_involutive() {
        let (c0, c1) = cycle_layout(&[6, 4]);
        for v in 0..10 {
            assert_eq!(c0[c0[v]], v);
            assert_eq!(c1[c1[v]], v);
            assert_ne!(c0[v], v);
        }
    }

    #[test]
    fn order_two_completion() {
        let out = complete_surface(&SurfaceGraph::order_two());
        assert_eq!(out, vec![ColouredGraph::order_two()]);
    }

    #[test]
    fn small_surface_counts() {
        let counts: Vec<usize> = (1..=7).map(|p| generate_surface_catalogue(p).len()).collect();
        // At 8 vertices only the cube is rigid: every other planar graph
        // has two same-coloured edges sharing both of their cycles.
        assert_eq!(counts, vec![1, 0, 0, 1, 0, 1, 1]);
    }
}
