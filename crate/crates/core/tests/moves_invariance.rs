//! First homology is unchanged by dipole moves, ρ₂ switches, generalized
//! dipole cancellations and cluster eliminations, and loses one free summand
//! under a ρ₃ switch.

mod common;

use std::collections::BTreeMap;

use gemcat::invariants::{first_homology, HomologyResult};
use gemcat::moves::{
    cancel_dipole, cancel_generalized_dipole, eliminate_clusters, find_cluster_vertices, find_dipoles,
    find_generalized_dipoles, find_rho_pairs, graph_connected_sum, simplify_to_rigid, switch_rho_pair,
};
use gemcat::graph::PAIRS;
use gemcat::{code_of, manifold_check, ColouredGraph};
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{corpus, handle_gem, random_dipole_insertion};

fn h1(g: &ColouredGraph) -> HomologyResult {
    first_homology(g).unwrap()
}

#[test]
fn dipole_moves_preserve_homology() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = [0usize; 4];
    for (g, _) in corpus(10) {
        let base = h1(&g);
        for size in 1..=3 {
            for _ in 0..2 {
                let Some(h) = random_dipole_insertion(&g, size, &mut rng) else { continue };
                assert_eq!(h1(&h), base, "insertion into {}", code_of(&g).unwrap());
                checked[size as usize] += 1;
                for d in find_dipoles(&h) {
                    let back = cancel_dipole(&h, d).unwrap();
                    assert!(manifold_check(&back).is_gem);
                    assert_eq!(h1(&back), base);
                    checked[0] += 1;
                }
            }
        }
    }
    assert!(checked.iter().all(|&c| c > 0), "{checked:?}");
}

#[test]
fn rho_switches() {
    let mut rng = StdRng::seed_from_u64(12);
    let (mut rho2, mut rho3) = (0, 0);
    let mut graphs: Vec<(ColouredGraph, bool)> = Vec::new();
    for (g, bipartite) in corpus(8) {
        for orientable in [true, false] {
            let sum = graph_connected_sum(&g, 0, &handle_gem(orientable), 0);
            graphs.push((sum, bipartite && orientable));
        }
        for size in 1..=3 {
            if let Some(h) = random_dipole_insertion(&g, size, &mut rng) {
                graphs.push((h, bipartite));
            }
        }
    }
    for (g, bipartite) in graphs {
        let base = h1(&g);
        for r in find_rho_pairs(&g) {
            let Ok(h) = switch_rho_pair(&g, r) else { continue };
            if r.multiplicity == 2 {
                assert_eq!(h1(&h), base);
                rho2 += 1;
            } else if bipartite {
                assert_eq!(h1(&h).direct_sum(&HomologyResult::free(1)), base);
                rho3 += 1;
            }
        }
    }
    assert!(rho2 > 0 && rho3 > 0, "rho2 {rho2} rho3 {rho3}");
}

#[test]
fn simplify_splits_off_handles() {
    for orientable in [true, false] {
        let (out, h) = simplify_to_rigid(&handle_gem(orientable));
        assert_eq!(h, 1);
        assert_eq!(out, ColouredGraph::order_two());
    }
    for (g, _) in corpus(7) {
        let sum = graph_connected_sum(&g, 0, &handle_gem(true), 0);
        let (out, h) = simplify_to_rigid(&sum);
        assert_eq!(h, 1);
        assert_eq!(h1(&out).direct_sum(&HomologyResult::free(1)), h1(&sum));
    }
}

#[test]
fn generalized_dipoles_preserve_homology() {
    let mut deltas: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (g, _) in corpus(10) {
        let base = h1(&g);
        for (i, j) in PAIRS {
            for gd in find_generalized_dipoles(&g, (i, j), 8, 8) {
                let h = cancel_generalized_dipole(&g, &gd).unwrap();
                assert_eq!(h1(&h), base, "{} {:?}", code_of(&g).unwrap(), gd);
                let delta = h.order() as i64 - g.order() as i64;
                assert_eq!(*deltas.entry((gd.m, gd.n)).or_insert(delta), delta);
            }
        }
    }
    assert!(!deltas.is_empty());
    for (&(m, n), &d) in &deltas {
        assert_eq!(d, (m * n) as i64 - m as i64 - n as i64 - 1);
    }
}

#[test]
fn cluster_elimination_preserves_homology() {
    let (mut grid, mut shared) = (0, 0);
    for (g, _) in corpus(11) {
        let clusters = find_cluster_vertices(&g);
        let Some(cv) = clusters.first() else { continue };
        if cv.is_grid() {
            grid += 1;
        } else {
            shared += 1;
        }
        let h = eliminate_clusters(&g).unwrap();
        assert!(h.order() < g.order());
        assert!(find_cluster_vertices(&h).is_empty());
        assert!(manifold_check(&h).is_gem);
        assert_eq!(h1(&h), h1(&g), "{}", code_of(&g).unwrap());
    }
    assert!(grid > 0 && shared > 0, "grid {grid} shared {shared}");
}
