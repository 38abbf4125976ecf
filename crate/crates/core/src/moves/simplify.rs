//! Reduction of a gem to a rigid crystallization.

use crate::graph::ColouredGraph;

use super::dipole::{cancel_dipole, find_dipoles};
use super::rho::{find_rho_pairs, switch_rho_pair};
use super::MoveTrace;

/// Cancels proper dipoles (largest joining sets first) and switches ρ-pairs
/// (ρ₂ before ρ₃) until none is left. Returns the rigid crystallization and
/// the number of ρ₃-pairs switched.
pub fn simplify_to_rigid(g: &ColouredGraph) -> (ColouredGraph, usize) {
    let (out, h, _) = simplify_to_rigid_traced(g);
    (out, h)
}

/// As [`simplify_to_rigid`], also returning the applied moves.
pub fn simplify_to_rigid_traced(g: &ColouredGraph) -> (ColouredGraph, usize, MoveTrace) {
    let mut current = g.clone();
    let mut h = 0;
    let mut trace = MoveTrace::default();
    'outer: loop {
        let dipoles = find_dipoles(&current);
        if let Some(&d) = dipoles.iter().max_by_key(|d| (d.size(), std::cmp::Reverse((d.v, d.w)))) {
            let next = cancel_dipole(&current, d).expect("found dipoles are proper");
            trace.push("cancel_dipole", format!("({},{}) {:04b}", d.v, d.w, d.colours), current.order(), next.order());
            current = next;
            continue;
        }
        let mut pairs = find_rho_pairs(&current);
        pairs.sort_by_key(|r| r.multiplicity);
        for r in pairs {
            if let Ok(next) = switch_rho_pair(&current, r) {
                trace.push(
                    "switch_rho_pair",
                    format!("rho{} colour {} {:?} {:?}", r.multiplicity, r.colour, r.e, r.f),
                    current.order(),
                    next.order(),
                );
                if r.multiplicity == 3 {
                    h += 1;
                }
                current = next;
                continue 'outer;
            }
        }
        break;
    }
    (current, h, trace)
}
