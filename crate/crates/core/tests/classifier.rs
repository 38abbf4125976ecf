//! Classes against homology, naming, chirality and recognition.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use gemcat::classifier::{
    classify, distinguish_chirality, identify, split_and_name, theta, theta_chain, ClassPartition, ClassifyError,
    ManifoldName, PERMUTATIONS,
};
use gemcat::generator::build_catalogue_set;
use gemcat::moves::{cancel_generalized_dipole, find_generalized_dipoles, graph_connected_sum, insert_dipole};
use gemcat::moves::{simplify_to_rigid, DipoleSite};
use gemcat::{code_of, Code, ColouredGraph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{corpus_codes, labelled_partition, oracle_first_homology, random_one_dipole_insertion};

fn first_code(p: usize) -> Code {
    build_catalogue_set(p).bipartite.codes.iter().next().unwrap().clone()
}

/// Sorted `(code, h)` lists per class, sorted; independent of numbering.
fn shape(part: &ClassPartition) -> Vec<Vec<(Code, i64)>> {
    let mut out: Vec<Vec<(Code, i64)>> = part
        .classes
        .iter()
        .map(|c| {
            let mut v: Vec<(Code, i64)> =
                c.members.iter().map(|&m| (part.members[m].code.clone(), part.members[m].h)).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

#[test]
fn theta_is_deterministic() {
    for code in corpus_codes(9) {
        let g = code.decode().unwrap();
        for i in 0..4 {
            let (a, b) = (theta(&g, i), theta(&g, i));
            assert_eq!(code_of(&a.graph).unwrap(), code_of(&b.graph).unwrap());
            assert_eq!(a.h, b.h);
        }
        for p in &PERMUTATIONS {
            assert_eq!(theta_chain(&g, p, 0).graph, gemcat::canonical_code(&g).unwrap().1);
            assert_eq!(theta_chain(&g, p, 0).h, 0);
        }
    }
}

#[test]
fn three_small_manifolds() {
    let codes = vec![first_code(1), first_code(4), first_code(6)];
    let part = classify(&codes, 1);
    assert_eq!(part.classes.len(), 3);
    let h1: BTreeSet<String> =
        codes.iter().map(|c| oracle_first_homology(&c.decode().unwrap()).to_string()).collect();
    assert_eq!(h1.len(), 3);
}

#[test]
fn classes_agree_with_homology() {
    let part = classify(&corpus_codes(10), 1);
    for class in &part.classes {
        let keys: Vec<_> = class
            .members
            .iter()
            .map(|&m| {
                let h1 = oracle_first_homology(&part.members[m].code.decode().unwrap());
                (h1.rank as i64 - part.members[m].h, h1.torsion)
            })
            .collect();
        assert!(keys.iter().all(|k| *k == keys[0]), "{keys:?}");
    }
    for w in &part.witnesses {
        assert!(!w.already_joined || w.offset == 0, "{w}");
    }
}

#[test]
fn order_and_scheduling_do_not_matter() {
    let codes = corpus_codes(11);
    let part = classify(&codes, 2);
    let mut reversed = codes.clone();
    reversed.reverse();
    assert_eq!(shape(&part), shape(&classify(&reversed, 2)));
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| classify(&codes, 2));
    assert_eq!(shape(&part), shape(&serial));
    assert_eq!(part.witnesses, serial.witnesses);
}

#[test]
fn generalized_dipole_stays_in_class() {
    let mut checked = 0;
    for code in corpus_codes(9) {
        let g = code.decode().unwrap();
        for (i, j) in [(0, 1), (0, 2), (0, 3)] {
            for gd in find_generalized_dipoles(&g, (i, j), 8, 8).into_iter().take(2) {
                let Ok(next) = cancel_generalized_dipole(&g, &gd) else { continue };
                let (rigid, dh) = simplify_to_rigid(&next);
                let other = code_of(&rigid).unwrap();
                if other == code {
                    continue;
                }
                let part = classify(&[code.clone(), other], 1);
                assert_eq!(part.classes.len(), 1);
                assert_eq!(part.members[0].h - part.members[1].h, dh as i64);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn sums_are_named_from_their_pieces() {
    let codes = corpus_codes(10);
    let known: BTreeMap<Code, String> = [(first_code(1), "S3"), (first_code(4), "RP3"), (first_code(6), "L(3,1)")]
        .into_iter()
        .map(|(c, n)| (c, n.to_string()))
        .collect();
    let part = split_and_name(classify(&codes, 1), &known);
    let names: BTreeSet<String> = part
        .classes
        .iter()
        .filter(|c| c.name.is_some())
        .map(|c| part.member_name(c.members[0], 0).unwrap().to_string())
        .collect();
    for expected in ["S3", "RP3", "L(3,1)", "RP3 # RP3", "L(3,1) # RP3", "RP3 # RP3 # RP3"] {
        assert!(names.contains(expected), "{names:?}");
    }
    // A sum built by hand is recognized under the same name.
    let rp3 = first_code(4).decode().unwrap();
    let l31 = first_code(6).decode().unwrap();
    let sum = graph_connected_sum(&rp3, 0, &l31, 0);
    assert_eq!(sum.order(), rp3.order() + l31.order() - 2);
    assert_eq!(identify(&sum, &part).unwrap().to_string(), "L(3,1) # RP3");
    // With the handle gem added the name gains a handle.
    let handle = common::handle_gem(true);
    let bigger = graph_connected_sum(&sum, 3, &handle, 0);
    assert_eq!(identify(&bigger, &part).unwrap().to_string(), "L(3,1) # RP3 # S2xS1");
}

#[test]
fn chiral_sums_are_told_apart() {
    let codes = corpus_codes(11);
    let l31 = first_code(6);
    let known: BTreeMap<Code, String> =
        [(first_code(1), "S3".to_string()), (l31.clone(), "L(3,1)".to_string())].into_iter().collect();
    let part = split_and_name(classify(&codes, 1), &known);
    let twins: Vec<usize> = (0..part.classes.len())
        .filter(|&c| {
            part.classes[c].name.is_some()
                && part.member_name(part.classes[c].members[0], 0).unwrap().to_string() == "L(3,1) # L(3,1)"
        })
        .collect();
    assert_eq!(twins.len(), 2, "the two sums of L(3,1) with itself should stay apart");
    let labels = distinguish_chirality(&part, &l31, &l31, twins[0], twins[1], ("L", "L")).unwrap();
    assert_eq!(labels.len(), 2);
    let values: BTreeSet<&String> = labels.values().collect();
    assert_eq!(values.len(), 2);

    // Summing with the 3-sphere gives the same manifold both ways.
    let s3 = first_code(1);
    let e = distinguish_chirality(&part, &l31, &s3, twins[0], twins[1], ("L", "S")).unwrap_err();
    assert!(matches!(e, ClassifyError::AmbiguousResult(_)));
}

#[test]
fn identify_inputs() {
    let part = labelled_partition(&corpus_codes(9));
    // A 1-dipole inserted into the order-two gem.
    let g = ColouredGraph::order_two();
    let expanded = insert_dipole(&g, &DipoleSite { colours: 0b0001, cuts: vec![(0, 1), (0, 1), (0, 1)] }).unwrap();
    assert_eq!(expanded.order(), 4);
    assert_eq!(identify(&expanded, &part).unwrap(), ManifoldName::parse("S3", true));
    for (m, member) in part.members.iter().enumerate() {
        let expected = part.member_name(m, 0);
        let got = identify(&member.code.decode().unwrap(), &part).ok();
        assert_eq!(got, expected, "{}", member.code);
    }
    // Not a manifold: two disjoint copies.
    let two = g.disjoint_union(&g);
    assert!(matches!(identify(&two, &part), Err(ClassifyError::NotAManifold(_))));
}

#[test]
fn identify_ignores_dipole_insertions() {
    let codes = corpus_codes(10);
    let part = labelled_partition(&codes);
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let m = rng.gen_range(0..part.members.len());
        let Some(expected) = part.member_name(m, 0) else { continue };
        let mut g = part.members[m].code.decode().unwrap();
        for _ in 0..rng.gen_range(1..=5) {
            g = random_one_dipole_insertion(&g, &mut rng);
        }
        let got = identify(&g, &part);
        assert_eq!(got.as_ref().ok(), Some(&expected), "member {m} {} got {got:?}", part.members[m].code);
    }
}
