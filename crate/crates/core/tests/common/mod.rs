//! Oracles shared by the integration tests. They only read the adjacency of
//! a graph and recompute everything else from scratch.

#![allow(dead_code, clippy::needless_range_loop)]

use gemcat::invariants::HomologyResult;
use gemcat::ColouredGraph;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite form: pivots positive, entries above a pivot reduced
/// into `0..pivot`.
fn hermite_rows(mut a: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r0 = 0;
    for c in 0..cols {
        if r0 == rows {
            break;
        }
        while let Some(p) = (r0..rows).filter(|&r| !a[r][c].is_zero()).min_by_key(|&r| a[r][c].abs()) {
            a.swap(r0, p);
            let mut done = true;
            for r in r0 + 1..rows {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[r0][c]);
                let pivot_row = a[r0].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                done &= a[r][c].is_zero();
            }
            if done {
                break;
            }
        }
        if a[r0][c].is_zero() {
            continue;
        }
        if a[r0][c].is_negative() {
            for x in a[r0].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = a[r0].clone();
        for r in 0..r0 {
            let q = a[r][c].div_floor(&pivot_row[c]);
            for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        r0 += 1;
    }
    a
}

fn transpose(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    (0..cols).map(|c| a.iter().map(|row| row[c].clone()).collect()).collect()
}

/// Invariant factors by alternating Hermite forms of the matrix and its
/// transpose until it is diagonal, then restoring the divisibility chain by
/// gcd/lcm exchanges.
pub fn oracle_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    loop {
        a = transpose(&hermite_rows(a));
        let diagonal = a.iter().enumerate().all(|(r, row)| row.iter().enumerate().all(|(c, x)| r == c || x.is_zero()));
        if diagonal {
            break;
        }
    }
    let mut diag: Vec<BigInt> =
        a.iter().enumerate().filter_map(|(r, row)| row.get(r)).filter(|x| !x.is_zero()).map(|x| x.abs()).collect();
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// First homology of `K(g)` as the abelianized edge-path group: one
/// generator per 1-cell off a spanning tree, one relation per 2-cell.
pub fn oracle_first_homology(g: &ColouredGraph) -> HomologyResult {
    let n = g.order();
    let adj = g.adjacency();

    // 0-cells: (colour, representative vertex of the residue).
    let mut residue = vec![[0usize; 4]; n];
    let mut k_vertices = 0;
    for c in 0..4 {
        let mut parent: Vec<usize> = (0..n).collect();
        for v in 0..n {
            for d in (0..4).filter(|&d| d != c) {
                let (a, b) = (find(&mut parent, v), find(&mut parent, adj[v][d]));
                parent[a] = b;
            }
        }
        let mut id = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if id[r] == usize::MAX {
                id[r] = k_vertices;
                k_vertices += 1;
            }
            residue[v][c] = id[r];
        }
    }

    // 1-cells: bicoloured cycles, oriented from the lower to the higher
    // colour of the complementary pair.
    let mut cycle_id = vec![[usize::MAX; 16]; n];
    let mut k_edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let key = i * 4 + j;
            let (k, l) = {
                let rest: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
                (rest[0], rest[1])
            };
            for v in 0..n {
                if cycle_id[v][key] != usize::MAX {
                    continue;
                }
                let id = k_edges.len();
                k_edges.push((residue[v][k], residue[v][l]));
                let mut u = v;
                let mut colour = i;
                loop {
                    cycle_id[u][key] = id;
                    u = adj[u][colour];
                    colour = if colour == i { j } else { i };
                    if u == v && colour == i {
                        break;
                    }
                }
            }
        }
    }
    let edge = |v: usize, a: usize, b: usize| cycle_id[v][a.min(b) * 4 + a.max(b)];

    let mut parent: Vec<usize> = (0..k_vertices).collect();
    let mut generator = vec![usize::MAX; k_edges.len()];
    let mut gens = 0;
    for (e, &(x, y)) in k_edges.iter().enumerate() {
        let (a, b) = (find(&mut parent, x), find(&mut parent, y));
        if a == b {
            generator[e] = gens;
            gens += 1;
        } else {
            parent[a] = b;
        }
    }

    // A c-edge is a triangle with vertices coloured a < b < d; its boundary
    // walks a -> b -> d -> a.
    let mut relations = Vec::new();
    for c in 0..4 {
        for v in 0..n {
            let w = adj[v][c];
            if w < v {
                continue;
            }
            let o: Vec<usize> = (0..4).filter(|&x| x != c).collect();
            let (a, b, d) = (o[0], o[1], o[2]);
            let mut row = vec![BigInt::zero(); gens];
            for (e, sign) in [(edge(v, c, d), 1), (edge(v, c, a), 1), (edge(v, c, b), -1)] {
                if generator[e] != usize::MAX {
                    row[generator[e]] += sign;
                }
            }
            relations.push(row);
        }
    }
    if gens == 0 {
        return HomologyResult::default();
    }
    HomologyResult::from_invariant_factors(gens, &oracle_invariant_factors(relations))
}

/// Every member of the rigid catalogues with at most `2 * max_p` vertices,
/// with its bipartiteness flag.
pub fn corpus(max_p: usize) -> Vec<(ColouredGraph, bool)> {
    let mut out = Vec::new();
    for p in 1..=max_p {
        let s = gemcat::generator::build_catalogue_set(p);
        out.extend(s.bipartite.graphs().map(|g| (g, true)));
        out.extend(s.non_bipartite.graphs().map(|g| (g, false)));
    }
    out
}

/// Order-8 crystallizations of the orientable (`true`) and non-orientable
/// S²-bundle over S¹; each has four ρ₃-pairs.
pub fn handle_gem(orientable: bool) -> ColouredGraph {
    let adj = if orientable {
        vec![[1, 1, 2, 5], [0, 0, 3, 7], [3, 4, 0, 3], [2, 6, 1, 2], [5, 2, 6, 6], [4, 7, 7, 0], [7, 3, 4, 4], [6, 5, 5, 1]]
    } else {
        vec![[1, 1, 2, 7], [0, 0, 3, 5], [3, 4, 0, 3], [2, 6, 1, 2], [5, 2, 6, 6], [4, 7, 7, 1], [7, 3, 4, 4], [6, 5, 5, 0]]
    };
    ColouredGraph::from_adjacency(adj).unwrap()
}

/// A random proper dipole insertion joined by `size` colours, if one is
/// found within a few hundred attempts.
pub fn random_dipole_insertion(g: &ColouredGraph, size: u32, rng: &mut impl rand::Rng) -> Option<ColouredGraph> {
    use gemcat::moves::{insert_dipole, DipoleSite};
    let masks: Vec<u8> = (1u8..15).filter(|m| m.count_ones() == size).collect();
    for _ in 0..300 {
        let colours = masks[rng.gen_range(0..masks.len())];
        let cuts = (0..4)
            .filter(|c| colours & (1 << c) == 0)
            .map(|c| {
                let x = rng.gen_range(0..g.order());
                let y = g.neighbour(x, c);
                if rng.gen_bool(0.5) {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        if let Ok(h) = insert_dipole(g, &DipoleSite { colours, cuts }) {
            return Some(h);
        }
    }
    None
}

/// Codes of every catalogue member up to `2 * max_p` vertices, by order and
/// then code.
pub fn corpus_codes(max_p: usize) -> Vec<gemcat::Code> {
    let mut out = Vec::new();
    for p in 1..=max_p {
        let s = gemcat::generator::build_catalogue_set(p);
        out.extend(s.bipartite.codes.iter().cloned());
        out.extend(s.non_bipartite.codes.iter().cloned());
    }
    out.sort_by(|a, b| (a.order(), a).cmp(&(b.order(), b)));
    out
}

/// The partition of `codes` with every class named `M<id>` through its
/// first member of handle number 0, except the class of the order-two gem,
/// named S3.
pub fn labelled_partition(codes: &[gemcat::Code]) -> gemcat::classifier::ClassPartition {
    use gemcat::classifier::{classify, split_and_name};
    let part = classify(codes, 1);
    let sphere = gemcat::code_of(&ColouredGraph::order_two()).unwrap();
    let mut known = std::collections::BTreeMap::new();
    for (i, class) in part.classes.iter().enumerate() {
        let first = class.members.iter().copied().find(|&m| part.members[m].h == 0).unwrap();
        let code = part.members[first].code.clone();
        let name = if class.members.iter().any(|&m| part.members[m].code == sphere) { "S3".to_string() } else { format!("M{i}") };
        known.insert(code, name);
    }
    split_and_name(part, &known)
}

/// A random 1-dipole insertion of colour `c`: a vertex set `S` is grown
/// inside a residue without colour `c` until exactly one edge of each other
/// colour leaves it, and those three edges are cut with `S` on the side of
/// the first new vertex.
pub fn random_one_dipole_insertion(g: &ColouredGraph, rng: &mut impl rand::Rng) -> ColouredGraph {
    use gemcat::moves::{insert_dipole, DipoleSite};
    loop {
        let c = rng.gen_range(0..4);
        let others: Vec<usize> = (0..4).filter(|&d| d != c).collect();
        let mut inside = vec![false; g.order()];
        let start = rng.gen_range(0..g.order());
        inside[start] = true;
        let mut members = vec![start];
        let mut candidates = Vec::new();
        for _ in 0..g.order() {
            let boundary: Vec<(usize, usize, usize)> = members
                .iter()
                .flat_map(|&v| others.iter().map(move |&d| (v, d)))
                .filter(|&(v, d)| !inside[g.neighbour(v, d)])
                .map(|(v, d)| (v, d, g.neighbour(v, d)))
                .collect();
            let mut colours: Vec<usize> = boundary.iter().map(|b| b.1).collect();
            colours.sort_unstable();
            if colours == others {
                let cuts = others
                    .iter()
                    .map(|&d| boundary.iter().find(|b| b.1 == d).map(|b| (b.0, b.2)).unwrap())
                    .collect::<Vec<_>>();
                candidates.push(cuts);
            }
            if boundary.is_empty() {
                break;
            }
            let (_, _, w) = boundary[rng.gen_range(0..boundary.len())];
            inside[w] = true;
            members.push(w);
        }
        if candidates.is_empty() {
            continue;
        }
        let cuts = candidates.swap_remove(rng.gen_range(0..candidates.len()));
        if let Ok(h) = insert_dipole(g, &DipoleSite { colours: 1 << c, cuts }) {
            return h;
        }
    }
}
