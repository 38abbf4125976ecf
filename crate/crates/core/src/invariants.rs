//! Integral homology of the dual pseudocomplex `K(Γ)`.
//!
//! Cells of `K(Γ)` correspond to residues: 0-cells to components of the
//! graph without one colour, 1-cells to bicoloured cycles, 2-cells to edges
//! and 3-cells to vertices. Every simplex has vertices of distinct colours,
//! and it is oriented by increasing colour.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graph::{cycle_census, manifold_check, pair_index, residue_census, ColouredGraph, COLOURS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("the graph is not a gem")]
    NotAGem,
}

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn add(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.cols + c] += x;
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Cellular chain complex of `K(Γ)`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    /// Number of cells in each dimension.
    pub cells: [usize; 4],
    /// `boundary[k]` is `∂_{k+1}`, with `cells[k]` rows and `cells[k+1]`
    /// columns.
    pub boundary: [Matrix; 3],
}

impl ChainComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.cells[0] as i64 - self.cells[1] as i64 + self.cells[2] as i64 - self.cells[3] as i64
    }
}

/// Rank and torsion coefficients of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HomologyResult {
    pub rank: usize,
    /// Each entry is at least 2 and divides the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyResult {
    pub fn free(rank: usize) -> Self {
        HomologyResult { rank, torsion: Vec::new() }
    }

    /// The group presented by generators with relations given by the
    /// invariant factors `factors` (zero-padded to `generators`).
    pub fn from_invariant_factors(generators: usize, factors: &[BigInt]) -> Self {
        let nonzero: Vec<&BigInt> = factors.iter().filter(|d| !d.is_zero()).collect();
        let torsion = nonzero.iter().filter(|d| !d.is_one()).map(|d| (*d).clone()).collect();
        HomologyResult { rank: generators - nonzero.len(), torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// `self ⊕ other`, in canonical form.
    pub fn direct_sum(&self, other: &HomologyResult) -> HomologyResult {
        // Invariant factors of a diagonal matrix.
        let diag: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let n = diag.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            m[i][i] = d;
        }
        let mut out = HomologyResult::from_invariant_factors(n, &smith_normal_form(m));
        out.rank = self.rank + other.rank;
        out
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The chain complex of `K(g)`.
pub fn chain_complex(g: &ColouredGraph) -> Result<ChainComplex, HomologyError> {
    if !manifold_check(g).is_gem {
        return Err(HomologyError::NotAGem);
    }
    Ok(chain_complex_unchecked(g))
}

pub(crate) fn chain_complex_unchecked(g: &ColouredGraph) -> ChainComplex {
    let n = g.order();
    let residues = residue_census(g);
    let census = cycle_census(g);

    // 0-cells, numbered by colour then component.
    let mut vertex_offset = [0; COLOURS];
    for c in 1..COLOURS {
        vertex_offset[c] = vertex_offset[c - 1] + residues.counts[c - 1];
    }
    let cells0 = residues.total();
    let vertex_cell = |c: usize, v: usize| vertex_offset[c] + residues.component_of[c][v];

    // 1-cells, numbered by pair then cycle.
    let mut cycle_offset = [0; 6];
    for p in 1..6 {
        cycle_offset[p] = cycle_offset[p - 1] + census.cycles[p - 1].len();
    }
    let cells1 = census.total();
    let edge_cell = |i: usize, j: usize, v: usize| {
        let p = pair_index(i, j);
        cycle_offset[p] + census.cycle_of[v][p]
    };

    // 2-cells, numbered by colour then edge.
    let mut triangle_of = vec![[0; COLOURS]; n];
    let mut cells2 = 0;
    for c in 0..COLOURS {
        for (v, w) in g.edges(c) {
            triangle_of[v][c] = cells2;
            triangle_of[w][c] = cells2;
            cells2 += 1;
        }
    }

    let mut d1 = Matrix::zeros(cells0, cells1);
    for (p, cycles) in census.cycles.iter().enumerate() {
        let (i, j) = crate::graph::PAIRS[p];
        let (k, l) = crate::graph::complement_pair(i, j);
        for cycle in cycles {
            let v = cycle[0];
            let e = edge_cell(i, j, v);
            d1.add(vertex_cell(l, v), e, 1);
            d1.add(vertex_cell(k, v), e, -1);
        }
    }

    let mut d2 = Matrix::zeros(cells1, cells2);
    for c in 0..COLOURS {
        for (v, _) in g.edges(c) {
            let t = triangle_of[v][c];
            // Vertices of the triangle carry the colours other than `c`; the
            // face opposite colour `x` is dual to the {c,x}-cycle.
            let others = (0..COLOURS).filter(|&x| x != c);
            for (pos, x) in others.enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                d2.add(edge_cell(c.min(x), c.max(x), v), t, sign);
            }
        }
    }

    let mut d3 = Matrix::zeros(cells2, n);
    for v in 0..n {
        for c in 0..COLOURS {
            let sign = if c % 2 == 0 { 1 } else { -1 };
            d3.add(triangle_of[v][c], v, sign);
        }
    }

    ChainComplex { cells: [cells0, cells1, cells2, n], boundary: [d1, d2, d3] }
}

fn to_big(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows).map(|r| (0..m.cols).map(|c| BigInt::from(m.get(r, c))).collect()).collect()
}

/// The nonzero invariant factors of `a`, each positive and dividing the next.
///
/// Every round moves the smallest nonzero entry of the remaining block to the
/// pivot and reduces its row and column modulo it. Choosing the pivot anew
/// each round keeps the entries small.
pub fn smith_normal_form(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in a.iter().enumerate().skip(t) {
                for (c, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(br, bc)| x.magnitude() < a[br][bc].magnitude()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else { return out };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let x = &a[t][c] * &q;
                    a[r][c] -= x;
                }
                clean &= a[r][t].is_zero();
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let x = &row[t] * &q;
                    row[c] -= x;
                }
                clean &= a[t][c].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block; if not, fold the
            // offending row into the pivot row and go again.
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a[r][c].is_multiple_of(&a[t][t])));
            match bad {
                Some(r) => {
                    for c in t + 1..cols {
                        let x = a[r][c].clone();
                        a[t][c] += x;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// `H_0 .. H_3` of `K(g)`.
pub fn homology(g: &ColouredGraph) -> Result<[HomologyResult; 4], HomologyError> {
    Ok(homology_of(&chain_complex(g)?))
}

pub fn homology_of(cx: &ChainComplex) -> [HomologyResult; 4] {
    let factors: Vec<Vec<BigInt>> = cx.boundary.iter().map(|d| smith_normal_form(to_big(d))).collect();
    let rank = |k: usize| if k == 0 || k == 4 { 0 } else { factors[k - 1].len() };
    std::array::from_fn(|k| {
        let torsion = if k < 3 {
            factors[k].iter().filter(|d| !d.is_one()).cloned().collect()
        } else {
            Vec::new()
        };
        HomologyResult { rank: cx.cells[k] - rank(k) - rank(k + 1), torsion }
    })
}

/// First homology group of `K(g)`.
pub fn first_homology(g: &ColouredGraph) -> Result<HomologyResult, HomologyError> {
    let cx = chain_complex(g)?;
    let d1 = smith_normal_form(to_big(&cx.boundary[0])).len();
    let f2 = smith_normal_form(to_big(&cx.boundary[1]));
    Ok(HomologyResult {
        rank: cx.cells[1] - d1 - f2.len(),
        torsion: f2.into_iter().filter(|d| !d.is_one()).collect(),
    })
}
