//! Canonical codes: a complete colour-isomorphism invariant.
//!
//! For every root vertex and every ordering of the colours, vertices are
//! numbered in breadth-first discovery order, scanning neighbours in that
//! colour order. The serialization lists, vertex by vertex, the numbers of
//! the neighbours in the same colour order. The code is the lexicographic
//! minimum over all roots and colour orders, so two connected graphs share a
//! code exactly when some vertex bijection and colour permutation maps one
//! onto the other.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::graph::{ColouredGraph, GraphError, TextError, COLOURS};

/// Canonical text form of a connected 4-coloured graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Code(String);

impl Code {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Number of vertices of the encoded graph.
    pub fn order(&self) -> usize {
        self.0.split(':').next().and_then(|s| s.parse().ok()).unwrap_or(0)
    }

    /// Rebuilds the canonically numbered graph `Γ^<`.
    pub fn decode(&self) -> Result<ColouredGraph, TextError> {
        let numbers = parse_numbers(&self.0, COLOURS)?;
        let n = numbers.len() / COLOURS;
        let adj = (0..n)
            .map(|v| {
                let mut row = [0; COLOURS];
                for c in 0..COLOURS {
                    row[c] = numbers[v * COLOURS + c];
                }
                row
            })
            .collect();
        ColouredGraph::from_adjacency(adj).map_err(|e| TextError::new(1, 1, e.to_string()))
    }

    pub(crate) fn from_numbers(numbers: &[usize], colours: usize) -> Self {
        Code(format_numbers(numbers, colours))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code({})", self.0)
    }
}

impl FromStr for Code {
    type Err = TextError;

    /// Parses and validates a code string; the result is accepted only if it
    /// is itself canonical.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let code = Code(s.trim().to_string());
        let g = code.decode()?;
        let (canon, _) = canonical_code(&g).map_err(|e| TextError::new(1, 1, e.to_string()))?;
        if canon != code {
            return Err(TextError::new(1, 1, "code is not in canonical form"));
        }
        Ok(code)
    }
}

fn digit_width(order: usize) -> usize {
    let mut width = 1;
    let mut x = order.saturating_sub(1);
    while x >= 10 {
        x /= 10;
        width += 1;
    }
    width.max(2)
}

fn format_numbers(numbers: &[usize], colours: usize) -> String {
    let n = numbers.len() / colours;
    let width = digit_width(n);
    let mut out = format!("{n}:");
    for (v, chunk) in numbers.chunks(colours).enumerate() {
        if v > 0 {
            out.push(';');
        }
        for (t, x) in chunk.iter().enumerate() {
            if t > 0 {
                out.push(',');
            }
            out.push_str(&format!("{x:0width$}"));
        }
    }
    out
}

fn parse_numbers(s: &str, colours: usize) -> Result<Vec<usize>, TextError> {
    let (head, body) = s
        .split_once(':')
        .ok_or_else(|| TextError::new(1, 1, "code lacks `order:` prefix"))?;
    let n: usize = head.parse().map_err(|_| TextError::new(1, 1, "bad order in code"))?;
    let width = digit_width(n);
    let mut numbers = Vec::with_capacity(n * colours);
    let mut col = head.len() + 2;
    for (v, chunk) in body.split(';').enumerate() {
        let parts: Vec<&str> = chunk.split(',').collect();
        if parts.len() != colours {
            return Err(TextError::new(1, col, format!("vertex {v} has {} entries", parts.len())));
        }
        for p in parts {
            if p.len() != width {
                return Err(TextError::new(1, col, format!("entry `{p}` is not {width} digits wide")));
            }
            let x: usize = p.parse().map_err(|_| TextError::new(1, col, format!("bad entry `{p}`")))?;
            if x >= n {
                return Err(TextError::new(1, col, format!("entry {x} out of range")));
            }
            numbers.push(x);
            col += p.len() + 1;
        }
    }
    if numbers.len() != n * colours {
        return Err(TextError::new(1, col, format!("expected {n} vertices")));
    }
    Ok(numbers)
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Minimum breadth-first serialization over all roots and colour orders.
/// Returns `None` when the graph is disconnected.
pub(crate) fn canonical_numbers<const C: usize>(adj: &[[usize; C]]) -> Option<Vec<usize>> {
    let n = adj.len();
    let perms = permutations(C);
    let mut best: Vec<usize> = Vec::new();
    let mut cand = vec![0usize; n * C];
    let mut number = vec![usize::MAX; n];
    let mut order = vec![0usize; n];
    let mut connected_checked = false;
    for root in 0..n {
        for perm in &perms {
            number.fill(usize::MAX);
            number[root] = 0;
            order[0] = root;
            let mut next = 1;
            let mut state = if best.is_empty() { Ordering::Less } else { Ordering::Equal };
            let mut pos = 0;
            let mut head = 0;
            'bfs: while head < next {
                let v = order[head];
                head += 1;
                for &c in perm {
                    let w = adj[v][c];
                    if number[w] == usize::MAX {
                        number[w] = next;
                        order[next] = w;
                        next += 1;
                    }
                    let x = number[w];
                    cand[pos] = x;
                    if state == Ordering::Equal {
                        state = x.cmp(&best[pos]);
                        if state == Ordering::Greater {
                            break 'bfs;
                        }
                    }
                    pos += 1;
                }
            }
            if state == Ordering::Greater {
                continue;
            }
            if !connected_checked {
                if next != n {
                    return None;
                }
                connected_checked = true;
            }
            if state == Ordering::Less {
                best.clear();
                best.extend_from_slice(&cand);
            }
        }
    }
    Some(best)
}

/// Computes the code of a connected graph together with the canonically
/// numbered graph reconstructed from it.
pub fn canonical_code(g: &ColouredGraph) -> Result<(Code, ColouredGraph), GraphError> {
    let numbers = canonical_numbers(g.adjacency()).ok_or(GraphError::Disconnected)?;
    let code = Code::from_numbers(&numbers, COLOURS);
    let adj = numbers
        .chunks(COLOURS)
        .map(|ch| {
            let mut row = [0; COLOURS];
            row.copy_from_slice(ch);
            row
        })
        .collect();
    Ok((code, ColouredGraph::from_adjacency_unchecked(adj)))
}

/// Shorthand for the code alone.
pub fn code_of(g: &ColouredGraph) -> Result<Code, GraphError> {
    Ok(canonical_code(g)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{rngs::StdRng, SeedableRng};

    fn sample() -> ColouredGraph {
        ColouredGraph::from_edges(
            4,
            [(0, 1, 0), (0, 1, 1), (0, 1, 2), (2, 3, 0), (2, 3, 1), (2, 3, 2), (0, 2, 3), (1, 3, 3)],
        )
        .unwrap()
    }

    #[test]
    fn order_two_code() {
        let (code, g) = canonical_code(&ColouredGraph::order_two()).unwrap();
        assert_eq!(code.as_str(), "2:01,01,01,01;00,00,00,00");
        assert_eq!(g, ColouredGraph::order_two());
        assert_eq!(code.order(), 2);
    }

    #[test]
    fn relabelling_invariance() {
        let g = sample();
        let code = code_of(&g).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let mut vm: Vec<usize> = (0..g.order()).collect();
            vm.shuffle(&mut rng);
            let mut cm = [0, 1, 2, 3];
            cm.shuffle(&mut rng);
            assert_eq!(code_of(&g.relabel(&vm, &cm)).unwrap(), code);
        }
    }

    #[test]
    fn decode_round_trip() {
        let (code, canon) = canonical_code(&sample()).unwrap();
        assert_eq!(code.decode().unwrap(), canon);
        assert_eq!(code_of(&canon).unwrap(), code);
        assert_eq!(code.as_str().parse::<Code>().unwrap(), code);
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = ColouredGraph::order_two().disjoint_union(&ColouredGraph::order_two());
        assert_eq!(canonical_code(&g).unwrap_err(), GraphError::Disconnected);
    }

    #[test]
    fn non_canonical_string_is_rejected() {
        assert!("2:01,01,01,01;00,00,00,00".parse::<Code>().is_ok());
        assert!("4:01,02,02,02;00,03,03,03;03,00,00,00;02,01,01,01".parse::<Code>().is_err());
        assert!("2:1,1,1,1;0,0,0,0".parse::<Code>().is_err());
    }
}
