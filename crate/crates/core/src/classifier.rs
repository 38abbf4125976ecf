//! Sorting rigid crystallizations into classes of graphs that represent the
//! same manifold up to handles, and naming the classes.
//!
//! `θ_i` cancels generalized dipoles of type `{0, i}` and simplifies back to
//! a rigid crystallization. Chains of these maps, one per ordering of the
//! colours 1, 2, 3, give each graph a small set of images; two graphs whose
//! images share a code land in the same class. Every ρ₃-switch along the way
//! splits off a handle (S²×S¹ or its twisted version), and the handle number
//! `h` of a member records how many handles it carries relative to the other
//! members of its class.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::code::{canonical_code, Code};
use crate::graph::{euler_characteristic, manifold_check, ColouredGraph, Colour};
use crate::moves::{
    cancel_dipole, cancel_generalized_dipole, find_dipoles, find_generalized_dipoles, graph_connected_sum,
    simplify_to_rigid, split_connected_sum_all,
};

/// Default cap on generalized-dipole cancellations within one `θ_i`.
pub const THETA_LIMIT: usize = 64;

/// Largest `m` and `n` of a cancelled generalized dipole.
const MAX_CYCLE: usize = 8;

/// The permutations of `{0,1,2,3}` fixing 0, in lexicographic order.
pub const PERMUTATIONS: [[Colour; 4]; 6] =
    [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1]];

pub const ORIENTABLE_HANDLE: &str = "S2xS1";
pub const TWISTED_HANDLE: &str = "S2~xS1";
pub const SPHERE: &str = "S3";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("not a closed 3-manifold gem: {0}")]
    NotAManifold(String),
    #[error("no class matches the reduced crystallization ({0} vertices)")]
    Unknown(usize),
    #[error("ambiguous result: {0}")]
    AmbiguousResult(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaResult {
    pub graph: ColouredGraph,
    /// ρ₃-pairs switched.
    pub h: usize,
}

/// `θ_i` with the default loop guard.
pub fn theta(g: &ColouredGraph, i: Colour) -> ThetaResult {
    theta_with_limit(g, i, THETA_LIMIT)
}

/// Cancels the generalized dipole of type `{0, i}` with the smallest `m·n`
/// (ties broken by apex) and simplifies, until none is left. After `limit`
/// cancellations the smallest rigid graph met so far is returned instead.
pub fn theta_with_limit(g: &ColouredGraph, i: Colour, limit: usize) -> ThetaResult {
    if i == 0 {
        return ThetaResult { graph: g.clone(), h: 0 };
    }
    let mut current = g.clone();
    let mut h = 0;
    let mut best = ThetaResult { graph: g.clone(), h: 0 };
    for _ in 0..limit {
        let mut found = find_generalized_dipoles(&current, (0, i), MAX_CYCLE, MAX_CYCLE);
        found.sort_by_key(|gd| (gd.m * gd.n, gd.apex));
        let Some(next) = found.iter().find_map(|gd| cancel_generalized_dipole(&current, gd).ok()) else {
            return ThetaResult { graph: current, h };
        };
        let (rigid, switched) = simplify_to_rigid(&next);
        h += switched;
        current = rigid;
        if current.order() < best.graph.order() {
            best = ThetaResult { graph: current.clone(), h };
        }
    }
    log::debug!("theta_{i}: loop guard hit at {} vertices", current.order());
    best
}

/// Which composition of `θ` maps produced an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chain {
    /// `θ_«ε_i»` for `ε = PERMUTATIONS[perm]`.
    Plain { perm: usize, i: usize },
    /// The `k`-th deep chain: the full chains of the first `k - 1`
    /// permutations followed by `θ_«ε_i»` of the `k`-th.
    Deep { k: usize, i: usize },
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Chain::Plain { perm, i } => {
                let p = PERMUTATIONS[perm];
                write!(f, "e{}{}{}{}:{i}", p[0], p[1], p[2], p[3])
            }
            Chain::Deep { k, i } => write!(f, "deep{k}:{i}"),
        }
    }
}

/// A `θ`-chain image of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub chain: Chain,
    pub code: Code,
    /// ρ₃-pairs switched along the whole chain.
    pub h: usize,
}

/// Output code, canonically numbered graph and ρ₃ count of one stage.
type Stage = (Code, ColouredGraph, usize);

/// Memoized single stages, keyed by input code and colour. Shared across
/// threads; every entry is a pure function of its key.
#[derive(Default)]
pub struct ThetaCache {
    map: Mutex<HashMap<(Code, Colour), Stage>>,
}

impl ThetaCache {
    fn stage(&self, code: &Code, g: &ColouredGraph, i: Colour) -> Stage {
        if i == 0 {
            return (code.clone(), g.clone(), 0);
        }
        if let Some(hit) = self.map.lock().unwrap().get(&(code.clone(), i)) {
            return hit.clone();
        }
        let r = theta(g, i);
        let (c, canon) = canonical_code(&r.graph).expect("theta keeps graphs connected");
        let out = (c, canon, r.h);
        self.map.lock().unwrap().insert((code.clone(), i), out.clone());
        out
    }
}

/// `θ_«ε_i»`: the stages `θ_{ε_1}, ..., θ_{ε_i}` applied in turn, each to
/// the canonically numbered output of the previous one.
pub fn theta_chain(g: &ColouredGraph, perm: &[Colour; 4], i: usize) -> ThetaResult {
    let cache = ThetaCache::default();
    let (mut code, mut graph) = canonical_code(g).expect("chains need a connected graph");
    let mut h = 0;
    for &colour in &perm[1..=i] {
        let (c, next, dh) = cache.stage(&code, &graph, colour);
        code = c;
        graph = next;
        h += dh;
    }
    ThetaResult { graph, h }
}

/// All chain images of the graph with code `code`: the identity, the plain
/// chains over every permutation, and the deep chains `2..=depth`.
pub fn images(code: &Code, depth: usize, cache: &ThetaCache) -> Vec<Image> {
    let g = code.decode().expect("codes decode");
    let mut out = vec![Image { chain: Chain::Plain { perm: 0, i: 0 }, code: code.clone(), h: 0 }];
    let mut first_full = None;
    for (perm, p) in PERMUTATIONS.iter().enumerate() {
        let (mut c, mut graph, mut h) = (code.clone(), g.clone(), 0);
        for (i, &colour) in p.iter().enumerate().skip(1) {
            let (nc, ng, dh) = cache.stage(&c, &graph, colour);
            c = nc;
            graph = ng;
            h += dh;
            out.push(Image { chain: Chain::Plain { perm, i }, code: c.clone(), h });
        }
        if perm == 0 {
            first_full = Some((c, graph, h));
        }
    }
    let (mut c, mut graph, mut h) = first_full.expect("six permutations");
    for k in 2..=depth.min(PERMUTATIONS.len()) {
        for (i, &colour) in PERMUTATIONS[k - 1].iter().enumerate().skip(1) {
            let (nc, ng, dh) = cache.stage(&c, &graph, colour);
            c = nc;
            graph = ng;
            h += dh;
            out.push(Image { chain: Chain::Deep { k, i }, code: c.clone(), h });
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|im| seen.insert((im.code.clone(), im.h)));
    out
}

/// A manifold written as a connected sum of named prime pieces and handles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ManifoldName {
    /// Sorted, without `S3`.
    pub summands: Vec<String>,
    pub handles: usize,
    /// Selects the handle type; over a non-orientable manifold both handles
    /// give the same sum, so the twisted one is used throughout.
    pub orientable: bool,
}

impl ManifoldName {
    /// Parses `A # B # S2xS1`-style text. Handle summands are counted, `S3`
    /// is dropped; the handle type follows `orientable`.
    pub fn parse(text: &str, orientable: bool) -> Self {
        let mut summands = Vec::new();
        let mut handles = 0;
        for part in text.split(" # ").map(str::trim).filter(|s| !s.is_empty()) {
            match part {
                SPHERE => {}
                ORIENTABLE_HANDLE | TWISTED_HANDLE => handles += 1,
                other => summands.push(other.to_string()),
            }
        }
        summands.sort();
        ManifoldName { summands, handles, orientable }
    }

    /// The sum of two manifolds.
    pub fn sum(&self, other: &ManifoldName) -> ManifoldName {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        summands.sort();
        ManifoldName { summands, handles: self.handles + other.handles, orientable: self.orientable && other.orientable }
    }
}

impl fmt::Display for ManifoldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let handle = if self.orientable { ORIENTABLE_HANDLE } else { TWISTED_HANDLE };
        let parts: Vec<&str> =
            self.summands.iter().map(String::as_str).chain(std::iter::repeat_n(handle, self.handles)).collect();
        if parts.is_empty() {
            f.write_str(SPHERE)
        } else {
            f.write_str(&parts.join(" # "))
        }
    }
}

/// A class name: members with handle number `anchor` represent `base`,
/// members with `anchor + t` represent `base` plus `t` handles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassName {
    /// Prime summands, sorted.
    pub base: Vec<String>,
    pub anchor: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub code: Code,
    pub h: i64,
    pub class: usize,
    pub bipartite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    /// Member indices in input order.
    pub members: Vec<usize>,
    pub name: Option<ClassName>,
}

/// Why two members were merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub member: usize,
    pub chain: Chain,
    pub earlier: usize,
    pub earlier_chain: Chain,
    pub code: Code,
    /// `(h(Γ′) − h_μ) − (h(Γ) − h_ε)` at the time of the match.
    pub offset: i64,
    /// The two were already in one class.
    pub already_joined: bool,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} = {} {} via {} offset={}{}",
            self.member,
            self.chain,
            self.earlier,
            self.earlier_chain,
            self.code,
            self.offset,
            if self.already_joined { " (same class)" } else { "" }
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct ClassPartition {
    pub members: Vec<Member>,
    /// Ordered by their first member.
    pub classes: Vec<Class>,
    pub witnesses: Vec<Witness>,
    /// Image code to `(member, h along the chain)`, in member order.
    pub images: BTreeMap<Code, Vec<(usize, usize)>>,
    pub depth: usize,
}

impl ClassPartition {
    pub fn member_index(&self, code: &Code) -> Option<usize> {
        self.members.iter().position(|m| &m.code == code)
    }

    /// The subclass `c_{i,h}`.
    pub fn subclass(&self, class: usize, h: i64) -> Vec<usize> {
        self.classes[class].members.iter().copied().filter(|&m| self.members[m].h == h).collect()
    }

    /// Name of a member with `extra` further handles, if its class is named
    /// and the handle count is not negative.
    pub fn member_name(&self, member: usize, extra: i64) -> Option<ManifoldName> {
        let m = &self.members[member];
        let name = self.classes[m.class].name.as_ref()?;
        let t = m.h - name.anchor + extra;
        if t < 0 {
            return None;
        }
        Some(ManifoldName { summands: name.base.clone(), handles: t as usize, orientable: m.bipartite })
    }

    /// Recomputes the image index, e.g. after reading a class file.
    pub fn rebuild_images(&mut self, depth: usize) {
        let cache = ThetaCache::default();
        let all: Vec<Vec<Image>> = self.members.par_iter().map(|m| images(&m.code, depth, &cache)).collect();
        self.images.clear();
        for (idx, ims) in all.into_iter().enumerate() {
            for im in ims {
                self.images.entry(im.code).or_default().push((idx, im.h));
            }
        }
        self.depth = depth;
    }

    /// Looks a rigid crystallization up through its own images. Returns the
    /// first matching member and the handle offset `t` such that the graph
    /// represents the member's manifold with `t` handles added (negative:
    /// removed).
    pub fn lookup(&self, g: &ColouredGraph, cache: &ThetaCache) -> Option<(usize, i64)> {
        let code = canonical_code(g).ok()?.0;
        if let Some(m) = self.member_index(&code) {
            return Some((m, 0));
        }
        for im in images(&code, self.depth, cache) {
            if let Some(hits) = self.images.get(&im.code) {
                let (m, hm) = hits[0];
                return Some((m, im.h as i64 - hm as i64));
            }
        }
        None
    }
}

/// Partitions `codes`, taken in the given order, into classes.
///
/// Images are computed in parallel; merges then run sequentially in input
/// order. When `Γ` and an earlier `Γ′` share an image code, the class with
/// the smaller baseline `h − h_chain` is shifted up to the other one before
/// the union. Finally each class is shifted so its smallest `h` is 0.
pub fn classify(codes: &[Code], depth: usize) -> ClassPartition {
    let cache = ThetaCache::default();
    let all: Vec<Vec<Image>> = codes.par_iter().map(|c| images(c, depth, &cache)).collect();

    let n = codes.len();
    let mut h = vec![0i64; n];
    let mut class_of: Vec<usize> = (0..n).collect();
    let mut lists: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    // Image code to (member, chain, h along it), for members already placed.
    let mut index: HashMap<&Code, Vec<(usize, Chain, usize)>> = HashMap::new();
    let mut witnesses = Vec::new();

    for g in 0..n {
        for im in &all[g] {
            let Some(hits) = index.get(&im.code) else { continue };
            // First matching chain of each earlier member.
            let mut firsts: Vec<(usize, Chain, usize)> = Vec::new();
            for &hit in hits {
                if !firsts.iter().any(|f| f.0 == hit.0) {
                    firsts.push(hit);
                }
            }
            firsts.sort_by_key(|f| f.0);
            for (earlier, earlier_chain, hm) in firsts {
                let a = h[earlier] - hm as i64;
                let b = h[g] - im.h as i64;
                let (cg, ce) = (class_of[g], class_of[earlier]);
                let already_joined = cg == ce;
                witnesses.push(Witness {
                    member: g,
                    chain: im.chain,
                    earlier,
                    earlier_chain,
                    code: im.code.clone(),
                    offset: a - b,
                    already_joined,
                });
                if already_joined {
                    if a != b {
                        log::warn!("inconsistent handle numbers between members {earlier} and {g}: offset {}", a - b);
                    }
                    continue;
                }
                if a >= b {
                    for &x in &lists[cg] {
                        h[x] += a - b;
                    }
                } else {
                    for &x in &lists[ce] {
                        h[x] += b - a;
                    }
                }
                let (keep, gone) = (cg.min(ce), cg.max(ce));
                let moved = std::mem::take(&mut lists[gone]);
                for &x in &moved {
                    class_of[x] = keep;
                }
                lists[keep].extend(moved);
            }
        }
        for im in &all[g] {
            index.entry(&im.code).or_default().push((g, im.chain, im.h));
        }
    }

    let mut members: Vec<Member> = codes
        .iter()
        .enumerate()
        .map(|(i, c)| Member {
            code: c.clone(),
            h: h[i],
            class: usize::MAX,
            bipartite: c.decode().map(|g| g.is_bipartite()).unwrap_or(false),
        })
        .collect();
    let mut classes = Vec::new();
    for mut list in lists.into_iter().filter(|l| !l.is_empty()) {
        list.sort_unstable();
        let low = list.iter().map(|&x| members[x].h).min().unwrap_or(0);
        for &x in &list {
            members[x].h -= low;
            members[x].class = classes.len();
        }
        classes.push(Class { members: list, name: None });
    }
    // `lists` is indexed by the smallest member, so classes are already in
    // order of their first member.
    let mut images_index: BTreeMap<Code, Vec<(usize, usize)>> = BTreeMap::new();
    for (idx, ims) in all.into_iter().enumerate() {
        for im in ims {
            images_index.entry(im.code).or_default().push((idx, im.h));
        }
    }
    ClassPartition { members, classes, witnesses, images: images_index, depth }
}

/// Names classes from `known` (code to name text) and then by splitting
/// connected sums whose pieces resolve to named classes. Classes left
/// without a name stay unnamed.
pub fn split_and_name(mut part: ClassPartition, known: &BTreeMap<Code, String>) -> ClassPartition {
    let cache = ThetaCache::default();
    for c in 0..part.classes.len() {
        if part.classes[c].name.is_some() {
            continue;
        }
        'members: for &m in &part.classes[c].members {
            let member = &part.members[m];
            for im in images(&member.code, part.depth, &cache) {
                if let Some(text) = known.get(&im.code) {
                    let parsed = ManifoldName::parse(text, member.bipartite);
                    let anchor = member.h - im.h as i64 - parsed.handles as i64;
                    part.classes[c].name = Some(ClassName { base: parsed.summands, anchor });
                    break 'members;
                }
            }
        }
    }
    // Sum recognition may unlock further classes, so repeat until stable.
    loop {
        let mut progress = false;
        for c in 0..part.classes.len() {
            if part.classes[c].name.is_some() {
                continue;
            }
            if let Some(name) = name_by_splitting(&part, c, &cache) {
                log::info!("class {c} named as a sum");
                part.classes[c].name = Some(name);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    part
}

fn name_by_splitting(part: &ClassPartition, c: usize, cache: &ThetaCache) -> Option<ClassName> {
    for &m in &part.classes[c].members {
        let g = part.members[m].code.decode().ok()?;
        for split in split_connected_sum_all(&g) {
            let left = resolve(part, &split.left, cache);
            let right = resolve(part, &split.right, cache);
            if let (Some(a), Some(b)) = (left, right) {
                let total = a.sum(&b);
                let anchor = part.members[m].h - total.handles as i64;
                return Some(ClassName { base: total.summands, anchor });
            }
        }
    }
    None
}

/// Name of a gem through the named classes of `part`.
fn resolve(part: &ClassPartition, g: &ColouredGraph, cache: &ThetaCache) -> Option<ManifoldName> {
    let (rigid, h) = simplify_to_rigid(g);
    let (m, t) = part.lookup(&rigid, cache)?;
    let mut name = part.member_name(m, t + h as i64)?;
    name.orientable = g.is_bipartite();
    Some(name)
}

/// Tells apart the two classes `c` and `c2` of sums of the manifolds coded
/// by `g1` and `g2` (both bipartite). The sum over a vertex of `g2` in the
/// same bipartition class as the one used in `g1` is labelled
/// `M+ # N+`; the sum over a vertex of the other class `M+ # N-`.
pub fn distinguish_chirality(
    part: &ClassPartition,
    g1: &Code,
    g2: &Code,
    c: usize,
    c2: usize,
    labels: (&str, &str),
) -> Result<BTreeMap<usize, String>, ClassifyError> {
    let a = g1.decode().map_err(|e| ClassifyError::NotAManifold(e.to_string()))?;
    let b = g2.decode().map_err(|e| ClassifyError::NotAManifold(e.to_string()))?;
    let (Some(pa), Some(pb)) = (a.bipartition(), b.bipartition()) else {
        return Err(ClassifyError::AmbiguousResult("both summands must be bipartite".into()));
    };
    let v1 = 0;
    let same = (0..b.order()).find(|&v| pb[v] == pa[v1]).expect("non-empty");
    let other = (0..b.order()).find(|&v| pb[v] != pa[v1]).expect("bipartite graphs have both classes");
    let plus = graph_connected_sum(&a, v1, &b, same);
    let minus = graph_connected_sum(&a, v1, &b, other);

    let mut codes: Vec<Code> = part.classes[c]
        .members
        .iter()
        .chain(&part.classes[c2].members)
        .map(|&m| part.members[m].code.clone())
        .collect();
    let split = codes.len();
    for s in [&plus, &minus] {
        let (rigid, _) = simplify_to_rigid(s);
        codes.push(canonical_code(&rigid).expect("sums are connected").0);
    }
    let sub = classify(&codes, part.depth);
    let class_of = |i: usize| sub.members[i].class;
    let from_c = class_of(0);
    let from_c2 = class_of(part.classes[c].members.len());
    let (kp, km) = (class_of(split), class_of(split + 1));
    if kp == km {
        return Err(ClassifyError::AmbiguousResult("both sums fall into one class".into()));
    }
    let (l1, l2) = labels;
    let mut out = BTreeMap::new();
    for (k, label) in [(kp, format!("{l1}+ # {l2}+")), (km, format!("{l1}+ # {l2}-"))] {
        let target = if k == from_c {
            c
        } else if k == from_c2 {
            c2
        } else {
            return Err(ClassifyError::AmbiguousResult("a sum matches neither class".into()));
        };
        out.insert(target, label);
    }
    Ok(out)
}

/// Recognizes the manifold of an arbitrary gem: 1-dipoles are cancelled
/// until the gem is contracted, the result is simplified to a rigid
/// crystallization and that is looked up among the named classes.
pub fn identify(g: &ColouredGraph, part: &ClassPartition) -> Result<ManifoldName, ClassifyError> {
    let check = manifold_check(g);
    if !g.is_connected() {
        return Err(ClassifyError::NotAManifold("disconnected".into()));
    }
    if !check.is_gem {
        return Err(ClassifyError::NotAManifold("a residue is not a sphere".into()));
    }
    let chi = euler_characteristic(g);
    if chi != 0 {
        return Err(ClassifyError::NotAManifold(format!("Euler characteristic {chi}")));
    }
    let mut current = g.clone();
    while let Some(&d) = find_dipoles(&current).iter().find(|d| d.size() == 1) {
        current = cancel_dipole(&current, d).expect("found dipoles are proper");
    }
    let (rigid, h) = simplify_to_rigid(&current);
    let cache = ThetaCache::default();
    let Some((m, t)) = part.lookup(&rigid, &cache) else {
        return Err(ClassifyError::Unknown(rigid.order()));
    };
    let mut name = part.member_name(m, t + h as i64).ok_or(ClassifyError::Unknown(rigid.order()))?;
    name.orientable = check.bipartite;
    Ok(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::code_of;

    #[test]
    fn order_two_is_fixed() {
        let g = ColouredGraph::order_two();
        for i in 0..4 {
            assert_eq!(theta(&g, i), ThetaResult { graph: g.clone(), h: 0 });
        }
        for p in &PERMUTATIONS {
            for i in 0..4 {
                assert_eq!(theta_chain(&g, p, i).h, 0);
            }
        }
    }

    #[test]
    fn single_member() {
        let c = code_of(&ColouredGraph::order_two()).unwrap();
        let part = classify(&[c], 1);
        assert_eq!(part.classes.len(), 1);
        assert_eq!(part.members[0].h, 0);
    }

    #[test]
    fn names_render() {
        let n = ManifoldName::parse("L(3,1) # S2xS1 # S3", true);
        assert_eq!(n.to_string(), "L(3,1) # S2xS1");
        assert_eq!(ManifoldName::parse("S3", false).to_string(), "S3");
        let twisted = ManifoldName { summands: vec![], handles: 2, orientable: false };
        assert_eq!(twisted.to_string(), "S2~xS1 # S2~xS1");
    }
}
