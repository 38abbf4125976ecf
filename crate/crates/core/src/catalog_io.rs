//! Text files for catalogues and class partitions, and the published
//! catalogue sizes used to check the generator.
//!
//! A catalogue file is a header line followed by one code per line in
//! strictly increasing order:
//!
//! ```text
//! p=8 flags=bipartite,rigid count=3
//! 16:01,01,02,03;...
//! ```
//!
//! A class file starts with `classes=<n> members=<m> depth=<d>`; each class
//! is a line `class <id> ?` or `class <id> anchor=<h> <name>` followed by
//! its members as `<code> h=<h>`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::classifier::{Class, ClassName, ClassPartition, ManifoldName, Member};
use crate::code::Code;
use crate::generator::{build_catalogue_set, Catalogue, CatalogueFlags};
use crate::graph::manifold_check;
use crate::moves::{find_cluster_vertices, is_rigid};

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, message: message.into() })
}

/// One row of the rigid-crystallization census: surface seeds, bipartite
/// and non-bipartite catalogue sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRow {
    pub two_p: usize,
    pub surfaces: usize,
    pub bipartite: usize,
    pub non_bipartite: usize,
}

/// One row of the cluster-less census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterlessRow {
    pub two_p: usize,
    pub bipartite: usize,
    pub bipartite_clusterless: usize,
    pub non_bipartite: usize,
    pub non_bipartite_clusterless: usize,
}

/// The published catalogue sizes up to 30 vertices.
pub struct ExpectationTable;

const fn census(two_p: usize, surfaces: usize, bipartite: usize, non_bipartite: usize) -> CensusRow {
    CensusRow { two_p, surfaces, bipartite, non_bipartite }
}

const fn clusterless(two_p: usize, c: usize, cc: usize, n: usize, nc: usize) -> ClusterlessRow {
    ClusterlessRow { two_p, bipartite: c, bipartite_clusterless: cc, non_bipartite: n, non_bipartite_clusterless: nc }
}

const CENSUS: [CensusRow; 15] = [
    census(2, 1, 1, 0),
    census(4, 0, 0, 0),
    census(6, 0, 0, 0),
    census(8, 2, 1, 0),
    census(10, 0, 0, 0),
    census(12, 1, 1, 0),
    census(14, 1, 1, 1),
    census(16, 2, 3, 1),
    census(18, 2, 4, 1),
    census(20, 8, 23, 9),
    census(22, 8, 44, 12),
    census(24, 32, 262, 88),
    census(26, 57, 1252, 480),
    census(28, 185, 7760, 2790),
    census(30, 466, 56912, 21804),
];

const CLUSTERLESS: [ClusterlessRow; 15] = [
    clusterless(2, 1, 1, 0, 0),
    clusterless(4, 0, 0, 0, 0),
    clusterless(6, 0, 0, 0, 0),
    clusterless(8, 1, 1, 0, 0),
    clusterless(10, 0, 0, 0, 0),
    clusterless(12, 1, 1, 0, 0),
    clusterless(14, 1, 1, 1, 0),
    clusterless(16, 3, 3, 1, 1),
    clusterless(18, 4, 2, 1, 0),
    clusterless(20, 23, 16, 9, 2),
    clusterless(22, 44, 20, 12, 4),
    clusterless(24, 262, 114, 88, 17),
    clusterless(26, 1252, 382, 480, 99),
    clusterless(28, 7760, 1981, 2790, 494),
    clusterless(30, 56912, 10921, 21804, 2989),
];

impl ExpectationTable {
    pub fn census() -> &'static [CensusRow] {
        &CENSUS
    }

    pub fn clusterless() -> &'static [ClusterlessRow] {
        &CLUSTERLESS
    }

    pub fn census_row(two_p: usize) -> Option<CensusRow> {
        CENSUS.iter().copied().find(|r| r.two_p == two_p)
    }

    pub fn clusterless_row(two_p: usize) -> Option<ClusterlessRow> {
        CLUSTERLESS.iter().copied().find(|r| r.two_p == two_p)
    }
}

fn flags_text(flags: CatalogueFlags) -> String {
    let mut s = String::from(if flags.bipartite { "bipartite" } else { "nonbipartite" });
    s.push_str(",rigid");
    if flags.clusterless {
        s.push_str(",clusterless");
    }
    s
}

pub fn encode_catalogue(cat: &Catalogue) -> String {
    let mut out = format!("p={} flags={} count={}\n", cat.p, flags_text(cat.flags), cat.codes.len());
    for code in &cat.codes {
        out.push_str(code.as_str());
        out.push('\n');
    }
    out
}

/// Splits `key=value`, reporting the column of a malformed token.
fn field<'a>(tok: &'a str, key: &str, line: usize, col: usize) -> Result<&'a str, ParseError> {
    match tok.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => err(line, col, format!("expected `{key}=...`, found `{tok}`")),
    }
}

/// Column (1-based) of each whitespace-separated token.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(text: &str, line: usize, col: usize) -> Result<usize, ParseError> {
    text.parse().or_else(|_| err(line, col, format!("bad number `{text}`")))
}

/// Reads a catalogue file and re-checks every member: canonical code, the
/// vertex count, bipartiteness, rigidity and, when flagged, the absence of
/// cluster vertices.
pub fn decode_catalogue(text: &str) -> Result<Catalogue, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let Some((_, header)) = lines.next() else { return err(1, 1, "empty file") };
    let toks = tokens(header);
    if toks.len() != 3 {
        return err(1, 1, "header must be `p=<p> flags=<flags> count=<n>`");
    }
    let p = number(field(toks[0].1, "p", 1, toks[0].0)?, 1, toks[0].0 + 2)?;
    let flag_text = field(toks[1].1, "flags", 1, toks[1].0)?;
    let count = number(field(toks[2].1, "count", 1, toks[2].0)?, 1, toks[2].0 + 6)?;
    let parts: Vec<&str> = flag_text.split(',').collect();
    let bipartite = match parts.first() {
        Some(&"bipartite") => true,
        Some(&"nonbipartite") => false,
        _ => return err(1, toks[1].0 + 6, "first flag must be `bipartite` or `nonbipartite`"),
    };
    let clusterless = match &parts[1..] {
        ["rigid"] => false,
        ["rigid", "clusterless"] => true,
        _ => return err(1, toks[1].0 + 6, "flags must continue with `rigid[,clusterless]`"),
    };
    let flags = CatalogueFlags { bipartite, clusterless };

    let mut codes = BTreeSet::new();
    let mut last: Option<Code> = None;
    for (ln, raw) in lines {
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        let code: Code = line.parse().map_err(|e: crate::TextError| ParseError {
            line: ln,
            col: e.column,
            message: e.message,
        })?;
        if last.as_ref().is_some_and(|l| *l >= code) {
            return err(ln, 1, "codes must be strictly increasing");
        }
        let g = code.decode().expect("parsed codes decode");
        if g.order() != 2 * p {
            return err(ln, 1, format!("expected {} vertices, found {}", 2 * p, g.order()));
        }
        if !manifold_check(&g).is_crystallization {
            return err(ln, 1, "not a crystallization");
        }
        if g.is_bipartite() != bipartite {
            return err(ln, 1, "bipartiteness does not match the header");
        }
        if !is_rigid(&g) {
            return err(ln, 1, "not rigid");
        }
        if clusterless && !find_cluster_vertices(&g).is_empty() {
            return err(ln, 1, "has a cluster vertex");
        }
        last = Some(code.clone());
        codes.insert(code);
    }
    if codes.len() != count {
        let lines = text.lines().count();
        return err(lines.max(1), 1, format!("header announces {count} codes, found {}", codes.len()));
    }
    Ok(Catalogue { p, flags, codes })
}

/// Writes the classes in order of their first member.
pub fn encode_partition(part: &ClassPartition) -> String {
    let mut out = format!("classes={} members={} depth={}\n", part.classes.len(), part.members.len(), part.depth);
    for (id, class) in part.classes.iter().enumerate() {
        match &class.name {
            None => out.push_str(&format!("class {id} ?\n")),
            Some(name) => {
                let base = ManifoldName { summands: name.base.clone(), handles: 0, orientable: true };
                out.push_str(&format!("class {id} anchor={} {base}\n", name.anchor));
            }
        }
        for &m in &class.members {
            out.push_str(&format!("{} h={}\n", part.members[m].code, part.members[m].h));
        }
    }
    out
}

/// Reads a class file. Members are numbered in file order; witnesses are
/// not stored and the image index is left empty (see
/// [`ClassPartition::rebuild_images`]).
pub fn decode_partition(text: &str) -> Result<ClassPartition, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let Some((_, header)) = lines.next() else { return err(1, 1, "empty file") };
    let toks = tokens(header);
    if toks.len() != 3 {
        return err(1, 1, "header must be `classes=<n> members=<m> depth=<d>`");
    }
    let n_classes = number(field(toks[0].1, "classes", 1, toks[0].0)?, 1, toks[0].0)?;
    let n_members = number(field(toks[1].1, "members", 1, toks[1].0)?, 1, toks[1].0)?;
    let depth = number(field(toks[2].1, "depth", 1, toks[2].0)?, 1, toks[2].0)?;

    let mut part = ClassPartition { depth, ..Default::default() };
    let mut last_line = 1;
    for (ln, raw) in lines {
        last_line = ln;
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("class ") {
            let toks = tokens(rest);
            let Some(&(c0, id)) = toks.first() else { return err(ln, 7, "missing class id") };
            if number(id, ln, c0 + 6)? != part.classes.len() {
                return err(ln, c0 + 6, "class ids must count up from 0");
            }
            let name = match toks.get(1) {
                Some(&(_, "?")) if toks.len() == 2 => None,
                Some(&(c1, tok)) => {
                    let anchor: i64 = field(tok, "anchor", ln, c1 + 6)?
                        .parse()
                        .or_else(|_| err(ln, c1 + 6, "bad anchor"))?;
                    let Some(&(c2, _)) = toks.get(2) else { return err(ln, line.len() + 1, "missing name") };
                    let text = &rest[c2 - 1..];
                    Some(ClassName { base: ManifoldName::parse(text, true).summands, anchor })
                }
                None => return err(ln, line.len() + 1, "missing name or `?`"),
            };
            part.classes.push(Class { members: Vec::new(), name });
            continue;
        }
        let Some(class) = part.classes.len().checked_sub(1) else {
            return err(ln, 1, "member line before the first class");
        };
        let toks = tokens(line);
        if toks.len() != 2 {
            return err(ln, 1, "member lines are `<code> h=<h>`");
        }
        let code: Code = toks[0].1.parse().map_err(|e: crate::TextError| ParseError {
            line: ln,
            col: e.column,
            message: e.message,
        })?;
        let h: i64 = field(toks[1].1, "h", ln, toks[1].0)?
            .parse()
            .or_else(|_| err(ln, toks[1].0 + 2, "bad handle number"))?;
        let bipartite = code.decode().expect("parsed codes decode").is_bipartite();
        part.classes[class].members.push(part.members.len());
        part.members.push(Member { code, h, class, bipartite });
    }
    if part.classes.len() != n_classes || part.members.len() != n_members {
        return err(last_line, 1, "class or member count differs from the header");
    }
    if let Some((id, _)) = part.classes.iter().enumerate().find(|(_, c)| c.members.is_empty()) {
        return err(last_line, 1, format!("class {id} is empty"));
    }
    let distinct: BTreeSet<&Code> = part.members.iter().map(|m| &m.code).collect();
    if distinct.len() != part.members.len() {
        return err(last_line, 1, "a code appears twice");
    }
    Ok(part)
}

/// Reads a table of known manifolds: one `<code> <name>` per line, blank
/// lines and `#` comments ignored.
pub fn decode_known(text: &str) -> Result<BTreeMap<Code, String>, ParseError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((code, name)) = line.split_once(char::is_whitespace) else {
            return err(i + 1, line.len() + 1, "expected `<code> <name>`");
        };
        let code: Code = code.parse().map_err(|e: crate::TextError| ParseError {
            line: i + 1,
            col: e.column,
            message: e.message,
        })?;
        out.insert(code, name.trim().to_string());
    }
    Ok(out)
}

/// One line per merge.
pub fn encode_witnesses(part: &ClassPartition) -> String {
    part.witnesses.iter().map(|w| format!("{w}\n")).collect()
}

/// One compared cell of a census table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCheck {
    pub two_p: usize,
    pub column: &'static str,
    pub got: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableReport {
    pub checks: Vec<RowCheck>,
}

impl TableReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &RowCheck> {
        self.checks.iter().filter(|c| c.got != c.expected)
    }

    pub fn is_ok(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.got == c.expected { "ok" } else { "MISMATCH" };
            writeln!(f, "2p={:<3} {:<5} got {:>6} expected {:>6} {mark}", c.two_p, c.column, c.got, c.expected)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("{} table cells differ", .0.mismatches().count())]
    Mismatch(TableReport),
    #[error("tables are only checked up to p = 15")]
    TooLarge,
}

/// Regenerates the catalogues up to `max_p` and compares their sizes with
/// the published tables; with `clusterless` the cluster-less columns are
/// compared too.
pub fn verify_tables(max_p: usize, clusterless: bool) -> Result<TableReport, VerifyError> {
    if max_p > 15 {
        return Err(VerifyError::TooLarge);
    }
    let mut report = TableReport::default();
    for p in 1..=max_p {
        let set = build_catalogue_set(p);
        let two_p = 2 * p;
        let row = ExpectationTable::census_row(two_p).expect("rows cover 2..=30");
        let mut push = |column, got, expected| report.checks.push(RowCheck { two_p, column, got, expected });
        push("S", set.surfaces, row.surfaces);
        push("C", set.bipartite.len(), row.bipartite);
        push("C~", set.non_bipartite.len(), row.non_bipartite);
        if clusterless {
            let row = ExpectationTable::clusterless_row(two_p).expect("rows cover 2..=30");
            push("C'", set.bipartite_clusterless.len(), row.bipartite_clusterless);
            push("C~'", set.non_bipartite_clusterless.len(), row.non_bipartite_clusterless);
        }
        log::info!("checked 2p = {two_p}");
    }
    if report.is_ok() {
        Ok(report)
    } else {
        Err(VerifyError::Mismatch(report))
    }
}
