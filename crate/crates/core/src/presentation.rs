//! Bound-quiver presentations of zero-relation and special biserial algebras.
//!
//! A presentation is read from JSON of the form
//!
//! ```json
//! {
//!   "vertices": ["v"],
//!   "arrows": [{"name": "a", "source": "v", "target": "v"}],
//!   "relations": [["a", "a"]],
//!   "binomial_relations": [{"lhs": ["a"], "rhs": ["a"], "coefficient": "lambda"}]
//! }
//! ```
//!
//! Paths (relations, binomial sides) are listed source-to-target. Arrows are
//! stored sorted by name, so [`ArrowId`] order is arrow-name order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::notation::{self, Notation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let raw = RawPresentation {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, s, t)| RawArrow {
                    name: n.as_ref().to_string(),
                    source: s.as_ref().to_string(),
                    target: t.as_ref().to_string(),
                })
                .collect(),
            relations: Vec::new(),
            binomial_relations: Vec::new(),
        };
        Ok(Presentation::from_raw(raw)?.quiver)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows
            .binary_search_by(|a| a.name.as_str().cmp(name))
            .ok()
            .map(ArrowId)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    /// Whether every arrow name is a single character (names then render
    /// without separators).
    pub fn single_char_names(&self) -> bool {
        self.arrows.iter().all(|a| a.name.chars().count() == 1)
    }

    pub fn uppercase_available(&self) -> bool {
        notation::uppercase_available(self.arrows.iter().map(|a| a.name.as_str()))
    }
}

/// A non-empty composable sequence of arrows, stored source-to-target.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<ArrowId>);

impl Path {
    pub fn new(quiver: &Quiver, arrows: Vec<ArrowId>) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::Field {
                location: "path".into(),
                message: "paths must contain at least one arrow".into(),
            });
        }
        if let Some(&bad) = arrows.iter().find(|a| a.0 >= quiver.arrow_count()) {
            return Err(Error::UnknownArrow(bad.0));
        }
        for pair in arrows.windows(2) {
            if quiver.target(pair[0]) != quiver.source(pair[1]) {
                return Err(Error::Field {
                    location: "path".into(),
                    message: format!(
                        "arrow `{}` does not end where `{}` starts",
                        quiver.arrow_name(pair[0]),
                        quiver.arrow_name(pair[1])
                    ),
                });
            }
        }
        Ok(Path(arrows))
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn source(&self, quiver: &Quiver) -> VertexId {
        quiver.source(self.0[0])
    }

    pub fn target(&self, quiver: &Quiver) -> VertexId {
        quiver.target(*self.0.last().unwrap())
    }

    /// Whether `other` occurs as a contiguous block of `self`.
    pub fn contains_subpath(&self, other: &Path) -> bool {
        other.len() <= self.len() && self.0.windows(other.len()).any(|w| w == other.0.as_slice())
    }

    /// Right-to-left rendering (`a_k⋯a_1`).
    pub fn display(&self, quiver: &Quiver, compress: bool) -> String {
        let syl: Vec<(&str, bool)> = self
            .0
            .iter()
            .rev()
            .map(|&a| (quiver.arrow_name(a), false))
            .collect();
        notation::render_syllables(
            &syl,
            Notation::Superscript,
            quiver.single_char_names(),
            compress,
        )
    }

    fn names(&self, quiver: &Quiver) -> Vec<String> {
        self.0
            .iter()
            .map(|&a| quiver.arrow_name(a).to_string())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialRelation {
    pub lhs: Path,
    pub rhs: Path,
    /// Opaque nonzero scalar; never evaluated.
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<Path>,
    binomial_relations: Vec<BinomialRelation>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    name: String,
    source: String,
    target: String,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawBinomial {
    lhs: Vec<String>,
    rhs: Vec<String>,
    coefficient: serde_json::Value,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    vertices: Vec<String>,
    arrows: Vec<RawArrow>,
    #[serde(default)]
    relations: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    binomial_relations: Vec<RawBinomial>,
}

/// Parses a presentation from its JSON text form.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let raw: RawPresentation = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Presentation::from_raw(raw)
}

fn coefficient_literal(value: &serde_json::Value, location: &str) -> Result<String> {
    let bad = |message: &str| Error::Field {
        location: location.to_string(),
        message: message.to_string(),
    };
    let text = match value {
        serde_json::Value::String(s) => s.trim().to_string(),
        serde_json::Value::Number(n) => n.to_string(),
        _ => return Err(bad("coefficient must be a string or number literal")),
    };
    if text.is_empty() {
        return Err(bad("coefficient is empty"));
    }
    if text.parse::<f64>().map(|x| x == 0.0).unwrap_or(false) {
        return Err(bad("coefficient must be nonzero"));
    }
    Ok(text)
}

impl Presentation {
    fn from_raw(raw: RawPresentation) -> Result<Self> {
        if raw.vertices.is_empty() {
            return Err(Error::Field {
                location: "vertices".into(),
                message: "vertex set must be non-empty".into(),
            });
        }
        let mut seen = HashSet::new();
        for v in &raw.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Duplicate {
                    kind: "vertex",
                    name: v.clone(),
                });
            }
        }
        let vertex_index: HashMap<&str, usize> = raw
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();

        let mut arrows = Vec::with_capacity(raw.arrows.len());
        let mut names = HashSet::new();
        for (i, a) in raw.arrows.iter().enumerate() {
            if a.name.is_empty() {
                return Err(Error::Field {
                    location: format!("arrows[{i}].name"),
                    message: "arrow name is empty".into(),
                });
            }
            if !names.insert(a.name.as_str()) {
                return Err(Error::Duplicate {
                    kind: "arrow",
                    name: a.name.clone(),
                });
            }
            let lookup = |name: &str, field: &str| {
                vertex_index
                    .get(name)
                    .map(|&v| VertexId(v))
                    .ok_or_else(|| Error::Reference {
                        kind: "vertex",
                        name: name.to_string(),
                        location: format!("arrows[{i}].{field}"),
                    })
            };
            arrows.push(Arrow {
                name: a.name.clone(),
                source: lookup(&a.source, "source")?,
                target: lookup(&a.target, "target")?,
            });
        }
        arrows.sort_by(|x, y| x.name.cmp(&y.name));
        let quiver = Quiver {
            vertices: raw.vertices,
            arrows,
        };

        let resolve = |names: &[String], location: String| -> Result<Path> {
            if names.is_empty() {
                return Err(Error::Field {
                    location,
                    message: "paths must contain at least one arrow".into(),
                });
            }
            let ids = names
                .iter()
                .enumerate()
                .map(|(j, n)| {
                    quiver.arrow_by_name(n).ok_or_else(|| Error::Reference {
                        kind: "arrow",
                        name: n.clone(),
                        location: format!("{location}[{j}]"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Path::new(&quiver, ids).map_err(|e| match e {
                Error::Field { message, .. } => Error::Field { location, message },
                other => other,
            })
        };

        let relations = raw
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| resolve(r, format!("relations[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let binomial_relations = raw
            .binomial_relations
            .iter()
            .enumerate()
            .map(|(i, b)| {
                Ok(BinomialRelation {
                    lhs: resolve(&b.lhs, format!("binomial_relations[{i}].lhs"))?,
                    rhs: resolve(&b.rhs, format!("binomial_relations[{i}].rhs"))?,
                    coefficient: coefficient_literal(
                        &b.coefficient,
                        &format!("binomial_relations[{i}].coefficient"),
                    )?,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Presentation {
            quiver,
            relations,
            binomial_relations,
        })
    }

    pub fn new(
        quiver: Quiver,
        relations: Vec<Path>,
        binomial_relations: Vec<BinomialRelation>,
    ) -> Self {
        Presentation {
            quiver,
            relations,
            binomial_relations,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn binomial_relations(&self) -> &[BinomialRelation] {
        &self.binomial_relations
    }

    /// Canonical JSON encoding (arrows sorted by name).
    pub fn to_json(&self) -> String {
        let q = &self.quiver;
        let raw = RawPresentation {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| RawArrow {
                    name: a.name.clone(),
                    source: q.vertex_name(a.source).to_string(),
                    target: q.vertex_name(a.target).to_string(),
                })
                .collect(),
            relations: self.relations.iter().map(|r| r.names(q)).collect(),
            binomial_relations: self
                .binomial_relations
                .iter()
                .map(|b| RawBinomial {
                    lhs: b.lhs.names(q),
                    rhs: b.rhs.names(q),
                    coefficient: serde_json::Value::String(b.coefficient.clone()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("presentation serializes")
    }

    /// Whether the path lies in the ideal generated by the monomial relations.
    pub fn path_in_ideal(&self, arrows: &[ArrowId]) -> bool {
        self.relations
            .iter()
            .any(|r| r.len() <= arrows.len() && arrows.windows(r.len()).any(|w| w == r.arrows()))
    }

    pub fn max_relation_length(&self) -> usize {
        self.relations.iter().map(Path::len).max().unwrap_or(0)
    }
}

/// Drops duplicate relations and every relation that contains another one as
/// a subpath. Keeps the first occurrence order of the survivors.
pub fn normalize_relations(p: &Presentation) -> Presentation {
    let mut unique: Vec<Path> = Vec::new();
    for r in &p.relations {
        if !unique.contains(r) {
            unique.push(r.clone());
        }
    }
    let kept = unique
        .iter()
        .enumerate()
        .filter(|(i, r)| {
            !unique
                .iter()
                .enumerate()
                .any(|(j, other)| j != *i && r.contains_subpath(other))
        })
        .map(|(_, r)| r.clone())
        .collect();
    Presentation {
        quiver: p.quiver.clone(),
        relations: kept,
        binomial_relations: p.binomial_relations.clone(),
    }
}

/// Replaces every binomial relation `u - λv` by the two monomials `u`, `v`.
pub fn tilde_presentation(p: &Presentation) -> Result<Presentation> {
    if p.binomial_relations.is_empty() {
        return Ok(p.clone());
    }
    let q = &p.quiver;
    let mut relations = p.relations.clone();
    for (index, b) in p.binomial_relations.iter().enumerate() {
        if b.lhs.source(q) != b.rhs.source(q) || b.lhs.target(q) != b.rhs.target(q) {
            return Err(Error::BinomialEndpoints { index });
        }
        relations.push(b.lhs.clone());
        relations.push(b.rhs.clone());
    }
    Ok(normalize_relations(&Presentation {
        quiver: p.quiver.clone(),
        relations,
        binomial_relations: Vec::new(),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticCode {
    BinomialRelations,
    ShortRelation,
    InfiniteDirectStrings,
    OutDegree,
    InDegree,
    Successor,
    Predecessor,
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagnosticCode::BinomialRelations => "binomial-relations",
            DiagnosticCode::ShortRelation => "short-relation",
            DiagnosticCode::InfiniteDirectStrings => "infinite-direct-strings",
            DiagnosticCode::OutDegree => "out-degree",
            DiagnosticCode::InDegree => "in-degree",
            DiagnosticCode::Successor => "successor",
            DiagnosticCode::Predecessor => "predecessor",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
    pub object: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub admissible: bool,
    pub string_algebra: bool,
    /// Present iff the presentation is admissible.
    pub window_n: Option<usize>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn has(&self, code: DiagnosticCode) -> bool {
        self.diagnostics.iter().any(|d| d.code == code)
    }
}

/// Outcome of exploring relation-free paths.
enum DirectStrings {
    /// Length of the longest relation-free path (0 if there is none).
    Finite(usize),
    /// A relation-free path that can be repeated forever.
    Infinite(Vec<ArrowId>),
}

/// Decides whether there are finitely many relation-free paths.
///
/// States are relation-free paths of length `w = max(1, maxrel - 1)`; a
/// transition appends an arrow and drops the first one. Since every relation
/// fits in a window of length `w + 1`, a path is relation-free iff all its
/// windows are, so infinitely many relation-free paths exist iff the
/// transition graph has a cycle.
fn explore_direct_strings(p: &Presentation) -> DirectStrings {
    let q = &p.quiver;
    let w = p.max_relation_length().saturating_sub(1).max(1);
    let relations: HashSet<&[ArrowId]> = p.relations.iter().map(|r| r.arrows()).collect();
    let max_rel = p.max_relation_length();
    let ends_with_relation = |path: &[ArrowId]| {
        (1..=max_rel.min(path.len())).any(|k| relations.contains(&path[path.len() - k..]))
    };

    let mut level: Vec<Vec<ArrowId>> = q
        .arrow_ids()
        .map(|a| vec![a])
        .filter(|path| !ends_with_relation(path))
        .collect();
    let mut longest = if level.is_empty() { 0 } else { 1 };
    for _ in 1..w {
        let mut next = Vec::new();
        for path in &level {
            let end = q.target(*path.last().unwrap());
            for a in q.arrow_ids().filter(|&a| q.source(a) == end) {
                let mut ext = path.clone();
                ext.push(a);
                if !ends_with_relation(&ext) {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            return DirectStrings::Finite(longest);
        }
        longest += 1;
        level = next;
    }

    let index: HashMap<&[ArrowId], usize> = level
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); level.len()];
    for (i, path) in level.iter().enumerate() {
        let end = q.target(*path.last().unwrap());
        for a in q.arrow_ids().filter(|&a| q.source(a) == end) {
            let mut ext = path.clone();
            ext.push(a);
            if !ends_with_relation(&ext) {
                succ[i].push(index[&ext[1..]]);
            }
        }
    }

    // Iterative DFS: colour 1 = on stack, 2 = done; depth[v] = longest path from v.
    let n = level.len();
    let mut colour = vec![0u8; n];
    let mut depth = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if colour[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        colour[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < succ[v].len() {
                let u = succ[v][*next];
                *next += 1;
                match colour[u] {
                    0 => {
                        colour[u] = 1;
                        parent[u] = v;
                        stack.push((u, 0));
                    }
                    1 => {
                        // Back edge v -> u closes a cycle u -> ... -> v -> u.
                        let mut cycle = vec![v];
                        let mut x = v;
                        while x != u {
                            x = parent[x];
                            cycle.push(x);
                        }
                        cycle.reverse();
                        let witness = cycle.iter().map(|&s| level[s][0]).collect();
                        return DirectStrings::Infinite(witness);
                    }
                    _ => {}
                }
            } else {
                colour[v] = 2;
                depth[v] = succ[v].iter().map(|&u| depth[u] + 1).max().unwrap_or(0);
                stack.pop();
            }
        }
    }
    DirectStrings::Finite(w + depth.into_iter().max().unwrap_or(0))
}

/// Admissibility check for a monomial presentation.
///
/// When admissible, `window_n = max(1, max relation length - 1, longest direct string)`.
pub fn validate_zero_relation(p: &Presentation) -> ValidationReport {
    let q = &p.quiver;
    let mut diagnostics = Vec::new();
    if !p.binomial_relations.is_empty() {
        diagnostics.push(Diagnostic {
            code: DiagnosticCode::BinomialRelations,
            message: "binomial relations present; reduce with tilde_presentation first".into(),
            object: format!("{} binomial relation(s)", p.binomial_relations.len()),
        });
    }
    for r in p.relations.iter().filter(|r| r.len() < 2) {
        diagnostics.push(Diagnostic {
            code: DiagnosticCode::ShortRelation,
            message: "relations must have length at least 2".into(),
            object: r.display(q, false),
        });
    }
    let direct = explore_direct_strings(p);
    let longest = match &direct {
        DirectStrings::Finite(l) => Some(*l),
        DirectStrings::Infinite(cycle) => {
            let path = Path(cycle.clone());
            diagnostics.push(Diagnostic {
                code: DiagnosticCode::InfiniteDirectStrings,
                message: "a relation-free cycle of arrows repeats forever".into(),
                object: path.display(q, false),
            });
            None
        }
    };
    let admissible = diagnostics.is_empty();
    let window_n = match (admissible, longest) {
        (true, Some(l)) => Some(
            1usize
                .max(p.max_relation_length().saturating_sub(1))
                .max(l),
        ),
        _ => None,
    };
    ValidationReport {
        admissible,
        string_algebra: false,
        window_n,
        diagnostics,
    }
}

/// Full string-algebra check: admissibility plus the four local conditions
/// (at most two arrows out of / into each vertex, at most one nonzero
/// continuation on either side of each arrow).
pub fn validate_string_algebra(p: &Presentation) -> ValidationReport {
    let mut report = validate_zero_relation(p);
    let q = &p.quiver;
    let mut violations = Vec::new();

    let mut out_deg: BTreeMap<VertexId, Vec<ArrowId>> = BTreeMap::new();
    let mut in_deg: BTreeMap<VertexId, Vec<ArrowId>> = BTreeMap::new();
    for a in q.arrow_ids() {
        out_deg.entry(q.source(a)).or_default().push(a);
        in_deg.entry(q.target(a)).or_default().push(a);
    }
    let names = |arrows: &[ArrowId]| {
        arrows
            .iter()
            .map(|&a| q.arrow_name(a))
            .collect::<Vec<_>>()
            .join(", ")
    };
    for (v, arrows) in &out_deg {
        if arrows.len() > 2 {
            violations.push(Diagnostic {
                code: DiagnosticCode::OutDegree,
                message: format!("{} arrows start at vertex {}", arrows.len(), q.vertex_name(*v)),
                object: names(arrows),
            });
        }
    }
    for (v, arrows) in &in_deg {
        if arrows.len() > 2 {
            violations.push(Diagnostic {
                code: DiagnosticCode::InDegree,
                message: format!("{} arrows end at vertex {}", arrows.len(), q.vertex_name(*v)),
                object: names(arrows),
            });
        }
    }
    for b in q.arrow_ids() {
        let after: Vec<ArrowId> = q
            .arrow_ids()
            .filter(|&a| q.source(a) == q.target(b) && !p.path_in_ideal(&[b, a]))
            .collect();
        if after.len() > 1 {
            violations.push(Diagnostic {
                code: DiagnosticCode::Successor,
                message: format!(
                    "arrow {} is followed by more than one arrow outside the ideal",
                    q.arrow_name(b)
                ),
                object: names(&after),
            });
        }
        let before: Vec<ArrowId> = q
            .arrow_ids()
            .filter(|&c| q.target(c) == q.source(b) && !p.path_in_ideal(&[c, b]))
            .collect();
        if before.len() > 1 {
            violations.push(Diagnostic {
                code: DiagnosticCode::Predecessor,
                message: format!(
                    "arrow {} is preceded by more than one arrow outside the ideal",
                    q.arrow_name(b)
                ),
                object: names(&before),
            });
        }
    }
    report.string_algebra = report.admissible && violations.is_empty();
    report.diagnostics.extend(violations);
    report
}
