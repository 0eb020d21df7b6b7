//! The state graph on strings of the window length, its adjacency matrix,
//! strongly connected components and exact closed-walk data.

mod charpoly;
mod matrix;
mod scc;

use std::collections::HashMap;
use std::fmt::Write as _;

pub use charpoly::{
    reciprocal_char_poly, reciprocal_char_poly_berkowitz, reciprocal_char_poly_newton,
    trace_powers, trace_powers_direct, BigIntSequence,
};
pub use matrix::AdjacencyMatrix;
pub use scc::{scc_decompose_matrix, strongly_connected_components, Component, SCCDecomposition};

use crate::error::{Error, Result};
use crate::notation::Notation;
use crate::strings::{Limits, StringRules, StringWord, Syllable};

/// Arrow `from → to` labelled by a string of length window + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateArrow {
    pub from: usize,
    pub to: usize,
    pub label: StringWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateGraph {
    window: usize,
    vertices: Vec<StringWord>,
    arrows: Vec<StateArrow>,
}

/// Vertices are the strings of length `window`, sorted; each string `w` of
/// length `window + 1` gives one arrow from its right part to its left part.
pub fn build_state_graph(rules: &StringRules, window: usize, limits: &Limits) -> Result<StateGraph> {
    if window == 0 {
        return Err(Error::Precondition("window must be positive".into()));
    }
    let vertices = rules.enumerate(window, limits)?;
    let index: HashMap<&[Syllable], usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.syllables(), i))
        .collect();
    let lookup = |s: &[Syllable]| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| Error::consistency("substring of a string is not a string"))
    };
    let mut arrows = Vec::new();
    for label in rules.enumerate(window + 1, limits)? {
        let s = label.syllables();
        arrows.push(StateArrow {
            from: lookup(&s[..window])?,
            to: lookup(&s[1..])?,
            label,
        });
    }
    Ok(StateGraph {
        window,
        vertices,
        arrows,
    })
}

impl StateGraph {
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn vertices(&self) -> &[StringWord] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[StateArrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, w: &StringWord) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let mut m = AdjacencyMatrix::zero(self.vertices.len());
        for a in &self.arrows {
            m.set(a.from, a.to, m.get(a.from, a.to) + 1);
        }
        m
    }

    pub fn scc_decompose(&self) -> Result<SCCDecomposition> {
        scc_decompose_matrix(&self.adjacency())
    }

    /// Outgoing arrow indices of every vertex, in label order.
    pub fn out_arrows(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (k, a) in self.arrows.iter().enumerate() {
            out[a.from].push(k);
        }
        out
    }

    /// Closed walks of length `m` counted one by one, no matrix arithmetic.
    pub fn closed_walks_bruteforce(&self, m: usize, limits: &Limits) -> Result<u64> {
        if m == 0 {
            return Ok(self.vertices.len() as u64);
        }
        let out = self.out_arrows();
        let mut steps = 0usize;
        let mut count = 0u64;
        for start in 0..self.vertices.len() {
            // (vertex, depth, position in its out-list)
            let mut stack = vec![(start, 0usize, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, depth, pos) = *top;
                if depth == m {
                    if v == start {
                        count += 1;
                    }
                    stack.pop();
                    continue;
                }
                match out[v].get(pos) {
                    Some(&k) => {
                        top.2 += 1;
                        steps += 1;
                        if steps > limits.max_walk_steps {
                            return Err(Error::ResourceLimit {
                                what: "closed-walk enumeration steps",
                                limit: limits.max_walk_steps,
                            });
                        }
                        stack.push((self.arrows[k].to, depth + 1, 0));
                    }
                    None => {
                        stack.pop();
                    }
                }
            }
        }
        Ok(count)
    }

    /// Graphviz text. Vertices carry compressed display strings, arrows their
    /// uncompressed labels.
    pub fn export_dot(&self, rules: &StringRules, notation: Notation) -> String {
        let mut s = String::from("digraph state_graph {\n  rankdir=LR;\n  node [shape=box];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", dot_escape(&rules.render(v, notation, true)));
        }
        for a in &self.arrows {
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"{}\"];",
                a.from,
                a.to,
                dot_escape(&rules.render(&a.label, notation, false))
            );
        }
        s.push_str("}\n");
        s
    }
}

fn dot_escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::IntegerPolynomial;
    use crate::presentation::{parse_presentation, validate_zero_relation};

    fn graph(src: &str) -> (StringRules, StateGraph) {
        let p = parse_presentation(src).unwrap();
        let n = validate_zero_relation(&p).window_n.unwrap();
        let rules = StringRules::new(&p);
        let g = build_state_graph(&rules, n, &Limits::default()).unwrap();
        (rules, g)
    }

    #[test]
    fn gp23_graph() {
        let (rules, g) = graph(include_str!("../../data/gp23.json"));
        assert_eq!(g.vertices().len(), 6);
        assert_eq!(g.arrows().len(), 8);
        let from = g.vertex_index(&rules.parse_word("bA").unwrap()).unwrap();
        let to = g.vertex_index(&rules.parse_word("bb").unwrap()).unwrap();
        let label = rules.parse_word("bbA").unwrap();
        assert!(g.arrows().contains(&StateArrow { from, to, label }));
        let a = g.adjacency();
        assert_eq!(
            reciprocal_char_poly(&a).unwrap().to_string(),
            "1 − 2t² − 2t³ + t⁴ + 2t⁵ + t⁶"
        );
        let d = g.scc_decompose().unwrap();
        assert_eq!(d.components.len(), 2);
        for c in &d.components {
            assert_eq!(c.vertices.len(), 3);
            assert_eq!(c.period, 1);
            assert_eq!(c.reciprocal_char_poly, IntegerPolynomial::from_i64s(&[1, 0, -1, -1]));
        }
        let n: Vec<String> = trace_powers(&a, 6).unwrap().values().iter().map(|x| x.to_string()).collect();
        assert_eq!(n, ["0", "4", "6", "4", "10", "10"]);
        for m in 1..=6 {
            assert_eq!(
                g.closed_walks_bruteforce(m, &Limits::default()).unwrap().to_string(),
                n[m - 1]
            );
        }
    }

    #[test]
    fn kronecker_graph() {
        let (_, g) = graph(include_str!("../../data/kronecker2.json"));
        assert_eq!(g.vertices().len(), 4);
        assert_eq!(g.arrows().len(), 4);
        let d = g.scc_decompose().unwrap();
        assert_eq!(d.components.len(), 2);
        assert!(d.components.iter().all(|c| c.is_simple_cycle && c.period == 2));
        assert_eq!(g.closed_walks_bruteforce(3, &Limits::default()).unwrap(), 0);
    }

    #[test]
    fn dot_is_deterministic() {
        let (rules, g) = graph(include_str!("../../data/gp23.json"));
        let dot = g.export_dot(&rules, Notation::Uppercase);
        assert_eq!(dot, g.export_dot(&rules, Notation::Uppercase));
        assert_eq!(dot.matches(" -> ").count(), 8);
        assert!(dot.contains("[label=\"b²\"]"));
        assert!(dot.contains("[label=\"bbA\"]"));
        assert_eq!(dot_escape("a\"b\\"), "a\\\"b\\\\");
    }

    #[test]
    fn walk_limit() {
        let (_, g) = graph(include_str!("../../data/gp23.json"));
        let tight = Limits {
            max_walk_steps: 10,
            ..Limits::default()
        };
        assert!(matches!(
            g.closed_walks_bruteforce(8, &tight),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
