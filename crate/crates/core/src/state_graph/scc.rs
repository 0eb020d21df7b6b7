use std::collections::VecDeque;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::charpoly::reciprocal_char_poly_newton;
use super::matrix::AdjacencyMatrix;
use crate::analytics::{peripheral_count, spectral_radius};
use crate::error::Result;
use crate::polynomial::IntegerPolynomial;

/// Tarjan's algorithm, iterative. Components come out in topological order
/// of the condensation (sources first), each with sorted vertex indices.
pub fn strongly_connected_components(a: &AdjacencyMatrix) -> Vec<Vec<usize>> {
    let n = a.order();
    let succ: Vec<Vec<usize>> = (0..n).map(|i| a.successors(i).map(|(j, _)| j).collect()).collect();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next_index = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, pos)) = call.last() {
            if let Some(&w) = succ[v].get(pos) {
                call.last_mut().expect("non-empty").1 += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("vertex on stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out.reverse();
    out
}

/// One strongly connected component of the state graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// gcd of cycle lengths; 1 for trivial components.
    pub period: u64,
    /// Single vertex without a loop.
    pub is_trivial: bool,
    pub is_simple_cycle: bool,
    pub reciprocal_char_poly: IntegerPolynomial,
    pub spectral_radius: f64,
    /// Eigenvalues of modulus `spectral_radius`; equals `period` for
    /// non-trivial components.
    pub peripheral_eigenvalues: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SCCDecomposition {
    /// Topological order of the condensation.
    pub components: Vec<Component>,
}

impl SCCDecomposition {
    pub fn spectral_radius(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.spectral_radius)
            .fold(0.0, f64::max)
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components.iter().enumerate().filter(|(_, c)| !c.is_trivial)
    }

    /// Component index of every vertex.
    pub fn component_of(&self, vertex_count: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; vertex_count];
        for (k, c) in self.components.iter().enumerate() {
            for &v in &c.vertices {
                of[v] = k;
            }
        }
        of
    }
}

/// Arrow count from `v` into the component `members`.
pub(crate) fn in_component_out_degree(a: &AdjacencyMatrix, members: &[usize], v: usize) -> u64 {
    members.iter().map(|&w| a.get(v, w)).sum()
}

/// gcd over in-component arrows `u → v` of `level(u) + 1 − level(v)`.
fn period(a: &AdjacencyMatrix, members: &[usize]) -> u64 {
    let mut level = vec![None; a.order()];
    let inside = |v: usize| members.binary_search(&v).is_ok();
    level[members[0]] = Some(0i64);
    let mut queue = VecDeque::from([members[0]]);
    let mut g = 0u64;
    while let Some(u) = queue.pop_front() {
        let lu = level[u].unwrap();
        for (v, _) in a.successors(u).filter(|&(v, _)| inside(v)) {
            match level[v] {
                None => {
                    level[v] = Some(lu + 1);
                    queue.push_back(v);
                }
                Some(lv) => g = g.gcd(&(lu + 1 - lv).unsigned_abs()),
            }
        }
    }
    g.max(1)
}

pub fn scc_decompose_matrix(a: &AdjacencyMatrix) -> Result<SCCDecomposition> {
    let mut components = Vec::new();
    for vertices in strongly_connected_components(a) {
        let is_trivial = vertices.len() == 1 && a.get(vertices[0], vertices[0]) == 0;
        if is_trivial {
            components.push(Component {
                vertices,
                period: 1,
                is_trivial,
                is_simple_cycle: false,
                reciprocal_char_poly: IntegerPolynomial::one(),
                spectral_radius: 0.0,
                peripheral_eigenvalues: 0,
            });
            continue;
        }
        let is_simple_cycle = vertices
            .iter()
            .all(|&v| in_component_out_degree(a, &vertices, v) == 1);
        let reciprocal = reciprocal_char_poly_newton(&a.principal_submatrix(&vertices))?;
        let radius = if is_simple_cycle {
            1.0
        } else {
            spectral_radius(&reciprocal)?.value
        };
        let peripheral = peripheral_count(&reciprocal, radius)?;
        components.push(Component {
            period: period(a, &vertices),
            peripheral_eigenvalues: peripheral,
            vertices,
            is_trivial,
            is_simple_cycle,
            reciprocal_char_poly: reciprocal,
            spectral_radius: radius,
        });
    }
    Ok(SCCDecomposition { components })
}
