use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::notation::superscript;
use crate::state_graph::{SCCDecomposition, StateGraph};
use crate::strings::{canonical_class, BandClass, StringWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Domestic,
    NonDomestic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Evidence {
    /// Every non-trivial component is a simple cycle.
    AllSimpleCycles,
    /// A component containing a vertex with two or more in-component
    /// out-arrows.
    BranchVertex { component: usize, vertex: usize },
}

/// One summand `count · ½ t^length / (1 − t^length)` of the μ-series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuTerm {
    pub length: usize,
    pub bands: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Growth {
    /// μ bounded.
    Bounded,
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// `None` when there are infinitely many bands.
    pub band_count: Option<usize>,
    /// All bands, when finitely many.
    pub bands: Vec<BandClass>,
    pub mu_series: Vec<MuTerm>,
    pub rational: bool,
    pub growth: Growth,
}

impl Classification {
    /// Closed form of the μ-series, e.g. `t²/(1 − t²)`; `None` unless domestic.
    pub fn mu_closed_form(&self) -> Option<String> {
        if self.verdict != Verdict::Domestic {
            return None;
        }
        Some(mu_closed_form(&self.mu_series))
    }
}

pub fn mu_closed_form(terms: &[MuTerm]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|t| {
            let power = if t.length == 1 {
                "t".to_string()
            } else {
                format!("t{}", superscript(t.length as i64))
            };
            let coeff = match (t.bands % 2, t.bands / 2) {
                (0, 1) => String::new(),
                (0, k) => format!("{k}·"),
                (_, _) => format!("{}/2·", t.bands),
            };
            format!("{coeff}{power}/(1 − {power})")
        })
        .collect();
    parts.join(" + ")
}

/// The closed walk once around a simple-cycle component, as a string.
fn cycle_band(graph: &StateGraph, members: &[usize]) -> Result<BandClass> {
    let out = graph.out_arrows();
    let inside = |v: usize| members.binary_search(&v).is_ok();
    let start = members[0];
    let mut syllables = Vec::with_capacity(members.len());
    let mut v = start;
    loop {
        let arrow = out[v]
            .iter()
            .map(|&k| &graph.arrows()[k])
            .find(|a| inside(a.to))
            .ok_or_else(|| Error::consistency("simple cycle without a continuation"))?;
        syllables.push(arrow.label.leftmost());
        v = arrow.to;
        if v == start {
            break;
        }
    }
    Ok(canonical_class(&StringWord::from_application_order(syllables)))
}

/// Domestic exactly when every non-trivial component is a simple cycle; then
/// each such cycle carries one band.
pub fn classify(scc: &SCCDecomposition, graph: &StateGraph) -> Result<Classification> {
    let adjacency = graph.adjacency();
    for (k, comp) in scc.nontrivial() {
        if comp.is_simple_cycle {
            continue;
        }
        let vertex = comp
            .vertices
            .iter()
            .copied()
            .find(|&v| {
                comp.vertices.iter().map(|&w| adjacency.get(v, w)).sum::<u64>() >= 2
            })
            .ok_or_else(|| Error::consistency("non-simple component without a branch vertex"))?;
        return Ok(Classification {
            verdict: Verdict::NonDomestic,
            evidence: Evidence::BranchVertex { component: k, vertex },
            band_count: None,
            bands: Vec::new(),
            mu_series: Vec::new(),
            rational: false,
            growth: Growth::Exponential,
        });
    }
    let mut bands = scc
        .nontrivial()
        .map(|(_, c)| cycle_band(graph, &c.vertices))
        .collect::<Result<Vec<_>>>()?;
    bands.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut by_length = BTreeMap::new();
    for b in &bands {
        *by_length.entry(b.len()).or_insert(0) += 1;
    }
    Ok(Classification {
        verdict: Verdict::Domestic,
        evidence: Evidence::AllSimpleCycles,
        band_count: Some(bands.len()),
        mu_series: by_length
            .into_iter()
            .map(|(length, bands)| MuTerm { length, bands })
            .collect(),
        bands,
        rational: true,
        growth: Growth::Bounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(mu_closed_form(&[MuTerm { length: 2, bands: 2 }]), "t²/(1 − t²)");
        assert_eq!(
            mu_closed_form(&[MuTerm { length: 1, bands: 4 }, MuTerm { length: 3, bands: 2 }]),
            "2·t/(1 − t) + t³/(1 − t³)"
        );
        assert_eq!(mu_closed_form(&[]), "0");
    }
}
