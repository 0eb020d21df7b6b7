//! Machine-readable summary of an [`Analysis`]. Big integers are decimal
//! strings; words use the serialized leftmost-first form.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::analytics::{
    Evidence, Growth, MuTerm, PntConstants, PntRow, SpectralRadius, Verdict,
};
use crate::error::Result;
use crate::notation::Notation;
use crate::pipeline::Analysis;
use crate::polynomial::IntegerPolynomial;
use crate::presentation::ValidationReport;
use crate::state_graph::Component;
use crate::strings::SerialWord;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportArrow {
    pub from: usize,
    pub to: usize,
    pub label: SerialWord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportGraph {
    pub window: usize,
    pub vertices: Vec<SerialWord>,
    pub arrows: Vec<ReportArrow>,
    pub adjacency: Vec<Vec<u64>>,
    pub components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportPolynomial {
    pub coefficients: IntegerPolynomial,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportCounts {
    /// How many leading `n` values are traces; the rest follow the recurrence.
    pub n_traced_terms: usize,
    #[serde(with = "crate::decimal::vec")]
    pub n: Vec<BigInt>,
    #[serde(with = "crate::decimal::vec")]
    pub pi: Vec<BigInt>,
    #[serde(with = "crate::decimal::vec")]
    pub mu: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportZeta {
    #[serde(with = "crate::decimal::vec")]
    pub series: Vec<BigInt>,
    /// `null` means infinite.
    pub radius_of_convergence: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportPnt {
    pub constants: PntConstants,
    pub rows: Vec<PntRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportBand {
    pub representative: SerialWord,
    pub inverse_pair_id: SerialWord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportClassification {
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// `null` means infinitely many.
    pub band_count: Option<usize>,
    pub bands: Vec<ReportBand>,
    pub mu_series: Vec<MuTerm>,
    pub mu_closed_form: Option<String>,
    pub rational: bool,
    pub growth: Growth,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticsReport {
    pub validation: ValidationReport,
    pub state_graph: ReportGraph,
    pub reciprocal_char_poly: ReportPolynomial,
    pub spectral_radius: SpectralRadius,
    pub counts: ReportCounts,
    pub zeta: ReportZeta,
    pub pnt: ReportPnt,
    pub classification: Option<ReportClassification>,
}

impl AnalyticsReport {
    pub fn from_analysis(a: &Analysis, notation: Notation) -> Self {
        let word = |w| a.rules.serialize_word(w, notation);
        AnalyticsReport {
            validation: a.validation.clone(),
            state_graph: ReportGraph {
                window: a.graph.window(),
                vertices: a.graph.vertices().iter().map(word).collect(),
                arrows: a
                    .graph
                    .arrows()
                    .iter()
                    .map(|x| ReportArrow {
                        from: x.from,
                        to: x.to,
                        label: word(&x.label),
                    })
                    .collect(),
                adjacency: a.adjacency.rows(),
                components: a.scc.components.clone(),
            },
            reciprocal_char_poly: ReportPolynomial {
                coefficients: a.reciprocal.clone(),
                display: a.reciprocal.to_string(),
            },
            spectral_radius: a.radius,
            counts: ReportCounts {
                n_traced_terms: a.counting.n.traced_terms(),
                n: a.counting.n.values().to_vec(),
                pi: a.counting.pi.clone(),
                mu: a.counting.mu.clone(),
            },
            zeta: ReportZeta {
                series: a.zeta.series.clone(),
                radius_of_convergence: a.zeta.radius_of_convergence,
            },
            pnt: ReportPnt {
                constants: a.pnt,
                rows: a.pnt_table.clone(),
            },
            classification: a.classification.as_ref().map(|c| ReportClassification {
                verdict: c.verdict,
                evidence: c.evidence.clone(),
                band_count: c.band_count,
                bands: c
                    .bands
                    .iter()
                    .map(|b| ReportBand {
                        representative: word(&b.representative),
                        inverse_pair_id: word(&b.inverse_pair_id),
                    })
                    .collect(),
                mu_series: c.mu_series.clone(),
                mu_closed_form: c.mu_closed_form(),
                rational: c.rational,
                growth: c.growth,
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}
