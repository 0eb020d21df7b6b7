//! Presentation in, every derived invariant out.

use crate::analytics::{
    classify, pnt_constants, pnt_ratio_table, spectral_radius, Classification, CountingReport,
    PntConstants, PntRow, SpectralRadius, ZetaReport,
};
use crate::error::{Error, Result};
use crate::polynomial::IntegerPolynomial;
use crate::presentation::{
    normalize_relations, tilde_presentation, validate_string_algebra, Presentation,
    ValidationReport,
};
use crate::state_graph::{
    reciprocal_char_poly, trace_powers, AdjacencyMatrix, SCCDecomposition, StateGraph,
};
use crate::strings::{Limits, StringRules};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Number of `N`, `π`, `μ` and ζ terms.
    pub terms: usize,
    /// Inclusive `m` range of the prime-counting table.
    pub pnt_range: (usize, usize),
    pub limits: Limits,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            terms: 20,
            pnt_range: (1, 20),
            limits: Limits::default(),
        }
    }
}

/// Binomial relations replaced by their monomial parts, relations
/// normalized, then validated.
pub fn prepare(p: &Presentation) -> Result<(Presentation, ValidationReport)> {
    let reduced = normalize_relations(&tilde_presentation(p)?);
    let report = validate_string_algebra(&reduced);
    Ok((reduced, report))
}

/// Like [`prepare`], but inadmissible input is an error.
pub fn prepare_admissible(p: &Presentation) -> Result<(Presentation, ValidationReport, usize)> {
    let (reduced, report) = prepare(p)?;
    match report.window_n {
        Some(n) => Ok((reduced, report, n)),
        None => Err(Error::NotAdmissible(
            report
                .diagnostics
                .iter()
                .map(|d| format!("{}: {} ({})", d.code, d.message, d.object))
                .collect::<Vec<_>>()
                .join("; "),
        )),
    }
}

pub struct Analysis {
    pub presentation: Presentation,
    pub validation: ValidationReport,
    pub rules: StringRules,
    pub graph: StateGraph,
    pub adjacency: AdjacencyMatrix,
    pub scc: SCCDecomposition,
    pub reciprocal: IntegerPolynomial,
    pub radius: SpectralRadius,
    pub counting: CountingReport,
    pub zeta: ZetaReport,
    pub pnt: PntConstants,
    pub pnt_table: Vec<PntRow>,
    /// Only for string algebras.
    pub classification: Option<Classification>,
}

pub fn analyze(p: &Presentation, options: &AnalysisOptions) -> Result<Analysis> {
    let (presentation, validation, window) = prepare_admissible(p)?;
    let rules = StringRules::new(&presentation);
    let graph = crate::state_graph::build_state_graph(&rules, window, &options.limits)?;
    let adjacency = graph.adjacency();
    let scc = graph.scc_decompose()?;
    let reciprocal = reciprocal_char_poly(&adjacency)?;
    let radius = spectral_radius(&reciprocal)?;
    let pnt = pnt_constants(&scc);
    let (from, to) = options.pnt_range;
    let count = if pnt.applicable {
        options.terms.max(to * pnt.l as usize)
    } else {
        options.terms
    };
    let counting = CountingReport::compute(trace_powers(&adjacency, count)?)?;
    let zeta = ZetaReport::compute(reciprocal.clone(), options.terms, radius.value)?;
    let pnt_table = if pnt.applicable {
        pnt_ratio_table(&counting.pi, &pnt, from, to)?
    } else {
        Vec::new()
    };
    let classification = if validation.string_algebra {
        Some(classify(&scc, &graph)?)
    } else {
        None
    };
    Ok(Analysis {
        presentation,
        validation,
        rules,
        graph,
        adjacency,
        scc,
        reciprocal,
        radius,
        counting,
        zeta,
        pnt,
        pnt_table,
        classification,
    })
}
