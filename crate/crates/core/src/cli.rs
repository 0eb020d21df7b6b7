//! Command-line front end. [`run`] is the whole program minus process exit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analytics::{
    classify, mu_closed_form, pnt_constants, pnt_ratio_table, spectral_radius, CountingReport,
    Evidence, Verdict, ZetaReport,
};
use crate::error::{Error, Result};
use crate::notation::Notation;
use crate::pipeline::{analyze, prepare, prepare_admissible, AnalysisOptions};
use crate::presentation::{parse_presentation, Presentation};
use crate::report::AnalyticsReport;
use crate::state_graph::{build_state_graph, reciprocal_char_poly, trace_powers, StateGraph};
use crate::strings::{Limits, StringRules};

const BUILTIN: [(&str, &str); 3] = [
    ("gp23", include_str!("../data/gp23.json")),
    ("kronecker2", include_str!("../data/kronecker2.json")),
    ("sb1", include_str!("../data/sb1.json")),
];

#[derive(Debug, Parser)]
#[command(name = "bandzeta", version, about = "Bands, state graphs and zeta functions of string algebras")]
struct Cli {
    /// Write inverse syllables as capitals (single-letter arrow names only).
    #[arg(long, global = true)]
    uppercase: bool,

    /// Largest number of strings any single enumeration may hold.
    #[arg(long, global = true, default_value_t = Limits::default().max_strings)]
    max_strings: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Presentation file, or one of the built-in names gp23, kronecker2, sb1.
    input: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Admissibility and string-algebra conditions.
    Validate(Input),
    /// All strings of one length.
    Strings {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        length: usize,
    },
    /// Band classes up to a length, with inverse pairing.
    Bands {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_length: usize,
    },
    /// State graph summary; optionally DOT and adjacency dumps.
    Graph {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Adjacency matrix as a JSON array of rows.
        #[arg(long, value_name = "PATH")]
        matrix: Option<PathBuf>,
    },
    /// det(I − tA) and the zeta coefficients.
    Zeta {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Closed walks, band counts and μ.
    Mu {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Domestic or not, with the μ-series closed form when domestic.
    Classify(Input),
    /// Band counts against the prime-counting asymptotic.
    Pnt {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Everything, as JSON.
    Report {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        json: PathBuf,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAdmissible(_) | Error::NotStringAlgebra(_) | Error::Precondition(_) => 2,
        Error::Parse { .. }
        | Error::Field { .. }
        | Error::Reference { .. }
        | Error::Duplicate { .. }
        | Error::BinomialEndpoints { .. }
        | Error::UnknownArrow(_) => 3,
        Error::ResourceLimit { .. } => 4,
        Error::InternalConsistency(_) | Error::Convergence(_) => 5,
    }
}

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut buf = Vec::new();
    match execute(&cli, &mut buf) {
        Ok(code) => {
            let _ = out.write_all(&buf);
            code
        }
        Err(e) => {
            let _ = out.write_all(&buf);
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load(input: &Input) -> Result<Presentation> {
    let path = Path::new(&input.input);
    let text = if path.exists() {
        std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            column: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?
    } else if let Some((_, text)) = BUILTIN.iter().find(|(name, _)| *name == input.input) {
        text.to_string()
    } else {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("no such file or built-in presentation `{}`", input.input),
        });
    };
    parse_presentation(&text)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| {
        Error::Precondition(format!("cannot write {}: {e}", path.display()))
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Built {
    rules: StringRules,
    graph: StateGraph,
}

fn build(p: &Presentation, limits: &Limits) -> Result<Built> {
    let (reduced, _, window) = prepare_admissible(p)?;
    let rules = StringRules::new(&reduced);
    let graph = build_state_graph(&rules, window, limits)?;
    Ok(Built { rules, graph })
}

fn execute(cli: &Cli, out: &mut Vec<u8>) -> Result<i32> {
    let notation = if cli.uppercase {
        Notation::Uppercase
    } else {
        Notation::Superscript
    };
    let limits = Limits {
        max_strings: cli.max_strings,
        ..Limits::default()
    };
    match &cli.command {
        Command::Validate(input) => {
            let p = load(input)?;
            let (reduced, report) = prepare(&p)?;
            let q = reduced.quiver();
            writeln!(out, "vertices: {}", q.vertex_count())?;
            writeln!(out, "arrows: {}", q.arrow_count())?;
            if !p.binomial_relations().is_empty() {
                writeln!(
                    out,
                    "binomial relations: {} (replaced by their monomial terms)",
                    p.binomial_relations().len()
                )?;
            }
            let rels: Vec<String> = reduced.relations().iter().map(|r| r.display(q, true)).collect();
            writeln!(out, "relations: {}", if rels.is_empty() { "none".into() } else { rels.join(", ") })?;
            writeln!(out, "admissible: {}", yes_no(report.admissible))?;
            writeln!(out, "string algebra: {}", yes_no(report.string_algebra))?;
            match report.window_n {
                Some(n) => writeln!(out, "window N: {n}")?,
                None => writeln!(out, "window N: undefined")?,
            }
            if report.diagnostics.is_empty() {
                writeln!(out, "diagnostics: none")?;
            } else {
                writeln!(out, "diagnostics:")?;
                for d in &report.diagnostics {
                    writeln!(out, "  [{}] {}: {}", d.code, d.message, d.object)?;
                }
            }
            Ok(if report.admissible { 0 } else { 2 })
        }
        Command::Strings { input, length } => {
            let b = build(&load(input)?, &limits)?;
            let words = b.rules.enumerate(*length, &limits)?;
            writeln!(out, "strings of length {length}: {}", words.len())?;
            for w in &words {
                writeln!(out, "{}", b.rules.render(w, notation, true))?;
            }
            Ok(0)
        }
        Command::Bands { input, max_length } => {
            let b = build(&load(input)?, &limits)?;
            let mut bands = b.rules.enumerate_bands(*max_length, &limits)?;
            bands.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
            writeln!(out, "bands of length at most {max_length}: {}", bands.len())?;
            writeln!(out, "{:>6}  {:<16}  {:<16}  pair", "length", "band", "inverse")?;
            for band in &bands {
                let inverse = b.rules.canonical_band(&band.representative.inverse())?;
                writeln!(
                    out,
                    "{:>6}  {:<16}  {:<16}  {}",
                    band.len(),
                    b.rules.render(&band.representative, notation, true),
                    b.rules.render(&inverse.representative, notation, true),
                    b.rules.render(&band.inverse_pair_id, notation, true),
                )?;
            }
            Ok(0)
        }
        Command::Graph { input, dot, matrix } => {
            let b = build(&load(input)?, &limits)?;
            let g = &b.graph;
            let a = g.adjacency();
            let scc = g.scc_decompose()?;
            writeln!(out, "window N: {}", g.window())?;
            writeln!(out, "vertices: {}", g.vertices().len())?;
            for (i, v) in g.vertices().iter().enumerate() {
                writeln!(out, "  v{i}  {}", b.rules.render(v, notation, true))?;
            }
            writeln!(out, "arrows: {}", g.arrows().len())?;
            for x in g.arrows() {
                writeln!(out, "  v{} -> v{}  {}", x.from, x.to, b.rules.render(&x.label, notation, false))?;
            }
            writeln!(out, "adjacency:")?;
            for line in a.to_string().lines() {
                writeln!(out, "  {line}")?;
            }
            writeln!(out, "components: {}", scc.components.len())?;
            for (k, c) in scc.components.iter().enumerate() {
                let members: Vec<String> = c.vertices.iter().map(|v| format!("v{v}")).collect();
                let kind = if c.is_trivial {
                    "trivial"
                } else if c.is_simple_cycle {
                    "simple cycle"
                } else {
                    "branching"
                };
                writeln!(
                    out,
                    "  C{k} {{{}}} {kind}, period {}, det {}, R {}",
                    members.join(", "),
                    c.period,
                    c.reciprocal_char_poly,
                    c.spectral_radius
                )?;
            }
            if let Some(path) = dot {
                write_file(path, &g.export_dot(&b.rules, notation))?;
                writeln!(out, "wrote {}", path.display())?;
            }
            if let Some(path) = matrix {
                write_file(path, &format!("{}\n", a.to_json()))?;
                writeln!(out, "wrote {}", path.display())?;
            }
            Ok(0)
        }
        Command::Zeta { input, terms } => {
            let b = build(&load(input)?, &limits)?;
            let reciprocal = reciprocal_char_poly(&b.graph.adjacency())?;
            let radius = spectral_radius(&reciprocal)?;
            let z = ZetaReport::compute(reciprocal, *terms, radius.value)?;
            writeln!(out, "det(I − tA) = {}", z.reciprocal)?;
            writeln!(out, "spectral radius R = {}", radius.value)?;
            match z.radius_of_convergence {
                Some(r) => writeln!(out, "radius of convergence = {r}")?,
                None => writeln!(out, "radius of convergence = ∞")?,
            }
            writeln!(out, "{:>4}  coefficient", "m")?;
            for (m, c) in z.series.iter().enumerate() {
                writeln!(out, "{m:>4}  {c}")?;
            }
            Ok(0)
        }
        Command::Mu { input, terms } => {
            let b = build(&load(input)?, &limits)?;
            let counts = CountingReport::compute(trace_powers(&b.graph.adjacency(), *terms)?)?;
            writeln!(out, "{:>4}  {:>12}  {:>12}  {:>12}", "m", "N", "π", "μ")?;
            for m in 1..=*terms {
                writeln!(
                    out,
                    "{m:>4}  {:>12}  {:>12}  {:>12}",
                    counts.n.get(m),
                    counts.pi[m - 1],
                    counts.mu[m - 1]
                )?;
            }
            Ok(0)
        }
        Command::Classify(input) => {
            let p = load(input)?;
            let (_, report) = prepare(&p)?;
            if report.admissible && !report.string_algebra {
                return Err(Error::NotStringAlgebra(
                    report
                        .diagnostics
                        .iter()
                        .map(|d| format!("{}: {}", d.code, d.object))
                        .collect::<Vec<_>>()
                        .join("; "),
                ));
            }
            let b = build(&p, &limits)?;
            let scc = b.graph.scc_decompose()?;
            let c = classify(&scc, &b.graph)?;
            let verdict = match c.verdict {
                Verdict::Domestic => "Domestic",
                Verdict::NonDomestic => "NonDomestic",
            };
            writeln!(out, "verdict: {verdict}")?;
            match &c.evidence {
                Evidence::AllSimpleCycles => {
                    writeln!(out, "evidence: every non-trivial component is a simple cycle")?
                }
                Evidence::BranchVertex { component, vertex } => writeln!(
                    out,
                    "evidence: component C{component} branches at v{vertex} ({})",
                    b.rules.render(&b.graph.vertices()[*vertex], notation, true)
                )?,
            }
            writeln!(out, "spectral radius R = {}", scc.spectral_radius())?;
            match c.band_count {
                Some(n) => {
                    writeln!(out, "bands: {n}")?;
                    for band in &c.bands {
                        writeln!(out, "  {}", b.rules.render(&band.representative, notation, true))?;
                    }
                    writeln!(out, "growth: bounded")?;
                    writeln!(out, "μ-series: {}", mu_closed_form(&c.mu_series))?;
                }
                None => {
                    writeln!(out, "bands: infinitely many")?;
                    writeln!(out, "growth: exponential")?;
                }
            }
            writeln!(out, "μ-series rational: {}", yes_no(c.rational))?;
            Ok(0)
        }
        Command::Pnt { input, from, to } => {
            let b = build(&load(input)?, &limits)?;
            let scc = b.graph.scc_decompose()?;
            let k = pnt_constants(&scc);
            writeln!(out, "R = {}", k.r)?;
            writeln!(out, "C = {}", k.c)?;
            writeln!(out, "L = {}", k.l)?;
            writeln!(out, "applicable: {}", yes_no(k.applicable))?;
            if !k.applicable {
                return Err(Error::Precondition(format!(
                    "spectral radius {} is not above 1; the asymptotic is vacuous",
                    k.r
                )));
            }
            let count = *to * k.l as usize;
            let counts = CountingReport::compute(trace_powers(&b.graph.adjacency(), count)?)?;
            let rows = pnt_ratio_table(&counts.pi, &k, *from, *to)?;
            writeln!(out, "{:>4}  {:>6}  {:>24}  ratio", "m", "mL", "π(mL)")?;
            for r in rows {
                writeln!(out, "{:>4}  {:>6}  {:>24}  {:.9}", r.m, r.n, r.pi, r.ratio)?;
            }
            Ok(0)
        }
        Command::Report { input, json, terms } => {
            let options = AnalysisOptions {
                terms: *terms,
                limits,
                ..AnalysisOptions::default()
            };
            let analysis = analyze(&load(input)?, &options)?;
            let report = AnalyticsReport::from_analysis(&analysis, notation);
            write_file(json, &report.to_json())?;
            writeln!(out, "wrote {}", json.display())?;
            Ok(0)
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Precondition(format!("output failed: {e}"))
    }
}
