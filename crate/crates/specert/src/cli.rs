//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative oracle verdict or sweep violations,
//! 2 usage errors, malformed input and cap overflow.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use specert_core::certify::{certify, CertifyOptions, Theorem, TheoremParams};
use specert_core::closure::{closure_parameter, k_closure};
use specert_core::families::{self, Family, FamilyParams, DEFAULT_MEMBERSHIP_CAP};
use specert_core::graph::Graph;
use specert_core::oracles::{self, OracleError, OracleVerdict, Property};
use specert_core::spectral::{spectral_radius, DEFAULT_BAND, DEFAULT_TOL};
use thiserror::Error;

use crate::format::{detect, from_graph6, parse_graph, to_edge_list, to_graph6, Format, FormatError};
use crate::harness::{
    self, closure_equivalence, EXHAUSTIVE_MAX_ORDER, edge_bound_suite, enumerate_labeled_par, report_lines, sample_gnp, soundness_sweep, tight_record, HarnessError,
    SweepConfig,
};
use crate::record::{cert_record, oracle_record, witness_fields, witness_value, Record};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("input line {line}: {source}")]
    Format { line: usize, source: FormatError },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Compute(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "specert", version, about = "Spectral certificates for graph properties, with exact oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Graph6,
    EdgeList,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::EdgeList => Format::EdgeList,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Inline graph6, a file path, or `-` for stdin (the default).
    pub input: Option<String>,
    /// Input format; detected from the first line when omitted.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// One of s-conn, s-edge-conn, deficient, path-cover, s-ham, s-edge-ham.
    #[arg(long)]
    pub theorem: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub beta: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify a property from the complement's spectral radius.
    Certify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        relax_connectivity: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_BAND)]
        band: f64,
        #[arg(long, default_value_t = DEFAULT_MEMBERSHIP_CAP)]
        membership_cap: usize,
    },
    /// Decide a property exactly, or compute a graph invariant.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// s-conn, s-edge-conn, deficient, path-cover, s-ham, s-edge-ham,
        /// or one of the invariants connectivity, edge-connectivity,
        /// deficiency, path-cover-number.
        #[arg(long)]
        property: String,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
    },
    /// Compute the k-closure, with `k` given directly or from a theorem.
    Closure {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Print the closed graph as an edge list instead of a record.
        #[arg(long)]
        edge_list: bool,
    },
    /// Spectral radius of the graph or of its complement.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        complement: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Generate a member of an exceptional family, printed as graph6.
    FamilyGen {
        /// EP, EC, ES or union-cliques.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    /// Test membership in an exceptional family.
    FamilyTest {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = DEFAULT_MEMBERSHIP_CAP)]
        cap: usize,
    },
    /// Validation sweeps over enumerated or sampled graphs.
    Sweep {
        /// Order of the graphs.
        #[arg(long)]
        n: usize,
        /// Edge probability; enables sampling instead of enumeration.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to these theorems (repeatable); all by default.
        #[arg(long)]
        theorem: Vec<String>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        relax_connectivity: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_BAND)]
        band: f64,
        #[arg(long, value_enum, default_value_t = Suite::Soundness)]
        suite: Suite,
    },
    /// Family instances whose complement attains the spectral bound.
    Tightness {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BAND)]
        band: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Soundness,
    Closure,
    EdgeBound,
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn theorem_and_param(p: &ParamArgs) -> Result<(Theorem, usize), CliError> {
    let name = p.theorem.as_deref().ok_or_else(|| usage("--theorem is required"))?;
    let theorem = Theorem::parse(name).ok_or_else(|| usage(format!("unknown theorem {name:?}")))?;
    match (theorem, p.s, p.beta) {
        (Theorem::Deficient, None, Some(b)) => Ok((theorem, b)),
        (Theorem::Deficient, _, _) => Err(usage("deficient takes --beta (and not --s)")),
        (_, Some(s), None) => Ok((theorem, s)),
        (t, _, _) => Err(usage(format!("{} takes --s (and not --beta)", t.name()))),
    }
}

fn theorem_params(p: &ParamArgs) -> Result<TheoremParams, CliError> {
    let (theorem, param) = theorem_and_param(p)?;
    let k = p.k.ok_or_else(|| usage("--k is required"))?;
    let params = TheoremParams::new(theorem, k, param);
    params.validate().map_err(|e| usage(e.to_string()))?;
    Ok(params)
}

fn check_tolerance(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(usage(format!("--{name} must be a positive number")))
    }
}

fn parse_family(s: &str) -> Result<Family, CliError> {
    Family::parse(s).ok_or_else(|| usage(format!("unknown family {s:?}")))
}

enum Source {
    Inline(String),
    Reader(Box<dyn BufRead>),
}

fn open_input(input: &InputArgs, stdin: &mut dyn Read) -> Result<Source, CliError> {
    match input.input.as_deref() {
        None | Some("-") => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            Ok(Source::Inline(text))
        }
        Some(arg) if Path::new(arg).is_file() => Ok(Source::Reader(Box::new(BufReader::new(File::open(arg)?)))),
        Some(arg) => Ok(Source::Inline(arg.to_string())),
    }
}

/// Calls `each` for every graph in the input; graph6 input may hold one graph per line.
fn for_each_graph(
    input: &InputArgs,
    stdin: &mut dyn Read,
    mut each: impl FnMut(&Graph) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let mut reader: Box<dyn BufRead> = match open_input(input, stdin)? {
        Source::Inline(text) => Box::new(io::Cursor::new(text.into_bytes())),
        Source::Reader(r) => r,
    };
    let mut first = String::new();
    let mut line_no = 0;
    loop {
        first.clear();
        if reader.read_line(&mut first)? == 0 {
            return Err(CliError::Format { line: line_no.max(1), source: FormatError::Empty });
        }
        line_no += 1;
        let t = first.trim();
        if !t.is_empty() && !t.starts_with('#') {
            break;
        }
    }
    let format = input.format.map(Format::from).unwrap_or_else(|| detect(&first));
    if format == Format::EdgeList {
        let mut text = first.clone();
        reader.read_to_string(&mut text)?;
        let g = parse_graph(&text, Some(Format::EdgeList)).map_err(|source| CliError::Format { line: line_no, source })?;
        return each(&g);
    }
    let mut line = first;
    loop {
        let t = line.trim();
        if !t.is_empty() {
            let g = from_graph6(t).map_err(|source| CliError::Format { line: line_no, source })?;
            each(&g)?;
        }
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            return Ok(());
        }
        line_no += 1;
    }
}

fn oracle_property(name: &str, s: Option<usize>, beta: Option<usize>) -> Result<Property, CliError> {
    let need_s = || s.ok_or_else(|| usage(format!("{name} requires --s")));
    Ok(match name {
        "s-conn" => Property::SConnected(need_s()?),
        "s-edge-conn" => Property::SEdgeConnected(need_s()?),
        "path-cover" => Property::SPathCoverable(need_s()?),
        "s-ham" => Property::SHamiltonian(need_s()?),
        "s-edge-ham" => Property::SEdgeHamiltonian(need_s()?),
        "deficient" => Property::BetaDeficient(beta.ok_or_else(|| usage("deficient requires --beta"))?),
        _ => return Err(usage(format!("unknown property {name:?}"))),
    })
}

const INVARIANTS: [&str; 4] = ["connectivity", "edge-connectivity", "deficiency", "path-cover-number"];

fn invariant_record(g: &Graph, name: &str) -> Result<Option<Record>, CliError> {
    let rec = match name {
        "connectivity" => {
            let (k, cut) = oracles::min_vertex_separator(g)?;
            let mut rec = Record::new().with("connectivity", k);
            if let Some(cut) = cut {
                rec.push("witness", "vertex_cut");
                rec.push("witness_value", crate::record::join_list(&cut));
            }
            rec
        }
        "edge-connectivity" => {
            let cut = oracles::min_edge_cut(g)?;
            let (kind, value) = witness_value(&oracles::Witness::EdgeCut(cut.clone()));
            Record::new().with("edge_connectivity", cut.len()).with("witness", kind).with("witness_value", value)
        }
        "deficiency" => {
            let matching = oracles::maximum_matching(g)?;
            let deficiency = g.order() - 2 * matching.len();
            let unmatched = (0..g.order()).filter(|&v| matching.iter().all(|&(a, b)| a != v && b != v)).collect();
            let (kind, value) = witness_value(&oracles::Witness::Matching { edges: matching, unmatched });
            Record::new().with("deficiency", deficiency).with("witness", kind).with("witness_value", value)
        }
        "path-cover-number" => {
            let cover = oracles::minimum_path_cover(g)?;
            let count = cover.len();
            let (kind, value) = witness_value(&oracles::Witness::PathCover(cover));
            Record::new().with("path_cover_number", count).with("witness", kind).with("witness_value", value)
        }
        _ => return Ok(None),
    };
    Ok(Some(rec))
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Certify { input, params, relax_connectivity, tol, band, membership_cap } => {
            let params = theorem_params(&params)?;
            check_tolerance("tol", tol)?;
            check_tolerance("band", band)?;
            let options = CertifyOptions { tol, band, relax_connectivity, membership_cap };
            for_each_graph(&input, stdin, |g| {
                let outcome = certify(g, &params, &options).map_err(|e| CliError::Compute(e.to_string()))?;
                writeln!(out, "{}", cert_record(&outcome).with("graph6", to_graph6(g)))?;
                Ok(())
            })?;
            Ok(0)
        }
        Command::Oracle { input, property, s, beta } => {
            let mut code = 0;
            let decided = if INVARIANTS.contains(&property.as_str()) {
                None
            } else {
                Some(oracle_property(&property, s, beta)?)
            };
            for_each_graph(&input, stdin, |g| {
                match decided {
                    None => {
                        let rec = invariant_record(g, &property)?.expect("invariant name checked above");
                        writeln!(out, "{rec}")?;
                    }
                    Some(p) => {
                        let verdict: OracleVerdict = oracles::decide(g, p)?;
                        if !verdict.holds {
                            code = 1;
                        }
                        writeln!(out, "{}", oracle_record(&property, s.or(beta).unwrap_or(0), &verdict))?;
                    }
                }
                Ok(())
            })?;
            Ok(code)
        }
        Command::Closure { input, params, edge_list } => {
            let fixed_k = match (params.k, params.theorem.is_some()) {
                (Some(k), false) => Some(k),
                (_, true) => None,
                (None, false) => return Err(usage("closure needs --k, or --theorem with its parameters")),
            };
            let theorem = match fixed_k {
                Some(_) => None,
                None => Some(theorem_and_param(&params)?),
            };
            for_each_graph(&input, stdin, |g| {
                let k = match (fixed_k, theorem) {
                    (Some(k), _) => k,
                    (None, Some((t, param))) => closure_parameter(&TheoremParams::new(t, 0, param), g.order()),
                    (None, None) => unreachable!("closure parameter source checked above"),
                };
                let result = k_closure(g, k);
                if edge_list {
                    write!(out, "{}", to_edge_list(&result.closed))?;
                } else {
                    let rec = Record::new()
                        .with("k", k)
                        .with("edges", result.closed.edge_count())
                        .with("added", result.added_edges.len())
                        .with("graph6", to_graph6(&result.closed));
                    writeln!(out, "{rec}")?;
                }
                Ok(())
            })?;
            Ok(0)
        }
        Command::Spectrum { input, complement, tol } => {
            check_tolerance("tol", tol)?;
            for_each_graph(&input, stdin, |g| {
                let target = if complement { g.complement() } else { g.clone() };
                let est = spectral_radius(&target, tol).map_err(|e| CliError::Compute(e.to_string()))?;
                let rec = Record::new()
                    .with("mu", format!("{:.12}", est.value))
                    .with("mu_upper", format!("{:.12}", est.upper))
                    .with("residual", format!("{:.3e}", est.residual))
                    .with("iterations", est.iterations)
                    .with("graph", if complement { "complement" } else { "graph" });
                writeln!(out, "{rec}")?;
                Ok(())
            })?;
            Ok(0)
        }
        Command::FamilyGen { family, n, k, s, r, m, t } => {
            let g = match parse_family(&family)? {
                Family::EP => families::gen_ep(n, k, r, None, None),
                Family::EC => families::gen_ec(n, k, s, m, t, None, None),
                Family::ES => families::gen_es(n, k, s, m, t, None, None),
                Family::UnionCliques => families::gen_union_cliques(n, k),
            }
            .map_err(|e| usage(e.to_string()))?;
            writeln!(out, "{}", to_graph6(&g))?;
            Ok(0)
        }
        Command::FamilyTest { input, family, k, s, cap } => {
            let family = parse_family(&family)?;
            for_each_graph(&input, stdin, |g| {
                let mut rec = Record::new().with("family", family.name());
                match families::membership(g, family, FamilyParams::new(k, s), cap) {
                    Ok(Some(w)) => {
                        rec.push("member", true);
                        witness_fields(&mut rec, &w);
                    }
                    Ok(None) => {
                        rec.push("member", false);
                    }
                    Err(e @ families::FamilyError::CapExceeded { .. }) => return Err(usage(e.to_string())),
                    Err(e) => {
                        rec.push("member", false);
                        rec.push("reason", e);
                    }
                }
                writeln!(out, "{rec}")?;
                Ok(())
            })?;
            Ok(0)
        }
        Command::Sweep { n, p, count, seed, theorem, k_max, relax_connectivity, tol, band, suite } => {
            check_tolerance("tol", tol)?;
            check_tolerance("band", band)?;
            let theorems = if theorem.is_empty() {
                Theorem::ALL.to_vec()
            } else {
                theorem.iter().map(|t| Theorem::parse(t).ok_or_else(|| usage(format!("unknown theorem {t:?}")))).collect::<Result<_, _>>()?
            };
            let graphs: Vec<Graph> = match p {
                Some(p) => sample_gnp(n, p, seed, count)?.collect(),
                None if n > EXHAUSTIVE_MAX_ORDER => return Err(HarnessError::TooLarge(n).into()),
                None => Vec::new(),
            };
            let config = SweepConfig {
                theorems,
                k_max,
                options: CertifyOptions { tol, band, relax_connectivity, ..CertifyOptions::default() },
                verify_witnesses: true,
            };
            match suite {
                Suite::Soundness => {
                    let report = match p {
                        Some(_) => soundness_sweep(graphs.into_par_iter(), &config),
                        None => soundness_sweep(enumerate_labeled_par(n)?, &config),
                    };
                    for line in report_lines(&report) {
                        writeln!(out, "{line}")?;
                    }
                    Ok(if report.violations.is_empty() && report.witness_failures.is_empty() { 0 } else { 1 })
                }
                Suite::Closure => {
                    let report = match p {
                        Some(_) => closure_equivalence(graphs.into_par_iter(), oracles::EDGE_HAM_MAX_S),
                        None => closure_equivalence(enumerate_labeled_par(n)?, oracles::EDGE_HAM_MAX_S),
                    };
                    for m in &report.mismatches {
                        let rec = Record::new()
                            .with("mismatch", &m.graph6)
                            .with("property", format!("{:?}", m.property))
                            .with("graph_holds", m.graph_holds)
                            .with("closure_holds", m.closure_holds);
                        writeln!(out, "{rec}")?;
                    }
                    let summary = Record::new()
                        .with("graphs", report.graphs)
                        .with("comparisons", report.comparisons)
                        .with("trivial", report.trivial)
                        .with("oracle_errors", report.oracle_errors)
                        .with("mismatches", report.mismatches.len());
                    writeln!(out, "{summary}")?;
                    Ok(if report.mismatches.is_empty() { 0 } else { 1 })
                }
                Suite::EdgeBound => {
                    let report = match p {
                        Some(_) => edge_bound_suite(graphs.into_par_iter(), 1e-7),
                        None => edge_bound_suite(enumerate_labeled_par(n)?, 1e-7),
                    };
                    for g6 in report.inequality_failures.iter().chain(&report.characterization_mismatches) {
                        writeln!(out, "{}", Record::new().with("failure", g6))?;
                    }
                    let summary = Record::new()
                        .with("graphs", report.graphs)
                        .with("equality_cases", report.equality_cases)
                        .with("inequality_failures", report.inequality_failures.len())
                        .with("characterization_mismatches", report.characterization_mismatches.len());
                    writeln!(out, "{summary}")?;
                    Ok(if report.inequality_failures.is_empty() && report.characterization_mismatches.is_empty() { 0 } else { 1 })
                }
            }
        }
        Command::Tightness { params, n, band } => {
            check_tolerance("band", band)?;
            let params = theorem_params(&params)?;
            for t in harness::tightness_search(&params, n, band)? {
                writeln!(out, "{}", tight_record(&t))?;
            }
            Ok(0)
        }
    }
}
