//! `dlenergy`: spectra, energies, bound checks and extremal scans from the
//! command line.

mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use dlenergy::energy::EnergyReport;
use dlenergy::graph::{
    automorphism_count, emit_graph6, par_enumerate_connected, parse_edge_list, parse_graph6, Enumeration,
};
use dlenergy::eigen::sym_eigenvalues;
use dlenergy::metrics::{distance_matrix_from, independence_number, vertex_connectivity};
use dlenergy::search::{min_dle_over_class, sigma_census, ClassSpec, DEFAULT_MAX_ORDER, LARGE_MAX_ORDER};
use dlenergy::theorems::{self, BoundCheck};
use dlenergy::{Analysis, Error, FamilySpec, Graph};

use report::{ClassChecks, InputDescriptor, Report, Spectra, Timing, VerifySummary, Violation};

const FAMILY_HELP: &str = "\
Family specs have the form name:p1,p2,... with
  complete:n  path:n  cycle:n  star:n  s_plus:n
  complete_bipartite:a,b  complete_split:t,n  pineapple:n,p
  connectivity_family:n,k,t
and joins join:<spec>|<spec>+<spec>+... where the part before '|' is joined
to the disjoint union of the '+'-separated parts.

Exit codes: 0 success, 1 bound violation or prediction mismatch,
2 bad arguments or input, 3 disconnected input graph.
The SPECDL_THREADS environment variable sets the worker count.";

#[derive(Parser, Debug)]
#[command(
    name = "dlenergy",
    version,
    about = "Distance Laplacian spectra, energies and bound checks for connected graphs",
    after_help = FAMILY_HELP
)]
struct Cli {
    /// Named family, e.g. complete_bipartite:2,3
    #[arg(long, global = true)]
    family: Option<String>,

    /// Edge-list file: "n m" header then one "u v" per line
    #[arg(long, global = true)]
    edgelist: Option<PathBuf>,

    /// Graph in graph6 format
    #[arg(long, global = true)]
    graph6: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Add wall-clock timing to the report
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance Laplacian, Laplacian and distance spectra
    Spectrum,
    /// Energies, σ, t and prefix sums
    Energy,
    /// Check one bound on the input graph, or on every connected graph of
    /// order --n when no graph is given
    Verify {
        #[arg(value_enum)]
        theorem: TheoremArg,
        /// Sweep all connected graphs of this order
        #[arg(long)]
        n: Option<usize>,
        /// Brouwer index k, or the vertex connectivity filter for
        /// connectivity-bound sweeps
        #[arg(long)]
        k: Option<usize>,
        /// Independence-number filter for independence-bound sweeps
        #[arg(long)]
        alpha: Option<usize>,
        /// Permit n = 8 sweeps
        #[arg(long)]
        allow_large: bool,
    },
    /// Minimize DLE over a graph class by exhaustive enumeration
    Search {
        #[arg(value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Permit n = 8
        #[arg(long)]
        allow_large: bool,
    },
    /// Distribution of σ over all connected graphs of order n
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    EdgeMonotonicity,
    DleViaSk,
    Brouwer,
    Sandwich,
    SigmaT,
    SecondSmallest,
    WienerLower,
    BipartiteBound,
    IndependenceBound,
    ConnectivityBound,
    EigenvalueFloors,
    IntegralFamily,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Bipartite,
    Independence,
    Connectivity,
    All,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Output(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) | Failure::Output(msg) => f.write_str(msg),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Disconnected) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

enum Input {
    Family(FamilySpec),
    Graph(Graph),
}

struct LoadedInput {
    input: Input,
    descriptor: InputDescriptor,
}

fn load_input(cli: &Cli) -> CliResult<Option<LoadedInput>> {
    let given = [cli.family.is_some(), cli.edgelist.is_some(), cli.graph6.is_some()];
    match given.iter().filter(|&&b| b).count() {
        0 => return Ok(None),
        1 => {}
        _ => return Err(Failure::Usage("give at most one of --family, --edgelist, --graph6".into())),
    }
    if let Some(s) = &cli.family {
        let spec: FamilySpec = s.parse()?;
        return Ok(Some(LoadedInput {
            descriptor: InputDescriptor {
                kind: "family",
                value: spec.to_string(),
                sha256: None,
            },
            input: Input::Family(spec),
        }));
    }
    if let Some(path) = &cli.edgelist {
        let bytes = std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Failure::Usage(format!("{} is not valid UTF-8", path.display())))?;
        return Ok(Some(LoadedInput {
            input: Input::Graph(parse_edge_list(&text)?),
            descriptor: InputDescriptor {
                kind: "edgelist",
                value: path.display().to_string(),
                sha256: Some(format!("{:x}", Sha256::digest(&bytes))),
            },
        }));
    }
    let text = cli.graph6.as_deref().expect("one input given");
    Ok(Some(LoadedInput {
        input: Input::Graph(parse_graph6(text)?),
        descriptor: InputDescriptor {
            kind: "graph6",
            value: text.trim().to_string(),
            sha256: None,
        },
    }))
}

fn analysis_of(input: &Input) -> CliResult<Analysis> {
    Ok(match input {
        Input::Family(spec) => Analysis::from_family(spec)?,
        Input::Graph(g) => Analysis::new(g.clone())?,
    })
}

fn require_input(cli: &Cli) -> CliResult<LoadedInput> {
    load_input(cli)?.ok_or_else(|| Failure::Usage("an input graph is required (--family, --edgelist or --graph6)".into()))
}

fn spectra_of(a: &Analysis) -> CliResult<Spectra> {
    let dist = sym_eigenvalues(&distance_matrix_from(&a.distances))?;
    let deviation = a.analytic.as_ref().filter(|s| s.n() == a.n()).map(|s| {
        s.to_spectrum()
            .values()
            .iter()
            .zip(a.dl.values())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    });
    Ok(Spectra {
        distance_laplacian: a.dl.values().to_vec(),
        laplacian: a.lap.values().to_vec(),
        distance: dist.values().to_vec(),
        analytic_distance_laplacian: a.analytic.as_ref().map(Spectra::analytic_pairs),
        analytic_max_deviation: deviation,
    })
}

fn run_spectrum(cli: &Cli) -> CliResult<(Report, bool)> {
    let loaded = require_input(cli)?;
    let a = analysis_of(&loaded.input)?;
    let mut r = Report::new("spectrum", loaded.descriptor);
    r.spectra = Some(spectra_of(&a)?);
    Ok((r, true))
}

fn run_energy(cli: &Cli) -> CliResult<(Report, bool)> {
    let loaded = require_input(cli)?;
    let a = analysis_of(&loaded.input)?;
    let mut r = Report::new("energy", loaded.descriptor);
    r.energy_report = Some(EnergyReport::compute(&a.graph, a.analytic.as_ref())?);
    Ok((r, true))
}

/// Checks for one theorem on one graph. `family` enables the integral-family
/// check; `k` selects a single Brouwer index.
fn checks_for(
    theorem: TheoremArg,
    a: &Analysis,
    family: Option<&FamilySpec>,
    k: Option<usize>,
) -> dlenergy::Result<Vec<BoundCheck>> {
    use theorems::*;
    Ok(match theorem {
        TheoremArg::EdgeMonotonicity => {
            let mut out = Vec::new();
            for e in a.graph.edges() {
                match check_edge_monotonicity(a, e) {
                    Ok(c) => out.extend(c),
                    Err(Error::Disconnected) => {}
                    Err(err) => return Err(err),
                }
            }
            out
        }
        TheoremArg::DleViaSk => vec![check_thm_dle_via_sk(a)?],
        TheoremArg::Brouwer => match k {
            Some(k) => vec![check_brouwer(a, k)?],
            None => (1..=a.n()).map(|k| check_brouwer(a, k)).collect::<dlenergy::Result<_>>()?,
        },
        TheoremArg::Sandwich => check_sandwich(a)?.to_vec(),
        TheoremArg::SigmaT => vec![check_sigma_t_relation(a)?],
        TheoremArg::SecondSmallest => vec![check_second_smallest_bound(a)?],
        TheoremArg::WienerLower => vec![check_wiener_lower_bound(a)?],
        TheoremArg::BipartiteBound => vec![check_bipartite_bound(a)?],
        TheoremArg::IndependenceBound => vec![check_independence_bound(a)?],
        TheoremArg::ConnectivityBound => vec![check_connectivity_bound(a)?],
        TheoremArg::EigenvalueFloors => check_eigenvalue_floor_corollaries(a)?,
        TheoremArg::IntegralFamily => match family {
            Some(spec) => vec![check_integral_family(spec)?],
            None => {
                return Err(Error::ParameterRange(
                    "integral-family needs a --family join input".into(),
                ))
            }
        },
        TheoremArg::All => {
            let mut out = check_all(a)?;
            if let Some(c) = family.and_then(|s| check_integral_family(s).ok()) {
                out.push(c);
            }
            out
        }
    })
}

fn summarize<'a>(items: impl Iterator<Item = (&'a str, u64, &'a [BoundCheck])>) -> VerifySummary {
    let mut s = VerifySummary::default();
    for (graph6, labeled, checks) in items {
        s.graphs += 1;
        s.labeled_graphs += labeled;
        s.checks += checks.len();
        s.equality_cases += checks.iter().filter(|c| c.equality).count();
        s.out_of_domain += checks.iter().filter(|c| !c.in_domain).count();
        s.discrepancies += checks.iter().filter(|c| c.discrepancy).count();
        s.violations
            .extend(checks.iter().filter(|c| c.is_violation()).map(|c| Violation::from_check(graph6, c)));
    }
    s
}

/// Whether a precondition failure means the graph is outside the sweep
/// rather than an error.
fn not_applicable(e: &Error) -> bool {
    matches!(
        e,
        Error::WrongDiameter { .. } | Error::NotBipartite | Error::ParameterRange(_)
    )
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn class_filter(theorem: TheoremArg, g: &Graph, k: Option<usize>, alpha: Option<usize>) -> dlenergy::Result<bool> {
    if theorem == TheoremArg::ConnectivityBound {
        if let Some(k) = k {
            if vertex_connectivity(g)? != k {
                return Ok(false);
            }
        }
    }
    if theorem == TheoremArg::IndependenceBound {
        if let Some(alpha) = alpha {
            if independence_number(g)? != alpha {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn sweep(
    theorem: TheoremArg,
    n: usize,
    k: Option<usize>,
    alpha: Option<usize>,
    allow_large: bool,
) -> CliResult<Vec<(u64, ClassChecks)>> {
    let max = if allow_large { LARGE_MAX_ORDER } else { DEFAULT_MAX_ORDER };
    if n == 0 || n > max {
        return Err(Failure::Usage(format!("sweeps require 1 <= n <= {max} (n={n})")));
    }
    if theorem == TheoremArg::IntegralFamily {
        return Err(Failure::Usage("integral-family applies to a --family join, not a sweep".into()));
    }
    let brouwer_k = if theorem == TheoremArg::Brouwer { k } else { None };
    let mut rows: Vec<(u64, ClassChecks)> = par_enumerate_connected(n, Enumeration::Unlabeled)?
        .map(|(mask, g)| -> dlenergy::Result<Option<(u64, ClassChecks)>> {
            if !class_filter(theorem, &g, k, alpha)? {
                return Ok(None);
            }
            let labeled_count = factorial(n) / automorphism_count(&g)?;
            let a = Analysis::new(g)?;
            let checks = match checks_for(theorem, &a, None, brouwer_k) {
                Ok(c) => c,
                Err(e) if not_applicable(&e) => return Ok(None),
                Err(e) => return Err(e),
            };
            if checks.is_empty() {
                return Ok(None);
            }
            Ok(Some((
                mask,
                ClassChecks {
                    graph6: emit_graph6(&a.graph),
                    labeled_count,
                    checks,
                },
            )))
        })
        .filter_map(|r| r.transpose())
        .collect::<dlenergy::Result<_>>()?;
    rows.sort_by_key(|(mask, _)| *mask);
    Ok(rows)
}

fn run_verify(
    cli: &Cli,
    theorem: TheoremArg,
    n: Option<usize>,
    k: Option<usize>,
    alpha: Option<usize>,
    allow_large: bool,
) -> CliResult<(Report, bool)> {
    let loaded = load_input(cli)?;
    match (loaded, n) {
        (Some(_), Some(_)) => Err(Failure::Usage("--n selects a sweep and cannot be combined with an input graph".into())),
        (None, None) => Err(Failure::Usage("give an input graph or --n for a sweep".into())),
        (Some(loaded), None) => {
            let a = analysis_of(&loaded.input)?;
            let family = match &loaded.input {
                Input::Family(spec) => Some(spec),
                Input::Graph(_) => None,
            };
            let checks = checks_for(theorem, &a, family, k)?;
            let graph6 = emit_graph6(&a.graph);
            let summary = summarize(std::iter::once((graph6.as_str(), 1, checks.as_slice())));
            let ok = summary.violations.is_empty();
            let mut r = Report::new("verify", loaded.descriptor);
            r.bound_checks = checks;
            r.summary = Some(summary);
            Ok((r, ok))
        }
        (None, Some(n)) => {
            let rows = sweep(theorem, n, k, alpha, allow_large)?;
            let summary = summarize(
                rows.iter()
                    .map(|(_, c)| (c.graph6.as_str(), c.labeled_count, c.checks.as_slice())),
            );
            let ok = summary.violations.is_empty();
            let mut value = format!("n={n}");
            if let Some(k) = k {
                value.push_str(&format!(",k={k}"));
            }
            if let Some(alpha) = alpha {
                value.push_str(&format!(",alpha={alpha}"));
            }
            let mut r = Report::new(
                "verify",
                InputDescriptor {
                    kind: "range",
                    value,
                    sha256: None,
                },
            );
            r.classes = rows.into_iter().map(|(_, c)| c).collect();
            r.summary = Some(summary);
            Ok((r, ok))
        }
    }
}

fn run_search(
    class: ClassArg,
    n: usize,
    alpha: Option<usize>,
    k: Option<usize>,
    allow_large: bool,
) -> CliResult<(Report, bool)> {
    let spec = match class {
        ClassArg::Bipartite => ClassSpec::Bipartite,
        ClassArg::All => ClassSpec::All,
        ClassArg::Independence => ClassSpec::Independence(
            alpha.ok_or_else(|| Failure::Usage("search independence requires --alpha".into()))?,
        ),
        ClassArg::Connectivity => {
            ClassSpec::Connectivity(k.ok_or_else(|| Failure::Usage("search connectivity requires --k".into()))?)
        }
    };
    let result = min_dle_over_class(spec, n, allow_large)?;
    let ok = result.matches_prediction != Some(false);
    let mut r = Report::new(
        "search",
        InputDescriptor {
            kind: "range",
            value: format!("{spec},n={n}"),
            sha256: None,
        },
    );
    r.extremal = Some(result);
    Ok((r, ok))
}

fn run_census(n: usize, allow_large: bool) -> CliResult<(Report, bool)> {
    let census = sigma_census(n, allow_large)?;
    let ok = census.transmission_regular_mismatches.is_empty();
    let mut r = Report::new(
        "census",
        InputDescriptor {
            kind: "range",
            value: format!("n={n}"),
            sha256: None,
        },
    );
    r.census = Some(census);
    Ok((r, ok))
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("SPECDL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| Failure::Usage(format!("SPECDL_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))
}

fn explain(r: &Report) {
    if let Some(s) = &r.summary {
        for v in &s.violations {
            let what = if v.holds { "equality characterization mismatch" } else { "bound fails" };
            let index = v.index.map(|i| format!(" index {i}")).unwrap_or_default();
            eprintln!("violation: {} {} [{}]{}: {what}", v.graph6, v.theorem, v.case_label, index);
        }
    }
    if let Some(x) = &r.extremal {
        if x.matches_prediction == Some(false) {
            eprintln!(
                "mismatch: minimizers {:?} of {} at n={} differ from predicted {:?}",
                x.minimizer_graphs, x.class_spec, x.n, x.predicted_graphs
            );
        }
    }
    if let Some(c) = &r.census {
        for g in &c.transmission_regular_mismatches {
            eprintln!("mismatch: transmission-regular graph {g} has sigma != n - gamma");
        }
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    configure_threads()?;
    let start = Instant::now();
    let (mut report, ok) = match &cli.command {
        Command::Spectrum => run_spectrum(cli)?,
        Command::Energy => run_energy(cli)?,
        Command::Verify {
            theorem,
            n,
            k,
            alpha,
            allow_large,
        } => run_verify(cli, *theorem, *n, *k, *alpha, *allow_large)?,
        Command::Search {
            class,
            n,
            alpha,
            k,
            allow_large,
        } => run_search(*class, *n, *alpha, *k, *allow_large)?,
        Command::Census { n, allow_large } => run_census(*n, *allow_large)?,
    };
    let timing = cli.timing.then(|| Timing {
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        threads: rayon::current_num_threads(),
    });
    let text = match cli.format {
        Format::Json => {
            report.timing = timing;
            report::to_json(&report).map_err(|e| Failure::Output(e.to_string()))? + "\n"
        }
        Format::Csv => {
            if let Some(t) = timing {
                eprintln!("elapsed_ms={:.3} threads={}", t.elapsed_ms, t.threads);
            }
            report::to_csv(&report).map_err(|e| Failure::Output(e.to_string()))?
        }
    };
    print!("{text}");
    if !ok {
        explain(&report);
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
