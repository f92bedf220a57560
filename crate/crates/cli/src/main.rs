//! `edgeideal`: command line front end.
//!
//! Exit status: 0 success, 1 a property violation was found (a decision procedure and
//! the oracle disagree, a sweep check failed, an `--expect` file differs),
//! 2 bad input, 3 a size cap was exceeded.

mod commands;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgeideal::classify::generate::InstanceFamily;
use edgeideal::classify::ClassifyOptions;
use edgeideal::covers::{AssocMethod, UnmixedMethod};
use edgeideal::graph::{parse_graph, ParseOptions, WeightedOrientedGraph};
use edgeideal::oracle::Field;
use edgeideal::Limits;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use commands::Outcome;

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
}

impl From<edgeideal::Error> for Failure {
    fn from(e: edgeideal::Error) -> Self {
        if e.is_cap_exceeded() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "edgeideal",
    version,
    about = "Monomial edge ideals of vertex-weighted directed graphs"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    global: GlobalOptions,
}

#[derive(Args, Debug, Clone, Serialize)]
struct GlobalOptions {
    /// Cross-check verdicts with the homology oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Coefficient field for the oracle: q, f2, f3, ...
    #[arg(long, global = true, default_value = "f2", value_parser = parse_field)]
    field: Field,
    /// Emit one JSON record instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Keep source and sink weights as written instead of resetting them to 1.
    #[arg(long, global = true)]
    raw_weights: bool,
    /// Cap on vertices of any enumerated cover problem.
    #[arg(long, global = true)]
    cap_vertices: Option<usize>,
    /// Cap on faces handed to the homology routines.
    #[arg(long, global = true)]
    cap_faces: Option<usize>,
    /// Compare the plain-text report with this file; a difference exits 1.
    #[arg(long, global = true, value_name = "FILE")]
    expect: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: edgeideal::Error| e.to_string())
}

/// Where the graph comes from.
#[derive(Args, Debug, Clone)]
struct Input {
    /// Graph file, or `-` for standard input.
    #[arg(required_unless_present = "inline", conflicts_with = "inline")]
    path: Option<PathBuf>,
    /// Graph text given directly; `;` separates directives.
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Print the edge ideal I(D).
    Ideal(Input),
    /// Print the polarization of I(D).
    Polarize(Input),
    /// Print the Alexander dual of the polarization.
    Dual(Input),
    /// Print the minimal covers of the polarization, or with --strong the
    /// strong vertex covers of D with their L1/L2/L3 split.
    Covers {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        strong: bool,
    },
    /// Print the associated primes.
    Assoc {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "strong-covers")]
        method: AssocArg,
    },
    /// Decide unmixedness.
    Unmixed {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "strong-l3")]
        method: UnmixedArg,
    },
    /// Run the classification that applies to the graph.
    Classify(Input),
    /// Sequential Cohen-Macaulay check for whiskered graphs with one heavy
    /// matched tail, with the dual ordering in full.
    Scm(Input),
    /// Run the homology oracle on R/I(D).
    Oracle(Input),
    /// Evaluate "unmixed with a Cohen-Macaulay radical implies
    /// Cohen-Macaulay" on one graph.
    Conjecture(Input),
    /// Check every classification against the oracle over a family of graphs.
    Sweep(SweepArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AssocArg {
    StrongCovers,
    Depolarization,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum UnmixedArg {
    StrongL3,
    Heights,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ClassArg {
    Whiskered,
    Bipartite,
    Random,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long = "class", value_enum)]
    class: ClassArg,
    /// Largest base graph (whiskered).
    #[arg(long, default_value_t = 3)]
    base_max: usize,
    /// Largest side sizes (bipartite).
    #[arg(long, default_value_t = 3)]
    x_max: usize,
    #[arg(long, default_value_t = 3)]
    y_max: usize,
    #[arg(long, default_value_t = 2)]
    weight_max: u64,
    /// Number of graphs (random).
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Largest vertex count (random).
    #[arg(long, default_value_t = 8)]
    vertices_max: usize,
    /// Edge probability in percent (random).
    #[arg(long, default_value_t = 40)]
    edge_percent: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also decide Cohen-Macaulayness over this field and log disagreements.
    #[arg(long, value_parser = parse_field)]
    cross_field: Option<Field>,
    /// Write one JSON record per instance to this file.
    #[arg(long, value_name = "FILE")]
    log: Option<PathBuf>,
}

impl SweepArgs {
    fn family(&self) -> InstanceFamily {
        match self.class {
            ClassArg::Whiskered => InstanceFamily::Whiskered {
                base_sizes: (1, self.base_max),
                weight_max: self.weight_max,
            },
            ClassArg::Bipartite => InstanceFamily::Bipartite {
                x_sizes: (1, self.x_max),
                y_sizes: (1, self.y_max),
                weight_max: self.weight_max,
            },
            ClassArg::Random => InstanceFamily::Random {
                seed: self.seed,
                count: self.count,
                vertices: (1, self.vertices_max),
                weight_max: self.weight_max,
                edge_percent: self.edge_percent,
            },
        }
    }
}

struct LoadedInput {
    graph: WeightedOrientedGraph,
    source: String,
    sha256: String,
}

fn load(input: &Input, raw_weights: bool) -> Result<LoadedInput, Failure> {
    let (text, source) = match (&input.path, &input.inline) {
        (_, Some(inline)) => (inline.replace(';', "\n"), "inline".to_string()),
        (Some(p), None) if p == Path::new("-") => {
            let text = std::io::read_to_string(std::io::stdin())
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            (text, "stdin".to_string())
        }
        (Some(p), None) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            (text, p.display().to_string())
        }
        (None, None) => return Err(Failure::Input("no input graph".into())),
    };
    let parsed = parse_graph(&text, ParseOptions { raw_weights })?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(LoadedInput {
        graph: parsed.graph,
        source,
        sha256: hex::encode(Sha256::digest(text.as_bytes())),
    })
}

fn limits(g: &GlobalOptions) -> Limits {
    let mut l = Limits::default();
    if let Some(v) = g.cap_vertices {
        l.cover_vertices = v;
        l.strong_cover_vertices = v;
    }
    if let Some(f) = g.cap_faces {
        l.faces = f;
    }
    l
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Ideal(_) => "ideal",
        Verb::Polarize(_) => "polarize",
        Verb::Dual(_) => "dual",
        Verb::Covers { .. } => "covers",
        Verb::Assoc { .. } => "assoc",
        Verb::Unmixed { .. } => "unmixed",
        Verb::Classify(_) => "classify",
        Verb::Scm(_) => "scm",
        Verb::Oracle(_) => "oracle",
        Verb::Conjecture(_) => "conjecture",
        Verb::Sweep(_) => "sweep",
    }
}

fn dispatch(cli: &Cli) -> Result<(Outcome, Option<LoadedInput>), Failure> {
    let g = &cli.global;
    let limits = limits(g);
    let classify_opts = ClassifyOptions {
        oracle: g.oracle.then_some(g.field),
        dual_quotients: true,
        limits,
    };
    let with_input =
        |input: &Input, f: &dyn Fn(&WeightedOrientedGraph) -> Result<Outcome, Failure>| {
            let loaded = load(input, g.raw_weights)?;
            let out = f(&loaded.graph)?;
            Ok((out, Some(loaded)))
        };
    match &cli.verb {
        Verb::Ideal(i) => with_input(i, &commands::ideal),
        Verb::Polarize(i) => with_input(i, &commands::polarize),
        Verb::Dual(i) => with_input(i, &|d| commands::dual(d, &limits)),
        Verb::Covers { input, strong } => {
            with_input(input, &|d| commands::covers(d, *strong, &limits))
        }
        Verb::Assoc { input, method } => {
            let method = match method {
                AssocArg::StrongCovers => AssocMethod::StrongCovers,
                AssocArg::Depolarization => AssocMethod::Depolarization,
            };
            with_input(input, &|d| commands::assoc(d, method, &limits))
        }
        Verb::Unmixed { input, method } => {
            let method = match method {
                UnmixedArg::StrongL3 => UnmixedMethod::StrongL3,
                UnmixedArg::Heights => UnmixedMethod::Heights,
            };
            with_input(input, &|d| commands::unmixed(d, method, &limits))
        }
        Verb::Classify(i) => with_input(i, &|d| commands::classify_graph(d, &classify_opts)),
        Verb::Scm(i) => with_input(i, &|d| commands::scm(d, &classify_opts)),
        Verb::Oracle(i) => with_input(i, &|d| commands::oracle(d, g.field, &limits)),
        Verb::Conjecture(i) => with_input(i, &|d| commands::conjecture(d, g.field, &limits)),
        Verb::Sweep(s) => {
            let out =
                commands::sweep(s.family(), g.field, s.cross_field, limits, s.log.as_deref())?;
            Ok((out, None))
        }
    }
}

fn check_expectation(path: &Path, text: &str) -> Result<Option<String>, Failure> {
    let expected = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if expected == text {
        return Ok(None);
    }
    let first = expected
        .lines()
        .zip(text.lines())
        .position(|(a, b)| a != b)
        .unwrap_or_else(|| expected.lines().count().min(text.lines().count()));
    Ok(Some(format!(
        "output differs from {} at line {}",
        path.display(),
        first + 1
    )))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut outcome, input) = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Some(path) = &cli.global.expect {
        match check_expectation(path, &outcome.text) {
            Ok(None) => {}
            Ok(Some(diff)) => outcome.violation = outcome.violation.or(Some(diff)),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code());
            }
        }
    }
    if cli.global.json {
        let record = serde_json::json!({
            "tool": "edgeideal",
            "version": env!("CARGO_PKG_VERSION"),
            "verb": verb_name(&cli.verb),
            "input": input.as_ref().map(|i| serde_json::json!({
                "source": i.source,
                "sha256": i.sha256,
            })),
            "options": cli.global,
            "result": outcome.json,
            "violation": outcome.violation,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&record).expect("records serialize")
        );
    } else {
        print!("{}", outcome.text);
    }
    match outcome.violation {
        Some(v) => {
            eprintln!("violation: {v}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
