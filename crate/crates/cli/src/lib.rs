//! Command-line front end for `shadowlab`.
//!
//! [`run`] parses arguments, executes one command and returns the report
//! together with the process exit code, so the binary is a thin wrapper and
//! tests can drive commands in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod caps;
mod commands;
pub mod io;
pub mod report;

pub use caps::Caps;
pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "shadowlab", version, about = "Exact counts and bound checks for shadow-type extremal problems")]
pub struct Cli {
    /// Emit the report as canonical JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count rainbow cliques, good 6-sets, mixed 4-sets or color-covering sets.
    Count(CountArgs),
    /// Rainbow clique ratio T^(d-1)/(C_1...C_d) against its upper bounds.
    Kappa(KappaArgs),
    /// Shadow of a set family.
    Shadow(FamilyArgs),
    /// Kruskal-Katona bound for a set family.
    Kk(FamilyArgs),
    /// Kruskal-Katona bound for a family of subspaces over F_q.
    Qkk(FamilyArgs),
    /// Entropies, Shearer's inequality and the telescoping shadow inequality.
    Entropy(EntropyArgs),
    /// Forbidding-system axioms and the generalized shadow bound.
    Forbidding(ForbiddingArgs),
    /// Generate an explicit construction.
    Construct(ConstructArgs),
    /// Exhaustive or randomized ratio search.
    Search(SearchArgs),
    /// Weighted clique sum bound, with the trace check for d = 3.
    Weighted(WeightedArgs),
    /// Partial shadow bound.
    PartialShadow(PartialShadowArgs),
    /// Validate a hypergraph file and list every problem found.
    Validate(InputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountKind {
    Rainbow,
    Good6,
    Mixed,
    Covering,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Hypergraph file (JSON or line format).
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = CountKind::Rainbow)]
    pub kind: CountKind,
    /// Clique size for rainbow counts.
    #[arg(long)]
    pub d: Option<usize>,
    /// Comma-separated colors for rainbow counts.
    #[arg(long, value_delimiter = ',')]
    pub colors: Vec<String>,
    /// Covering problems use (delta+2)-uniform edges.
    #[arg(long, default_value_t = 0)]
    pub delta: usize,
}

#[derive(Args, Debug)]
pub struct KappaArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub d: usize,
    /// Comma-separated colors; defaults to the colors of the input in order of appearance.
    #[arg(long, value_delimiter = ',')]
    pub colors: Vec<String>,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Family file: {"n","d","sets"} for sets, {"q","n","d","members"} for subspaces.
    #[arg(long)]
    pub family: PathBuf,
    /// Write the shadow family here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    /// Distribution file {"arity","support":[{"tuple","p"}]}.
    #[arg(long, conflicts_with = "family")]
    pub dist: Option<PathBuf>,
    /// Set family: check the telescoping inequality for a uniform member in uniform order.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// Coordinates whose entropy is reported (default: all).
    #[arg(long, value_delimiter = ',')]
    pub coords: Vec<usize>,
    /// Condition on these coordinates.
    #[arg(long, value_delimiter = ',')]
    pub given: Vec<usize>,
    /// Also check Shearer's inequality for the leave-one-out cover.
    #[arg(long)]
    pub shearer: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    /// Multisets with a repeated element are bad.
    Repeats,
    /// Linearly dependent multisets of nonzero vectors of F_q^n are bad.
    Linear,
}

#[derive(Args, Debug)]
pub struct ForbiddingArgs {
    #[arg(long, value_enum)]
    pub system: SystemKind,
    /// Universe size for `repeats`, dimension for `linear`.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// A compatible set as comma-separated element ids; repeatable.
    #[arg(long = "set")]
    pub sets: Vec<String>,
    /// Use every subspace of this dimension (minus zero) as a set (`linear` only).
    #[arg(long)]
    pub subspace_sets: Option<usize>,
    /// Force a seeded spot check with this many samples instead of exhaustive verification.
    #[arg(long)]
    pub spot_check: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionName {
    K4Blowup,
    RainbowTripartite,
    Matching,
    Tetrahedra8,
    Flats,
    TripartiteMixed,
    CompleteFamily,
    KappaLift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub name: ConstructionName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Hypergraph to lift (`kappa-lift`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Colors of the input (`kappa-lift`); defaults to its colors in order of appearance.
    #[arg(long, value_delimiter = ',')]
    pub colors: Vec<String>,
    /// Name of the added color (`kappa-lift`).
    #[arg(long, default_value = "lift")]
    pub new_color: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchKind {
    RainbowTriangle,
    Mixed4,
    Probe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbeProblem {
    Rainbow,
    Good6,
    Mixed4,
    Covering,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub kind: SearchKind,
    #[arg(long)]
    pub max_vertices: Option<usize>,
    /// Enumerate colorings up to relabeling of colors (exact, still exhaustive).
    #[arg(long)]
    pub color_symmetry: bool,
    #[arg(long, value_enum)]
    pub problem: Option<ProbeProblem>,
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub delta: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    /// Write the witness hypergraph here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WeightedArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub d: usize,
}

#[derive(Args, Debug)]
pub struct PartialShadowArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub k: usize,
}

/// Result of one invocation: the report, the exit code and the text to print.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub exit_code: i32,
    /// Rendered report, or the usage message for usage errors.
    pub text: String,
}

/// Runs one command, reading caps from `SHADOWLAB_CAP`.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let spec = std::env::var(caps::ENV_VAR).ok();
    run_with_caps(args, spec.as_deref())
}

/// Runs one command with caps given as a `SHADOWLAB_CAP`-style string.
pub fn run_with_caps<I, S>(args: I, cap_spec: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome {
                report: None,
                exit_code: code,
                text: e.render().to_string(),
            };
        }
    };
    let caps = match Caps::parse(cap_spec) {
        Ok(c) => c,
        Err(msg) => {
            return Outcome {
                report: None,
                exit_code: EXIT_USAGE,
                text: format!("error: {msg}\n"),
            }
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let json = cli.json;
    let execute = || commands::execute(&cli, caps, echo.clone());
    let report = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(execute),
            Err(e) => {
                return Outcome {
                    report: None,
                    exit_code: EXIT_USAGE,
                    text: format!("error: cannot start {n} threads: {e}\n"),
                }
            }
        },
        None => execute(),
    };
    let text = if json { report.to_json() } else { report.to_text() };
    Outcome {
        exit_code: report.exit_code,
        report: Some(report),
        text,
    }
}
