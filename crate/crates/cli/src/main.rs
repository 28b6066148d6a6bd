//! `diamgraph`: generate, analyze, verify and search diameter graphs.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
//! 3 theorem preconditions violated.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diamgraph::geometry::DEFAULT_EPS;

#[derive(Parser, Debug)]
#[command(name = "diamgraph", version, about = "Diameter graphs in R^4 and on 3-spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Diameter tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    eps: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate t2, F2, F3 and U4 as CSV.
    Formula(FormulaArgs),
    /// Write a point set.
    Gen(GenArgs),
    /// Report diameter, clique counts, chromatic number and bounds of a point set.
    Analyze(AnalyzeArgs),
    /// Check theorem suites on a point set or on seeded random instances.
    Verify(VerifyArgs),
    /// Simulated-annealing search for many l-cliques.
    Search(SearchArgs),
    /// Build the spherical double cover of a point set on a 3-sphere.
    Cover(CoverArgs),
}

#[derive(Args, Debug)]
pub struct FormulaArgs {
    #[arg(long, default_value_t = 5)]
    n_min: u64,
    #[arg(long, default_value_t = 12)]
    n_max: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    LenzEdges,
    LenzTriangles,
    Lenz4cliques,
    Simplex,
    Kmm,
    RandomSphere,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    kind: GenKind,
    /// Number of points (Lenz kinds, random-sphere).
    #[arg(long)]
    n: Option<usize>,
    /// Points per circle (kmm).
    #[arg(long)]
    m: Option<usize>,
    /// Simplex dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Sphere radius (random-sphere).
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// PointSet JSON file.
    #[arg(long)]
    input: PathBuf,
    /// Also write the diameter graph in DIMACS format.
    #[arg(long)]
    dimacs: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Theorem1,
    Schur,
    Cover,
    Kst,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    suite: Suite,
    /// Check this point set instead of random instances.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 5)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    /// Sphere radius of the random instances.
    #[arg(long, default_value_t = 0.8)]
    r: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Annealing steps per Schur instance.
    #[arg(long, default_value_t = 3000)]
    steps: usize,
    /// Vertices of the random graphs (kst).
    #[arg(long, default_value_t = 52)]
    n: u64,
    /// Edges of the random graphs (kst); defaults to ceil(n^2/4).
    #[arg(long)]
    e: Option<u64>,
    /// Size of the large side of K_{s,3} (kst).
    #[arg(long, default_value_t = 7)]
    s: u64,
    /// Also write one CSV row per instance.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceArg {
    R4,
    Sphere,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    n: usize,
    /// Clique size to maximize (2, 3 or 4).
    #[arg(long)]
    l: usize,
    #[arg(long, value_enum, default_value_t = SpaceArg::R4)]
    space: SpaceArg,
    /// Sphere radius (sphere space).
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = 20_000)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Start from this point set.
    #[arg(long)]
    init: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = commands::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Formula(a) => commands::formula(&a),
        Command::Gen(a) => commands::gen(&a),
        Command::Analyze(a) => commands::analyze(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Search(a) => commands::search(&a),
        Command::Cover(a) => commands::cover(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
