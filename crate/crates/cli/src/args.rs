use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "hyperglauber",
    version,
    about = "Glauber dynamics, coupling experiments, mixing bounds and exact counts for hypergraphs"
)]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout. Relative paths are resolved
    /// against $HYPERGLAUBER_OUTPUT_DIR when it is set.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for replicate-parallel commands.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a hypergraph in the text format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Stopping-time experiment from adjacent starting pairs.
    Couple(CoupleArgs),
    /// Closed-form calculators.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Exact counting oracles.
    #[command(subcommand)]
    Count(CountCommand),
    /// Total-variation distance between the chain and its stationary law.
    Tv(TvArgs),
    /// Run a single chain and report its final state.
    Sample(SampleArgs),
    /// Simulate the branching gambler's game.
    Gambler(GamblerArgs),
    /// Coalescence times of the identity coupling from two starts.
    Coalesce(CoalesceArgs),
    /// Exact one-step drift over random adjacent pairs.
    Drift(DriftArgs),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenCommand {
    /// The frozen colouring instance on q groups of m-1 vertices.
    Frozen {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
    },
    /// Random m-uniform hypergraph with bounded degree.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Blow a graph up into a hypergraph with edges of size 2⌈m/2⌉.
    Blowup {
        /// Graph file in the text format, or - for stdin.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Indset,
    Colouring,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ChainArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Fugacity for independent sets.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Number of colours; required for colourings.
    #[arg(long)]
    pub q: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    RandomMaxDegree,
    Uniform,
    Adversarial,
    Fixed,
}

#[derive(Args, Debug, Serialize)]
pub struct PolicyArgs {
    /// How the disagreeing vertex w and the background are chosen.
    #[arg(long, value_enum, default_value_t = Policy::RandomMaxDegree)]
    pub policy: Policy,
    /// The vertex for `--policy fixed`.
    #[arg(long)]
    pub w: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct CoupleArgs {
    /// Hypergraph file, or - for stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub chain: ChainArgs,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub replicates: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Step cap per replicate; defaults to 40·Δ·n.
    #[arg(long)]
    pub t_max: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    StoppingTime,
    Indset,
    IndsetLinear,
    IndsetAtM,
    Colouring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Integral,
    Series,
    Both,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsCommand {
    /// Bankruptcy probabilities p_1..p_{m-1} of the single-edge game.
    EdgeProcess {
        /// Edge sizes (comma separated).
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Fugacities as decimals or fractions (comma separated).
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<String>,
        /// Also report exact rational values.
        #[arg(long)]
        exact: bool,
    },
    /// The independent-set drift bound 2Δp_1 over a parameter grid.
    Alpha {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        delta: Vec<usize>,
    },
    /// Mixing-time bounds.
    Tau(TauArgs),
    /// The root β* and the colouring threshold factor 1/(1-β*).
    BetaStar {
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// The colouring success integral; without --a/--b both the rounded and
    /// the unrounded constants are reported.
    Integral {
        #[arg(long, requires = "b")]
        a: Option<f64>,
        #[arg(long, requires = "a")]
        b: Option<f64>,
        #[arg(long, default_value_t = 20.0)]
        upper: f64,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct TauArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub d1: Option<f64>,
    #[arg(long)]
    pub d2: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Formula,
    Brute,
    Both,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountCommand {
    /// Independent sets by size, and the partition function.
    Indsets {
        #[arg(long)]
        input: PathBuf,
        /// Fugacity (decimal or fraction) at which to evaluate Z exactly.
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// Proper q-colourings.
    Colourings {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        q: u32,
    },
    /// Blow-up identity for a graph.
    BlowupIdentity {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Edge covers of K_m.
    EdgeCovers {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Weak edge colourings of K_m.
    WeakColourings {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct TvArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 1000)]
    pub burn_in: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub stride: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub chain: ChainArgs,
    /// Number of steps.
    #[arg(long)]
    pub t: u64,
    /// Record the state after every `stride` steps.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub stride: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct GamblerArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub d2: u64,
    /// Horizon; defaults to the stopping-time bound from --d1 and --eps.
    #[arg(long)]
    pub t_max: Option<u64>,
    #[arg(long)]
    pub d1: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub replicates: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CoalesceArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub replicates: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Step cap per replicate; defaults to 40·Δ·n.
    #[arg(long)]
    pub t_max: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct DriftArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub chain: ChainArgs,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub pairs: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
