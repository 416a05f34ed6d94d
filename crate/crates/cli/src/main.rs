//! `chemspace` — oriented hypergraphs and their G(n, p) random model from the
//! command line: exact counts, reproducible samples, expectation curves,
//! extremum solvers, reaction-file ingestion, and randomness tests.
//!
//! Reproducibility: every randomized subcommand uses the fixed default seed
//! [`DEFAULT_SEED`] unless `--seed` is given, the `CHEMSPACE_SEED` environment
//! variable is set, or `--entropy` requests a throwaway OS-entropy seed.
//! Replicate k always draws from a stream derived as `split_seed(base, k)`,
//! so results are independent of `--jobs` and stable across runs.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use chemspace_core::reaction::AutocatalyticPolicy;
use chemspace_core::SamplerStrategy;

/// Fixed default seed ("5EED") so published runs reproduce by default.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "CHEMSPACE_SEED";

#[derive(Parser)]
#[command(
    name = "chemspace",
    version,
    about = "Oriented hypergraphs and their G(n, p) random model",
    long_about = "Exact counting of the complete oriented hypergraph, seeded random sampling, \
                  expectation curves for probability families p(n) = n^alpha / beta^n, extremum \
                  solvers, reaction-file ingestion, and chi-square randomness tests.\n\n\
                  Randomized subcommands default to the fixed seed 0x5EED (24301); override with \
                  --seed, the CHEMSPACE_SEED environment variable, or --entropy. Failures exit \
                  nonzero and print `error[category]: message` on stderr."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact counts for the complete oriented hypergraph on n vertices
    Count(CountArgs),
    /// Draw G(n, p) instances (summary on stdout; documents via --output)
    Sample(SampleArgs),
    /// Expectation curves over an n-grid for p(n) = n^alpha / beta^n
    Curves(CurvesArgs),
    /// Locate maxima of the expected per-size edge counts
    Extrema(ExtremaArgs),
    /// Parse a reaction file into a hypergraph and report its statistics
    Ingest(IngestArgs),
    /// Chi-square randomness test of an instance against G(n, p)
    Test(TestArgs),
}

/// Output encoding of a subcommand's primary result.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CountArgs {
    /// Universe size (number of substances)
    #[arg(long)]
    n: u32,
    /// Include the per-block (i, j) table
    #[arg(long)]
    blocks: bool,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[command(group(ArgGroup::new("prob").required(true).args(["p", "alpha"])))]
struct SampleArgs {
    /// Universe size
    #[arg(long)]
    n: u32,
    /// Edge probability (mutually exclusive with --alpha/--beta)
    #[arg(long)]
    p: Option<f64>,
    /// Family exponent: p(n) = n^alpha / beta^n
    #[arg(long, requires = "beta", allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Family base: p(n) = n^alpha / beta^n
    #[arg(long, requires = "alpha")]
    beta: Option<f64>,
    /// Number of replicates
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    /// Base seed (replicate k uses a stream split from it)
    #[arg(long)]
    seed: Option<u64>,
    /// Use a non-reproducible OS-entropy seed
    #[arg(long, conflicts_with = "seed")]
    entropy: bool,
    /// Worker threads; the output is identical for every value
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    jobs: u64,
    /// Sampling strategy
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Write instance documents here (replicate k goes to stem.k.json when
    /// --count exceeds 1); the summary always prints to stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Summary format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    /// Exhaustive for small universes, per-size binomial otherwise
    Auto,
    /// One Bernoulli flip per admissible edge
    Exhaustive,
    /// Per-size count draw plus uniform unranking
    PerSize,
}

impl From<StrategyArg> for SamplerStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => SamplerStrategy::Auto,
            StrategyArg::Exhaustive => SamplerStrategy::ExhaustiveBernoulli,
            StrategyArg::PerSize => SamplerStrategy::PerSizeBinomial,
        }
    }
}

#[derive(Args)]
struct CurvesArgs {
    /// Family exponent: p(n) = n^alpha / beta^n
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Family base: p(n) = n^alpha / beta^n
    #[arg(long)]
    beta: f64,
    /// Log-spaced n-grid as LO:HI[:POINTS]
    #[arg(long, value_name = "LO:HI[:POINTS]", default_value = "1000:100000:40")]
    n_range: String,
    /// Also emit E[R_s] and P(s) curves for these edge sizes
    #[arg(long, value_delimiter = ',', value_name = "S,...")]
    sizes: Vec<u32>,
    /// Write the table here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["s_max", "n_max"])))]
struct ExtremaArgs {
    /// Edge size with the largest expected count at universe size N
    #[arg(long = "s-max", value_name = "N")]
    s_max: Option<u64>,
    /// Universe size maximizing expected edges of size S for p(n) = n^ALPHA / 3^n
    #[arg(long = "n-max", num_args = 2, value_names = ["S", "ALPHA"], allow_negative_numbers = true)]
    n_max: Option<Vec<String>>,
    /// Write the result here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    /// Error out on reactions whose sides share a substance
    Reject,
    /// Split overlapping reactions through a synthetic intermediate
    Split,
}

impl From<PolicyArg> for AutocatalyticPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Reject => AutocatalyticPolicy::Reject,
            PolicyArg::Split => AutocatalyticPolicy::SplitViaIntermediate,
        }
    }
}

#[derive(Args)]
struct IngestArgs {
    /// Reaction file (lines like `id: A + B -> C`)
    input: PathBuf,
    /// Handling of reactions whose educts and products overlap
    #[arg(long, value_enum, default_value_t = PolicyArg::Reject)]
    policy: PolicyArg,
    /// Also write the generalized adjacency matrix as JSON (n <= 14)
    #[arg(long, value_name = "PATH")]
    matrix: Option<PathBuf>,
    /// Also write the dense matrix as CSV (n <= 10)
    #[arg(long, value_name = "PATH")]
    matrix_csv: Option<PathBuf>,
    /// Write the primary output here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Primary output: text summary, hypergraph document (json), or summary rows (csv)
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TestArgs {
    /// Instance to test: a hypergraph document (JSON) or a reaction file.
    /// Omitted: sample one instance from G(n, p) first (self-test)
    input: Option<PathBuf>,
    /// Universe size (self-test only)
    #[arg(long)]
    n: Option<u32>,
    /// Null-hypothesis edge probability; estimated from the instance when absent
    #[arg(long, conflicts_with = "alpha")]
    p: Option<f64>,
    /// Family exponent for the null probability: p(n) = n^alpha / beta^n
    #[arg(long, requires = "beta", allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Family base for the null probability
    #[arg(long, requires = "alpha")]
    beta: Option<f64>,
    /// Rejection threshold for each chi-square p-value
    #[arg(long, default_value_t = 0.01)]
    significance: f64,
    /// Seed for the self-test draw
    #[arg(long)]
    seed: Option<u64>,
    /// Use a non-reproducible OS-entropy seed for the self-test draw
    #[arg(long, conflicts_with = "seed")]
    entropy: bool,
    /// Handling of overlapping reactions when the input is a reaction file
    #[arg(long, value_enum, default_value_t = PolicyArg::Reject)]
    policy: PolicyArg,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(args) => commands::count(args),
        Command::Sample(args) => commands::sample(args),
        Command::Curves(args) => commands::curves(args),
        Command::Extrema(args) => commands::extrema(args),
        Command::Ingest(args) => commands::ingest(args),
        Command::Test(args) => commands::test(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
