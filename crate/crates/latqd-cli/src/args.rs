//! Command-line surface: clap definitions and the generator-list parser.
//!
//! Flag vocabulary is deliberately small and scripting-friendly: `--g`
//! takes a comma list with no spaces, and `--korobov-a A` together with
//! `--s DIM` expands to the Korobov vector `(1, A, A², …)` mod N so sweep
//! scripts never have to build the list themselves.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "latqd",
    version,
    about = "Weight enumerators and trigonometric degree of rank-1 lattice rules",
    propagate_version = true
)]
pub struct Cli {
    /// Engine-internal thread count; 0 or absent means all cores.
    /// The LATQD_THREADS environment variable takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write a copy of stdout (same bytes) to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the weight enumerator coefficients M(0..=d*s).
    Enumerate(EnumerateArgs),
    /// Compute the trigonometric degree, with witness when exact.
    Degree(DegreeArgs),
    /// Search generating vectors for the best degree.
    Search(SearchArgs),
    /// Run the cross-engine verification suite on random instances.
    Verify(VerifyArgs),
    /// Measure engine scaling and emit a timing table.
    Bench(BenchArgs),
}

/// `--n to --s`: how the rule itself is named on the command line. Shared
/// by `enumerate` and `degree`.
#[derive(Debug, Args)]
pub struct RuleArgs {
    /// Modulus N (the number of rule points).
    #[arg(long)]
    pub n: i64,

    /// Generator vector: comma-separated integers, no spaces (e.g. 1,5).
    #[arg(
        long,
        value_parser = parse_generators,
        required_unless_present = "korobov_a",
        conflicts_with = "korobov_a"
    )]
    pub g: Option<GeneratorList>,

    /// Korobov parameter: expands to (1, A, A², …, A^(s-1)) mod N.
    #[arg(long, value_name = "A", requires = "s")]
    pub korobov_a: Option<i64>,

    /// Dimension of the expanded Korobov vector.
    #[arg(long, requires = "korobov_a")]
    pub s: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub rule: RuleArgs,

    /// Box radius d: duals are counted inside {-d..d}^s.
    #[arg(long)]
    pub d: u32,

    /// Engine to run.
    #[arg(long, value_enum)]
    pub engine: EngineArg,

    /// Rounding tolerance for the float engines (charsum, fft).
    /// Defaults to a box-size-aware noise bound.
    #[arg(long)]
    pub tol: Option<f64>,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    #[command(flatten)]
    pub rule: RuleArgs,

    /// Witness box radius; defaults to N, which is always conclusive.
    #[arg(long)]
    pub dmax: Option<u32>,

    /// dp: shortest-dual dynamic program. enumerator: coefficient scan.
    #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
    pub method: MethodArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Modulus N.
    #[arg(long)]
    pub n: i64,

    /// Dimension of the generating vectors.
    #[arg(long)]
    pub s: usize,

    #[arg(long, value_enum)]
    pub strategy: StrategyArg,

    /// Number of distinct candidates to draw (random strategy only).
    #[arg(long, required_if_eq("strategy", "random"))]
    pub trials: Option<u64>,

    /// RNG seed (random strategy only).
    #[arg(long, required_if_eq("strategy", "random"))]
    pub seed: Option<u64>,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of random instances per property class.
    #[arg(long)]
    pub cases: u64,

    /// Seed for the instance generator.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Largest modulus drawn.
    #[arg(long, default_value_t = 50)]
    pub max_n: i64,

    /// Largest dimension drawn.
    #[arg(long, default_value_t = 3)]
    pub max_s: usize,

    /// Largest box radius drawn.
    #[arg(long, default_value_t = 4)]
    pub max_d: u32,

    #[arg(long, value_enum, default_value_t = VerifyFormatArg::Text)]
    pub format: VerifyFormatArg,

    /// Corrupt one comparison to prove the harness can fail (self-test).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Parameter to double along the ladder.
    #[arg(long, value_enum)]
    pub sweep: SweepArg,

    /// Engine to measure.
    #[arg(long, value_enum)]
    pub engine: BenchEngineArg,

    /// Timing repeats per row; the median is reported.
    #[arg(long, default_value_t = 5)]
    pub repeats: u32,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    /// Walk every box point (exact oracle).
    Brute,
    /// Residue-class dynamic program (exact).
    Dp,
    /// Character-sum average over rule points (float, then rounded).
    Charsum,
    /// FFT coefficient recovery from unit-circle samples (float, rounded).
    Fft,
}

impl EngineArg {
    pub fn name(self) -> &'static str {
        match self {
            EngineArg::Brute => "brute",
            EngineArg::Dp => "dp",
            EngineArg::Charsum => "charsum",
            EngineArg::Fft => "fft",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Dp,
    Enumerator,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            MethodArg::Dp => "dp",
            MethodArg::Enumerator => "enumerator",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Korobov,
    Random,
}

impl StrategyArg {
    pub fn name(self) -> &'static str {
        match self {
            StrategyArg::Exhaustive => "exhaustive",
            StrategyArg::Korobov => "korobov",
            StrategyArg::Random => "random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyFormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepArg {
    N,
    S,
    D,
}

impl SweepArg {
    pub fn name(self) -> &'static str {
        match self {
            SweepArg::N => "n",
            SweepArg::S => "s",
            SweepArg::D => "d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchEngineArg {
    Charsum,
    DpDegree,
}

impl BenchEngineArg {
    pub fn name(self) -> &'static str {
        match self {
            BenchEngineArg::Charsum => "charsum",
            BenchEngineArg::DpDegree => "dp-degree",
        }
    }
}

/// A parsed `--g` value. Wrapped so clap treats the whole list as one
/// argument value rather than a repeated flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorList(pub Vec<i64>);

/// Parses `--g`: comma-separated integers, no spaces, at least one entry.
/// Range checking (entries in 1..N) belongs to rule validation, not here.
pub fn parse_generators(raw: &str) -> Result<GeneratorList, String> {
    if raw.is_empty() {
        return Err("expected at least one generator entry".into());
    }
    if raw.chars().any(|c| c.is_whitespace()) {
        return Err("generator list must not contain spaces (write 1,5 not 1, 5)".into());
    }
    let mut entries = Vec::new();
    for piece in raw.split(',') {
        let value: i64 = piece
            .parse()
            .map_err(|_| format!("`{piece}` is not an integer"))?;
        entries.push(value);
    }
    Ok(GeneratorList(entries))
}
