use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "unitgen",
    version,
    about = "Sieve densities, lattice counts and unit towers over number fields"
)]
pub struct Cli {
    /// Worker threads; falls back to UNITGEN_THREADS, then to rayon's default.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Euler-product density of m-free values against direct counts.
    Density(DensityArgs),
    /// Lattice points of a coset in growing boxes against the volume term.
    Count(CountArgs),
    /// Build a tower of quadratic steps reaching the maximal order.
    Tower(TowerArgs),
    /// Quadratic fields whose integers are generated by units.
    Belcher(BelcherArgs),
    /// Re-check a tower written by `tower --format json`.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Bundled field name (qsqrt5, qsqrt2, qi) or path to a JSON field spec.
    #[arg(long, default_value = "qsqrt5")]
    pub field: String,

    /// Name of an order bundled with the field, or O_K.
    #[arg(long, default_value = "O_K")]
    pub order: String,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// `eta` for f = X^2 - 4 eta, integral-basis coordinates.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub eta: String,

    /// Explicit coefficients c_0;c_1;...; overrides --eta.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,

    #[arg(short, long, default_value_t = 2)]
    pub m: u32,

    /// Rational primes whose prime ideals are excluded.
    #[arg(long, value_delimiter = ',')]
    pub exclude: Vec<u128>,

    /// Volume parameters, strictly increasing.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub x: Vec<f64>,

    /// Primes of norm up to this enter the product exactly.
    #[arg(long, default_value_t = 10_000)]
    pub truncation: u128,

    /// Also compare with the maximal order at the conductor primes.
    #[arg(long)]
    pub gap: bool,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// Ideal generators separated by ';'; default the unit ideal.
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: Option<String>,

    /// Coset representative.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,

    /// Volume parameters of uniform boxes, strictly increasing.
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
    pub x: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct TowerArgs {
    /// Bundled field name or JSON field spec path.
    #[arg(long, default_value = "qsqrt5")]
    pub field: String,

    /// Start from this named order instead of the ring generated by units.
    #[arg(long)]
    pub order: Option<String>,

    /// Unit generators separated by ';'; default the field's bundled units.
    #[arg(long, allow_hyphen_values = true)]
    pub units: Option<String>,

    /// The unit `eta`; default the first unit generator.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,

    #[arg(long, default_value_t = 8)]
    pub search_bound: u32,

    #[arg(long, default_value_t = 64)]
    pub max_steps: usize,
}

#[derive(Args, Debug)]
pub struct BelcherArgs {
    /// A single squarefree d.
    #[arg(short, long, allow_hyphen_values = true)]
    pub d: Option<i64>,

    /// Table of all squarefree d with |d| up to this.
    #[arg(long, default_value_t = 100)]
    pub bound: i64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "qsqrt5")]
    pub field: String,

    /// JSON written by `tower --format json`.
    #[arg(long)]
    pub tower: PathBuf,
}
