//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "truncexp",
    version,
    about = "Maximizers and bounds for truncated-exponential ratios"
)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Solver tolerance on the residual.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    /// Newton iteration cap.
    #[arg(long, global = true, default_value_t = 60)]
    pub max_iter: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "U", alias = "u", alias = "G", alias = "g")]
    U,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::E => "E",
            Family::U => "U",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the maximizer at one delta.
    Solve {
        #[arg(value_enum)]
        family: Family,
        n: u32,
        #[arg(allow_negative_numbers = true)]
        delta: f64,
        /// Start the iteration here instead of the default initializer.
        #[arg(long)]
        init: Option<f64>,
    },
    /// Tabulate roots, bounds and maximum values over a delta grid.
    Table(TableArgs),
    /// Print exact series-reversion coefficients.
    Series {
        #[arg(value_enum)]
        family: Family,
        n: u32,
        /// Number of coefficients.
        #[arg(allow_negative_numbers = true)]
        order: i64,
    },
    /// Check every worked number against its published value.
    Verify,
    /// Closed-form minimizer over delta of the maximum value.
    Min {
        #[arg(value_enum)]
        family: Family,
        n: u32,
    },
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub family: Family,
    pub n: u32,
    /// Explicit comma-separated delta values.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["start", "stop", "count"])]
    pub deltas: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["stop", "count"])]
    pub start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Spacing of a start/stop/count grid.
    #[arg(long, value_enum, default_value_t = Spacing::Lin)]
    pub grid: Spacing,
    /// Comma-separated output columns.
    #[arg(long, value_delimiter = ',', default_value = "root,lower,upper,max_value")]
    pub columns: Vec<String>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Lin,
    Log,
}
