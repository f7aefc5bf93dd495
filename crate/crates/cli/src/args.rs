use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use renyi_moments::verify::{OrderRange, Preset};
use renyi_moments::System;

#[derive(Debug, Parser)]
#[command(name = "renyi-moments", version, about = "Moment uncertainty bounds from Renyi entropy powers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (default: text, or csv for sweeps).
    #[arg(long, global = true, value_enum)]
    pub output_format: Option<Format>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Hydrogen,
    Oscillator,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Hydrogen => System::Hydrogen,
            SystemArg::Oscillator => System::Oscillator,
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OptimizerArgs {
    /// Final bracket width of the alpha search.
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    pub tol: f64,

    /// Coarse-grid points before refinement (at least 16).
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound C(a,b), classical bound D(a,b) and the optimal index.
    Bound {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 3)]
        dim: u32,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Radial moments of a hydrogen or oscillator state and its product against C(a,b).
    Moments {
        #[arg(long, value_enum)]
        system: SystemArg,
        #[arg(long, default_value_t = 3)]
        dim: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Tabulate bounds over a named preset or explicit order grids.
    Sweep {
        /// One of fig1..fig8.
        #[arg(long, value_parser = parse_preset, conflicts_with_all = ["a_list", "b_range", "dim", "system"])]
        preset: Option<Preset>,
        /// Comma-separated position orders.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        a_list: Vec<f64>,
        /// Momentum orders as lo:hi:steps.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        b_range: Option<OrderRange>,
        #[arg(long)]
        dim: Option<u32>,
        /// Tabulate a single state instead of bounds alone.
        #[arg(long, value_enum, requires = "n")]
        system: Option<SystemArg>,
        #[arg(long, requires = "system")]
        n: Option<u32>,
        #[arg(long, requires = "system")]
        l: Option<u32>,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Run the invariant suite; exit status 1 if any check fails.
    Verify {
        /// Reduced grids.
        #[arg(long)]
        quick: bool,
        /// Replace M by a corrupted model to confirm that failures are detected.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: renyi_moments::verify::UnknownPreset| e.to_string())
}

fn parse_range(s: &str) -> Result<OrderRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(format!("expected lo:hi:steps, got '{s}'"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"));
    let steps = steps.trim().parse::<usize>().map_err(|e| format!("'{steps}': {e}"))?;
    OrderRange::new(num(lo)?, num(hi)?, steps).map_err(|e| e.to_string())
}
