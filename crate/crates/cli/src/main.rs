//! `renyi-moments` command-line front end.
//!
//! Exit status: 0 success, 1 verification failure, 2 argument error,
//! 3 divergent moment requested, 4 I/O error.

mod args;
mod output;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Format, OptimizerArgs};
use output::{json, render_single, Cell, Table};
use renyi_moments::bounds::{bound_c_with, classical_bound_d, BoundOptions, MaxEntropyModel};
use renyi_moments::verify::{run_invariant_suite, sweep_bounds, sweep_state_orders, Fault, SuiteConfig, SweepTable};
use renyi_moments::{CentralState, DimensionContext, Error, MomentOrders, System};

#[derive(Debug)]
pub enum Failure {
    Verification,
    Usage(String),
    Divergent(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Usage(_) => 2,
            Failure::Divergent(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DivergentMoment { .. } => Failure::Divergent(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn options(opt: &OptimizerArgs) -> Result<BoundOptions<f64>, Failure> {
    if !(opt.tol > 0.0 && opt.tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", opt.tol)));
    }
    if opt.grid < 16 {
        return Err(Failure::Usage(format!("--grid must be at least 16, got {}", opt.grid)));
    }
    Ok(BoundOptions { grid: opt.grid, tol: opt.tol })
}

fn orders(a: f64, b: f64, dim: u32) -> Result<MomentOrders, Failure> {
    Ok(MomentOrders::new(a, b, DimensionContext::new(dim)?)?)
}

#[derive(Serialize)]
struct BoundRecord {
    a: f64,
    b: f64,
    d: u32,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "D")]
    classical: f64,
    alpha_opt: f64,
    search_interval: [f64; 2],
}

fn cmd_bound(a: f64, b: f64, dim: u32, opt: &OptimizerArgs, format: Format) -> Result<Vec<u8>, Failure> {
    let opts = options(opt)?;
    let m = orders(a, b, dim)?;
    let r = bound_c_with(&m, &opts, &MaxEntropyModel)?;
    let rec = BoundRecord {
        a,
        b,
        d: dim,
        c: r.value,
        classical: classical_bound_d(&m)?,
        alpha_opt: r.alpha_opt,
        search_interval: [r.search_interval.0, r.search_interval.1],
    };
    let header = ["a", "b", "d", "C", "D", "alpha_opt", "search_lo", "search_hi"];
    let row = vec![
        a.into(),
        b.into(),
        dim.into(),
        rec.c.into(),
        rec.classical.into(),
        rec.alpha_opt.into(),
        rec.search_interval[0].into(),
        rec.search_interval[1].into(),
    ];
    render_single(format, &header, row, &rec)
}

#[derive(Serialize)]
struct MomentsRecord {
    system: System,
    d: u32,
    n: u32,
    l: u32,
    a: f64,
    b: f64,
    r_moment: f64,
    p_moment: f64,
    product: f64,
    #[serde(rename = "C")]
    c: f64,
    ratio: f64,
}

fn cmd_moments(state: CentralState, a: f64, b: f64, opt: &OptimizerArgs, format: Format) -> Result<Vec<u8>, Failure> {
    let opts = options(opt)?;
    let (d, n, l) = state.quantum_numbers();
    let c = bound_c_with(&orders(a, b, d)?, &opts, &MaxEntropyModel)?.value;
    let r_moment = state.moment_r(a)?;
    let p_moment = state.moment_p(b)?;
    let product = state.uncertainty_product(a, b)?;
    let rec =
        MomentsRecord { system: state.system(), d, n, l, a, b, r_moment, p_moment, product, c, ratio: product / c };
    let header = ["system", "d", "n", "l", "a", "b", "r_moment", "p_moment", "product", "C", "ratio"];
    let row = vec![
        Cell::Text(rec.system.to_string()),
        d.into(),
        n.into(),
        l.into(),
        a.into(),
        b.into(),
        r_moment.into(),
        p_moment.into(),
        product.into(),
        c.into(),
        rec.ratio.into(),
    ];
    render_single(format, &header, row, &rec)
}

const SWEEP_HEADER: [&str; 11] =
    ["a", "b", "d", "system", "n", "l", "product", "bound_C", "bound_D", "alpha_opt", "ratio"];

fn sweep_table(t: &SweepTable) -> Table {
    Table {
        header: SWEEP_HEADER.to_vec(),
        rows: t
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.a.into(),
                    r.b.into(),
                    r.d.into(),
                    r.system.map_or(Cell::Empty, |s| Cell::Text(s.to_string())),
                    r.n.into(),
                    r.l.into(),
                    r.product.into(),
                    r.bound_c.into(),
                    r.bound_d.into(),
                    r.alpha_opt.into(),
                    r.ratio.into(),
                ]
            })
            .collect(),
    }
}

fn cmd_sweep(cmd: &Command, format: Format) -> Result<Vec<u8>, Failure> {
    let Command::Sweep { preset, a_list, b_range, dim, system, n, l, opt } = cmd else {
        unreachable!("cmd_sweep called with another subcommand")
    };
    let opts = options(opt)?;
    let table = match (preset, b_range) {
        (Some(p), _) => p.run(&opts)?,
        (None, Some(range)) if !a_list.is_empty() => {
            let dim = dim.unwrap_or(3);
            let bs = range.values();
            match system {
                Some(s) => {
                    let state = CentralState::new((*s).into(), dim, n.unwrap_or_default(), l.unwrap_or(0))?;
                    sweep_state_orders(&state, a_list, &bs, &opts)?
                }
                None => sweep_bounds(a_list, &bs, dim, &opts)?,
            }
        }
        _ => return Err(Failure::Usage("sweep needs --preset, or both --a-list and --b-range".into())),
    };
    for s in &table.skipped {
        eprintln!("skipped {} d={} n={} l={} a={} b={}: {}", s.system, s.d, s.n, s.l, s.a, s.b, s.reason);
    }
    match format {
        Format::Csv => sweep_table(&table).csv(),
        Format::Json => json(&table.rows),
        Format::Text => Ok(sweep_table(&table).text()),
    }
}

fn cmd_verify(quick: bool, inject_fault: bool, format: Format) -> Result<(Vec<u8>, bool), Failure> {
    let report = run_invariant_suite(&SuiteConfig { quick, fault: inject_fault.then_some(Fault::CorruptedM) });
    let out = match format {
        Format::Text => format!("{report}\n").into_bytes(),
        Format::Json => json(&report)?,
        Format::Csv => Table {
            header: vec!["module", "name", "status", "worst_residual", "tolerance", "runtime_ms", "detail"],
            rows: report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        Cell::Text(c.module.clone()),
                        Cell::Text(c.name.clone()),
                        Cell::Text(c.status.to_string()),
                        c.worst_residual.into(),
                        c.tolerance.into(),
                        c.runtime_ms.into(),
                        Cell::Text(c.detail.clone()),
                    ]
                })
                .collect(),
        }
        .csv()?,
    };
    Ok((out, report.passed))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let (bytes, passed) = match &cli.command {
        Command::Bound { a, b, dim, opt } => {
            (cmd_bound(*a, *b, *dim, opt, cli.output_format.unwrap_or(Format::Text))?, true)
        }
        Command::Moments { system, dim, n, l, a, b, opt } => {
            let state = CentralState::new((*system).into(), *dim, *n, *l)?;
            (cmd_moments(state, *a, *b, opt, cli.output_format.unwrap_or(Format::Text))?, true)
        }
        cmd @ Command::Sweep { .. } => (cmd_sweep(cmd, cli.output_format.unwrap_or(Format::Csv))?, true),
        Command::Verify { quick, inject_fault } => {
            cmd_verify(*quick, *inject_fault, cli.output_format.unwrap_or(Format::Text))?
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, &bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => run(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verification => eprintln!("verification failed"),
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Divergent(m) => eprintln!("error: {m}"),
                Failure::Io(m) => eprintln!("I/O error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
