//! Tabulation of bounds and state products over grids of orders and states.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound_c_with, classical_bound_d, BoundOptions, DimensionContext, MaxEntropyModel, MomentOrders};
use crate::error::{domain, Error, Result};
use crate::quantum::{CentralState, System};

/// One row of a sweep. State columns are empty for bound-only sweeps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: f64,
    pub b: f64,
    pub d: u32,
    pub system: Option<System>,
    pub n: Option<u32>,
    pub l: Option<u32>,
    pub product: Option<f64>,
    #[serde(rename = "bound_C")]
    pub bound_c: f64,
    #[serde(rename = "bound_D")]
    pub bound_d: f64,
    pub alpha_opt: f64,
    pub ratio: Option<f64>,
}

/// A requested row that could not be computed, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedRow {
    pub a: f64,
    pub b: f64,
    pub d: u32,
    pub system: System,
    pub n: u32,
    pub l: u32,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedRow>,
}

impl SweepTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn extend(&mut self, other: SweepTable) {
        self.rows.extend(other.rows);
        self.skipped.extend(other.skipped);
    }
}

/// `steps` evenly spaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl OrderRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if !(lo > 0.0 && lo.is_finite() && hi.is_finite()) {
            return Err(domain("OrderRange", lo, "0 < lo, finite bounds"));
        }
        if hi < lo {
            return Err(domain("OrderRange", hi, "hi >= lo"));
        }
        if steps == 0 {
            return Err(domain("OrderRange", 0.0, "steps >= 1"));
        }
        Ok(Self { lo, hi, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let n = self.steps - 1;
        (0..=n).map(|i| if i == n { self.hi } else { self.lo + (self.hi - self.lo) * i as f64 / n as f64 }).collect()
    }
}

struct BoundPoint {
    c: f64,
    d: f64,
    alpha: f64,
}

fn bound_point(a: f64, b: f64, dim: u32, opts: &BoundOptions<f64>) -> Result<BoundPoint> {
    let m = MomentOrders::new(a, b, DimensionContext::new(dim)?)?;
    let r = bound_c_with(&m, opts, &MaxEntropyModel)?;
    Ok(BoundPoint { c: r.value, d: classical_bound_d(&m)?, alpha: r.alpha_opt })
}

/// C, D and α_opt for every (a, b) in `a_values` × `b_values`, ordered by a then b.
pub fn sweep_bounds(a_values: &[f64], b_values: &[f64], dim: u32, opts: &BoundOptions<f64>) -> Result<SweepTable> {
    let pairs: Vec<(f64, f64)> = a_values.iter().flat_map(|&a| b_values.iter().map(move |&b| (a, b))).collect();
    let rows = pairs
        .par_iter()
        .map(|&(a, b)| {
            let p = bound_point(a, b, dim, opts)?;
            Ok(SweepRow {
                a,
                b,
                d: dim,
                system: None,
                n: None,
                l: None,
                product: None,
                bound_c: p.c,
                bound_d: p.d,
                alpha_opt: p.alpha,
                ratio: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { rows, skipped: Vec::new() })
}

enum Outcome {
    Row(SweepRow),
    Skipped(SkippedRow),
}

fn state_row(state: &CentralState, a: f64, b: f64, opts: &BoundOptions<f64>) -> Result<Outcome> {
    let (d, n, l) = state.quantum_numbers();
    let product = match state.uncertainty_product(a, b) {
        Ok(p) => p,
        Err(e @ Error::DivergentMoment { .. }) => {
            return Ok(Outcome::Skipped(SkippedRow { a, b, d, system: state.system(), n, l, reason: e.to_string() }))
        }
        Err(e) => return Err(e),
    };
    let p = bound_point(a, b, d, opts)?;
    Ok(Outcome::Row(SweepRow {
        a,
        b,
        d,
        system: Some(state.system()),
        n: Some(n),
        l: Some(l),
        product: Some(product),
        bound_c: p.c,
        bound_d: p.d,
        alpha_opt: p.alpha,
        ratio: Some(product / p.c),
    }))
}

fn collect_outcomes(outcomes: Vec<Outcome>) -> SweepTable {
    let mut table = SweepTable::default();
    for o in outcomes {
        match o {
            Outcome::Row(r) => table.rows.push(r),
            Outcome::Skipped(s) => table.skipped.push(s),
        }
    }
    table
}

/// One row per state at fixed orders (a, b). States whose momentum moment
/// of order b does not exist are recorded in `skipped`.
pub fn sweep_states(states: &[CentralState], a: f64, b: f64, opts: &BoundOptions<f64>) -> Result<SweepTable> {
    let outcomes = states.par_iter().map(|s| state_row(s, a, b, opts)).collect::<Result<Vec<_>>>()?;
    Ok(collect_outcomes(outcomes))
}

/// Rows for a single state over `a_values` × `b_values`, ordered by a then b.
pub fn sweep_state_orders(
    state: &CentralState,
    a_values: &[f64],
    b_values: &[f64],
    opts: &BoundOptions<f64>,
) -> Result<SweepTable> {
    let pairs: Vec<(f64, f64)> = a_values.iter().flat_map(|&a| b_values.iter().map(move |&b| (a, b))).collect();
    let outcomes = pairs.par_iter().map(|&(a, b)| state_row(state, a, b, opts)).collect::<Result<Vec<_>>>()?;
    Ok(collect_outcomes(outcomes))
}
