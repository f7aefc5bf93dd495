//! Sweeps, figure presets and the invariant suite.

mod presets;
mod suite;
mod sweep;

pub use presets::{Preset, UnknownPreset, FIGURE_A_VALUES};
pub use suite::{
    curve_argmax_offset, maxent_cases, run_invariant_suite, CheckOutcome, CorruptedMoments, Fault, Status, SuiteConfig,
    SuiteReport,
};
pub use sweep::{sweep_bounds, sweep_state_orders, sweep_states, OrderRange, SkippedRow, SweepRow, SweepTable};
