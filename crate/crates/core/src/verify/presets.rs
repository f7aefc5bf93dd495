//! Named sweep configurations `fig1`..`fig8`.

use std::fmt;
use std::str::FromStr;

use super::sweep::{sweep_bounds, sweep_state_orders, sweep_states, OrderRange, SweepTable};
use crate::bounds::BoundOptions;
use crate::error::Result;
use crate::quantum::{hydrogen_states, oscillator_states, CentralState, System};

/// Position orders used by the bound and ground-state figures.
pub const FIGURE_A_VALUES: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 4.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Fig1,
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::Fig1 => "C(a,b) and D(a,b) versus b in [0.1, 8], a in {0.1,0.5,1,2,4}, d=5",
            Preset::Fig2 => "alpha_opt(a,b) versus b in [0.1, 8], a in {0.1,0.5,1,2,4}, d=5",
            Preset::Fig3 => "hydrogen d=3, (a,b)=(1,2), all states n<=5",
            Preset::Fig4 => "hydrogen d=3, (a,b)=(1,4), all states n<=5",
            Preset::Fig5 => "hydrogen d=3 ground state, a in {0.1,0.5,1,2,4}, b in [0.1, 4.9]",
            Preset::Fig6 => "oscillator d=3, (a,b)=(1,2), n<=3, l<=3",
            Preset::Fig7 => "oscillator d=3, (a,b)=(1,4), n<=3, l<=3",
            Preset::Fig8 => "oscillator d=3 ground state, a in {0.1,0.5,1,2,4}, b in [0.1, 8]",
        }
    }

    /// Number of b samples for the b-sweeps.
    const B_STEPS: usize = 50;

    pub fn run(self, opts: &BoundOptions<f64>) -> Result<SweepTable> {
        match self {
            Preset::Fig1 | Preset::Fig2 => {
                let grid = OrderRange::new(0.1, 8.0, Self::B_STEPS)?.values();
                let mut table = SweepTable::default();
                // Each a also gets the diagonal point b = a.
                for a in FIGURE_A_VALUES {
                    let mut bs = grid.clone();
                    if !bs.contains(&a) {
                        bs.push(a);
                        bs.sort_by(f64::total_cmp);
                    }
                    table.extend(sweep_bounds(&[a], &bs, 5, opts)?);
                }
                Ok(table)
            }
            Preset::Fig3 => sweep_states(&hydrogen_states(3, 5)?, 1.0, 2.0, opts),
            Preset::Fig4 => sweep_states(&hydrogen_states(3, 5)?, 1.0, 4.0, opts),
            Preset::Fig5 => {
                let ground = CentralState::new(System::Hydrogen, 3, 1, 0)?;
                let bs = OrderRange::new(0.1, 4.9, Self::B_STEPS)?.values();
                sweep_state_orders(&ground, &FIGURE_A_VALUES, &bs, opts)
            }
            Preset::Fig6 => sweep_states(&oscillator_states(3, 3, 3)?, 1.0, 2.0, opts),
            Preset::Fig7 => sweep_states(&oscillator_states(3, 3, 3)?, 1.0, 4.0, opts),
            Preset::Fig8 => {
                let ground = CentralState::new(System::Oscillator, 3, 0, 0)?;
                let bs = OrderRange::new(0.1, 8.0, Self::B_STEPS)?.values();
                sweep_state_orders(&ground, &FIGURE_A_VALUES, &bs, opts)
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPreset(pub String);

impl fmt::Display for UnknownPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown preset '{}' (expected fig1..fig8)", self.0)
    }
}

impl std::error::Error for UnknownPreset {}

impl FromStr for Preset {
    type Err = UnknownPreset;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Preset::ALL.into_iter().find(|p| p.name().eq_ignore_ascii_case(s)).ok_or_else(|| UnknownPreset(s.to_string()))
    }
}
