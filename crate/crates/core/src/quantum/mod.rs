//! Radial wavefunctions and power moments of d-dimensional hydrogenic and
//! isotropic-oscillator eigenstates.

mod hydrogen;
mod oscillator;
mod polynomials;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use hydrogen::{
    hydrogen_moment_p, hydrogen_moment_r, hydrogen_radial_momentum, hydrogen_radial_position, HydrogenState,
};
pub use oscillator::{oscillator_moment, oscillator_radial, OscillatorState};
pub use polynomials::{gegenbauer, laguerre};

use crate::bounds::DimensionContext;
use crate::error::{domain, Result};
use crate::quadrature::{integrate_semi_infinite, QuadratureOptions, QuadratureResult};
use crate::scalar::{lit, Real};

/// A radial amplitude R(r) with a length scale where most of its weight lies.
#[derive(Clone)]
pub struct RadialFunction<T> {
    eval: Arc<dyn Fn(T) -> T + Send + Sync>,
    scale: T,
}

impl<T: Real> RadialFunction<T> {
    pub fn new<F: Fn(T) -> T + Send + Sync + 'static>(eval: F, scale: T) -> Self {
        Self { eval: Arc::new(eval), scale }
    }

    pub fn eval(&self, r: T) -> T {
        (self.eval)(r)
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    /// ∫ r^{d−1} |R|² dr, which is 1 for a normalized state.
    pub fn normalization(&self, ctx: &DimensionContext<T>) -> Result<T> {
        Ok(quadrature_moment(self, ctx, T::zero())?.value)
    }
}

impl<T: Real> fmt::Debug for RadialFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialFunction").field("scale", &self.scale).finish_non_exhaustive()
    }
}

/// ∫_0^∞ r^{d+order−1} |R(r)|² dr by adaptive quadrature.
///
/// Convergence of the integral is the caller's responsibility; a divergent
/// integral surfaces as a quadrature error.
pub fn quadrature_moment<T: Real>(
    f: &RadialFunction<T>,
    ctx: &DimensionContext<T>,
    order: T,
) -> Result<QuadratureResult<T>> {
    let power = ctx.d() + order - T::one();
    if power <= -T::one() {
        return Err(domain("quadrature_moment", order, "order > -d"));
    }
    let opts = QuadratureOptions { abs_tol: lit(1e-12), rel_tol: lit(1e-13), max_subdivisions: 4000 };
    integrate_semi_infinite(
        |r: T| {
            let amp = f.eval(r);
            if amp == T::zero() {
                T::zero()
            } else {
                r.powf(power) * amp * amp
            }
        },
        f.scale,
        &opts,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Hydrogen,
    Oscillator,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Hydrogen => "hydrogen",
            System::Oscillator => "oscillator",
        })
    }
}

/// An eigenstate of either central potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralState {
    Hydrogen(HydrogenState),
    Oscillator(OscillatorState),
}

impl CentralState {
    pub fn new(system: System, d: u32, n: u32, l: u32) -> Result<Self> {
        Ok(match system {
            System::Hydrogen => CentralState::Hydrogen(HydrogenState::new(d, n, l)?),
            System::Oscillator => CentralState::Oscillator(OscillatorState::new(d, n, l)?),
        })
    }

    pub fn system(&self) -> System {
        match self {
            CentralState::Hydrogen(_) => System::Hydrogen,
            CentralState::Oscillator(_) => System::Oscillator,
        }
    }

    pub fn quantum_numbers(&self) -> (u32, u32, u32) {
        match self {
            CentralState::Hydrogen(s) => (s.d(), s.n(), s.l()),
            CentralState::Oscillator(s) => (s.d(), s.n(), s.l()),
        }
    }

    pub fn energy<T: Real>(&self) -> T {
        match self {
            CentralState::Hydrogen(s) => s.energy(),
            CentralState::Oscillator(s) => s.energy(),
        }
    }

    /// ⟨r^a⟩.
    pub fn moment_r<T: Real>(&self, a: T) -> Result<T> {
        match self {
            CentralState::Hydrogen(s) => hydrogen_moment_r(s, a),
            CentralState::Oscillator(s) => oscillator_moment(s, a),
        }
    }

    /// ⟨p^b⟩.
    pub fn moment_p<T: Real>(&self, b: T) -> Result<T> {
        match self {
            CentralState::Hydrogen(s) => hydrogen_moment_p(s, b),
            CentralState::Oscillator(s) => oscillator_moment(s, b),
        }
    }

    /// ⟨r^a⟩^{2/a} ⟨p^b⟩^{2/b}.
    pub fn uncertainty_product<T: Real>(&self, a: T, b: T) -> Result<T> {
        let two = lit::<T>(2.0);
        let r = self.moment_r(a)?;
        let p = self.moment_p(b)?;
        Ok((two / a * r.ln() + two / b * p.ln()).exp())
    }

    pub fn radial_position<T: Real>(&self) -> RadialFunction<T> {
        match self {
            CentralState::Hydrogen(s) => hydrogen_radial_position(s),
            CentralState::Oscillator(s) => oscillator_radial(s),
        }
    }

    pub fn radial_momentum<T: Real>(&self) -> RadialFunction<T> {
        match self {
            CentralState::Hydrogen(s) => hydrogen_radial_momentum(s),
            CentralState::Oscillator(s) => oscillator_radial(s),
        }
    }
}

/// Hydrogen states with n ≤ n_max, all l < n, ordered by (n, l).
pub fn hydrogen_states(d: u32, n_max: u32) -> Result<Vec<CentralState>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for l in 0..n {
            out.push(CentralState::Hydrogen(HydrogenState::new(d, n, l)?));
        }
    }
    Ok(out)
}

/// Oscillator states with n ≤ n_max, l ≤ l_max, ordered by (n, l).
pub fn oscillator_states(d: u32, n_max: u32, l_max: u32) -> Result<Vec<CentralState>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for l in 0..=l_max {
            out.push(CentralState::Oscillator(OscillatorState::new(d, n, l)?));
        }
    }
    Ok(out)
}
