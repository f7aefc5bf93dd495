//! d-dimensional isotropic harmonic oscillator (unit mass and frequency).

use super::polynomials::laguerre;
use super::RadialFunction;
use crate::error::{domain, Error, Result};
use crate::scalar::{int, lit, Real};
use crate::specfun::{log_gamma, pfq_unit};

/// Quantum numbers (d, n, l) with d ≥ 1, n ≥ 0, l ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OscillatorState {
    d: u32,
    n: u32,
    l: u32,
}

impl OscillatorState {
    pub fn new(d: u32, n: u32, l: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidState("oscillator requires d >= 1".into()));
        }
        if d == 1 && l > 1 {
            return Err(Error::InvalidState(format!("in one dimension l is a parity label (0 or 1), got {l}")));
        }
        Ok(Self { d, n, l })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// E = 2n + l + d/2.
    pub fn energy<T: Real>(&self) -> T {
        int::<T>(2 * self.n as i64 + self.l as i64) + int::<T>(self.d as i64) * lit(0.5)
    }

    /// l + d/2, the lower parameter of the moment series.
    fn shifted_l<T: Real>(&self) -> T {
        int::<T>(self.l as i64) + int::<T>(self.d as i64) * lit(0.5)
    }
}

/// Radial amplitude; identical in position and momentum space.
pub fn oscillator_radial<T: Real>(s: &OscillatorState) -> RadialFunction<T> {
    let shifted: T = s.shifted_l();
    let n: T = int(s.n as i64);
    let ln_norm = lit::<T>(0.5)
        * (lit::<T>(2.0).ln() + log_gamma(n + T::one()).expect("n + 1 > 0")
            - log_gamma(n + shifted).expect("n + l + d/2 > 0"));
    let norm = ln_norm.exp();
    let (l, degree) = (s.l as i32, s.n);
    let q = shifted - T::one();
    RadialFunction::new(
        move |r: T| {
            let r2 = r * r;
            norm * r.powi(l) * (-r2 * lit(0.5)).exp() * laguerre(degree, q, r2)
        },
        s.energy::<T>().sqrt(),
    )
}

/// ⟨r^k⟩ (equivalently ⟨p^k⟩) for k > −d − 2l.
///
/// The series lower parameter is l + d/2; this is the value consistent with
/// the virial identity ⟨r²⟩ = E and with direct quadrature.
pub fn oscillator_moment<T: Real>(s: &OscillatorState, order: T) -> Result<T> {
    let shifted: T = s.shifted_l();
    let half = lit::<T>(0.5);
    if !(order.is_finite() && shifted + order * half > T::zero()) {
        return Err(domain("oscillator_moment", order, "order > -d - 2l"));
    }
    let ln_pref = log_gamma(shifted + order * half)? - log_gamma(shifted)?;
    let series = pfq_unit(&[-int::<T>(s.n as i64), -order * half, order * half + T::one()], &[shifted, T::one()])?;
    Ok(ln_pref.exp() * series)
}
