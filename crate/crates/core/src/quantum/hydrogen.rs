//! d-dimensional hydrogenic states (Coulomb potential, atomic units).

use super::polynomials::{gegenbauer, laguerre};
use super::RadialFunction;
use crate::error::{domain, f64_of, Error, Result};
use crate::scalar::{int, lit, Real};
use crate::specfun::{log_gamma, pfq_unit};

/// Quantum numbers (d, n, l) with d ≥ 2, n ≥ 1, l < n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HydrogenState {
    d: u32,
    n: u32,
    l: u32,
}

impl HydrogenState {
    pub fn new(d: u32, n: u32, l: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidState(format!("hydrogen requires d >= 2, got d = {d}")));
        }
        if n < 1 {
            return Err(Error::InvalidState("hydrogen requires n >= 1".into()));
        }
        if l >= n {
            return Err(Error::InvalidState(format!("hydrogen requires l < n, got n = {n}, l = {l}")));
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

    fn offset<T: Real>(&self) -> T {
        (int::<T>(self.d as i64) - lit(3.0)) * lit(0.5)
    }

    /// Grand principal quantum number η = n + (d−3)/2.
    pub fn eta<T: Real>(&self) -> T {
        int::<T>(self.n as i64) + self.offset()
    }

    /// Grand orbital quantum number L = l + (d−3)/2.
    pub fn big_l<T: Real>(&self) -> T {
        int::<T>(self.l as i64) + self.offset()
    }

    /// E = −1/(2η²).
    pub fn energy<T: Real>(&self) -> T {
        let eta: T = self.eta();
        -(lit::<T>(2.0) * eta * eta).recip()
    }

    /// Degree η − L − 1 = n − l − 1 of the radial polynomials.
    fn radial_degree(&self) -> u32 {
        self.n - self.l - 1
    }

    /// Momentum moments exist for orders below 2L + 5.
    pub fn momentum_order_limit<T: Real>(&self) -> T {
        lit::<T>(2.0) * self.big_l::<T>() + lit(5.0)
    }
}

/// Position-space radial amplitude in the reduced variable r̃ = 2r/η.
pub fn hydrogen_radial_position<T: Real>(s: &HydrogenState) -> RadialFunction<T> {
    let eta: T = s.eta();
    let big_l: T = s.big_l();
    let d: T = int(s.d as i64);
    let two = lit::<T>(2.0);
    let ln_norm = d * lit(0.5) * (two / eta).ln()
        + lit::<T>(0.5)
            * (log_gamma(eta - big_l).expect("η − L ≥ 1")
                - (two * eta).ln()
                - log_gamma(eta + big_l + T::one()).expect("η + L + 1 > 0"));
    let norm = ln_norm.exp();
    let (l, degree) = (s.l as i32, s.radial_degree());
    let q = two * big_l + T::one();
    RadialFunction::new(
        move |r: T| {
            let x = two * r / eta;
            norm * x.powi(l) * (-x * lit(0.5)).exp() * laguerre(degree, q, x)
        },
        eta * eta,
    )
}

/// Momentum-space radial amplitude in the reduced variable p̃ = ηp.
pub fn hydrogen_radial_momentum<T: Real>(s: &HydrogenState) -> RadialFunction<T> {
    let eta: T = s.eta();
    let big_l: T = s.big_l();
    let d: T = int(s.d as i64);
    let two = lit::<T>(2.0);
    let ln_norm = (two * big_l + lit(3.0)) * two.ln()
        + lit::<T>(0.5)
            * (log_gamma(eta - big_l).expect("η − L ≥ 1")
                - (two * T::PI()).ln()
                - log_gamma(eta + big_l + T::one()).expect("η + L + 1 > 0"))
        + log_gamma(big_l + T::one()).expect("L + 1 > 0")
        + (d + T::one()) * lit(0.5) * eta.ln();
    let norm = ln_norm.exp();
    let (l, degree) = (s.l as i32, s.radial_degree());
    let q = big_l + T::one();
    let power = big_l + two;
    RadialFunction::new(
        move |p: T| {
            let x = eta * p;
            let x2 = x * x;
            let den = T::one() + x2;
            norm * x.powi(l) / den.powf(power) * gegenbauer(degree, q, (T::one() - x2) / den)
        },
        eta.recip(),
    )
}

/// ⟨r^a⟩ for a > 0 from its terminating ₃F₂ representation.
pub fn hydrogen_moment_r<T: Real>(s: &HydrogenState, a: T) -> Result<T> {
    if !(a > T::zero() && a.is_finite()) {
        return Err(domain("hydrogen_moment_r", a, "a > 0"));
    }
    let eta: T = s.eta();
    let big_l: T = s.big_l();
    let two = lit::<T>(2.0);
    let ln_pref = (a - T::one()) * eta.ln() + log_gamma(two * big_l + a + lit(3.0))?
        - (a + T::one()) * two.ln()
        - log_gamma(two * big_l + two)?;
    let series =
        pfq_unit(&[-int::<T>(s.radial_degree() as i64), -a - T::one(), a + two], &[two * big_l + two, T::one()])?;
    Ok(ln_pref.exp() * series)
}

/// ⟨p^b⟩ for 0 < b < 2L + 5 from its terminating ₅F₄ representation.
pub fn hydrogen_moment_p<T: Real>(s: &HydrogenState, b: T) -> Result<T> {
    if !(b > T::zero() && b.is_finite()) {
        return Err(domain("hydrogen_moment_p", b, "b > 0"));
    }
    let limit = s.momentum_order_limit::<T>();
    if b >= limit {
        return Err(Error::DivergentMoment { order: f64_of(b), limit: f64_of(limit) });
    }
    let eta: T = s.eta();
    let big_l: T = s.big_l();
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let up_b = big_l + (b + lit(3.0)) * half;
    let down_b = big_l + (lit::<T>(5.0) - b) * half;
    let l32 = big_l + lit(1.5);
    let ln_pref = lit::<T>(4.0).ln() + log_gamma(eta + big_l + T::one())? + log_gamma(up_b)? + log_gamma(down_b)?
        - (b - T::one()) * eta.ln()
        - log_gamma(eta - big_l)?
        - two * log_gamma(l32)?
        - log_gamma(two * big_l + lit(4.0))?;
    let series = pfq_unit(
        &[-int::<T>(s.radial_degree() as i64), big_l + eta + T::one(), big_l + T::one(), up_b, down_b],
        &[two * big_l + two, l32, big_l + two, big_l + lit(2.5)],
    )?;
    Ok(ln_pref.exp() * series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::DimensionContext;
    use crate::quantum::quadrature_moment;

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / y.abs()
    }

    fn st(d: u32, n: u32, l: u32) -> HydrogenState {
        HydrogenState::new(d, n, l).unwrap()
    }

    #[test]
    fn state_validation() {
        assert!(HydrogenState::new(1, 1, 0).is_err());
        assert!(HydrogenState::new(3, 0, 0).is_err());
        assert!(HydrogenState::new(3, 2, 2).is_err());
        let s = st(5, 2, 1);
        assert_eq!(s.eta::<f64>(), 3.0);
        assert_eq!(s.big_l::<f64>(), 2.0);
        assert_eq!(s.energy::<f64>(), -1.0 / 18.0);
    }

    #[test]
    fn ground_state_position_amplitude() {
        let f = hydrogen_radial_position::<f64>(&st(3, 1, 0));
        for r in [0.0, 0.3, 1.0, 4.0] {
            assert!((f.eval(r) - 2.0 * (-r).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn ground_state_momentum_amplitude() {
        let f = hydrogen_radial_momentum::<f64>(&st(3, 1, 0));
        let c = 8.0 / (2.0 * std::f64::consts::PI).sqrt();
        for p in [0.0, 0.5, 2.0] {
            assert!(rel(f.eval(p), c / (1.0 + p * p).powi(2)) < 1e-14);
        }
        let ctx = DimensionContext::new(3).unwrap();
        assert!((f.normalization(&ctx).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn normalizations() {
        for d in [2, 3, 5] {
            let ctx = DimensionContext::new(d).unwrap();
            for n in 1..=4 {
                for l in 0..n {
                    let s = st(d, n, l);
                    let x = hydrogen_radial_position::<f64>(&s).normalization(&ctx).unwrap();
                    let p = hydrogen_radial_momentum::<f64>(&s).normalization(&ctx).unwrap();
                    assert!((x - 1.0).abs() < 1e-10, "position d={d} n={n} l={l}: {x}");
                    assert!((p - 1.0).abs() < 1e-10, "momentum d={d} n={n} l={l}: {p}");
                }
            }
        }
    }

    #[test]
    fn node_count() {
        for n in 1..=5 {
            for l in 0..n {
                let s = st(3, n, l);
                let f = hydrogen_radial_position::<f64>(&s);
                let reach = 60.0 * (n * n) as f64;
                let mut sign_changes = 0;
                let mut prev = f.eval(1e-6);
                for i in 1..=20_000 {
                    let v = f.eval(reach * i as f64 / 20_000.0);
                    if v != 0.0 && prev != 0.0 && (v > 0.0) != (prev > 0.0) {
                        sign_changes += 1;
                    }
                    if v != 0.0 {
                        prev = v;
                    }
                }
                assert_eq!(sign_changes, n - l - 1, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let s = st(3, 1, 0);
        assert!(rel(hydrogen_moment_r(&s, 1.0).unwrap(), 1.5) < 1e-14);
        assert!(rel(hydrogen_moment_r(&s, 2.0).unwrap(), 3.0) < 1e-14);
        assert!(rel(hydrogen_moment_p(&s, 2.0).unwrap(), 1.0) < 1e-14);
        assert!(hydrogen_moment_r(&s, 0.0).is_err());
        assert!(hydrogen_moment_p(&s, -1.0).is_err());
        assert!(matches!(hydrogen_moment_p(&s, 5.0), Err(Error::DivergentMoment { .. })));
        assert!(matches!(hydrogen_moment_p(&s, 6.0), Err(Error::DivergentMoment { .. })));
        assert!(hydrogen_moment_p(&s, 4.99).is_ok());
    }

    #[test]
    fn textbook_position_moments() {
        // ⟨r⟩ = (3n² − l(l+1))/2 and ⟨r²⟩ = n²(5n² + 1 − 3l(l+1))/2 in three dimensions.
        for n in 1..=5u32 {
            for l in 0..n {
                let (nf, lf) = (n as f64, l as f64);
                let s = st(3, n, l);
                let r1 = (3.0 * nf * nf - lf * (lf + 1.0)) / 2.0;
                let r2 = nf * nf * (5.0 * nf * nf + 1.0 - 3.0 * lf * (lf + 1.0)) / 2.0;
                assert!(rel(hydrogen_moment_r(&s, 1.0).unwrap(), r1) < 1e-13);
                assert!(rel(hydrogen_moment_r(&s, 2.0).unwrap(), r2) < 1e-13);
            }
        }
    }

    #[test]
    fn virial_momentum() {
        for d in [3, 5] {
            for (n, l) in [(2, 0), (2, 1), (3, 1)] {
                let s = st(d, n, l);
                let eta: f64 = s.eta();
                assert!(rel(hydrogen_moment_p(&s, 2.0).unwrap(), 1.0 / (eta * eta)) < 1e-12);
            }
        }
        let ctx = DimensionContext::new(3).unwrap();
        for (n, l) in [(1, 0), (2, 1), (3, 2)] {
            let s = st(3, n, l);
            let eta: f64 = s.eta();
            let q = quadrature_moment(&hydrogen_radial_momentum(&s), &ctx, 2.0).unwrap().value;
            assert!(rel(q, 1.0 / (eta * eta)) < 1e-10);
        }
    }

    #[test]
    fn zeroth_moment_limit() {
        let s = st(3, 3, 1);
        assert!((hydrogen_moment_r(&s, 1e-6_f64).unwrap() - 1.0).abs() < 1e-4);
        assert!((hydrogen_moment_p(&s, 1e-6_f64).unwrap() - 1.0).abs() < 1e-4);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for d in [2, 3, 5] {
            let ctx = DimensionContext::new(d).unwrap();
            for n in 1..=4 {
                for l in 0..n {
                    let s = st(d, n, l);
                    let fr = hydrogen_radial_position::<f64>(&s);
                    let fp = hydrogen_radial_momentum::<f64>(&s);
                    let limit: f64 = s.momentum_order_limit();
                    for order in [0.5, 1.0, 2.0, 3.0] {
                        let closed = hydrogen_moment_r(&s, order).unwrap();
                        let quad = quadrature_moment(&fr, &ctx, order).unwrap().value;
                        assert!(rel(quad, closed) < 1e-8, "r d={d} n={n} l={l} a={order}");
                        if order < limit {
                            let closed = hydrogen_moment_p(&s, order).unwrap();
                            let quad = quadrature_moment(&fp, &ctx, order).unwrap().value;
                            assert!(rel(quad, closed) < 1e-8, "p d={d} n={n} l={l} b={order}");
                        }
                    }
                }
            }
        }
    }
}
