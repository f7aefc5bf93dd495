//! Stretched q-Gaussian density that attains M(l, λ), used as an oracle.

use serde::Serialize;

use super::{ln_bound_m, DimensionContext};
use crate::entropic::{EntropyPower, RenyiIndex};
use crate::error::{domain, Result};
use crate::quadrature::{integrate, integrate_semi_infinite, QuadratureOptions};
use crate::scalar::{lit, Real};
use crate::specfun::{log_beta, log_gamma};

/// f(r) = C (1 − (λ−1)(r/δ)^l)_+^{1/(λ−1)}, or C exp(−(r/δ)^l) at λ = 1,
/// normalized in d dimensions with ⟨r^l⟩ fixed to `moment`.
#[derive(Debug, Clone, Copy)]
pub struct MaxEntDensity<T> {
    pub l: T,
    pub lambda: RenyiIndex<T>,
    pub ctx: DimensionContext<T>,
    pub moment: T,
    pub scale_delta: T,
    pub norm_c: T,
    ln_c: T,
}

impl<T: Real> MaxEntDensity<T> {
    pub fn new(l: T, lambda: RenyiIndex<T>, ctx: DimensionContext<T>, moment: T) -> Result<Self> {
        if !(moment > T::zero()) {
            return Err(domain("MaxEntDensity", moment, "moment > 0"));
        }
        // Validates l > 0 and λ > d/(d+l).
        ln_bound_m(l, lambda, &ctx)?;
        let d = ctx.d();
        let s = d / l;
        let lam = lambda.value();
        let (ln_delta_l, ln_c) = if lambda.is_shannon() {
            let ln_delta_l = moment.ln() + l.ln() - d.ln();
            let ln_c = l.ln() - ctx.ln_omega() - s * ln_delta_l - log_gamma(s)?;
            (ln_delta_l, ln_c)
        } else {
            let x = lam - T::one();
            let mu = lam / x;
            let (ln_b1, ln_bm) = if x > T::zero() {
                (log_beta(s, mu)?, log_beta(s + T::one(), mu)?)
            } else {
                (log_beta(s, T::one() - mu - s)?, log_beta(s + T::one(), -mu - s)?)
            };
            let ln_delta_l = moment.ln() + x.abs().ln() + ln_b1 - ln_bm;
            let ln_c = -(ctx.ln_omega() + ln_b1 - l.ln() + s * (moment.ln() + ln_b1 - ln_bm));
            (ln_delta_l, ln_c)
        };
        Ok(Self { l, lambda, ctx, moment, scale_delta: (ln_delta_l / l).exp(), norm_c: ln_c.exp(), ln_c })
    }

    /// Radius beyond which the density vanishes (λ > 1 only).
    pub fn support_radius(&self) -> Option<T> {
        let x = self.lambda.value() - T::one();
        if self.lambda.is_shannon() || x < T::zero() {
            None
        } else {
            Some(self.scale_delta * x.powf(-self.l.recip()))
        }
    }

    /// ln f(r); -inf outside the support.
    pub fn ln_density(&self, r: T) -> T {
        let s = (r / self.scale_delta).powf(self.l);
        if self.lambda.is_shannon() {
            return self.ln_c - s;
        }
        let x = self.lambda.value() - T::one();
        let arg = -x * s;
        if arg <= -T::one() {
            T::neg_infinity()
        } else {
            self.ln_c + arg.ln_1p() / x
        }
    }

    pub fn density(&self, r: T) -> T {
        self.ln_density(r).exp()
    }

    /// Rényi entropy from the closed-form integral of f^λ.
    pub fn entropy_closed(&self) -> Result<T> {
        let d = self.ctx.d();
        let l = self.l;
        let s = d / l;
        if self.lambda.is_shannon() {
            return Ok(-self.ln_c + s);
        }
        let lam = self.lambda.value();
        let x = lam - T::one();
        let mu = lam / x;
        let ln_bh = if x > T::zero() { log_beta(s, mu + T::one())? } else { log_beta(s, -mu - s)? };
        let ln_int =
            lam * self.ln_c + self.ctx.ln_omega() + d * self.scale_delta.ln() - s * x.abs().ln() + ln_bh - l.ln();
        Ok(ln_int / (T::one() - lam))
    }

    fn radial_integral<F: Fn(T) -> T>(&self, g: F, opts: &QuadratureOptions<T>) -> Result<T> {
        let omega = self.ctx.omega();
        let d_minus_1 = self.ctx.d() - T::one();
        let integrand = |r: T| {
            let v = g(r);
            if v == T::zero() {
                T::zero()
            } else {
                omega * r.powf(d_minus_1) * v
            }
        };
        let res = match self.support_radius() {
            Some(edge) => integrate(integrand, T::zero(), edge, opts)?,
            None => integrate_semi_infinite(integrand, self.scale_delta, opts)?,
        };
        Ok(res.value)
    }
}

/// Quadrature cross-check of the maximum-entropy density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxEntReport<T> {
    pub normalization: T,
    pub moment: T,
    pub moment_relative_error: T,
    pub entropy_power_closed: T,
    pub entropy_power_quadrature: T,
    /// |⟨r^l⟩^{2/l} − N_λ M(l, λ)| / ⟨r^l⟩^{2/l} with N_λ from quadrature.
    pub residual: T,
    /// The same residual with N_λ from the closed form.
    pub closed_form_residual: T,
}

/// Builds the density attaining M(l, λ) for the given moment and checks by
/// quadrature that it is normalized, has the requested moment, and saturates
/// ⟨r^l⟩^{2/l} ≥ N_λ M(l, λ).
pub fn maxent_verify<T: Real>(
    l: T,
    lambda: RenyiIndex<T>,
    ctx: &DimensionContext<T>,
    moment_value: T,
) -> Result<MaxEntReport<T>> {
    let f = MaxEntDensity::new(l, lambda, *ctx, moment_value)?;
    let opts = QuadratureOptions { abs_tol: lit(1e-13), rel_tol: lit(1e-13), max_subdivisions: 4000 };
    let normalization = f.radial_integral(|r| f.density(r), &opts)?;
    let moment = f.radial_integral(|r| r.powf(l) * f.density(r), &opts)?;
    let lam = lambda.value();
    let entropy_quad = if lambda.is_shannon() {
        f.radial_integral(
            |r| {
                let ln_f = f.ln_density(r);
                if ln_f == T::neg_infinity() {
                    T::zero()
                } else {
                    -ln_f * ln_f.exp()
                }
            },
            &opts,
        )?
    } else {
        let power = f.radial_integral(|r| (lam * f.ln_density(r)).exp(), &opts)?;
        power.ln() / (T::one() - lam)
    };
    let dim = ctx.dim();
    let n_quad = EntropyPower::from_entropy(entropy_quad, dim)?.value();
    let n_closed = EntropyPower::from_entropy(f.entropy_closed()?, dim)?.value();
    let m_bound = ln_bound_m(l, lambda, ctx)?.exp();
    let target = moment_value.powf(lit::<T>(2.0) / l);
    Ok(MaxEntReport {
        normalization,
        moment,
        moment_relative_error: (moment - moment_value).abs() / moment_value,
        entropy_power_closed: n_closed,
        entropy_power_quadrature: n_quad,
        residual: (target - n_quad * m_bound).abs() / target,
        closed_form_residual: (target - n_closed * m_bound).abs() / target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> DimensionContext<f64> {
        DimensionContext::new(d).unwrap()
    }

    fn idx(x: f64) -> RenyiIndex<f64> {
        RenyiIndex::new(x).unwrap()
    }

    fn check(l: f64, lam: f64, d: u32, m: f64) -> MaxEntReport<f64> {
        let r = maxent_verify(l, idx(lam), &ctx(d), m).unwrap();
        assert!((r.normalization - 1.0).abs() < 1e-10, "norm {r:?}");
        assert!(r.moment_relative_error < 1e-10, "moment {r:?}");
        assert!(r.residual <= 1e-8, "residual {r:?}");
        assert!(r.closed_form_residual <= 1e-12, "closed {r:?}");
        r
    }

    #[test]
    fn gaussian_limit() {
        check(2.0, 1.0, 3, 3.0);
        let f = MaxEntDensity::new(2.0, idx(1.0), ctx(3), 3.0).unwrap();
        // ⟨r²⟩ = 3 in three dimensions is the unit isotropic Gaussian.
        assert!((f.scale_delta - 2f64.sqrt()).abs() < 1e-14);
        let expected = (2.0 * std::f64::consts::PI).powf(-1.5);
        assert!((f.density(0.7) - expected * (-0.245_f64).exp()).abs() < 1e-14);
        assert!(f.support_radius().is_none());
    }

    #[test]
    fn compact_support_branch() {
        check(2.0, 1.5, 3, 1.0);
        check(2.0, 1.5, 3, 7.5);
        let f = MaxEntDensity::new(2.0, idx(1.5), ctx(3), 1.0).unwrap();
        let edge = f.support_radius().unwrap();
        assert!((edge - f.scale_delta * 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(f.density(edge * 1.0001), 0.0);
    }

    #[test]
    fn heavy_tail_branch() {
        check(1.0, 0.9, 2, 1.0);
        check(1.0, 0.9, 2, 0.2);
        let f = MaxEntDensity::new(1.0, idx(0.9), ctx(2), 1.0).unwrap();
        assert!(f.support_radius().is_none());
        assert!(f.density(1e3) > 0.0);
    }

    #[test]
    fn rejects_inadmissible_index() {
        assert!(maxent_verify(1.0, idx(0.7), &ctx(3), 1.0).is_err());
        assert!(maxent_verify(1.0, idx(0.9), &ctx(3), -1.0).is_err());
    }
}
