//! Moment-constrained entropy-power bound M(l, λ), the classical bound D(a, b)
//! and the optimized bound C(a, b).

mod maxent;

pub use maxent::{maxent_verify, MaxEntDensity, MaxEntReport};

use serde::Serialize;

use crate::entropic::{bound_z, conjugate, ln_bound_b, ln_bound_b_slope, RenyiIndex};
use crate::error::{domain, f64_of, Error, Result};
use crate::optimize::{maximize, MaximizeOptions};
use crate::scalar::{int, lit, Real};
use crate::specfun::{digamma_minus_log, log_beta, log_gamma};

/// Half-width of the band around λ = 1 where M uses its λ = 1 closed form.
pub const M_UNIT_BAND: f64 = 1e-6;

/// Spatial dimension d with the unit-sphere surface Ω = 2π^{d/2} / Γ(d/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionContext<T> {
    d: u32,
    ln_omega: T,
}

impl<T: Real> DimensionContext<T> {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(domain("DimensionContext", 0.0, "d >= 1"));
        }
        let half_d: T = int::<T>(d as i64) * lit(0.5);
        let ln_omega = lit::<T>(2.0).ln() + half_d * T::PI().ln() - log_gamma(half_d)?;
        Ok(Self { d, ln_omega })
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn d(&self) -> T {
        int(self.d as i64)
    }

    pub fn omega(&self) -> T {
        self.ln_omega.exp()
    }

    pub fn ln_omega(&self) -> T {
        self.ln_omega
    }
}

/// Position and momentum moment orders (a, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentOrders<T> {
    pub a: T,
    pub b: T,
    pub ctx: DimensionContext<T>,
}

impl<T: Real> MomentOrders<T> {
    pub fn new(a: T, b: T, ctx: DimensionContext<T>) -> Result<Self> {
        check_order("MomentOrders", a)?;
        check_order("MomentOrders", b)?;
        Ok(Self { a, b, ctx })
    }

    pub fn swapped(self) -> Self {
        Self { a: self.b, b: self.a, ctx: self.ctx }
    }
}

fn check_order<T: Real>(function: &'static str, l: T) -> Result<()> {
    if l > T::zero() && l.is_finite() {
        Ok(())
    } else {
        Err(domain(function, l, "moment order > 0"))
    }
}

/// Optimized bound C(a, b) with its maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundResult<T> {
    pub value: T,
    pub alpha_opt: T,
    /// Interval actually searched. When `swapped` is set it refers to the
    /// conjugate index, i.e. the problem with a and b exchanged.
    pub search_interval: (T, T),
    pub evaluations: usize,
    pub swapped: bool,
}

/// Source of ln M(l, λ) and its λ-derivative. The maximum-entropy closed form
/// is [`MaxEntropyModel`]; alternative models exist for testing the optimizer
/// and the invariant suite against a perturbed M.
pub trait MomentModel<T: Real>: Sync {
    fn ln_m(&self, l: T, lambda: RenyiIndex<T>, ctx: &DimensionContext<T>) -> Result<T>;
    fn dlog_m(&self, l: T, lambda: RenyiIndex<T>, ctx: &DimensionContext<T>) -> Result<T>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MaxEntropyModel;

impl<T: Real> MomentModel<T> for MaxEntropyModel {
    fn ln_m(&self, l: T, lambda: RenyiIndex<T>, ctx: &DimensionContext<T>) -> Result<T> {
        ln_bound_m(l, lambda, ctx)
    }

    fn dlog_m(&self, l: T, lambda: RenyiIndex<T>, ctx: &DimensionContext<T>) -> Result<T> {
        dlogm_dlambda(l, lambda, ctx)
    }
}

fn check_moment_domain<T: Real>(l: T, lambda: T, ctx: &DimensionContext<T>) -> Result<()> {
    check_order("bound_M", l)?;
    let d = ctx.d();
    let threshold = d / (d + l);
    if lambda > threshold {
        Ok(())
    } else {
        Err(Error::MomentDivergence { order: f64_of(l), lambda: f64_of(lambda), threshold: f64_of(threshold) })
    }
}

fn ln_bound_m_unit<T: Real>(l: T, ctx: &DimensionContext<T>) -> Result<T> {
    let d = ctx.d();
    let two = lit::<T>(2.0);
    let ln_2pie = (two * T::PI()).ln() + T::one();
    Ok(ln_2pie + two / d * (l.ln() - ctx.ln_omega - log_gamma(d / l)?) + two / l * ((d / l).ln() - T::one()))
}

/// ∂² ln M/∂λ² at λ = 1, from the large-μ expansion of the digamma form.
fn unit_curvature<T: Real>(l: T, ctx: &DimensionContext<T>) -> T {
    -(ctx.d() / (l * l) + lit::<T>(7.0) / (lit::<T>(3.0) * l))
}

/// ln M(l, λ). Inside |λ − 1| ≤ [`M_UNIT_BAND`] the λ = 1 closed form is
/// used with its second-order Taylor correction.
pub fn ln_bound_m<T: Real>(l: T, lambda: RenyiIndex<T>, ctx: &DimensionContext<T>) -> Result<T> {
    let lam = lambda.value();
    check_moment_domain(l, lam, ctx)?;
    let x = lam - T::one();
    if x.abs() <= lit(M_UNIT_BAND) {
        return Ok(ln_bound_m_unit(l, ctx)? + x / l + lit::<T>(0.5) * unit_curvature(l, ctx) * x * x);
    }
    let d = ctx.d();
    let two = lit::<T>(2.0);
    let mu = lam / x;
    let ln_beta = if x > T::zero() { log_beta(d / l, mu)? } else { log_beta(d / l, T::one() - mu - d / l)? };
    let ln_2pie = (two * T::PI()).ln() + T::one();
    let shape = l.ln() - ctx.ln_omega - ln_beta;
    // ln(d / |d + lμ|) and ln(lμ / (d + lμ)) = −ln(1 + d/(lμ)), valid on both branches.
    let ln_ratio = d.ln() - (d + l * mu).abs().ln();
    let ln_tail = -(d / (l * mu)).ln_1p();
    Ok(ln_2pie + two / d * shape + two / l * ln_ratio + two / (d * x) * ln_tail)
}

/// M(l, λ): maximal ratio ⟨r^l⟩^{2/l} / N_λ over d-dimensional densities.
pub fn bound_m<T: Real>(l: T, lambda: RenyiIndex<T>, ctx: &DimensionContext<T>) -> Result<T> {
    Ok(ln_bound_m(l, lambda, ctx)?.exp())
}

/// ∂ ln M(l, λ) / ∂λ; equals 1/l at λ = 1.
pub fn dlogm_dlambda<T: Real>(l: T, lambda: RenyiIndex<T>, ctx: &DimensionContext<T>) -> Result<T> {
    let lam = lambda.value();
    check_moment_domain(l, lam, ctx)?;
    let x = lam - T::one();
    if x.abs() <= lit(M_UNIT_BAND) {
        return Ok(l.recip() + unit_curvature(l, ctx) * x);
    }
    let d = ctx.d();
    let mu = lam / x;
    let s = d / l;
    let bracket = if x > T::zero() {
        let g = |y: T| -> Result<T> { Ok(digamma_minus_log(y)? + y.recip()) };
        g(mu)? - g(mu + s)?
    } else {
        digamma_minus_log(-mu)? - digamma_minus_log(-mu - s)?
    };
    Ok(lit::<T>(2.0) / (d * x * x) * bracket)
}

/// ln D(a, b), the Shannon-based bound, as the product of its two factors.
pub fn ln_classical_bound_d<T: Real>(m: &MomentOrders<T>) -> Result<T> {
    let d = m.ctx.d();
    let two = lit::<T>(2.0);
    let lg_half = log_gamma(T::one() + d / two)?;
    let factor = |x: T| -> Result<T> {
        Ok(T::one() + two / x * d.ln() + two / d * lg_half
            - two / x * (x.ln() + T::one())
            - two / d * log_gamma(T::one() + d / x)?)
    };
    Ok(factor(m.a)? + factor(m.b)?)
}

/// D(a, b).
pub fn classical_bound_d<T: Real>(m: &MomentOrders<T>) -> Result<T> {
    Ok(ln_classical_bound_d(m)?.exp())
}

/// Half-open interval (lo, hi].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn contains(&self, x: T) -> bool {
        x > self.lo && x <= self.hi
    }
}

/// Admissible α for the optimization: (max(1/2, d/(d+a)), 1].
pub fn search_domain<T: Real>(a: T, ctx: &DimensionContext<T>) -> Result<Interval<T>> {
    check_order("search_domain", a)?;
    let d = ctx.d();
    Ok(Interval { lo: lit::<T>(0.5).max(d / (d + a)), hi: T::one() })
}

/// ln[B(α) M(a, α) M(b, α*)] under `model`.
pub fn ln_objective_with<T: Real, M: MomentModel<T> + ?Sized>(
    model: &M,
    a: T,
    b: T,
    alpha: RenyiIndex<T>,
    ctx: &DimensionContext<T>,
) -> Result<T> {
    let conj = conjugate(alpha)?;
    Ok(ln_bound_b(alpha)? + model.ln_m(a, alpha, ctx)? + model.ln_m(b, conj, ctx)?)
}

/// ∂/∂α of [`ln_objective_with`].
pub fn ln_objective_slope_with<T: Real, M: MomentModel<T> + ?Sized>(
    model: &M,
    a: T,
    b: T,
    alpha: RenyiIndex<T>,
    ctx: &DimensionContext<T>,
) -> Result<T> {
    let al = alpha.value();
    let conj = conjugate(alpha)?;
    let w = al + al - T::one();
    let dconj = -(w * w).recip();
    Ok(ln_bound_b_slope(alpha)? + model.dlog_m(a, alpha, ctx)? + model.dlog_m(b, conj, ctx)? * dconj)
}

/// B(α) M(a, α) M(b, α*).
pub fn objective<T: Real>(a: T, b: T, alpha: RenyiIndex<T>, ctx: &DimensionContext<T>) -> Result<T> {
    Ok(ln_objective_with(&MaxEntropyModel, a, b, alpha, ctx)?.exp())
}

/// Z(α, β) M(a, α) M(b, β), the bound before restricting to the conjugation curve.
pub fn bound_product_2d<T: Real>(
    a: T,
    b: T,
    alpha: RenyiIndex<T>,
    beta: RenyiIndex<T>,
    ctx: &DimensionContext<T>,
) -> Result<T> {
    bound_product_2d_with(&MaxEntropyModel, a, b, alpha, beta, ctx)
}

pub fn bound_product_2d_with<T: Real, M: MomentModel<T> + ?Sized>(
    model: &M,
    a: T,
    b: T,
    alpha: RenyiIndex<T>,
    beta: RenyiIndex<T>,
    ctx: &DimensionContext<T>,
) -> Result<T> {
    let z = bound_z(alpha, beta)?;
    Ok((z.ln() + model.ln_m(a, alpha, ctx)? + model.ln_m(b, beta, ctx)?).exp())
}

#[derive(Debug, Clone, Copy)]
pub struct BoundOptions<T> {
    pub grid: usize,
    pub tol: T,
}

impl<T: Real> Default for BoundOptions<T> {
    fn default() -> Self {
        Self { grid: 256, tol: lit(1e-10) }
    }
}

/// C(a, b) with default optimizer settings.
pub fn bound_c<T: Real>(m: &MomentOrders<T>) -> Result<BoundResult<T>> {
    bound_c_with(m, &BoundOptions::default(), &MaxEntropyModel)
}

/// C(a, b) = max over α of B(α) M(a, α) M(b, α*).
///
/// For b > a the problem is solved with the orders exchanged and the
/// maximizer mapped back through α ↦ α*.
pub fn bound_c_with<T: Real, M: MomentModel<T> + ?Sized>(
    m: &MomentOrders<T>,
    opts: &BoundOptions<T>,
    model: &M,
) -> Result<BoundResult<T>> {
    check_order("bound_C", m.a)?;
    check_order("bound_C", m.b)?;
    if opts.grid < 16 {
        return Err(domain("bound_C", opts.grid as f64, "grid >= 16"));
    }
    if !(opts.tol > T::zero()) {
        return Err(domain("bound_C", opts.tol, "tol > 0"));
    }
    if m.b > m.a {
        let r = bound_c_with(&m.swapped(), opts, model)?;
        let alpha = RenyiIndex::new(r.alpha_opt)?;
        return Ok(BoundResult { alpha_opt: conjugate(alpha)?.value(), swapped: true, ..r });
    }
    let (a, b, ctx) = (m.a, m.b, &m.ctx);
    let dom = search_domain(a, ctx)?;
    let start = dom.lo + lit::<T>(1e-9) * (dom.hi - dom.lo);
    let f = |al: T| ln_objective_with(model, a, b, RenyiIndex::new(al)?, ctx);
    let s = |al: T| ln_objective_slope_with(model, a, b, RenyiIndex::new(al)?, ctx);
    let best = maximize(f, start, dom.hi, &MaximizeOptions { grid: opts.grid, tol: opts.tol }, Some(s))?;
    Ok(BoundResult {
        value: best.value.exp(),
        alpha_opt: best.argmax,
        search_interval: (dom.lo, dom.hi),
        evaluations: best.evaluations,
        swapped: false,
    })
}
