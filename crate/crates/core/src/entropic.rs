//! Rényi-index algebra and the entropy-power product bounds B(α) and Z(α, β).

use crate::error::{domain, f64_of, Error, Result};
use crate::scalar::{int, lit, Real};

/// Half-width of the band around λ = 1 where the Shannon limit is used.
pub const UNIT_BAND: f64 = 1e-8;

/// A Rényi order λ > 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RenyiIndex<T>(T);

impl<T: Real> RenyiIndex<T> {
    pub fn new(lambda: T) -> Result<Self> {
        if lambda > T::zero() && lambda.is_finite() {
            Ok(Self(lambda))
        } else {
            Err(domain("RenyiIndex", lambda, "lambda > 0"))
        }
    }

    pub fn one() -> Self {
        Self(T::one())
    }

    pub fn value(self) -> T {
        self.0
    }

    /// λ* = λ / (2λ − 1), defined for λ > 1/2.
    pub fn conjugate(self) -> Result<Self> {
        conjugate(self)
    }

    /// μ = λ / (λ − 1); `None` at λ = 1.
    pub fn mu(self) -> Option<T> {
        let lm1 = self.0 - T::one();
        if lm1 == T::zero() {
            None
        } else {
            Some(self.0 / lm1)
        }
    }

    pub fn is_shannon(self) -> bool {
        (self.0 - T::one()).abs() <= lit(UNIT_BAND)
    }
}

/// λ* = λ / (2λ − 1).
pub fn conjugate<T: Real>(alpha: RenyiIndex<T>) -> Result<RenyiIndex<T>> {
    let a = alpha.0;
    if a <= lit(0.5) {
        return Err(domain("conjugate", a, "lambda > 1/2"));
    }
    Ok(RenyiIndex(a / (a + a - T::one())))
}

/// λ* − 1 = (1 − λ) / (2λ − 1), without cancellation near λ = 1.
pub(crate) fn conjugate_minus_one<T: Real>(lambda: T) -> T {
    (T::one() - lambda) / (lambda + lambda - T::one())
}

/// ln(x) / (x − 1) given x − 1; tends to 1 at x = 1 and to 0 as x → ∞.
fn log_over_shift<T: Real>(shift: T) -> T {
    if shift.is_infinite() {
        T::zero()
    } else if shift.abs() <= T::epsilon() {
        T::one() - shift * lit(0.5)
    } else {
        shift.ln_1p() / shift
    }
}

/// Rényi entropy power N = exp(2H/d) / (2πe).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyPower<T>(T);

impl<T: Real> EntropyPower<T> {
    pub fn new(value: T) -> Result<Self> {
        if value > T::zero() && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(domain("EntropyPower", value, "value > 0"))
        }
    }

    /// Entropy power of a d-dimensional density with (Rényi) entropy `entropy`.
    pub fn from_entropy(entropy: T, dim: u32) -> Result<Self> {
        let d: T = int(dim as i64);
        let two_pi_e = lit::<T>(2.0) * T::PI() * T::E();
        Self::new((lit::<T>(2.0) * entropy / d).exp() / two_pi_e)
    }

    pub fn value(self) -> T {
        self.0
    }
}

/// ln B(α).
pub fn ln_bound_b<T: Real>(alpha: RenyiIndex<T>) -> Result<T> {
    let a = alpha.0;
    if a < lit(0.5) {
        return Err(domain("bound_B", a, "alpha >= 1/2"));
    }
    let ln4 = lit::<T>(4.0).ln();
    if alpha.is_shannon() {
        return Ok(-ln4);
    }
    let first = log_over_shift(a - T::one());
    let second = if a == lit(0.5) { T::zero() } else { log_over_shift(conjugate_minus_one(a)) };
    Ok(first + second - ln4 - lit(2.0))
}

/// B(α) = α^{1/(α−1)} α*^{1/(α*−1)} / (4e²), with B(1) = 1/4.
pub fn bound_b<T: Real>(alpha: RenyiIndex<T>) -> Result<T> {
    ln_bound_b(alpha).map(T::exp)
}

/// d ln B / dα = (2 − 2/α − ln(2α − 1)) / (α − 1)², for α > 1/2.
pub fn ln_bound_b_slope<T: Real>(alpha: RenyiIndex<T>) -> Result<T> {
    let a = alpha.0;
    if a <= lit(0.5) {
        return Err(domain("bound_B slope", a, "alpha > 1/2"));
    }
    let x = a - T::one();
    if x.abs() < lit(0.05) {
        // Σ_{k≥3} (-1)^{k+1} (2 - 2^k/k) x^{k-2}
        let mut acc = T::zero();
        let mut xp = x;
        let mut two_k = lit::<T>(8.0);
        for k in 3..40 {
            let kk: T = int(k);
            let coeff = lit::<T>(2.0) - two_k / kk;
            let signed = if k % 2 == 1 { coeff } else { -coeff };
            acc = acc + signed * xp;
            xp = xp * x;
            two_k = two_k * lit(2.0);
            if xp.abs() < T::epsilon() * T::epsilon() {
                break;
            }
        }
        Ok(acc)
    } else {
        let two = lit::<T>(2.0);
        Ok((two - two / a - (two * x).ln_1p()) / (x * x))
    }
}

/// Z(α, β): 1/e² on [0, 1/2]², B(max(α, β)) elsewhere below the conjugation curve.
pub fn bound_z<T: Real>(alpha: RenyiIndex<T>, beta: RenyiIndex<T>) -> Result<T> {
    let half = lit::<T>(0.5);
    let (a, b) = (alpha.0, beta.0);
    if a <= half && b <= half {
        return Ok((-lit::<T>(2.0)).exp());
    }
    if a > half {
        let conj = conjugate(alpha)?;
        if b > conj.0 {
            return Err(Error::NoUncertaintyRelation { beta: f64_of(b), conjugate: f64_of(conj.0) });
        }
    }
    bound_b(if a >= b { alpha } else { beta })
}

/// Entropy power of an isotropic Gaussian with per-axis variance `variance`,
/// from the closed-form Rényi entropy H_λ = (d/2) ln(2πσ²) + (d/2) ln λ / (λ − 1).
pub fn gaussian_entropy_power<T: Real>(lambda: RenyiIndex<T>, variance: T, dim: u32) -> Result<EntropyPower<T>> {
    if !(variance > T::zero()) {
        return Err(domain("gaussian_entropy_power", variance, "variance > 0"));
    }
    let d: T = int(dim as i64);
    let half_d = d * lit(0.5);
    let base = half_d * (lit::<T>(2.0) * T::PI() * variance).ln();
    let entropy = if lambda.is_shannon() { base + half_d } else { base + half_d * log_over_shift(lambda.0 - T::one()) };
    EntropyPower::from_entropy(entropy, dim)
}

/// N_α(ρ) N_{α*}(γ) for a Gaussian position density with per-axis standard
/// deviation `sigma`; the momentum density then has per-axis variance 1/(4σ²).
pub fn gaussian_power_product<T: Real>(alpha: RenyiIndex<T>, sigma: T) -> Result<T> {
    gaussian_power_product_in(alpha, sigma, 1)
}

/// [`gaussian_power_product`] evaluated in `dim` dimensions.
pub fn gaussian_power_product_in<T: Real>(alpha: RenyiIndex<T>, sigma: T, dim: u32) -> Result<T> {
    if !(sigma > T::zero()) {
        return Err(domain("gaussian_power_product", sigma, "sigma > 0"));
    }
    let conj = conjugate(alpha)?;
    let var_x = sigma * sigma;
    let var_p = (lit::<T>(4.0) * var_x).recip();
    let nx = gaussian_entropy_power(alpha, var_x, dim)?;
    let np = gaussian_entropy_power(conj, var_p, dim)?;
    Ok(nx.value() * np.value())
}
