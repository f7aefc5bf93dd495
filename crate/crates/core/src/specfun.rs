//! Special-function kernel: log-gamma, digamma, log-beta and terminating
//! generalized hypergeometric sums at unit argument.
//!
//! All routines are restricted to the positive real axis; none of the callers
//! ever needs the reflection formula.

use crate::error::{domain, f64_of, Error, Result};
use crate::scalar::{int, lit, KahanSum, Real};

/// Lanczos coefficients, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Above this threshold the asymptotic (Stirling / de Moivre) series are used.
const ASYMPTOTIC: f64 = 10.0;

/// Coefficients B_{2k} / (2k (2k-1)) of the Stirling series for ln Γ.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Coefficients B_{2k} / (2k) of the asymptotic series for ψ(x) - ln x + 1/(2x).
const DIGAMMA_ASYM: [f64; 7] =
    [1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32_760.0, 1.0 / 12.0];

fn check_positive<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(domain(function, x, "x > 0"))
    }
}

/// Σ B_{2k} / (2k(2k-1) x^{2k-1}), the tail of the Stirling series.
fn stirling_tail<T: Real>(x: T) -> T {
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut acc = T::zero();
    for &c in STIRLING.iter().rev() {
        acc = acc * inv2 + lit(c);
    }
    acc * inv
}

fn lanczos_ln_gamma<T: Real>(x: T) -> T {
    // Valid for x >= 1/2.
    let z = x - T::one();
    let mut series = lit::<T>(LANCZOS[0]);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        series = series + lit::<T>(c) / (z + int(k as i64));
    }
    let t = z + lit(LANCZOS_G + 0.5);
    let half_ln_two_pi = (T::PI() + T::PI()).ln() * lit(0.5);
    half_ln_two_pi + (z + lit(0.5)) * t.ln() - t + series.ln()
}

/// ln Γ(x) for x > 0.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    check_positive("log_gamma", x)?;
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked<T: Real>(x: T) -> T {
    if x < lit(0.5) {
        lanczos_ln_gamma(x + T::one()) - x.ln()
    } else if x < lit(ASYMPTOTIC) {
        lanczos_ln_gamma(x)
    } else {
        let half_ln_two_pi = (T::PI() + T::PI()).ln() * lit(0.5);
        (x - lit(0.5)) * x.ln() - x + half_ln_two_pi + stirling_tail(x)
    }
}

/// ln Γ(x + a) − ln Γ(x), accurate when x is large and |a| is moderate.
///
/// Requires x > 0 and x + a > 0.
pub fn log_gamma_ratio<T: Real>(x: T, a: T) -> Result<T> {
    check_positive("log_gamma_ratio", x)?;
    check_positive("log_gamma_ratio", x + a)?;
    let big = lit::<T>(ASYMPTOTIC);
    if x >= big && x + a >= big {
        let y = x + a;
        Ok((x - lit(0.5)) * (a / x).ln_1p() + a * y.ln() - a + stirling_tail(y) - stirling_tail(x))
    } else {
        Ok(log_gamma_unchecked(x + a) - log_gamma_unchecked(x))
    }
}

/// ψ(x) = d/dx ln Γ(x) for x > 0.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    check_positive("digamma", x)?;
    let (shifted, offset) = shift_up(x);
    Ok(shifted.ln() + asymptotic_digamma_minus_log(shifted) - offset)
}

/// ψ(x) − ln x for x > 0, without the cancellation of the naive difference at large x.
pub fn digamma_minus_log<T: Real>(x: T) -> Result<T> {
    check_positive("digamma_minus_log", x)?;
    let (shifted, offset) = shift_up(x);
    // ψ(x) - ln x = [ψ(y) - ln y] + ln(y/x) - Σ 1/(x+k), with y = x + N.
    let log_ratio = ((shifted - x) / x).ln_1p();
    Ok(asymptotic_digamma_minus_log(shifted) + log_ratio - offset)
}

/// Shifts x up to the asymptotic region; returns (x + N, Σ_{k<N} 1/(x+k)).
fn shift_up<T: Real>(x: T) -> (T, T) {
    let big = lit::<T>(ASYMPTOTIC);
    let mut y = x;
    let mut acc = KahanSum::new();
    while y < big {
        acc.add(y.recip());
        y = y + T::one();
    }
    (y, acc.value())
}

fn asymptotic_digamma_minus_log<T: Real>(x: T) -> T {
    let inv2 = (x * x).recip();
    let mut acc = T::zero();
    for &c in DIGAMMA_ASYM.iter().rev() {
        acc = acc * inv2 + lit(c);
    }
    -(x + x).recip() - acc * inv2
}

/// ln B(x, y) = ln Γ(x) + ln Γ(y) − ln Γ(x + y).
pub fn log_beta<T: Real>(x: T, y: T) -> Result<T> {
    check_positive("log_beta", x)?;
    check_positive("log_beta", y)?;
    let (small, large) = if x <= y { (x, y) } else { (y, x) };
    if large >= lit(ASYMPTOTIC) {
        Ok(log_gamma_unchecked(small) - log_gamma_ratio(large, small)?)
    } else {
        Ok(log_gamma_unchecked(x) + log_gamma_unchecked(y) - log_gamma_unchecked(x + y))
    }
}

/// Default tolerance for recognizing non-positive integer parameters.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

/// Parameter lists of a terminating pFq(upper; lower; 1).
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec<T> {
    upper: Vec<T>,
    lower: Vec<T>,
    integer_tolerance: T,
    termination: usize,
}

fn nonpositive_integer<T: Real>(p: T, tol: T) -> Option<usize> {
    let r = p.round();
    if r <= T::zero() && (p - r).abs() <= tol {
        (-r).to_usize()
    } else {
        None
    }
}

impl<T: Real> HypergeometricSpec<T> {
    pub fn new(upper: Vec<T>, lower: Vec<T>) -> Result<Self> {
        let tol = lit::<T>(INTEGER_TOLERANCE).max(T::resolution());
        Self::with_tolerance(upper, lower, tol)
    }

    pub fn with_tolerance(upper: Vec<T>, lower: Vec<T>, integer_tolerance: T) -> Result<Self> {
        let termination = upper
            .iter()
            .filter_map(|&p| nonpositive_integer(p, integer_tolerance))
            .min()
            .ok_or(Error::UnsupportedSeries)?;
        for &q in &lower {
            if let Some(m) = nonpositive_integer(q, integer_tolerance) {
                // (q)_k vanishes once k > m; terms up to k = termination are needed.
                if m < termination {
                    return Err(Error::Pole { parameter: f64_of(q), term: m + 1 });
                }
            }
        }
        Ok(Self { upper, lower, integer_tolerance, termination })
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn integer_tolerance(&self) -> T {
        self.integer_tolerance
    }

    /// Index K of the last non-zero term.
    pub fn termination_index(&self) -> usize {
        self.termination
    }
}

/// Σ_{k=0}^{K} Π(upper)_k / (Π(lower)_k k!) via the term-ratio recurrence with
/// compensated summation.
pub fn hyp_pfq_unit<T: Real>(spec: &HypergeometricSpec<T>) -> T {
    let mut term = T::one();
    let mut sum = KahanSum::new();
    sum.add(term);
    for k in 0..spec.termination {
        let kk: T = int(k as i64);
        let num = spec.upper.iter().fold(T::one(), |acc, &a| acc * (a + kk));
        let den = spec.lower.iter().fold(T::one(), |acc, &b| acc * (b + kk));
        term = term * num / (den * (kk + T::one()));
        sum.add(term);
    }
    sum.value()
}

/// Builds the series parameters and evaluates them in one step.
pub fn pfq_unit<T: Real>(upper: &[T], lower: &[T]) -> Result<T> {
    let spec = HypergeometricSpec::new(upper.to_vec(), lower.to_vec())?;
    Ok(hyp_pfq_unit(&spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn log_gamma_known_values() {
        assert!(log_gamma(1.0_f64).unwrap().abs() < 1e-15);
        assert!(log_gamma(2.0_f64).unwrap().abs() < 1e-15);
        let half = log_gamma(0.5_f64).unwrap();
        assert!(rel(half, std::f64::consts::PI.sqrt().ln()) < 1e-14);
        // 20! through the asymptotic branch.
        let fact20: f64 = (1..=20).map(|k| (k as f64).ln()).sum();
        assert!(rel(log_gamma(21.0_f64).unwrap(), fact20) < 1e-14);
    }

    #[test]
    fn log_gamma_matches_product_recurrence() {
        // Γ(6.5) = Γ(1/2) Π_{k=0}^{5} (1/2 + k)
        let oracle = std::f64::consts::PI.sqrt().ln() + (0..6).map(|k| (0.5 + k as f64).ln()).sum::<f64>();
        assert!(rel(log_gamma(6.5_f64).unwrap(), oracle) < 1e-13);
    }

    #[test]
    fn log_gamma_branches_agree_at_threshold() {
        let below = lanczos_ln_gamma(10.0_f64);
        let above = log_gamma(10.0_f64).unwrap();
        assert!(rel(below, above) < 1e-14);
    }

    #[test]
    fn log_gamma_rejects_non_positive() {
        assert!(matches!(log_gamma(0.0_f64), Err(Error::Domain { .. })));
        assert!(log_gamma(-1.5_f64).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn digamma_at_one_is_minus_euler_gamma() {
        // γ = H_n - ln n - 1/(2n) + 1/(12n²) - 1/(120n⁴) + ..., n = 1000.
        let n = 1000.0_f64;
        let harmonic: KahanSum<f64> = (1..=1000).map(|k| 1.0 / k as f64).collect();
        let gamma_em = harmonic.value() - n.ln() - 1.0 / (2.0 * n) + 1.0 / (12.0 * n * n) - 1.0 / (120.0 * n.powi(4));
        assert!((digamma(1.0_f64).unwrap() + gamma_em).abs() < 1e-13);
        assert!((digamma(1.0_f64).unwrap() + 0.577_215_664_901_532_9).abs() < 1e-14);
    }

    #[test]
    fn digamma_recurrence_and_finite_difference() {
        let p1 = digamma(1.0_f64).unwrap();
        assert!((digamma(2.0_f64).unwrap() - (p1 + 1.0)).abs() < 1e-14);
        let h = 1e-6;
        let fd = (log_gamma(10.5 + h).unwrap() - log_gamma(10.5 - h).unwrap()) / (2.0 * h);
        assert!((digamma(10.5_f64).unwrap() - fd).abs() < 1e-6);
    }

    #[test]
    fn digamma_minus_log_matches_difference_for_small_x() {
        for &x in &[0.1_f64, 0.7, 1.5, 3.0, 9.99, 12.0] {
            let direct = digamma(x).unwrap() - x.ln();
            assert!((digamma_minus_log(x).unwrap() - direct).abs() < 1e-13, "x = {x}");
        }
        // Large x: leading behaviour -1/(2x) - 1/(12x²).
        let x = 1e7_f64;
        let expected = -1.0 / (2.0 * x) - 1.0 / (12.0 * x * x);
        assert!(rel(digamma_minus_log(x).unwrap(), expected) < 1e-12);
    }

    #[test]
    fn log_beta_examples() {
        assert!(log_beta(1.0_f64, 1.0).unwrap().abs() < 1e-14);
        assert!(rel(log_beta(0.5_f64, 0.5).unwrap(), std::f64::consts::PI.ln()) < 1e-14);
        // B(3,4) = 2! 3! / 6! = 1/60
        assert!(rel(log_beta(3.0_f64, 4.0).unwrap(), (1.0_f64 / 60.0).ln()) < 1e-14);
        assert!(log_beta(0.0_f64, 1.0).is_err());
    }

    #[test]
    fn log_beta_large_argument_uses_stable_ratio() {
        // B(x, y) ~ Γ(x) y^{-x} for y → ∞.
        let (x, y) = (1.5_f64, 1e8_f64);
        let approx = log_gamma(x).unwrap() - x * y.ln();
        let corr = -x * (x - 1.0) / (2.0 * y);
        assert!((log_beta(x, y).unwrap() - (approx + corr)).abs() < 1e-12);
    }

    #[test]
    fn f32_kernels_track_f64() {
        for &x in &[0.3_f64, 1.7, 4.2, 15.0] {
            let lg32 = log_gamma(x as f32).unwrap() as f64;
            assert!((lg32 - log_gamma(x).unwrap()).abs() < 1e-4, "x = {x}");
            let dg32 = digamma(x as f32).unwrap() as f64;
            assert!((dg32 - digamma(x).unwrap()).abs() < 1e-4, "x = {x}");
        }
    }

    #[test]
    fn pfq_zero_parameter_gives_one() {
        for &(x, y, c) in &[(0.3_f64, 2.0, 1.5), (7.0, 0.1, 3.3)] {
            assert_eq!(pfq_unit(&[0.0, x, y], &[c, 1.0]).unwrap(), 1.0);
        }
    }

    #[test]
    fn pfq_two_term_sum() {
        // 1 + (-1)(-2)(3)/(2·1·1)
        let v = pfq_unit(&[-1.0_f64, -2.0, 3.0], &[2.0, 1.0]).unwrap();
        assert!((v - 4.0).abs() < 1e-15);
    }

    #[test]
    fn pfq_chu_vandermonde() {
        let (n, b, c) = (3usize, 1.5_f64, 4.0_f64);
        let poch = |x: f64, k: usize| (0..k).map(|j| x + j as f64).product::<f64>();
        let expected = poch(c - b, n) / poch(c, n);
        let v = pfq_unit(&[-(n as f64), b], &[c]).unwrap();
        assert!(rel(v, expected) < 1e-14);
    }

    #[test]
    fn pfq_errors() {
        assert_eq!(pfq_unit(&[0.5_f64, 1.5], &[2.0]), Err(Error::UnsupportedSeries));
        assert!(matches!(pfq_unit(&[-3.0_f64, 1.0], &[-1.0]), Err(Error::Pole { .. })));
        // A lower pole beyond termination is harmless.
        assert!(pfq_unit(&[-1.0_f64, 1.0], &[-2.0]).is_ok());
    }

    #[test]
    fn termination_uses_smallest_index() {
        let spec = HypergeometricSpec::new(vec![-5.0_f64, -2.0, 0.5], vec![1.0]).unwrap();
        assert_eq!(spec.termination_index(), 2);
        let spec = HypergeometricSpec::new(vec![-3.0 + 1e-12_f64, 1.0], vec![1.0]).unwrap();
        assert_eq!(spec.termination_index(), 3);
    }

    /// Independent oracle: every term from its own Pochhammer products.
    fn naive_pfq(upper: &[f64], lower: &[f64], k_max: usize) -> (f64, f64) {
        let poch = |x: f64, k: usize| (0..k).map(|j| x + j as f64).product::<f64>();
        let fact = |k: usize| (1..=k).map(|j| j as f64).product::<f64>();
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for k in 0..=k_max {
            let num: f64 = upper.iter().map(|&a| poch(a, k)).product();
            let den: f64 = lower.iter().map(|&b| poch(b, k)).product();
            let t = num / (den * fact(k));
            sum += t;
            abs_sum += t.abs();
        }
        (sum, abs_sum)
    }

    proptest! {
        #[test]
        fn gamma_recurrence(x in 0.1_f64..50.0) {
            let ratio = (log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap()).exp();
            prop_assert!(rel(ratio, x) < 1e-12);
        }

        #[test]
        fn digamma_is_derivative_of_log_gamma(x in 0.5_f64..50.0) {
            let h = 1e-6;
            let fd = (log_gamma(x + h).unwrap() - log_gamma(x - h).unwrap()) / (2.0 * h);
            prop_assert!((digamma(x).unwrap() - fd).abs() < 1e-6);
        }

        #[test]
        fn pfq_permutation_symmetry(
            k in 0usize..12,
            a in 0.1_f64..5.0,
            b in 0.1_f64..5.0,
            c in 0.5_f64..6.0,
            e in 0.5_f64..6.0,
        ) {
            let m = -(k as f64);
            let base = pfq_unit(&[m, a, b], &[c, e]).unwrap();
            let perm_up = pfq_unit(&[b, m, a], &[c, e]).unwrap();
            let perm_low = pfq_unit(&[a, b, m], &[e, c]).unwrap();
            let (_, scale) = naive_pfq(&[m, a, b], &[c, e], k);
            prop_assert!((base - perm_up).abs() <= 1e-14 * scale);
            prop_assert!((base - perm_low).abs() <= 1e-14 * scale);
        }

        #[test]
        fn pfq_matches_brute_force(
            k in 0usize..=20,
            upper in proptest::collection::vec(-3.0_f64..6.0, 0..4),
            lower in proptest::collection::vec(0.2_f64..8.0, 0..4),
        ) {
            let mut up = vec![-(k as f64)];
            up.extend(upper.iter().copied());
            let spec = HypergeometricSpec::new(up.clone(), lower.clone()).unwrap();
            let kk = spec.termination_index();
            let fast = hyp_pfq_unit(&spec);
            let (slow, scale) = naive_pfq(&up, &lower, kk);
            // Relative to Σ|term|: alternating series may cancel below the term size.
            prop_assert!((fast - slow).abs() <= 1e-12 * scale, "fast={fast} slow={slow}");
        }
    }
}
