//! Globally adaptive 21-point Gauss–Kronrod quadrature on finite and
//! semi-infinite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, f64_of, Error, Result};
use crate::scalar::{lit, Real};

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_040_356,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> Default for QuadratureOptions<T> {
    fn default() -> Self {
        Self { abs_tol: lit(1e-12), rel_tol: lit(1e-12), max_subdivisions: 4000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error: T,
    pub evaluations: usize,
    pub subdivisions: usize,
}

struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn kronrod21<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> (T, T) {
    let center = (lo + hi) * lit(0.5);
    let half = (hi - lo) * lit(0.5);
    let fc = f(center);
    let mut res_k = fc * lit(WGK[10]);
    let mut res_g = T::zero();
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = lit::<T>(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + lit::<T>(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * lit(0.5);
    let mut res_asc = lit::<T>(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + lit::<T>(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (lit::<T>(200.0) * err / res_asc).powf(lit(1.5));
        err = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let fifty_eps = lit::<T>(50.0) * T::epsilon();
    if res_abs > T::min_positive_value() / fifty_eps {
        err = err.max(fifty_eps * res_abs);
    }
    (value, err)
}

/// ∫_a^b f over the pieces delimited by `breaks` (sorted, including both ends).
pub fn integrate_pieces<T: Real, F: Fn(T) -> T>(
    f: F,
    breaks: &[T],
    opts: &QuadratureOptions<T>,
) -> Result<QuadratureResult<T>> {
    if breaks.len() < 2 {
        return Err(domain("integrate", breaks.len() as f64, "at least two breakpoints"));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    for w in breaks.windows(2) {
        let (value, error) = kronrod21(&f, w[0], w[1]);
        evaluations += 21;
        heap.push(Segment { lo: w[0], hi: w[1], value, error });
    }
    let totals = |heap: &BinaryHeap<Segment<T>>| {
        heap.iter().fold((T::zero(), T::zero()), |(v, e), s| (v + s.value, e + s.error))
    };
    let mut subdivisions = 0usize;
    loop {
        let (value, error) = totals(&heap);
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if !value.is_finite() {
            return Err(Error::Quadrature { error: f64::NAN, subdivisions });
        }
        if error <= target {
            return Ok(QuadratureResult { value, error, evaluations, subdivisions });
        }
        if subdivisions >= opts.max_subdivisions {
            return Err(Error::Quadrature { error: f64_of(error), subdivisions });
        }
        let worst = heap.pop().expect("non-empty segment heap");
        let mid = (worst.lo + worst.hi) * lit(0.5);
        if mid <= worst.lo || mid >= worst.hi {
            // Interval exhausted at machine resolution; keep its estimate.
            let (value, error) = totals(&heap);
            let total_err = error + worst.error;
            if total_err <= target.max(lit::<T>(1e3) * T::epsilon() * (value + worst.value).abs()) {
                return Ok(QuadratureResult {
                    value: value + worst.value,
                    error: total_err,
                    evaluations,
                    subdivisions,
                });
            }
            return Err(Error::Quadrature { error: f64_of(total_err), subdivisions });
        }
        let (v1, e1) = kronrod21(&f, worst.lo, mid);
        let (v2, e2) = kronrod21(&f, mid, worst.hi);
        evaluations += 42;
        subdivisions += 1;
        heap.push(Segment { lo: worst.lo, hi: mid, value: v1, error: e1 });
        heap.push(Segment { lo: mid, hi: worst.hi, value: v2, error: e2 });
    }
}

/// ∫_a^b f(x) dx.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, opts: &QuadratureOptions<T>) -> Result<QuadratureResult<T>> {
    let pieces = 8;
    let breaks: Vec<T> = (0..=pieces).map(|i| a + (b - a) * lit::<T>(i as f64 / pieces as f64)).collect();
    integrate_pieces(f, &breaks, opts)
}

/// ∫_0^∞ f(x) dx through x = s t / (1 − t); `scale` s should be the width of
/// the region carrying most of the mass.
pub fn integrate_semi_infinite<T: Real, F: Fn(T) -> T>(
    f: F,
    scale: T,
    opts: &QuadratureOptions<T>,
) -> Result<QuadratureResult<T>> {
    if !(scale > T::zero()) {
        return Err(domain("integrate_semi_infinite", scale, "scale > 0"));
    }
    let mapped = |t: T| {
        let one_minus = T::one() - t;
        if one_minus <= T::zero() {
            return T::zero();
        }
        let x = scale * t / one_minus;
        let v = f(x) * scale / (one_minus * one_minus);
        if v.is_finite() {
            v
        } else if x > lit(1e100) {
            T::zero()
        } else {
            v
        }
    };
    let breaks: Vec<T> =
        [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0].iter().map(|&t| lit::<T>(t)).collect();
    integrate_pieces(mapped, &breaks, opts)
}
