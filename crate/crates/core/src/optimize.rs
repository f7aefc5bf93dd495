//! Bounded one-dimensional maximization: coarse grid scan, golden-section
//! refinement, then an optional derivative-based polish.

use std::cell::Cell;

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy)]
pub struct MaximizeOptions<T> {
    /// Number of coarse grid points, including both ends.
    pub grid: usize,
    /// Final bracket width for the golden-section stage.
    pub tol: T,
}

impl<T: Real> Default for MaximizeOptions<T> {
    fn default() -> Self {
        Self { grid: 256, tol: lit(1e-10) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum<T> {
    pub argmax: T,
    pub value: T,
    pub evaluations: usize,
}

/// Maximizes `f` over `[lo, hi]`.
///
/// Non-finite values and errors from `f` are treated as -inf, so the grid
/// tolerates points where the objective is undefined. When `slope` is given,
/// a non-negative slope at `hi` pins the maximum to the upper end, and an
/// interior maximum is polished by bisecting on the sign of the slope.
pub fn maximize<T, F, S>(f: F, lo: T, hi: T, opts: &MaximizeOptions<T>, slope: Option<S>) -> Result<Maximum<T>>
where
    T: Real,
    F: Fn(T) -> Result<T>,
    S: Fn(T) -> Result<T>,
{
    if !(lo < hi) {
        return Err(domain("maximize", hi - lo, "lo < hi"));
    }
    if opts.grid < 3 {
        return Err(domain("maximize", opts.grid as f64, "grid >= 3"));
    }
    let evaluations = Cell::new(0usize);
    let eval = |x: T| -> T {
        evaluations.set(evaluations.get() + 1);
        match f(x) {
            Ok(v) if v.is_finite() => v,
            _ => T::neg_infinity(),
        }
    };

    let n = opts.grid;
    let step = (hi - lo) / lit::<T>((n - 1) as f64);
    let point = |i: usize| if i == n - 1 { hi } else { lo + step * lit::<T>(i as f64) };
    let mut best_i = 0;
    let mut best_v = T::neg_infinity();
    for i in 0..n {
        let v = eval(point(i));
        // Strict comparison keeps the smallest abscissa on ties.
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    if best_v == T::neg_infinity() {
        return Err(Error::Optimizer { evaluations: evaluations.get() });
    }

    let left = point(best_i.saturating_sub(1));
    let right = point((best_i + 1).min(n - 1));
    let mut best_x = point(best_i);

    // Golden-section search on [left, right].
    let inv_phi = lit::<T>((5f64.sqrt() - 1.0) / 2.0);
    let (mut a, mut b) = (left, right);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    let tol = opts.tol.max(T::epsilon() * hi.abs().max(T::one()));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    let (gx, gv) = if fc >= fd { (c, fc) } else { (d, fd) };
    if gv > best_v {
        best_x = gx;
        best_v = gv;
    }

    if let Some(slope) = slope {
        let sl = |x: T| -> Option<T> {
            evaluations.set(evaluations.get() + 1);
            slope(x).ok().filter(|s| s.is_finite())
        };
        // Values within a few hundred ulps are indistinguishable from rounding.
        let slack = lit::<T>(256.0) * T::epsilon() * best_v.abs().max(T::one());
        if right == hi && sl(hi).is_some_and(|s| s >= T::zero()) {
            let v = eval(hi);
            if v >= best_v - slack {
                best_x = hi;
                best_v = best_v.max(v);
            }
        } else if let (Some(sa), Some(sb)) = (sl(left), sl(right)) {
            if sa > T::zero() && sb < T::zero() {
                let (mut u, mut w) = (left, right);
                for _ in 0..200 {
                    let m = (u + w) * lit(0.5);
                    if m <= u || m >= w {
                        break;
                    }
                    match sl(m) {
                        Some(s) if s > T::zero() => u = m,
                        Some(s) if s < T::zero() => w = m,
                        Some(_) => {
                            u = m;
                            w = m;
                        }
                        None => break,
                    }
                }
                let root = (u + w) * lit(0.5);
                let v = eval(root);
                if v >= best_v - slack {
                    best_x = root;
                    best_v = best_v.max(v);
                }
            }
        }
    }

    Ok(Maximum { argmax: best_x, value: best_v, evaluations: evaluations.get() })
}

/// Slope placeholder for callers without derivative information.
pub type NoSlope<T> = fn(T) -> Result<T>;
