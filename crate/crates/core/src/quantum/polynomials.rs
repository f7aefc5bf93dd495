//! Orthogonal polynomials by three-term recurrence.

use crate::scalar::{int, lit, Real};

/// Generalized Laguerre polynomial L_p^q(x).
pub fn laguerre<T: Real>(p: u32, q: T, x: T) -> T {
    let mut prev = T::one();
    if p == 0 {
        return prev;
    }
    let mut cur = T::one() + q - x;
    for k in 1..p {
        let kk: T = int(k as i64);
        let next = ((kk + kk + T::one() + q - x) * cur - (kk + q) * prev) / (kk + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Gegenbauer polynomial C_p^q(x), q > −1/2.
pub fn gegenbauer<T: Real>(p: u32, q: T, x: T) -> T {
    let mut prev = T::one();
    if p == 0 {
        return prev;
    }
    let two = lit::<T>(2.0);
    let mut cur = two * q * x;
    for k in 1..p {
        let kk: T = int(k as i64);
        let next = (two * (kk + q) * x * cur - (kk + two * q - T::one()) * prev) / (kk + T::one());
        prev = cur;
        cur = next;
    }
    cur
}
