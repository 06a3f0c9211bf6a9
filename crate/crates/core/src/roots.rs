//! Scalar root finding and 1-D maximisation shared by the analytic code and the oracle.

use crate::error::Result;

/// Newton's method kept inside a sign-change bracket; falls back to bisection whenever the
/// Newton step leaves the bracket or is not finite. `f` returns `(value, derivative)`.
pub(crate) fn newton_bracketed<F>(mut f: F, lo: f64, hi: f64, x0: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let (flo, _) = f(lo)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    let (fhi, _) = f(hi)?;
    if fhi == 0.0 {
        return Ok(hi);
    }
    // orient so that g(neg) < 0 < g(pos)
    let (mut neg, mut pos) = if flo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = if x0 > lo.min(hi) && x0 < lo.max(hi) {
        x0
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..300 {
        let (fx, dfx) = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
        let (a, b) = (neg.min(pos), neg.max(pos));
        let newton = x - fx / dfx;
        let next = if newton.is_finite() && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        let step = (next - x).abs();
        x = next;
        if step <= 2.0 * f64::EPSILON * x.abs() || b - a <= 2.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
    }
    Ok(x)
}

/// Plain bisection to the last representable midpoint. Needs a sign change on `[lo, hi]`.
pub(crate) fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> f64 {
    let flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let (mut neg, mut pos) = if flo < 0.0 { (lo, hi) } else { (hi, lo) };
    loop {
        let mid = 0.5 * (neg + pos);
        if mid == neg || mid == pos {
            // the endpoint with the smaller residual
            return if f(neg).abs() <= f(pos).abs() {
                neg
            } else {
                pos
            };
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm < 0.0 {
            neg = mid;
        } else {
            pos = mid;
        }
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub(crate) fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..400 {
        if hi - lo <= 4.0 * f64::EPSILON * (lo.abs() + hi.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}
