//! Parametric solution `(x(E), θ(E))` and time sampling through the Kepler equation.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::kepler::solve_kepler_signed;
use super::{orbit_elements, OrbitConstants, OrbitElements, CIRCULAR_ECC};
use crate::error::Result;
use crate::potential::ParabolaParams;

/// One point along an orbit. `e_anom` lies in `[0, 2π)` within radial cycle `cycle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub e_anom: f64,
    pub cycle: i64,
    pub x: f64,
    pub r: f64,
    pub theta: f64,
    /// Angle conjugate to `J`: `Ωt`.
    pub z_j: f64,
    /// Angle conjugate to `Λ`: `(Θ/2π)Ωt`.
    pub z_lambda: f64,
}

/// Hénon abscissa and radius at eccentric anomaly `E` (for the harmonic family `E = Ωt`).
pub fn radius_of_e(_p: &ParabolaParams, el: &OrbitElements, e: f64) -> (f64, f64) {
    let x = match (el.alpha2, el.x_v) {
        (Some(a2), Some(xv)) => {
            let w = 1.0 - el.signed_ecc() * e.cos();
            xv + 2.0 * a2 * w * w
        }
        _ => {
            let c = (0.5 * e).cos();
            el.x_a + (el.x_p - el.x_a) * c * c
        }
    };
    let x = x.clamp(el.x_p, el.x_a);
    (x, (0.5 * x).sqrt())
}

/// `arctan(w tan(E/2))` for `E ∈ [0, π]`, continuous through `E = π`. Needs `Re w > 0`.
fn arctan_half(w: Complex64, e: f64) -> Complex64 {
    let (s, c) = (0.5 * e).sin_cos();
    if w.im == 0.0 {
        return Complex64::new((w.re * s).atan2(c), 0.0);
    }
    let i = Complex64::i();
    let iws = i * w * s;
    (i / 2.0) * ((Complex64::new(c, 0.0) - iws).ln() - (Complex64::new(c, 0.0) + iws).ln())
}

/// Polar angle on the half orbit `E ∈ [0, π]`, with the imaginary residual of the
/// conjugate-pair sum relative to its real part.
fn angle_half(p: &ParabolaParams, oc: OrbitConstants, el: &OrbitElements, e: f64) -> (f64, f64) {
    let (alpha2, zeta2) = match (el.alpha2, el.zeta2) {
        (Some(a2), Some(z2)) => (a2, z2),
        _ => {
            let w = (el.x_a / el.x_p).sqrt();
            let pref = 4.0 * oc.lam / (el.omega_r * (el.x_p * el.x_a).sqrt());
            return (pref * (w * (0.5 * e).sin()).atan2((0.5 * e).cos()), 0.0);
        }
    };
    let ecc = el.signed_ecc();
    let pref = oc.lam / (el.omega_r * alpha2);
    let zeta = if zeta2 >= 0.0 {
        Complex64::new(zeta2.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-zeta2).sqrt())
    };
    let complex_branch = p.vertex().is_some_and(|xv| xv > 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for sigma in [1.0, -1.0] {
        let q = Complex64::new(1.0, 0.0) + sigma * zeta;
        let es = ecc / q;
        let one = Complex64::new(1.0, 0.0);
        let coef = one / (q * (one - es * es).sqrt());
        let w = ((one + es) / (one - es)).sqrt();
        let w = if complex_branch {
            w
        } else {
            Complex64::new(w.re, 0.0)
        };
        sum += coef * arctan_half(w, e);
    }
    let theta = pref * sum.re;
    let resid = if sum.re != 0.0 {
        (sum.im / sum.re).abs()
    } else {
        sum.im.abs()
    };
    (theta, resid)
}

/// Polar angle at eccentric anomaly `E`, extended past `[0, π]` by
/// `θ(2π − E) = Θ − θ(E)` and `θ(E + 2πk) = kΘ + θ(E)`.
pub fn angle_of_e(p: &ParabolaParams, oc: OrbitConstants, el: &OrbitElements, e: f64) -> f64 {
    angle_of_e_with_residual(p, oc, el, e).0
}

/// As [`angle_of_e`], also returning the relative imaginary residual of the complex branch.
pub fn angle_of_e_with_residual(
    p: &ParabolaParams,
    oc: OrbitConstants,
    el: &OrbitElements,
    e: f64,
) -> (f64, f64) {
    if el.ecc <= CIRCULAR_ECC {
        return (el.apsidal * e / TAU, 0.0);
    }
    let k = (e / TAU).floor();
    let local = e - k * TAU;
    let (th, res) = if local <= PI {
        angle_half(p, oc, el, local)
    } else {
        let (th, res) = angle_half(p, oc, el, TAU - local);
        (el.apsidal - th, res)
    };
    (k * el.apsidal + th, res)
}

/// Samples the orbit at the given times, starting at periastron with `θ = 0` at `t = 0`.
pub fn trajectory(
    p: &ParabolaParams,
    oc: OrbitConstants,
    times: &[f64],
) -> Result<Vec<TrajectorySample>> {
    let el = orbit_elements(p, oc)?;
    Ok(times.iter().map(|&t| sample(p, oc, &el, t)).collect())
}

pub(crate) fn sample(
    p: &ParabolaParams,
    oc: OrbitConstants,
    el: &OrbitElements,
    t: f64,
) -> TrajectorySample {
    let m = el.omega_r * t;
    let k = (m / TAU).floor();
    let local = m - k * TAU;
    let z_j = m;
    let z_lambda = el.apsidal / TAU * m;
    if el.ecc <= CIRCULAR_ECC {
        let (x, r) = radius_of_e(p, el, 0.0);
        return TrajectorySample {
            t,
            e_anom: local,
            cycle: k as i64,
            x,
            r,
            theta: el.apsidal * t / el.period,
            z_j,
            z_lambda,
        };
    }
    let e_loc = if el.alpha2.is_none() {
        local
    } else {
        solve_kepler_signed(el.signed_ecc(), local)
    };
    let e_loc = e_loc.clamp(0.0, TAU);
    let (x, r) = radius_of_e(p, el, e_loc);
    let theta = k * el.apsidal + angle_of_e(p, oc, el, e_loc);
    let (e_anom, cycle) = if e_loc >= TAU {
        (0.0, k as i64 + 1)
    } else {
        (e_loc, k as i64)
    };
    TrajectorySample {
        t,
        e_anom,
        cycle,
        x,
        r,
        theta,
        z_j,
        z_lambda,
    }
}
