//! Numerical ground truth for the closed forms.
//!
//! Nothing here looks at the Latin coefficients. Turning points come from bracketing the roots
//! of `ξx − Λ² − Y(x)`, periods and actions from quadrature over `r`, and trajectories from
//! integrating the equations of motion. Any [`RadialPotential`] works, including
//! non-isochrone controls such as the Plummer sphere.

pub mod ode;
pub mod quadrature;

use std::f64::consts::{PI, TAU};

pub use quadrature::QuadratureResult;

use crate::analytic::OrbitConstants;
use crate::error::{IsochroneError, Result};
use crate::potential::RadialPotential;
use crate::roots::{bisect, golden_max};
use ode::{RadialSystem, Stepper};

/// Default relative tolerance for the quadratures.
pub const QUAD_TOL: f64 = 1e-12;
/// Largest acceptable error estimate relative to the value.
pub const QUAD_ACCEPT: f64 = 1e-9;
const MAX_EVALS: usize = 200_000;

/// Radial interval of an orbit. `circular` is set when the effective-potential well is
/// touched only at its bottom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialBounds {
    pub r_p: f64,
    pub r_a: f64,
    /// Hénon abscissae of the turning points, as bracketed.
    pub x_p: f64,
    pub x_a: f64,
    pub circular: bool,
}

/// `f(x) = ξx − Λ² − Y(x) = 2r²(ξ − Λ²/2r² − ψ)`, positive where the orbit may go.
fn allowed(pot: &dyn RadialPotential, oc: OrbitConstants, x: f64) -> f64 {
    match pot.y(x) {
        Ok(y) => oc.xi * x - oc.lam * oc.lam - y,
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Finite upper end for the searches: the domain end, or a point past the maximum of `f`
/// where `f < 0`.
fn search_ceiling(pot: &dyn RadialPotential, f: &dyn Fn(f64) -> f64) -> Result<f64> {
    let dom = pot.x_domain();
    if dom.hi.is_finite() {
        return Ok(dom.hi);
    }
    let span = dom.lo.abs().max(1.0);
    let mut prev = f(dom.lo);
    let mut h = dom.lo + span * 1e-3;
    for _ in 0..120 {
        let v = f(h);
        if v < 0.0 && v < prev {
            return Ok(h);
        }
        prev = v;
        h = dom.lo + 2.0 * (h - dom.lo);
    }
    Err(IsochroneError::NoBoundOrbit(
        "orbit escapes to infinity".into(),
    ))
}

/// Periastron and apoastron found by golden-section search for the top of the allowed
/// region followed by bisection of each edge to the last bit.
pub fn orbit_bounds(pot: &dyn RadialPotential, oc: OrbitConstants) -> Result<RadialBounds> {
    let f = |x: f64| allowed(pot, oc, x);
    let dom = pot.x_domain();
    let hi = search_ceiling(pot, &f)?;
    let x_top = golden_max(f, dom.lo, hi);
    let top = f(x_top);
    let y_top = pot.y(x_top).unwrap_or(0.0);
    let scale = (oc.xi * x_top).abs() + oc.lam * oc.lam + y_top.abs();
    if top < -1e-13 * scale || !top.is_finite() {
        return Err(IsochroneError::NoBoundOrbit(format!(
            "energy {} lies below the circular-orbit energy for lambda = {}",
            oc.xi, oc.lam
        )));
    }
    if top <= 1e-13 * scale {
        let r = circular_radius(pot, oc.lam, (0.5 * x_top).sqrt());
        return Ok(RadialBounds {
            r_p: r,
            r_a: r,
            x_p: 2.0 * r * r,
            x_a: 2.0 * r * r,
            circular: true,
        });
    }
    if f(dom.lo) >= 0.0 || (dom.hi.is_finite() && f(dom.hi) >= 0.0) {
        return Err(IsochroneError::NoBoundOrbit(
            "orbit reaches the edge of the domain".into(),
        ));
    }
    let xp = bisect(f, dom.lo, x_top);
    let xa = bisect(f, x_top, hi);
    Ok(RadialBounds {
        r_p: (0.5 * xp).sqrt(),
        r_a: (0.5 * xa).sqrt(),
        x_p: xp,
        x_a: xa,
        circular: false,
    })
}

/// Golden-section search only locates the top of the well to about `√ε`; the force balance
/// `Λ²/r³ = ψ′(r)` pins a circular radius down to the last bit.
fn circular_radius(pot: &dyn RadialPotential, lam: f64, guess: f64) -> f64 {
    let force = |r: f64| match pot.dpsi_dr(r) {
        Ok(d) => lam * lam / (r * r * r) - d,
        Err(_) => f64::NAN,
    };
    let (lo, hi) = (guess * (1.0 - 1e-5), guess * (1.0 + 1e-5));
    let (flo, fhi) = (force(lo), force(hi));
    if flo.is_finite() && fhi.is_finite() && flo * fhi < 0.0 {
        bisect(force, lo, hi)
    } else {
        guess
    }
}

/// `κ² = ψ″ + 3Λ²/r⁴` at a circular orbit, with `ψ″` by central differences.
fn epicyclic_frequency(pot: &dyn RadialPotential, lam: f64, r: f64) -> Result<f64> {
    let h = 1e-4 * r;
    let d2 = (pot.dpsi_dr(r + h)? - pot.dpsi_dr(r - h)?) / (2.0 * h);
    let k2 = d2 + 3.0 * lam * lam / r.powi(4);
    if k2 <= 0.0 {
        return Err(IsochroneError::NoBoundOrbit(
            "circular orbit is unstable".into(),
        ));
    }
    Ok(k2.sqrt())
}

enum Integrand {
    Period,
    Apsidal,
    Action,
}

fn quad(
    pot: &dyn RadialPotential,
    oc: OrbitConstants,
    which: Integrand,
    tol: f64,
) -> Result<QuadratureResult> {
    let b = orbit_bounds(pot, oc)?;
    if b.circular {
        let value = match which {
            Integrand::Action => 0.0,
            Integrand::Period => TAU / epicyclic_frequency(pot, oc.lam, b.r_p)?,
            Integrand::Apsidal => {
                oc.lam / (b.r_p * b.r_p) * TAU / epicyclic_frequency(pot, oc.lam, b.r_p)?
            }
        };
        return Ok(QuadratureResult {
            value,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let (xp, xa) = (b.x_p, b.x_a);
    let span = xa - xp;
    // the bisected roots leave residuals of a few ulps; the square-root endpoint behaviour
    // turns those into relative errors near √ε unless they are removed
    let (fp, fa) = (allowed(pot, oc, xp), allowed(pot, oc, xa));
    let f = |x: f64| (allowed(pot, oc, x) - (fp * (xa - x) + fa * (x - xp)) / span).max(0.0);
    // x = x_p + Δ sin²u; ṙ² = 2f/x and dr = dx/4r
    let g = |u: f64| {
        let (s, c) = u.sin_cos();
        let x = xp + span * s * s;
        let r = (0.5 * x).sqrt();
        let jac = 2.0 * span * s * c / (4.0 * r);
        let v2 = 2.0 * f(x) / x;
        match which {
            Integrand::Action => v2.sqrt() * jac,
            _ if v2 == 0.0 => 0.0,
            Integrand::Period => jac / v2.sqrt(),
            Integrand::Apsidal => oc.lam / (r * r) * jac / v2.sqrt(),
        }
    };
    // the integrand in u is even about both ends, so the midpoint rule converges geometrically
    let raw = quadrature::integrate_periodic(g, 0.0, 0.5 * PI, tol, 0.0, MAX_EVALS);
    let factor = match which {
        Integrand::Action => 1.0 / PI,
        _ => 2.0,
    };
    let res = QuadratureResult {
        value: factor * raw.value,
        error_estimate: factor * raw.error_estimate,
        evaluations: raw.evaluations,
    };
    let limit = tol.max(QUAD_ACCEPT) * res.value.abs();
    if res.error_estimate > limit {
        return Err(IsochroneError::ToleranceNotMet {
            achieved: res.error_estimate,
            requested: limit,
        });
    }
    Ok(res)
}

/// `T = 2∫ dr/ṙ` between the turning points.
pub fn quad_radial_period(
    pot: &dyn RadialPotential,
    oc: OrbitConstants,
) -> Result<QuadratureResult> {
    quad(pot, oc, Integrand::Period, QUAD_TOL)
}

/// `Θ = 2∫ (Λ/r²) dr/ṙ`.
pub fn quad_apsidal_angle(
    pot: &dyn RadialPotential,
    oc: OrbitConstants,
) -> Result<QuadratureResult> {
    quad(pot, oc, Integrand::Apsidal, QUAD_TOL)
}

/// `J = (1/π)∫ ṙ dr`.
pub fn quad_radial_action(
    pot: &dyn RadialPotential,
    oc: OrbitConstants,
) -> Result<QuadratureResult> {
    quad(pot, oc, Integrand::Action, QUAD_TOL)
}

/// Quadrature with an explicit relative tolerance; the three integrals in order `(T, Θ, J)`.
pub fn quad_all_with_tol(
    pot: &dyn RadialPotential,
    oc: OrbitConstants,
    tol: f64,
) -> Result<(QuadratureResult, QuadratureResult, QuadratureResult)> {
    Ok((
        quad(pot, oc, Integrand::Period, tol)?,
        quad(pot, oc, Integrand::Apsidal, tol)?,
        quad(pot, oc, Integrand::Action, tol)?,
    ))
}

/// Range of `Λ` for which a bound, non-circular orbit of energy `ξ` exists.
///
/// The upper end is the circular orbit, `Λ_max² = max_x(ξx − Y)`. The lower end is set by
/// the domain edges, where the line must pass below `Y`.
pub fn admissible_lambda_range(pot: &dyn RadialPotential, xi: f64) -> Result<(f64, f64)> {
    let zero = OrbitConstants { xi, lam: 0.0 };
    let f = |x: f64| allowed(pot, zero, x);
    let dom = pot.x_domain();
    let hi = search_ceiling(pot, &f)?;
    let x_top = golden_max(f, dom.lo, hi);
    let top = f(x_top);
    if !(top > 0.0) {
        return Err(IsochroneError::NoBoundOrbit(format!(
            "no bound orbit at energy {xi}"
        )));
    }
    let mut low: f64 = f(dom.lo).max(0.0);
    if dom.hi.is_finite() {
        low = low.max(f(dom.hi));
    }
    if low >= top {
        return Err(IsochroneError::NoBoundOrbit(format!(
            "no bound orbit at energy {xi}"
        )));
    }
    Ok((low.sqrt(), top.sqrt()))
}

/// `n` angular momenta spread over the interior of the admissible range, avoiding both the
/// circular limit and the domain edges.
pub fn admissible_lambda_grid(pot: &dyn RadialPotential, xi: f64, n: usize) -> Result<Vec<f64>> {
    let (lo, hi) = admissible_lambda_range(pot, xi)?;
    let (l2lo, l2hi) = (lo * lo, hi * hi);
    Ok((0..n)
        .map(|i| {
            let s = if n == 1 {
                0.5
            } else {
                0.1 + 0.8 * i as f64 / (n - 1) as f64
            };
            (l2lo + s * (l2hi - l2lo)).sqrt()
        })
        .collect())
}

/// `(max − min)/mean` of the quadrature period over the admissible members of `lam_grid`.
/// Values of `Λ` with no bound orbit at this energy are skipped.
pub fn isochrony_spread(pot: &dyn RadialPotential, xi: f64, lam_grid: &[f64]) -> Result<f64> {
    let mut periods = Vec::with_capacity(lam_grid.len());
    for &lam in lam_grid {
        match quad_radial_period(pot, OrbitConstants { xi, lam }) {
            Ok(q) => periods.push(q.value),
            Err(IsochroneError::NoBoundOrbit(msg)) => log::debug!("skipping lambda = {lam}: {msg}"),
            Err(e) => return Err(e),
        }
    }
    if periods.len() < 2 {
        return Err(IsochroneError::NoBoundOrbit(format!(
            "fewer than two admissible lambda values at energy {xi}"
        )));
    }
    let max = periods.iter().cloned().fold(f64::MIN, f64::max);
    let min = periods.iter().cloned().fold(f64::MAX, f64::min);
    let mean = periods.iter().sum::<f64>() / periods.len() as f64;
    Ok((max - min) / mean)
}

/// One integrator sample. Drifts are relative to the initial values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState {
    pub t: f64,
    pub r: f64,
    pub rdot: f64,
    pub theta: f64,
    pub energy_drift: f64,
    /// `Λ` enters the right-hand side as a constant, so this is zero by construction.
    pub lambda_drift: f64,
}

/// Default relative tolerance for [`integrate_orbit`].
pub const ODE_TOL: f64 = 1e-10;

fn start(
    pot: &dyn RadialPotential,
    oc: OrbitConstants,
    reltol: f64,
) -> Result<(Stepper<'_>, f64, f64)> {
    let b = orbit_bounds(pot, oc)?;
    // The (r, ṙ) form is regular at a turning point, so the orbit starts exactly there.
    let y0 = [b.r_p, 0.0, 0.0];
    let sys = RadialSystem { pot, lam: oc.lam };
    let e0 = sys.energy(&y0)?;
    let e_scale = e0.abs().max(0.5 * oc.lam * oc.lam / (b.r_p * b.r_p));
    // the error norm is a per-step target; a hundredfold margin keeps the accumulated
    // drift inside the requested tolerance
    let internal = reltol * 1e-2;
    let h0 = 1e-3 * b.r_p / (e_scale.sqrt() + 1e-300);
    let stepper = Stepper::new(sys, y0, internal, internal * b.r_p, h0.min(1e-2))?;
    Ok((stepper, e0, e_scale))
}

fn snapshot(st: &Stepper<'_>, e0: f64, e_scale: f64) -> Result<OdeState> {
    let e = st.system().energy(&st.y)?;
    Ok(OdeState {
        t: st.t,
        r: st.y[0],
        rdot: st.y[1],
        theta: st.y[2],
        energy_drift: (e - e0).abs() / e_scale,
        lambda_drift: 0.0,
    })
}

/// Integrates from periastron (`θ = 0`) up to `t_end`, returning every accepted step.
pub fn integrate_orbit(
    pot: &dyn RadialPotential,
    oc: OrbitConstants,
    t_end: f64,
    reltol: f64,
) -> Result<Vec<OdeState>> {
    let (mut st, e0, sc) = start(pot, oc, reltol)?;
    let mut out = vec![snapshot(&st, e0, sc)?];
    while st.t < t_end {
        st.step(t_end).map_err(|e| with_time(e, st.t))?;
        out.push(snapshot(&st, e0, sc)?);
    }
    Ok(out)
}

/// Integrates from periastron and reports the state exactly at each of the (ascending) `times`.
pub fn integrate_orbit_at(
    pot: &dyn RadialPotential,
    oc: OrbitConstants,
    times: &[f64],
    reltol: f64,
) -> Result<Vec<OdeState>> {
    let (mut st, e0, sc) = start(pot, oc, reltol)?;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        if t < st.t {
            return Err(IsochroneError::InvalidParams(
                "output times must be ascending and non-negative".into(),
            ));
        }
        while st.t < t {
            st.step(t).map_err(|e| with_time(e, st.t))?;
        }
        out.push(snapshot(&st, e0, sc)?);
    }
    Ok(out)
}

fn with_time(e: IsochroneError, t: f64) -> IsochroneError {
    match e {
        IsochroneError::DomainExit { r, .. } => IsochroneError::DomainExit { t, r },
        other => other,
    }
}
