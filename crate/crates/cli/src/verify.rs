//! `verify`: closed forms against the oracle plus the theorem checks, as a JSON report.

use std::f64::consts::{PI, TAU};

use isochrone::analytic::{
    angle_of_e_with_residual, frequencies, hamiltonian, orbit_elements, radial_action,
    third_law_constant, trajectory,
};
use isochrone::birkhoff::{
    bertrand_check, frequency_invariants, invariants_from_period, invariants_from_potential,
    isochrone_theorem_check, third_law, BIRKHOFF_FD_TOL, PARABOLA_TOL,
};
use isochrone::oracle::{
    admissible_lambda_grid, integrate_orbit_at, isochrony_spread, quad_all_with_tol, ODE_TOL,
    QUAD_TOL,
};
use isochrone::{IsochroneError, OrbitConstants, ParabolaParams, RadialPotential};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, Potential, RunConfig};
use crate::exit::{Failure, NO_BOUND_ORBIT};
use crate::output::{csv, json, num};

const ORACLE_TOL: f64 = 1e-8;
const TRAJECTORY_TOL: f64 = 1e-6;
const IDENTITY_TOL: f64 = 1e-10;
const COMPLEX_TOL: f64 = 1e-12;
const ROUTE_TOL: f64 = 1e-10;
const ROUTE_B_TOL: f64 = 1e-6;
const FREQ_TOL: f64 = 1e-6;
const BERTRAND_TOL: f64 = 1e-6;

#[derive(Debug, Serialize)]
pub struct Check {
    name: &'static str,
    residual: Option<f64>,
    tolerance: f64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl Check {
    fn new(name: &'static str, res: Result<f64, IsochroneError>, tolerance: f64) -> Self {
        match res {
            Ok(r) => Check {
                name,
                residual: Some(r),
                tolerance,
                pass: r <= tolerance,
                value: None,
                error: None,
            },
            Err(e) => Check {
                name,
                residual: None,
                tolerance,
                pass: false,
                value: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Serialize)]
struct Report {
    potential: String,
    orbits: Vec<[f64; 2]>,
    lambda_grid: Vec<f64>,
    checks: Vec<Check>,
    pass: bool,
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

fn max_of(
    it: impl IntoIterator<Item = Result<f64, IsochroneError>>,
) -> Result<f64, IsochroneError> {
    let mut m = 0.0f64;
    for v in it {
        m = m.max(v?);
    }
    Ok(m)
}

/// Orbits to test: the user's `ξ` × `Λ` when given, otherwise `H(J, Λ)` for a few small actions.
fn parabola_orbits(p: &ParabolaParams, cfg: &RunConfig, lams: &[f64]) -> Vec<OrbitConstants> {
    let mut out = Vec::new();
    match cfg.xi_values() {
        Some(xis) => {
            for &xi in &xis {
                for &lam in lams {
                    if let Ok(oc) = OrbitConstants::new(xi, lam) {
                        if orbit_elements(p, oc).is_ok_and(|el| el.ecc > 0.0) {
                            out.push(oc);
                        }
                    }
                }
            }
        }
        None => {
            for &lam in lams {
                for j in [0.02, 0.1, 0.3] {
                    if let Ok(xi) = hamiltonian(p, j, lam) {
                        out.push(OrbitConstants { xi, lam });
                    }
                }
            }
        }
    }
    out
}

fn interior_points(p: &ParabolaParams) -> Vec<f64> {
    let dom = p.domain();
    (0..20)
        .map(|k| {
            let f = 10f64.powf(-4.0 + 4.0 * (k as f64 + 0.5) / 20.0);
            if dom.hi.is_finite() {
                dom.lo + 0.5 * (dom.hi - dom.lo) * f
            } else {
                dom.lo + 100.0 * dom.lo.abs().max(1.0) * f
            }
        })
        .collect()
}

type Job<'a> = Box<dyn Fn() -> Check + Send + Sync + 'a>;

fn parabola_jobs<'a>(
    p: &'a ParabolaParams,
    orbits: &'a [OrbitConstants],
    lams: &'a [f64],
    tol: f64,
) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();
    jobs.push(Box::new(move || {
        let res = max_of(interior_points(p).into_iter().map(|x| {
            let [_, y2, y3, y4] = p.y_derivatives(x)?;
            let r = p.parabola_ode_residual(x)?;
            Ok(r.abs() / (3.0 * y2 * y4).abs().max(5.0 * y3 * y3).max(1.0))
        }));
        Check::new("parabola_ode", res, PARABOLA_TOL)
    }));
    for (k, name) in ["oracle_period", "oracle_apsidal_angle", "oracle_action"]
        .into_iter()
        .enumerate()
    {
        jobs.push(Box::new(move || {
            let res = max_of(orbits.iter().map(|&oc| {
                let el = orbit_elements(p, oc)?;
                let q = quad_all_with_tol(p, oc, QUAD_TOL)?;
                Ok(match k {
                    0 => rel(el.period, q.0.value),
                    1 => rel(el.apsidal, q.1.value),
                    _ => rel(el.action, q.2.value),
                })
            }));
            Check::new(name, res, tol)
        }));
    }
    jobs.push(Box::new(move || {
        Check::new("isochrony", spread(p, orbits), tol)
    }));
    jobs.push(Box::new(move || {
        let res = (|| {
            let oc = orbits
                .iter()
                .copied()
                .find(|&oc| orbit_elements(p, oc).is_ok_and(|el| el.ecc > 1e-3))
                .ok_or_else(|| {
                    IsochroneError::NoBoundOrbit("no eccentric orbit to integrate".into())
                })?;
            let el = orbit_elements(p, oc)?;
            let times: Vec<f64> = (0..=200).map(|k| el.period * k as f64 / 200.0).collect();
            let ana = trajectory(p, oc, &times)?;
            let ode = integrate_orbit_at(p, oc, &times, ODE_TOL)?;
            Ok(ana.iter().zip(&ode).fold(0.0f64, |m, (a, b)| {
                m.max((a.r - b.r).abs() / el.r_a())
                    .max((a.theta - b.theta).abs() / el.apsidal)
            }))
        })();
        Check::new("trajectory_vs_ode", res, TRAJECTORY_TOL)
    }));
    if p.vertex().is_some_and(|v| v > 0.0) {
        jobs.push(Box::new(move || {
            let res = max_of(orbits.iter().map(|&oc| {
                let el = orbit_elements(p, oc)?;
                Ok((0..=64)
                    .map(|k| angle_of_e_with_residual(p, oc, &el, PI * k as f64 / 64.0).1)
                    .fold(0.0, f64::max))
            }));
            Check::new("complex_branch_imaginary_part", res, COMPLEX_TOL)
        }));
    }
    jobs.push(Box::new(move || {
        let res = max_of(orbits.iter().map(|&oc| {
            let el = orbit_elements(p, oc)?;
            let j = radial_action(p, oc)?;
            let (wj, wl) = frequencies(p, j, oc.lam)?;
            let mut m = rel(el.omega_r * el.period, TAU)
                .max(rel(wl / wj, el.apsidal / TAU))
                .max(rel(
                    angle_of_e_with_residual(p, oc, &el, PI).0,
                    0.5 * el.apsidal,
                ));
            if let (Some(k), Some(a)) = (third_law_constant(p), el.alpha()) {
                m = m.max(rel(el.omega_r * el.omega_r * a.powi(3), k));
            }
            Ok(m)
        }));
        Check::new("identities", res, IDENTITY_TOL)
    }));
    for (k, name, t) in [
        (0, "birkhoff_route_ell_b", ROUTE_TOL),
        (1, "birkhoff_route_B", ROUTE_B_TOL),
    ] {
        jobs.push(Box::new(move || {
            let res = max_of(lams.iter().map(|&lam| {
                let a = invariants_from_potential(p, lam)?;
                let b = invariants_from_period(p, lam)?;
                Ok(if k == 0 {
                    ((a.ell - b.ell).abs() / a.ell.abs().max(1.0)).max(rel(a.b_inv, b.b_inv))
                } else {
                    (a.big_b_inv - b.big_b_inv).abs() / a.big_b_inv.abs().max(1.0)
                })
            }));
            Check::new(name, res, t)
        }));
    }
    jobs.push(Box::new(move || {
        let res = max_of(orbits.iter().map(|&oc| {
            Ok(frequency_invariants(p, radial_action(p, oc)?, oc.lam)?
                .j_inv
                .abs())
        }));
        Check::new("frequency_j_invariant", res, FREQ_TOL)
    }));
    jobs.push(Box::new(move || {
        let res = max_of(
            orbits
                .iter()
                .map(|&oc| Ok(rel(third_law(p, oc.xi)?, orbit_elements(p, oc)?.period))),
        );
        Check::new("third_law", res, IDENTITY_TOL)
    }));
    jobs
}

/// Largest quadrature period spread over 10 admissible `Λ` at up to two of the energies.
fn spread(pot: &dyn RadialPotential, orbits: &[OrbitConstants]) -> Result<f64, IsochroneError> {
    let mut xis: Vec<f64> = Vec::new();
    for oc in orbits {
        if !xis.contains(&oc.xi) && xis.len() < 2 {
            xis.push(oc.xi);
        }
    }
    if xis.is_empty() {
        return Err(IsochroneError::NoBoundOrbit("no energy to test".into()));
    }
    max_of(
        xis.into_iter()
            .map(|xi| isochrony_spread(pot, xi, &admissible_lambda_grid(pot, xi, 10)?)),
    )
}

fn theorem_jobs<'a>(pot: &'a dyn RadialPotential, lams: &'a [f64]) -> Vec<Job<'a>> {
    vec![
        Box::new(move || {
            Check::new(
                "isochrone_theorem_birkhoff",
                isochrone_theorem_check(pot, lams).map(|r| r.max_birkhoff_residual()),
                BIRKHOFF_FD_TOL,
            )
        }),
        Box::new(move || {
            Check::new(
                "isochrone_theorem_parabola",
                isochrone_theorem_check(pot, lams).map(|r| r.max_parabola_residual()),
                PARABOLA_TOL,
            )
        }),
    ]
}

fn bertrand_job<'a>(pot: &'a dyn RadialPotential, lams: &'a [f64]) -> Job<'a> {
    Box::new(move || match bertrand_check(pot, lams) {
        Ok(fit) => Check {
            name: "bertrand_constant_q",
            residual: Some(fit.residual),
            tolerance: BERTRAND_TOL,
            pass: fit.residual <= BERTRAND_TOL,
            value: Some(fit.q_fit),
            error: None,
        },
        Err(e) => Check::new("bertrand_constant_q", Err(e), BERTRAND_TOL),
    })
}

/// Returns the rendered report and whether every check passed.
pub fn verify(cfg: &RunConfig) -> Result<(String, bool), Failure> {
    let pot = cfg.potential()?;
    let spec = cfg.potential_spec()?;
    let lams = cfg.lambda_values().unwrap_or_else(|| vec![0.5, 1.0, 1.5]);
    let tol = cfg.tol.unwrap_or(ORACLE_TOL);
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Failure::invalid("--tol must be positive"));
    }
    let orbits: Vec<OrbitConstants> = match &pot {
        Potential::Parabola { params, .. } => parabola_orbits(params, cfg, &lams),
        Potential::Generic(g) => generic_orbits(g, cfg, &lams),
    };
    if orbits.is_empty() {
        return Err(Failure {
            code: NO_BOUND_ORBIT,
            message: "no bound orbit among the requested constants".into(),
        });
    }
    let radial = pot.radial();
    let mut jobs: Vec<Job<'_>> = match &pot {
        Potential::Parabola { params, .. } => parabola_jobs(params, &orbits, &lams, tol),
        Potential::Generic(_) => {
            let orbits = &orbits;
            vec![Box::new(move || {
                Check::new("isochrony", spread(radial, orbits), tol)
            })]
        }
    };
    jobs.extend(theorem_jobs(radial, &lams));
    if cfg.bertrand.unwrap_or(false) {
        jobs.push(bertrand_job(radial, &lams));
    }
    let checks: Vec<Check> = jobs.par_iter().map(|job| job()).collect();
    for c in checks.iter().filter(|c| !c.pass) {
        log::warn!(
            "check {} failed: residual {:?}, tolerance {:e}",
            c.name,
            c.residual,
            c.tolerance
        );
    }
    let pass = checks.iter().all(|c| c.pass);
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json(&Report {
            potential: spec.to_string(),
            orbits: orbits.iter().map(|o| [o.xi, o.lam]).collect(),
            lambda_grid: lams.clone(),
            checks,
            pass,
        }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.to_string(),
                        c.residual.map(num).unwrap_or_default(),
                        num(c.tolerance),
                        c.pass.to_string(),
                        c.value.map(num).unwrap_or_default(),
                        c.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv(
                &["check", "residual", "tolerance", "pass", "value", "error"],
                &rows,
            )
        }
    };
    Ok((text, pass))
}

/// For potentials without closed forms: the user's energies, or one energy above the
/// circular orbit at each `Λ`.
fn generic_orbits(pot: &dyn RadialPotential, cfg: &RunConfig, lams: &[f64]) -> Vec<OrbitConstants> {
    let xis: Vec<f64> = match cfg.xi_values() {
        Some(x) => x,
        None => lams
            .iter()
            .filter_map(|&lam| invariants_from_potential(pot, lam).ok())
            .map(|inv| inv.ell + 0.3 * inv.ell.abs())
            .collect(),
    };
    xis.iter()
        .flat_map(|&xi| lams.iter().map(move |&lam| (xi, lam)))
        .filter_map(|(xi, lam)| OrbitConstants::new(xi, lam).ok())
        .filter(|&oc| isochrone::oracle::orbit_bounds(pot, oc).is_ok())
        .collect()
}
