//! `classify`, `elements`, `orbit` and `table`.

use std::f64::consts::TAU;

use isochrone::analytic::{orbit_elements, trajectory};
use isochrone::birkhoff::{circular_abscissa, invariants_from_period, invariants_from_potential};
use isochrone::{GreekParams, IsochroneError, OrbitConstants, RadialPotential};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, Potential, RunConfig};
use crate::exit::{code_of, Failure};
use crate::output::{csv, json, num};

/// Removes the sign of zero so that `0` never prints as `-0`.
fn clean(v: f64) -> f64 {
    v + 0.0
}

#[derive(Serialize)]
struct ClassReport {
    class: String,
    kepler_degenerate: bool,
    latin: Option<[f64; 5]>,
    delta: Option<f64>,
    x_v: Option<f64>,
    domain: [Option<f64>; 2],
    greek: Option<serde_json::Value>,
    name: Option<String>,
}

pub fn classify(cfg: &RunConfig) -> Result<String, Failure> {
    let pot = cfg.potential()?;
    let dom = pot.radial().x_domain();
    let domain = [Some(dom.lo), dom.hi.is_finite().then_some(dom.hi)];
    let Potential::Parabola { params: p, named } = &pot else {
        let Potential::Generic(g) = &pot else {
            unreachable!()
        };
        return Ok(match cfg.format() {
            Format::Json => json(&ClassReport {
                class: "Generic".into(),
                kepler_degenerate: false,
                latin: None,
                delta: None,
                x_v: None,
                domain,
                greek: None,
                name: Some(g.name().into()),
            }),
            Format::Csv => format!("Generic ({}), not a parabola, domain={dom}\n", g.name()),
        });
    };
    let class = p.classify();
    let latin = p.latin().map(clean);
    let x_v = p.vertex().map(clean);
    let greek = match p.greek() {
        GreekParams::Harmonic { omega } => serde_json::json!({ "omega": omega }),
        GreekParams::Scaled { mu, beta } => serde_json::json!({ "mu": mu, "beta": beta }),
    };
    if cfg.format() == Format::Json {
        return Ok(json(&ClassReport {
            class: class.to_string(),
            kepler_degenerate: class.kepler_degenerate,
            latin: Some(latin),
            delta: Some(p.delta()),
            x_v,
            domain,
            greek: Some(greek),
            name: None,
        }));
    }
    let tuple = format!("latin={p}");
    let invariants = format!(
        "delta={}, x_v={}",
        clean(p.delta()),
        x_v.map_or_else(|| "none".to_string(), |v| v.to_string())
    );
    let greek_text = match p.greek() {
        GreekParams::Harmonic { omega } => format!("omega={omega}"),
        GreekParams::Scaled { mu, beta } => format!("mu={mu}, beta={beta}"),
    };
    // lead with whatever the user did not type in
    let (first, second) = if *named {
        (tuple, invariants)
    } else {
        (invariants, tuple)
    };
    Ok(format!(
        "{class}, {first}\n{second}\ndomain={dom}\n{greek_text}\n"
    ))
}

#[derive(Serialize)]
struct ElementsRow {
    xi: f64,
    lambda: f64,
    #[serde(rename = "T")]
    period: Option<f64>,
    #[serde(rename = "Theta")]
    apsidal: Option<f64>,
    #[serde(rename = "J")]
    action: Option<f64>,
    #[serde(rename = "Omega")]
    omega: Option<f64>,
    ecc: Option<f64>,
    alpha: Option<f64>,
    x_p: Option<f64>,
    x_a: Option<f64>,
    error: Option<String>,
}

pub fn elements(cfg: &RunConfig) -> Result<String, Failure> {
    let pot = cfg.potential()?;
    let p = *pot
        .parabola()
        .ok_or_else(|| Failure::invalid("elements needs a parabola potential"))?;
    let xis = cfg
        .xi_values()
        .ok_or_else(|| Failure::invalid("elements needs --xi or --xi-grid"))?;
    let lams = cfg
        .lambda_values()
        .ok_or_else(|| Failure::invalid("elements needs --lambda or --lambda-grid"))?;
    let points: Vec<(f64, f64)> = xis
        .iter()
        .flat_map(|&x| lams.iter().map(move |&l| (x, l)))
        .collect();
    let results: Vec<(ElementsRow, Option<IsochroneError>)> = points
        .par_iter()
        .map(|&(xi, lam)| {
            let el = OrbitConstants::new(xi, lam).and_then(|oc| orbit_elements(&p, oc));
            match el {
                Ok(el) => (
                    ElementsRow {
                        xi,
                        lambda: lam,
                        period: Some(el.period),
                        apsidal: Some(el.apsidal),
                        action: Some(el.action),
                        omega: Some(el.omega_r),
                        ecc: Some(el.ecc),
                        alpha: el.alpha(),
                        x_p: Some(el.x_p),
                        x_a: Some(el.x_a),
                        error: None,
                    },
                    None,
                ),
                Err(e) => {
                    log::info!("xi = {xi}, lambda = {lam}: {e}");
                    (
                        ElementsRow {
                            xi,
                            lambda: lam,
                            period: None,
                            apsidal: None,
                            action: None,
                            omega: None,
                            ecc: None,
                            alpha: None,
                            x_p: None,
                            x_a: None,
                            error: Some(e.to_string()),
                        },
                        Some(e),
                    )
                }
            }
        })
        .collect();
    if let Some(e) = results
        .iter()
        .all(|r| r.1.is_some())
        .then(|| results[0].1.clone())
        .flatten()
    {
        return Err(Failure {
            code: code_of(&e),
            message: format!("no grid point has a bound orbit; first: {e}"),
        });
    }
    let rows: Vec<ElementsRow> = results.into_iter().map(|r| r.0).collect();
    Ok(match cfg.format() {
        Format::Json => json(&rows),
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        num(r.xi),
                        num(r.lambda),
                        opt(r.period),
                        opt(r.apsidal),
                        opt(r.action),
                        opt(r.omega),
                        opt(r.ecc),
                        opt(r.alpha),
                        opt(r.x_p),
                        opt(r.x_a),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv(
                &[
                    "xi", "lambda", "T", "Theta", "J", "Omega", "ecc", "alpha", "x_p", "x_a",
                    "error",
                ],
                &table,
            )
        }
    })
}

#[derive(Serialize)]
struct OrbitRow {
    t: f64,
    #[serde(rename = "E")]
    e: f64,
    x: f64,
    r: f64,
    theta: f64,
    #[serde(rename = "zJ")]
    z_j: f64,
    #[serde(rename = "zLambda")]
    z_lambda: f64,
}

pub fn orbit(cfg: &RunConfig) -> Result<String, Failure> {
    let pot = cfg.potential()?;
    let p = *pot
        .parabola()
        .ok_or_else(|| Failure::invalid("orbit needs a parabola potential"))?;
    let (xi, lam) = cfg.single_orbit()?;
    let oc = OrbitConstants::new(xi, lam)?;
    let samples = cfg.samples.unwrap_or(101);
    let periods = cfg.periods.unwrap_or(1.0);
    if samples == 0 || !(periods.is_finite() && periods > 0.0) {
        return Err(Failure::invalid(
            "--samples must be at least 1 and --periods positive",
        ));
    }
    let el = orbit_elements(&p, oc)?;
    let span = periods * el.period;
    let times: Vec<f64> = (0..samples)
        .map(|k| {
            if samples == 1 {
                0.0
            } else if k + 1 == samples {
                span
            } else {
                span * k as f64 / (samples - 1) as f64
            }
        })
        .collect();
    let rows: Vec<OrbitRow> = trajectory(&p, oc, &times)?
        .into_iter()
        .map(|s| OrbitRow {
            t: s.t,
            e: s.e_anom + TAU * s.cycle as f64,
            x: s.x,
            r: s.r,
            theta: s.theta,
            z_j: s.z_j,
            z_lambda: s.z_lambda,
        })
        .collect();
    Ok(match cfg.format() {
        Format::Json => json(&rows),
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    [r.t, r.e, r.x, r.r, r.theta, r.z_j, r.z_lambda]
                        .into_iter()
                        .map(num)
                        .collect()
                })
                .collect();
            csv(&["t", "E", "x", "r", "theta", "zJ", "zLambda"], &table)
        }
    })
}

#[derive(Serialize)]
struct TableRow {
    lambda: f64,
    x_c: Option<f64>,
    ell: Option<f64>,
    b: Option<f64>,
    #[serde(rename = "B")]
    big_b: Option<f64>,
    ell_period: Option<f64>,
    b_period: Option<f64>,
    #[serde(rename = "B_period")]
    big_b_period: Option<f64>,
    parabola_residual: Option<f64>,
    error: Option<String>,
}

fn table_row(pot: &Potential, lam: f64) -> TableRow {
    let radial: &dyn RadialPotential = pot.radial();
    let mut row = TableRow {
        lambda: lam,
        x_c: None,
        ell: None,
        b: None,
        big_b: None,
        ell_period: None,
        b_period: None,
        big_b_period: None,
        parabola_residual: None,
        error: None,
    };
    let res = (|| -> Result<(), IsochroneError> {
        let xc = circular_abscissa(radial, lam)?;
        row.x_c = Some(xc);
        let a = invariants_from_potential(radial, lam)?;
        (row.ell, row.b, row.big_b) = (Some(a.ell), Some(a.b_inv), Some(a.big_b_inv));
        let [_, y2, y3, y4] = radial.y_derivatives(xc)?;
        let (t1, t2) = (3.0 * y2 * y4, 5.0 * y3 * y3);
        let scale = t1.abs().max(t2);
        row.parabola_residual = Some(if scale > 0.0 {
            (t1 - t2).abs() / scale
        } else {
            0.0
        });
        if let Some(p) = pot.parabola() {
            let b = invariants_from_period(p, lam)?;
            (row.ell_period, row.b_period, row.big_b_period) =
                (Some(b.ell), Some(b.b_inv), Some(b.big_b_inv));
        }
        Ok(())
    })();
    if let Err(e) = res {
        row.error = Some(e.to_string());
    }
    row
}

pub fn table(cfg: &RunConfig) -> Result<String, Failure> {
    let pot = cfg.potential()?;
    let lams = cfg
        .lambda_values()
        .unwrap_or_else(|| (1..=10).map(|k| 0.25 * k as f64).collect());
    let rows: Vec<TableRow> = lams.par_iter().map(|&l| table_row(&pot, l)).collect();
    if rows.iter().all(|r| r.error.is_some()) {
        return Err(Failure {
            code: crate::exit::NO_BOUND_ORBIT,
            message: format!(
                "no circular orbit on the lambda grid; first: {}",
                rows[0].error.as_deref().unwrap_or("")
            ),
        });
    }
    Ok(match cfg.format() {
        Format::Json => json(&rows),
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        num(r.lambda),
                        opt(r.x_c),
                        opt(r.ell),
                        opt(r.b),
                        opt(r.big_b),
                        opt(r.ell_period),
                        opt(r.b_period),
                        opt(r.big_b_period),
                        opt(r.parabola_residual),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv(
                &[
                    "lambda",
                    "x_c",
                    "ell",
                    "b",
                    "B",
                    "ell_period",
                    "b_period",
                    "B_period",
                    "parabola_residual",
                    "error",
                ],
                &table,
            )
        }
    })
}
