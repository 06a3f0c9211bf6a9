#![allow(dead_code)]

use isochrone::oracle::admissible_lambda_grid;
use isochrone::{OrbitConstants, ParabolaParams};

pub struct Case {
    pub name: &'static str,
    pub params: ParabolaParams,
    /// Energies with bound orbits, from deep to shallow.
    pub energies: [f64; 5],
}

pub fn cases() -> Vec<Case> {
    vec![
        Case {
            name: "kepler",
            params: ParabolaParams::kepler(1.0).unwrap(),
            energies: [-0.9, -0.7, -0.5, -0.35, -0.2],
        },
        Case {
            name: "henon",
            params: ParabolaParams::henon(1.0, 1.0).unwrap(),
            energies: [-0.4, -0.3, -0.2, -0.12, -0.06],
        },
        Case {
            name: "bounded",
            params: ParabolaParams::bounded(1.0, 1.0).unwrap(),
            energies: [0.6, 0.8, 1.0, 1.5, 2.5],
        },
        Case {
            name: "hollowed",
            params: ParabolaParams::hollowed(1.0, 1.0).unwrap(),
            energies: [-0.45, -0.35, -0.25, -0.12, -0.05],
        },
        Case {
            name: "harmonic",
            params: ParabolaParams::harmonic(2.0).unwrap(),
            energies: [0.5, 1.0, 2.0, 3.0, 5.0],
        },
    ]
}

/// The non-harmonic cases only.
pub fn shell_cases() -> Vec<Case> {
    cases()
        .into_iter()
        .filter(|c| c.name != "harmonic")
        .collect()
}

/// A 5×5 grid of (ξ, Λ), with Λ spread over the admissible range at each energy.
pub fn grid(case: &Case) -> Vec<OrbitConstants> {
    let mut out = Vec::new();
    for &xi in &case.energies {
        for lam in admissible_lambda_grid(&case.params, xi, 5).unwrap() {
            out.push(OrbitConstants::new(xi, lam).unwrap());
        }
    }
    out
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
