//! Reference values. Closed-form numbers are exact; the rest were produced by the quadrature
//! oracle at tolerance 1e−13 and frozen here.

mod common;

use std::f64::consts::{PI, TAU};

use common::rel;
use isochrone::analytic::{
    apsidal_angle, frequencies, hamiltonian, orbit_elements, radial_action, radial_period,
    solve_kepler, trajectory, turning_points,
};
use isochrone::birkhoff::{
    bertrand_check, circular_abscissa, frequency_invariants, invariants_from_period,
    invariants_from_potential, isochrone_theorem_check, third_law,
};
use isochrone::oracle::{
    integrate_orbit, orbit_bounds, quad_all_with_tol, quad_apsidal_angle, ODE_TOL,
};
use isochrone::{OrbitConstants, ParabolaParams};

fn oc(xi: f64, lam: f64) -> OrbitConstants {
    OrbitConstants::new(xi, lam).unwrap()
}

#[test]
fn kepler_reference_orbit() {
    let p = ParabolaParams::kepler(1.0).unwrap();
    let o = oc(-0.5, 0.8);
    let el = orbit_elements(&p, o).unwrap();
    assert!((el.period - TAU).abs() < 1e-14);
    assert!((el.apsidal - TAU).abs() < 1e-14);
    assert!((el.action - 0.2).abs() < 1e-15);
    assert!((el.ecc - 0.6).abs() < 1e-15);
    assert!((el.alpha().unwrap() - 1.0).abs() < 1e-15);
    assert!((el.omega_r - 1.0).abs() < 1e-15);
    let (xp, xa) = turning_points(&p, o).unwrap();
    assert!((xp - 0.32).abs() < 1e-15 && (xa - 5.12).abs() < 1e-14);
    assert!((hamiltonian(&p, 0.2, 0.8).unwrap() + 0.5).abs() < 1e-15);
    let (wj, wl) = frequencies(&p, 0.2, 0.8).unwrap();
    assert!((wj - 1.0).abs() < 1e-14 && (wl / wj - 1.0).abs() < 1e-14);

    let (t, th, j) = quad_all_with_tol(&p, o, 1e-12).unwrap();
    assert!(rel(t.value, TAU) <= 1e-8 && rel(th.value, TAU) <= 1e-8 && rel(j.value, 0.2) <= 1e-8);

    let ode = integrate_orbit(&p, o, TAU, ODE_TOL).unwrap();
    let last = ode.last().unwrap();
    assert!((last.r - 0.4).abs() < 1e-7 && (last.theta - TAU).abs() < 1e-7);
}

#[test]
fn harmonic_reference_values() {
    let p = ParabolaParams::harmonic(2.0).unwrap();
    assert_eq!(p.latin(), [-1.0, 0.0, 0.0, -4.0, 0.0]);
    assert!((radial_period(&p, 1.7).unwrap() - PI).abs() < 1e-15);
    assert!((apsidal_angle(&p, 0.3).unwrap() - PI).abs() < 1e-15);
    // H = 2J + Λ
    assert!((hamiltonian(&p, 0.7, 1.1).unwrap() - 2.5).abs() < 1e-14);
    let (wj, wl) = frequencies(&p, 0.7, 1.1).unwrap();
    assert!((wj - 2.0).abs() < 1e-15 && (wl / wj - 0.5).abs() < 1e-15);
    let (xp, xa) = turning_points(&p, oc(1.0, 1.0)).unwrap();
    assert!((xp - 2.0).abs() < 1e-7 && (xa - 2.0).abs() < 1e-7);
    assert!((third_law(&p, 3.0).unwrap() - PI).abs() < 1e-14);
}

#[test]
fn henon_reference_values() {
    let p = ParabolaParams::henon(1.0, 1.0).unwrap();
    assert!((radial_period(&p, -0.25).unwrap() - PI * 32f64.sqrt()).abs() < 1e-13);
    let want = PI * (1.0 + 2.0 / 8f64.sqrt());
    assert!(rel(apsidal_angle(&p, 2.0).unwrap(), want) < 1e-15);
    assert!(rel(quad_apsidal_angle(&p, oc(-0.05, 2.0)).unwrap().value, want) <= 1e-8);
    let (wj, wl) = frequencies(&p, 0.3, 2.0).unwrap();
    assert!(rel(wl / wj, 0.5 * (1.0 + 2.0 / 8f64.sqrt())) < 1e-14);
    assert!(rel(third_law(&p, -0.25).unwrap(), PI * 32f64.sqrt()) < 1e-12);
    // circular orbit with Λ = 1: ξ_c = −(3 − √5)/4, 𝔟 = √5 − 2
    let inv = invariants_from_period(&p, 1.0).unwrap();
    assert!((inv.ell + (3.0 - 5f64.sqrt()) / 4.0).abs() < 1e-15);
    assert!((inv.b_inv - (5f64.sqrt() - 2.0)).abs() < 1e-15);
    assert!(circular_abscissa(&p, 1e-4).unwrap() < 1e-3);
}

/// Frozen quadrature values `(ξ, Λ, T, Θ, J, r_p, r_a)` for the three shell classes.
#[test]
fn frozen_oracle_values() {
    let rows: [(ParabolaParams, [f64; 7]); 3] = [
        (
            ParabolaParams::henon(1.0, 1.0).unwrap(),
            [
                -0.25,
                0.5,
                17.7715317526337,
                3.90354079143772,
                0.133437155968680,
                0.819495500447568,
                2.51563652476787,
            ],
        ),
        (
            ParabolaParams::bounded(1.0, 1.0).unwrap(),
            [
                1.0,
                0.5,
                2.22144146907917,
                2.37964451574183,
                0.0736696252178676,
                0.521005383279987,
                0.989218575742123,
            ],
        ),
        (
            ParabolaParams::hollowed(1.0, 1.0).unwrap(),
            [
                -0.25,
                0.8,
                17.7715317526333,
                2.80170879204062,
                0.243763913788187,
                1.21410427087561,
                3.45918354809941,
            ],
        ),
    ];
    for (p, [xi, lam, t, th, j, rp, ra]) in rows {
        let o = oc(xi, lam);
        let el = orbit_elements(&p, o).unwrap();
        assert!(rel(el.period, t) <= 1e-12, "{p}");
        assert!(rel(el.apsidal, th) <= 1e-12, "{p}");
        assert!(rel(radial_action(&p, o).unwrap(), j) <= 1e-12, "{p}");
        assert!(
            rel(el.r_p(), rp) <= 1e-12 && rel(el.r_a(), ra) <= 1e-12,
            "{p}"
        );
        let b = orbit_bounds(&p, o).unwrap();
        assert!(rel(b.r_p, rp) <= 1e-12 && rel(b.r_a, ra) <= 1e-12, "{p}");
    }
}

#[test]
fn kepler_equation_examples() {
    assert_eq!(solve_kepler(0.6, 0.0), 0.0);
    assert!((solve_kepler(0.6, PI) - PI).abs() < 1e-15);
    let e = solve_kepler(0.6, 1.0);
    assert!((e - 0.6 * e.sin() - 1.0).abs() < 1e-15);
}

#[test]
fn trajectory_endpoints() {
    let p = ParabolaParams::kepler(1.0).unwrap();
    let s = trajectory(&p, oc(-0.5, 0.8), &[0.0, PI, TAU]).unwrap();
    assert!((s[0].r - 0.4).abs() < 1e-15 && s[0].theta == 0.0);
    assert!((s[1].r - 1.6).abs() < 1e-14 && (s[1].theta - PI).abs() < 1e-13);
    assert!((s[2].theta - TAU).abs() < 1e-10);
}

#[test]
fn birkhoff_reference_values() {
    let k = ParabolaParams::kepler(1.0).unwrap();
    let a = invariants_from_potential(&k, 1.0).unwrap();
    assert!(
        (a.ell + 0.5).abs() < 1e-15
            && (a.b_inv - 1.0).abs() < 1e-15
            && (a.big_b_inv + 3.0).abs() < 1e-12
    );

    let grid = [0.5, 0.8, 1.0, 1.5, 2.0];
    let fit = bertrand_check(&k, &grid).unwrap();
    assert!((fit.q_fit - 1.0).abs() <= 1e-6 && fit.residual <= 1e-6);
    let fit = bertrand_check(&ParabolaParams::harmonic(2.0).unwrap(), &grid).unwrap();
    assert!((fit.q_fit - 0.5).abs() <= 1e-6 && fit.residual <= 1e-6);
    let he = ParabolaParams::henon(1.0, 1.0).unwrap();
    assert!(bertrand_check(&he, &grid).unwrap().residual > 1e-3);

    let rep = isochrone_theorem_check(&he, &[0.5, 1.0, 2.0]).unwrap();
    assert!(rep.max_birkhoff_residual() <= 1e-6 && rep.max_parabola_residual() <= 1e-10);
    let rep =
        isochrone_theorem_check(&ParabolaParams::harmonic(2.0).unwrap(), &[0.5, 1.0, 2.0]).unwrap();
    assert!(rep.max_birkhoff_residual() <= 1e-12 && rep.max_parabola_residual() == 0.0);

    // Hénon has torsion; the value is stable under a step refinement
    let f = frequency_invariants(&he, 0.1, 1.0).unwrap();
    assert!(f.t_inv.abs() > 1e-4);
    assert!((f.t_inv + 0.0121471385147).abs() < 1e-8);
    for p in [k, ParabolaParams::harmonic(2.0).unwrap()] {
        let f = frequency_invariants(&p, 0.1, 1.0).unwrap();
        assert!(
            f.j_inv.abs() <= 1e-6 && f.t_inv.abs() <= 1e-6 && f.g_inv.abs() <= 1e-6,
            "{p}: {f:?}"
        );
    }
}
