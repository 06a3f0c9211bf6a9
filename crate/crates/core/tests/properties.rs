//! Randomised invariants over the parabola families, gauged or not.

use std::f64::consts::{PI, TAU};

use isochrone::analytic::{
    angle_of_e, apsidal_angle, frequencies, hamiltonian, orbit_elements, radial_action,
    solve_kepler, third_law_constant,
};
use isochrone::birkhoff::{
    circular_abscissa, frequency_invariants, invariants_from_period, invariants_from_potential,
};
use isochrone::{GaugeTerm, OrbitConstants, ParabolaParams, RadialPotential};
use proptest::prelude::*;

fn family(kind: u8, mu: f64, beta: f64) -> ParabolaParams {
    match kind {
        0 => ParabolaParams::kepler(mu),
        1 => ParabolaParams::henon(mu, beta),
        2 => ParabolaParams::bounded(mu, beta),
        3 => ParabolaParams::hollowed(mu, beta),
        _ => ParabolaParams::harmonic(2.0 * mu),
    }
    .unwrap()
}

prop_compose! {
    fn params()(kind in 0u8..5, mu in 0.3f64..3.0, beta in 0.3f64..3.0,
                eps in -0.5f64..0.5, lam in 0.0f64..0.5, gauged in any::<bool>()) -> ParabolaParams {
        let p = family(kind, mu, beta);
        if gauged { p.apply_gauge(GaugeTerm { eps_gauge: eps, lam_gauge: lam }).unwrap() } else { p }
    }
}

/// Interior abscissae, log-spaced from the finite end of the domain.
fn interior(p: &ParabolaParams, n: usize) -> Vec<f64> {
    let dom = p.domain();
    let (lo, hi) = if dom.hi.is_finite() {
        (dom.lo, dom.hi)
    } else {
        (dom.lo, dom.lo + 1e3)
    };
    let width = hi - lo;
    (0..n)
        .map(|k| {
            let f = 10f64.powf(-6.0 + 6.0 * (k as f64 + 0.5) / n as f64);
            if dom.hi.is_finite() {
                lo + width * 0.5 * f.min(1.0)
            } else {
                lo + width * f
            }
        })
        .collect()
}

/// A radial action a fraction of the way up the admissible range; for `b < 0` that range
/// ends where the orbit touches `x_v`.
fn action(p: &ParabolaParams, frac: f64, lam: f64) -> f64 {
    match p.vertex() {
        Some(xv) if p.b() < 0.0 => {
            let xi_c = hamiltonian(p, 0.0, lam).unwrap();
            let edge = (lam * lam + p.y_value(xv).unwrap()) / xv;
            let xi = xi_c + frac * (edge - xi_c);
            radial_action(p, OrbitConstants::new(xi, lam).unwrap()).unwrap()
        }
        _ => 2.0 * frac,
    }
}

/// Central difference in `Λ` with one Richardson step.
fn d_lambda<F: Fn(f64) -> f64>(f: F, lam: f64) -> f64 {
    let c = |h: f64| (f(lam + h) - f(lam - h)) / (2.0 * h);
    let h = 1e-3 * lam;
    (4.0 * c(0.5 * h) - c(h)) / 3.0
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parabola_identity_and_convexity(p in params()) {
        for x in interior(&p, 20) {
            let [_, y2, y3, y4] = p.y_derivatives(x).unwrap();
            let res = (3.0 * y2 * y4 - 5.0 * y3 * y3).abs();
            prop_assert!(res <= 1e-10 * (5.0 * y3 * y3).max(1.0), "x={x}: {res:e}");
            prop_assert!(y2 >= 0.0);
        }
    }

    #[test]
    fn derivatives_match_finite_differences(p in params()) {
        let dom = p.domain();
        for x in interior(&p, 8) {
            let h = 1e-3 * (x - dom.lo).min(if dom.hi.is_finite() { dom.hi - x } else { f64::INFINITY }).min(x.abs().max(1.0));
            let y = |t: f64| p.y_value(t).unwrap();
            let fd = (y(x - 2.0 * h) - 8.0 * y(x - h) + 8.0 * y(x + h) - y(x + 2.0 * h)) / (12.0 * h);
            let d1 = p.y_derivatives(x).unwrap()[0];
            prop_assert!((fd - d1).abs() <= 1e-6 * d1.abs().max(1.0), "x={x}: {fd} vs {d1}");
        }
    }

    #[test]
    fn gauge_keeps_the_class(kind in 0u8..5, mu in 0.3f64..3.0, beta in 0.3f64..3.0,
                             eps in -1.0f64..1.0, lam in -1.0f64..1.0) {
        let p = family(kind, mu, beta);
        let g = p.apply_gauge(GaugeTerm { eps_gauge: eps, lam_gauge: lam }).unwrap();
        prop_assert_eq!(g.classify().family, p.classify().family);
        prop_assert!(close(g.delta(), p.delta(), 1e-12));
    }

    #[test]
    fn greek_potentials_match_their_radial_forms(mu in 0.3f64..3.0, beta in 0.3f64..3.0) {
        let he = ParabolaParams::henon(mu, beta).unwrap();
        let bo = ParabolaParams::bounded(mu, beta).unwrap();
        let ho = ParabolaParams::hollowed(mu, beta).unwrap();
        for k in 1..=10 {
            let f = k as f64 / 11.0;
            let r = 3.0 * beta * f;
            prop_assert!(close(he.psi_value(r).unwrap(), -mu / (beta + (beta * beta + r * r).sqrt()), 1e-12));
            let r = beta * f;
            prop_assert!(close(bo.psi_value(r).unwrap(), mu / (beta + (beta * beta - r * r).sqrt()), 1e-12));
            let r = beta * (1.0 + 3.0 * f);
            prop_assert!(close(ho.psi_value(r).unwrap(), -mu * (r * r - beta * beta).sqrt() / (r * r), 1e-12));
        }
    }

    #[test]
    fn kepler_solver_residual_and_monotonicity(ecc in 0.0f64..0.99, m1 in 0.0f64..TAU, dm in 1e-6f64..1.0) {
        let e1 = solve_kepler(ecc, m1);
        prop_assert!((e1 - ecc * e1.sin() - m1).abs() <= 1e-13);
        let m2 = m1 + dm;
        let e2 = solve_kepler(ecc, m2);
        let e2 = if m2 >= TAU { e2 + TAU } else { e2 };
        prop_assert!(e2 > e1);
    }

    #[test]
    fn action_angle_identities(p in params(), frac in 0.005f64..0.95, lam in 0.1f64..2.5) {
        let j = action(&p, frac, lam);
        let xi = hamiltonian(&p, j, lam).unwrap();
        let oc = OrbitConstants::new(xi, lam).unwrap();
        let el = orbit_elements(&p, oc).unwrap();
        // H(J(ξ, Λ), Λ) = ξ
        prop_assert!(close(radial_action(&p, oc).unwrap(), j, 1e-8));
        prop_assert!(close(el.omega_r * el.period, TAU, 1e-12));
        let (wj, wl) = frequencies(&p, j, lam).unwrap();
        prop_assert!(close(wl / wj, el.apsidal / TAU, 1e-10));
        prop_assert!(close(wj, el.omega_r, 1e-10));
        prop_assert!(close(angle_of_e(&p, oc, &el, PI), 0.5 * el.apsidal, 1e-10));
        if let (Some(k), Some(a)) = (third_law_constant(&p), el.alpha()) {
            prop_assert!(close(el.omega_r * el.omega_r * a.powi(3), k, 1e-12));
        }
        prop_assert!(close(apsidal_angle(&p, lam).unwrap(), el.apsidal, 1e-14));
    }

    #[test]
    fn birkhoff_routes_agree(p in params(), lam in 0.1f64..2.5) {
        let a = invariants_from_potential(&p, lam).unwrap();
        let b = invariants_from_period(&p, lam).unwrap();
        prop_assert!((a.ell - b.ell).abs() <= 1e-10 * a.ell.abs().max(1.0));
        prop_assert!((a.b_inv - b.b_inv).abs() <= 1e-10 * a.b_inv);
        prop_assert!((a.big_b_inv - b.big_b_inv).abs() <= 1e-6 * a.big_b_inv.abs().max(1.0));
        // for isochrones the second term of 𝔅 vanishes
        let xc = circular_abscissa(&p, lam).unwrap();
        let [_, y2, y3, _] = p.y_derivatives(xc).unwrap();
        prop_assert!((a.big_b_inv - 4.0 * y3 / y2).abs() <= 1e-8 * a.big_b_inv.abs().max(1.0));
    }

    #[test]
    fn circular_abscissa_derivatives(p in params(), lam in 0.1f64..2.5) {
        let xc = |l: f64| circular_abscissa(&p, l).unwrap();
        let dxc = d_lambda(xc, lam);
        let x = xc(lam);
        let y2 = p.y_derivatives(x).unwrap()[1];
        prop_assert!(close(dxc * x * y2, 2.0 * lam, 1e-8));
        let xi_c = |l: f64| hamiltonian(&p, 0.0, l).unwrap();
        let dxi = d_lambda(xi_c, lam);
        prop_assert!(close(dxi, dxc * y2, 1e-8));
    }

    #[test]
    fn isochrones_have_vanishing_j_invariant(p in params(), frac in 0.025f64..0.9, lam in 0.2f64..2.5) {
        let j = action(&p, frac, lam);
        let f = frequency_invariants(&p, j, lam).unwrap();
        prop_assert!(f.j_inv.abs() <= 1e-6, "{f:?}");
        // Bertrand implies isochrone
        if f.t_inv.abs() <= 1e-6 && f.g_inv.abs() <= 1e-6 {
            prop_assert!(f.j_inv.abs() <= 1e-6);
        }
    }
}

#[test]
fn parabola_is_a_radial_potential() {
    let p = ParabolaParams::henon(1.0, 1.0).unwrap();
    let pot: &dyn RadialPotential = &p;
    assert_eq!(pot.y(2.0).unwrap(), p.y_value(2.0).unwrap());
}
