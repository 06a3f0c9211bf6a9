//! Birkhoff invariants of the circular orbits and the checks built on them.
//!
//! Near the circular orbit of angular momentum `Λ` the Hamiltonian reads
//! `𝔩 + 𝔟ρ + ½𝔅ρ² + …` in the radial action `ρ`. The coefficients can be read off the
//! potential at the circular radius or off the period function `T(ξ)`; for an isochrone the
//! two must agree.

use std::f64::consts::{PI, TAU};

use crate::analytic::{frequencies, hamiltonian, radial_period};
use crate::error::{IsochroneError, Result};
use crate::potential::{ParabolaParams, RadialPotential};
use crate::roots::newton_bracketed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    FromPotential,
    FromPeriod,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BirkhoffInvariants {
    /// `𝔩`: energy of the circular orbit.
    pub ell: f64,
    /// `𝔟`: radial frequency of the circular orbit.
    pub b_inv: f64,
    /// `𝔅`: second-order coefficient.
    pub big_b_inv: f64,
    pub route: Route,
}

/// Wedge products of the frequency map `ω(J, Λ)` and its partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyInvariants {
    /// `∂_J ω ∧ ω`; zero exactly for isochrones.
    pub j_inv: f64,
    /// `ω ∧ ∂_Λ ω`.
    pub g_inv: f64,
    /// Torsion `∂_J ω ∧ ∂_Λ ω`.
    pub t_inv: f64,
}

/// Solves `g(x) = 0` for increasing `g` strictly inside the domain of `pot`; `g` returns
/// `(value, slope)`. Endpoints are approached geometrically because derivatives of `Y` may be
/// singular there.
fn solve_increasing<G>(pot: &dyn RadialPotential, g: G, fail: IsochroneError) -> Result<f64>
where
    G: Fn(f64) -> Result<(f64, f64)>,
{
    let dom = pot.x_domain();
    let width = if dom.hi.is_finite() {
        0.5 * (dom.hi - dom.lo)
    } else {
        dom.lo.abs().max(1.0)
    };
    let val = |x: f64| g(x).map(|v| v.0).ok().filter(|v| v.is_finite());

    let mut lo = None;
    for k in 0..1100 {
        let x = dom.lo + width * 0.5f64.powi(k);
        if x <= dom.lo {
            break;
        }
        if let Some(v) = val(x) {
            if v < 0.0 {
                lo = Some(x);
                break;
            }
        }
    }
    let mut hi = None;
    for k in 0..1100 {
        let x = if dom.hi.is_finite() {
            dom.hi - width * 0.5f64.powi(k)
        } else {
            dom.lo + width * 2f64.powi(k - 1)
        };
        if dom.hi.is_finite() && x >= dom.hi || x.is_infinite() {
            break;
        }
        if let Some(v) = val(x) {
            if v > 0.0 {
                hi = Some(x);
                break;
            }
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(fail);
    };
    if lo >= hi {
        return Err(fail);
    }
    newton_bracketed(&g, lo, hi, 0.5 * (lo + hi))
}

/// Hénon abscissa of the circular orbit: `x_c Y′(x_c) − Y(x_c) = Λ²`.
pub fn circular_abscissa(pot: &dyn RadialPotential, lam: f64) -> Result<f64> {
    if !(lam > 0.0) {
        return Err(IsochroneError::NoCircularOrbit(format!(
            "lambda = {lam} must be positive"
        )));
    }
    let l2 = lam * lam;
    let g = |x: f64| -> Result<(f64, f64)> {
        let y = pot.y(x)?;
        let d = pot.y_derivatives(x)?;
        Ok((x * d[0] - y - l2, x * d[1]))
    };
    let fail =
        IsochroneError::NoCircularOrbit(format!("lambda^2 = {l2} is outside the range of xY' - Y"));
    solve_increasing(pot, g, fail)
}

/// `𝔩 = Y′`, `𝔟 = √(8Y″)`, `𝔅 = 4Y‴/Y″ + (x_c/3Y″²)(3Y″Y⁗ − 5Y‴²)` at `x_c(Λ)`.
pub fn invariants_from_potential(
    pot: &dyn RadialPotential,
    lam: f64,
) -> Result<BirkhoffInvariants> {
    let xc = circular_abscissa(pot, lam)?;
    let [y1, y2, y3, y4] = pot.y_derivatives(xc)?;
    if !(y2 > 0.0) {
        return Err(IsochroneError::SingularPoint { x: xc });
    }
    Ok(BirkhoffInvariants {
        ell: y1,
        b_inv: (8.0 * y2).sqrt(),
        big_b_inv: 4.0 * y3 / y2 + xc / (3.0 * y2 * y2) * (3.0 * y2 * y4 - 5.0 * y3 * y3),
        route: Route::FromPotential,
    })
}

/// `𝔩 = ξ_c = H(0, Λ)`, `𝔟 = 2π/T(ξ_c)`, `𝔅 = −4π²T′(ξ_c)/T(ξ_c)³`.
pub fn invariants_from_period(p: &ParabolaParams, lam: f64) -> Result<BirkhoffInvariants> {
    let xi_c = hamiltonian(p, 0.0, lam)?;
    let t = radial_period(p, xi_c)?;
    let big_b = if p.b() == 0.0 {
        0.0
    } else {
        let dt = -1.5 * p.b() * t / (p.a() + p.b() * xi_c);
        -4.0 * PI * PI * dt / t.powi(3)
    };
    Ok(BirkhoffInvariants {
        ell: xi_c,
        b_inv: TAU / t,
        big_b_inv: big_b,
        route: Route::FromPeriod,
    })
}

/// Per-`Λ` residuals of the isochrone theorem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremRow {
    pub lam: f64,
    /// `|𝔅 𝔩′ − 𝔟 𝔟′| / (|𝔅 𝔩′| + |𝔟 𝔟′|)`, derivatives by central differences in `Λ`.
    pub birkhoff_residual: f64,
    /// `|3Y₂Y₄ − 5Y₃²| / max(|3Y₂Y₄|, 5Y₃²)` at `x_c(Λ)`; zero when both terms vanish.
    pub parabola_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub rows: Vec<TheoremRow>,
}

/// Tolerance on the finite-difference Birkhoff residual.
pub const BIRKHOFF_FD_TOL: f64 = 1e-6;
/// Tolerance on the parabola residual with closed-form derivatives.
pub const PARABOLA_TOL: f64 = 1e-10;

impl TheoremReport {
    pub fn max_birkhoff_residual(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.birkhoff_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_parabola_residual(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.parabola_residual)
            .fold(0.0, f64::max)
    }

    pub fn holds(&self, birkhoff_tol: f64, parabola_tol: f64) -> bool {
        self.max_birkhoff_residual() <= birkhoff_tol && self.max_parabola_residual() <= parabola_tol
    }
}

fn lambda_derivative<F>(f: F, lam: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = 1e-4 * lam;
    Ok((f(lam + h)? - f(lam - h)?) / (2.0 * h))
}

pub fn isochrone_theorem_check(
    pot: &dyn RadialPotential,
    lam_grid: &[f64],
) -> Result<TheoremReport> {
    let mut rows = Vec::with_capacity(lam_grid.len());
    for &lam in lam_grid {
        let inv = invariants_from_potential(pot, lam)?;
        let dl = lambda_derivative(|l| Ok(invariants_from_potential(pot, l)?.ell), lam)?;
        let db = lambda_derivative(|l| Ok(invariants_from_potential(pot, l)?.b_inv), lam)?;
        let lhs = inv.big_b_inv * dl;
        let rhs = inv.b_inv * db;
        let scale = lhs.abs() + rhs.abs();
        let birkhoff_residual = if scale > 0.0 {
            (lhs - rhs).abs() / scale
        } else {
            0.0
        };

        let xc = circular_abscissa(pot, lam)?;
        let [_, y2, y3, y4] = pot.y_derivatives(xc)?;
        let t1 = 3.0 * y2 * y4;
        let t2 = 5.0 * y3 * y3;
        let scale = t1.abs().max(t2);
        let parabola_residual = if scale > 0.0 {
            (t1 - t2).abs() / scale
        } else {
            0.0
        };
        rows.push(TheoremRow {
            lam,
            birkhoff_residual,
            parabola_residual,
        });
    }
    Ok(TheoremReport { rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BertrandFit {
    /// Least-squares `Q` in `d𝔩/dΛ = Q 𝔟`.
    pub q_fit: f64,
    /// Largest relative deviation of the pointwise ratio from `q_fit`.
    pub residual: f64,
}

pub fn bertrand_check(pot: &dyn RadialPotential, lam_grid: &[f64]) -> Result<BertrandFit> {
    if lam_grid.is_empty() {
        return Err(IsochroneError::InvalidParams("empty lambda grid".into()));
    }
    let mut pairs = Vec::with_capacity(lam_grid.len());
    for &lam in lam_grid {
        let b = invariants_from_potential(pot, lam)?.b_inv;
        let dl = lambda_derivative(|l| Ok(invariants_from_potential(pot, l)?.ell), lam)?;
        pairs.push((dl, b));
    }
    let num: f64 = pairs.iter().map(|(dl, b)| dl * b).sum();
    let den: f64 = pairs.iter().map(|(_, b)| b * b).sum();
    let q = num / den;
    let residual = pairs
        .iter()
        .map(|(dl, b)| ((dl / b - q) / q).abs())
        .fold(0.0, f64::max);
    Ok(BertrandFit { q_fit: q, residual })
}

/// Radial period from the circular orbit of energy `ξ`: `T = π/√(2Y″(x_c))` with `Y′(x_c) = ξ`.
pub fn third_law(pot: &dyn RadialPotential, xi: f64) -> Result<f64> {
    let g = |x: f64| -> Result<(f64, f64)> {
        let d = pot.y_derivatives(x)?;
        Ok((d[0] - xi, d[1]))
    };
    let fail = IsochroneError::NoCircularOrbit(format!("energy {xi} is outside the range of Y'"));
    let xc = solve_increasing(pot, g, fail)?;
    let y2 = pot.y_derivatives(xc)?[1];
    Ok(PI / (2.0 * y2).sqrt())
}

/// `𝒥`, `𝒢`, `𝒯` by central differences with steps `1e−5·max(1, |J|)` and `1e−5·Λ`.
/// Close to `J = 0` the `J`-derivative switches to a one-sided second-order stencil. Steps
/// shrink tenfold (up to three times) when a stencil point has no bound orbit, which happens
/// near the edge of the `b < 0` family.
pub fn frequency_invariants(p: &ParabolaParams, j: f64, lam: f64) -> Result<FrequencyInvariants> {
    let w = frequencies(p, j, lam)?;
    let mut shrink = 1.0;
    loop {
        match stencil(p, j, lam, w, shrink) {
            Err(IsochroneError::NoBoundOrbit(_)) if shrink > 1e-3 => shrink *= 0.1,
            other => return other,
        }
    }
}

fn stencil(
    p: &ParabolaParams,
    j: f64,
    lam: f64,
    w: (f64, f64),
    shrink: f64,
) -> Result<FrequencyInvariants> {
    let hj = shrink * 1e-5 * j.abs().max(1.0);
    let hl = shrink * 1e-5 * lam;
    let dj = if j >= hj {
        let (a, b) = (frequencies(p, j + hj, lam)?, frequencies(p, j - hj, lam)?);
        ((a.0 - b.0) / (2.0 * hj), (a.1 - b.1) / (2.0 * hj))
    } else {
        let (a, b) = (
            frequencies(p, j + hj, lam)?,
            frequencies(p, j + 2.0 * hj, lam)?,
        );
        (
            (-3.0 * w.0 + 4.0 * a.0 - b.0) / (2.0 * hj),
            (-3.0 * w.1 + 4.0 * a.1 - b.1) / (2.0 * hj),
        )
    };
    let (a, b) = (frequencies(p, j, lam + hl)?, frequencies(p, j, lam - hl)?);
    let dl = ((a.0 - b.0) / (2.0 * hl), (a.1 - b.1) / (2.0 * hl));
    let wedge = |u: (f64, f64), v: (f64, f64)| u.0 * v.1 - u.1 * v.0;
    Ok(FrequencyInvariants {
        j_inv: wedge(dj, w),
        g_inv: wedge(w, dl),
        t_inv: wedge(dj, dl),
    })
}
