//! Closed-form orbit theory for parabola potentials.
//!
//! Everything here follows from the five Latin coefficients; nothing is integrated numerically.
//! The harmonic family (`b = 0`) has its own branch wherever the general formulas divide by `b`.

mod kepler;
mod trajectory;

pub use kepler::solve_kepler;
pub use trajectory::{
    angle_of_e, angle_of_e_with_residual, radius_of_e, trajectory, TrajectorySample,
};

use std::f64::consts::PI;

use crate::error::{IsochroneError, Result};
use crate::potential::ParabolaParams;

/// Energy `ξ` and angular momentum `Λ` of a particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConstants {
    pub xi: f64,
    pub lam: f64,
}

impl OrbitConstants {
    pub fn new(xi: f64, lam: f64) -> Result<Self> {
        if !xi.is_finite() || !lam.is_finite() || lam < 0.0 {
            return Err(IsochroneError::InvalidParams(format!(
                "need finite xi and lambda >= 0 (xi = {xi}, lambda = {lam})"
            )));
        }
        Ok(OrbitConstants { xi, lam })
    }
}

/// Per-orbit quantities. `alpha2`, `x_v` and `zeta2` are `None` for the harmonic family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitElements {
    /// Radial frequency `Ω = 2π/T`.
    pub omega_r: f64,
    /// Eccentricity in `[0, 1)`. For the harmonic family this is `√(1 − x_p/x_a)`.
    pub ecc: f64,
    /// Semi-major axis squared, carrying the sign of `b`.
    pub alpha2: Option<f64>,
    pub x_v: Option<f64>,
    /// `ζ² = −x_v/(2α²)`; negative for hollowed potentials.
    pub zeta2: Option<f64>,
    pub period: f64,
    pub apsidal: f64,
    pub action: f64,
    pub x_p: f64,
    pub x_a: f64,
}

impl OrbitElements {
    pub fn r_p(&self) -> f64 {
        (0.5 * self.x_p).sqrt()
    }

    pub fn r_a(&self) -> f64 {
        (0.5 * self.x_a).sqrt()
    }

    /// `α = √|α²|`.
    pub fn alpha(&self) -> Option<f64> {
        self.alpha2.map(|a| a.abs().sqrt())
    }

    /// Eccentricity with the sign of `b`, as it enters `x(E)` and the Kepler equation.
    pub(crate) fn signed_ecc(&self) -> f64 {
        match self.alpha2 {
            Some(a2) if a2 < 0.0 => -self.ecc,
            _ => self.ecc,
        }
    }
}

pub(crate) const CIRCULAR_ECC: f64 = 1e-12;

fn harmonic_abs_a(p: &ParabolaParams) -> f64 {
    p.a().abs()
}

/// `a + bξ`, which must be negative for a bound orbit when `b ≠ 0`.
fn binding(p: &ParabolaParams, xi: f64) -> Result<f64> {
    let v = p.a() + p.b() * xi;
    if v >= 0.0 || !v.is_finite() {
        return Err(IsochroneError::UnboundOrbit { value: v });
    }
    Ok(v)
}

/// Radial period `T(ξ)`; independent of `Λ`.
pub fn radial_period(p: &ParabolaParams, xi: f64) -> Result<f64> {
    if p.b() == 0.0 {
        return Ok(0.5 * PI * (-p.d()).sqrt() / harmonic_abs_a(p));
    }
    let s = binding(p, xi)?;
    Ok(0.5 * PI * (-p.delta() / (s * s * s)).sqrt())
}

fn d_of_lambda(p: &ParabolaParams, lam: f64) -> f64 {
    let (b, d, e) = (p.b(), p.d(), p.e());
    let l2 = lam * lam;
    b * b * l2 * l2 - d * l2 + e
}

/// Apsidal angle `Θ(Λ)`: polar advance over one radial period; independent of `ξ`.
pub fn apsidal_angle(p: &ParabolaParams, lam: f64) -> Result<f64> {
    if !(lam > 0.0) {
        return Err(IsochroneError::InvalidParams(format!(
            "lambda must be positive (got {lam})"
        )));
    }
    let dd = d_of_lambda(p, lam);
    if dd <= 0.0 {
        return Err(IsochroneError::InvalidParams(format!(
            "b^2 L^4 - d L^2 + e = {dd} must be positive"
        )));
    }
    let (b, d) = (p.b(), p.d());
    let ratio = (2.0 * b * b * lam * lam - d) / dd + 2.0 * b / dd.sqrt();
    if ratio <= 0.0 {
        return Err(IsochroneError::InvalidParams(format!(
            "apsidal angle squared is not positive ({ratio})"
        )));
    }
    Ok(PI * lam * ratio.sqrt())
}

/// `R(Λ)` and `R′(Λ)` for `b ≠ 0`.
fn r_of_lambda(p: &ParabolaParams, lam: f64) -> Result<(f64, f64)> {
    let (b, d) = (p.b(), p.d());
    let dd = d_of_lambda(p, lam);
    if dd <= 0.0 {
        return Err(IsochroneError::InvalidParams(format!(
            "b^2 L^4 - d L^2 + e = {dd} must be positive"
        )));
    }
    let sd = dd.sqrt();
    let r2 = 2.0 * b * b * lam * lam - d + 2.0 * b * sd;
    if r2 <= 0.0 {
        return Err(IsochroneError::InvalidParams(format!(
            "R(lambda)^2 = {r2} must be positive"
        )));
    }
    let r = r2.sqrt();
    let dr = (2.0 * b * b * lam + b * (2.0 * b * b * lam.powi(3) - d * lam) / sd) / r;
    Ok((r, dr))
}

/// `√(Λ² − e/d)`, the harmonic counterpart of `R`.
fn harmonic_root(p: &ParabolaParams, lam: f64) -> Result<f64> {
    let v = lam * lam - p.e() / p.d();
    if v <= 0.0 {
        return Err(IsochroneError::InvalidParams(format!(
            "lambda^2 - e/d = {v} must be positive"
        )));
    }
    Ok(v.sqrt())
}

/// Radial action `J(ξ, Λ)`.
pub fn radial_action(p: &ParabolaParams, oc: OrbitConstants) -> Result<f64> {
    turning_points(p, oc)?;
    let j = if p.b() == 0.0 {
        let aa = harmonic_abs_a(p);
        let sd = (-p.d()).sqrt();
        sd / (4.0 * aa) * (oc.xi + p.c() / p.d()) - 0.5 * harmonic_root(p, oc.lam)?
    } else {
        let b = p.b();
        let s = binding(p, oc.xi)?;
        let (r, _) = r_of_lambda(p, oc.lam)?;
        ((-p.delta() / s).sqrt() - r) / (2.0 * b)
    };
    Ok(j.max(0.0))
}

fn check_action_args(j: f64, lam: f64) -> Result<()> {
    if !(j >= 0.0) || !(lam > 0.0) || !j.is_finite() || !lam.is_finite() {
        return Err(IsochroneError::InvalidParams(format!(
            "need J >= 0 and lambda > 0 (J = {j}, lambda = {lam})"
        )));
    }
    Ok(())
}

/// `2bJ + R(Λ)` with its positivity check.
fn shifted_r(p: &ParabolaParams, j: f64, lam: f64) -> Result<(f64, f64)> {
    let (r, dr) = r_of_lambda(p, lam)?;
    let w = 2.0 * p.b() * j + r;
    if w <= 0.0 {
        return Err(IsochroneError::NoBoundOrbit(format!(
            "2bJ + R = {w} must be positive (J = {j})"
        )));
    }
    Ok((w, dr))
}

/// Hamiltonian `H(J, Λ)`, the inverse of [`radial_action`] in `ξ`.
pub fn hamiltonian(p: &ParabolaParams, j: f64, lam: f64) -> Result<f64> {
    check_action_args(j, lam)?;
    if p.b() == 0.0 {
        let k = harmonic_abs_a(p) / (-p.d()).sqrt();
        return Ok(-p.c() / p.d() + 4.0 * k * j + 2.0 * k * harmonic_root(p, lam)?);
    }
    let b = p.b();
    let (w, _) = shifted_r(p, j, lam)?;
    let xi = -p.a() / b - p.delta() / (b * w * w);
    check_wall(p, xi, lam, j)?;
    Ok(xi)
}

/// For `b < 0` the closed forms continue past the wall `x = x_v`, onto the other branch of
/// the parabola; a real orbit needs `ξx_v − Λ² < Y(x_v)`.
fn check_wall(p: &ParabolaParams, xi: f64, lam: f64, j: f64) -> Result<()> {
    if p.b() < 0.0 {
        if let Some(xv) = p.vertex() {
            let edge = (lam * lam + p.y_value(xv)?) / xv;
            if xi >= edge {
                return Err(IsochroneError::NoBoundOrbit(format!(
                    "J = {j} gives energy {xi}, past {edge} where the orbit reaches the edge of the domain"
                )));
            }
        }
    }
    Ok(())
}

/// `(ω_J, ω_Λ) = (∂H/∂J, ∂H/∂Λ)`.
pub fn frequencies(p: &ParabolaParams, j: f64, lam: f64) -> Result<(f64, f64)> {
    check_action_args(j, lam)?;
    if p.b() == 0.0 {
        let k = harmonic_abs_a(p) / (-p.d()).sqrt();
        return Ok((4.0 * k, 2.0 * k * lam / harmonic_root(p, lam)?));
    }
    hamiltonian(p, j, lam)?;
    let (w, dr) = shifted_r(p, j, lam)?;
    let w3 = w * w * w;
    Ok((4.0 * p.delta() / w3, 2.0 * p.delta() * dr / (p.b() * w3)))
}

/// Sorted Hénon abscissae `(x_p, x_a)` where the line `ξx − Λ²` meets `Y`.
pub fn turning_points(p: &ParabolaParams, oc: OrbitConstants) -> Result<(f64, f64)> {
    let (xp, xa, _) = turning_points_with_ecc(p, oc)?;
    Ok((xp, xa))
}

/// Also returns the eccentricity implied by the root spread.
fn turning_points_with_ecc(p: &ParabolaParams, oc: OrbitConstants) -> Result<(f64, f64, f64)> {
    let OrbitConstants { xi, lam } = oc;
    let dom = p.domain();
    let (xp, xa, ecc) = if p.b() == 0.0 {
        // (a²/d)x² + (ξ + c/d)x + (e/d − Λ²) = 0, written as A x² − S x − P = 0 with A > 0
        let aq = -p.a() * p.a() / p.d();
        let s = xi + p.c() / p.d();
        let prod = (p.e() - lam * lam * p.d()) / (p.a() * p.a());
        if s <= 0.0 || prod <= 0.0 {
            return Err(IsochroneError::NoBoundOrbit(format!(
                "line xi*x - lambda^2 does not cut the parabola twice at positive x (xi = {xi}, lambda = {lam})"
            )));
        }
        let mut disc = s * s - 4.0 * aq * aq * prod;
        let scale = s * s;
        if disc < 0.0 {
            if disc < -1e-12 * scale {
                return Err(IsochroneError::NoBoundOrbit(format!(
                    "xi = {xi} lies below the circular energy"
                )));
            }
            disc = 0.0;
        }
        let xa = (s + disc.sqrt()) / (2.0 * aq);
        let xp = prod / xa;
        let (xp, xa) = if xp <= xa { (xp, xa) } else { (xa, xp) };
        (xp, xa, (1.0 - xp / xa).max(0.0).sqrt())
    } else {
        let (a, b, d, e) = (p.a(), p.b(), p.d(), p.e());
        let b2 = b * b;
        binding(p, xi)?;
        let a0 = d / (2.0 * b2) - lam * lam;
        let a1 = xi + a / b;
        let a2 = p.delta() / (b2 * b);
        let a3 = (d * d - 4.0 * b2 * e) / (4.0 * b2 * b2);
        let u0 = -a2 / (2.0 * a1);
        let v0 = u0 * u0 + 2.0 * a0 * u0 + a3;
        let mut e2 = v0 / (u0 * u0);
        if e2 < 0.0 {
            if e2 < -CIRCULAR_ECC {
                return Err(IsochroneError::NoBoundOrbit(format!(
                    "xi = {xi} lies below the circular energy for lambda = {lam}"
                )));
            }
            e2 = 0.0;
        }
        if e2 >= 1.0 {
            return Err(IsochroneError::NoBoundOrbit(format!(
                "eccentricity^2 = {e2} >= 1 (xi = {xi}, lambda = {lam})"
            )));
        }
        let ecc = e2.sqrt();
        let xv = p.vertex().unwrap_or(0.0);
        let x1 = xv + (u0 * (1.0 - ecc)).powi(2) / a2;
        let x2 = xv + (u0 * (1.0 + ecc)).powi(2) / a2;
        let (xp, xa) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        (xp, xa, ecc)
    };
    if xp < dom.lo || xa > dom.hi || (xp == 0.0 && lam > 0.0) {
        return Err(IsochroneError::NoBoundOrbit(format!(
            "turning points [{xp}, {xa}] leave the domain {dom}"
        )));
    }
    Ok((xp, xa, ecc))
}

/// All per-orbit quantities at once.
pub fn orbit_elements(p: &ParabolaParams, oc: OrbitConstants) -> Result<OrbitElements> {
    let (x_p, x_a, quad_ecc) = turning_points_with_ecc(p, oc)?;
    let period = radial_period(p, oc.xi)?;
    let apsidal = apsidal_angle(p, oc.lam)?;
    let action = radial_action(p, oc)?;
    if p.b() == 0.0 {
        return Ok(OrbitElements {
            omega_r: 2.0 * PI / period,
            ecc: quad_ecc,
            alpha2: None,
            x_v: None,
            zeta2: None,
            period,
            apsidal,
            action,
            x_p,
            x_a,
        });
    }
    let (b, d, e) = (p.b(), p.d(), p.e());
    let delta = p.delta();
    let s = binding(p, oc.xi)?;
    let omega_r = (-16.0 * s * s * s / delta).sqrt();
    let l2 = oc.lam * oc.lam;
    let mut e2 = 1.0
        + 2.0 / delta * (2.0 * b * b * l2 - d) * s
        + (d * d - 4.0 * b * b * e) * s * s / (delta * delta);
    if e2 < 0.0 {
        if e2 < -CIRCULAR_ECC {
            return Err(IsochroneError::NoBoundOrbit(format!(
                "eccentricity^2 = {e2} < 0"
            )));
        }
        e2 = 0.0;
    }
    if e2 >= 1.0 {
        return Err(IsochroneError::NoBoundOrbit(format!(
            "eccentricity^2 = {e2} >= 1"
        )));
    }
    let alpha2 = b.signum() * delta / (8.0 * b.abs() * s * s);
    let x_v = p.vertex().unwrap_or(0.0);
    Ok(OrbitElements {
        omega_r,
        ecc: e2.sqrt(),
        alpha2: Some(alpha2),
        x_v: Some(x_v),
        zeta2: Some(-x_v / (2.0 * alpha2)),
        period,
        apsidal,
        action,
        x_p,
        x_a,
    })
}

/// `√(δ/2|b|³)`, the constant of the generalised third law `Ω²α³`.
pub fn third_law_constant(p: &ParabolaParams) -> Option<f64> {
    (p.b() != 0.0).then(|| (p.delta() / (2.0 * p.b().abs().powi(3))).sqrt())
}
