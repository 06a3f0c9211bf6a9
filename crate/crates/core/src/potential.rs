//! Isochrone potentials written in the Hénon variable `x = 2r²`, where the function
//! `Y(x) = x ψ(r)` traces the convex arc of a parabola
//! `(ax + bY)² + cx + dY + e = 0`.

use std::fmt;
use std::sync::Arc;

use crate::error::{IsochroneError, Result};

/// Closed interval of Hénon abscissae; `hi` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn is_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hi.is_infinite() {
            write!(f, "[{}, inf)", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Harmonic,
    Henon,
    Bounded,
    Hollowed,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Harmonic => "Harmonic",
            Family::Henon => "Henon",
            Family::Bounded => "Bounded",
            Family::Hollowed => "Hollowed",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PotentialClass {
    pub family: Family,
    /// Set when `x_v = 0` with `b > 0`, i.e. a (possibly gauged) Kepler potential.
    pub kepler_degenerate: bool,
}

impl fmt::Display for PotentialClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kepler_degenerate {
            write!(f, "{} (Kepler degenerate)", self.family)
        } else {
            write!(f, "{}", self.family)
        }
    }
}

/// An additive `ε + λ/(2r²)` term; in the Hénon variable `Y ↦ Y + εx + λ`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GaugeTerm {
    pub eps_gauge: f64,
    pub lam_gauge: f64,
}

/// Greek parameters recovered from a parabola.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GreekParams {
    /// `ω` of `Y = ω²x²/16` (up to gauge).
    Harmonic { omega: f64 },
    /// Mass scale `μ = √(δ/2|b|³)` and length `β = √(|x_v|/2)`.
    Scaled { mu: f64, beta: f64 },
}

/// The five Latin coefficients of an isochrone parabola.
///
/// Construction validates: `δ = ad − bc > 0`; for `b = 0` also `d < 0` (which forces `a < 0`);
/// for `b < 0` also `x_v > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
}

impl ParabolaParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<Self> {
        if ![a, b, c, d, e].iter().all(|v| v.is_finite()) {
            return Err(IsochroneError::InvalidParams(
                "coefficients must be finite".into(),
            ));
        }
        let p = ParabolaParams { a, b, c, d, e };
        let delta = p.delta();
        if delta <= 0.0 {
            return Err(IsochroneError::InvalidParams(format!(
                "discriminant delta = ad - bc = {delta} must be positive"
            )));
        }
        if b == 0.0 {
            if d >= 0.0 {
                return Err(IsochroneError::InvalidParams(format!(
                    "b = 0 requires d < 0 for a convex arc (d = {d})"
                )));
            }
        } else if b < 0.0 {
            let xv = p.raw_vertex();
            if xv <= 0.0 {
                return Err(IsochroneError::InvalidParams(format!(
                    "b < 0 requires x_v > 0 for a non-empty domain (x_v = {xv})"
                )));
            }
        }
        Ok(p)
    }

    pub fn from_latin(l: [f64; 5]) -> Result<Self> {
        Self::new(l[0], l[1], l[2], l[3], l[4])
    }

    pub fn latin(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn delta(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    fn raw_vertex(&self) -> f64 {
        let (b, d, e) = (self.b, self.d, self.e);
        (4.0 * b * b * e - d * d) / (4.0 * b * self.delta())
    }

    /// Vertex abscissa `x_v = (4b²e − d²)/(4bδ)`; `None` for the harmonic family.
    pub fn vertex(&self) -> Option<f64> {
        (self.b != 0.0).then(|| self.raw_vertex())
    }

    pub fn kepler(mu: f64) -> Result<Self> {
        positive(&[("mu", mu)])?;
        Self::new(0.0, 1.0, -2.0 * mu * mu, 0.0, 0.0)
    }

    /// `ψ = −μ/(β + √(β² + r²))`.
    pub fn henon(mu: f64, beta: f64) -> Result<Self> {
        positive(&[("mu", mu), ("beta", beta)])?;
        Self::new(0.0, 1.0, -2.0 * mu * mu, -4.0 * mu * beta, 0.0)
    }

    /// `ψ = μ/(β + √(β² − r²))` on `r ≤ β`.
    pub fn bounded(mu: f64, beta: f64) -> Result<Self> {
        positive(&[("mu", mu), ("beta", beta)])?;
        Self::new(0.0, -1.0, 2.0 * mu * mu, -4.0 * mu * beta, 0.0)
    }

    /// `ψ = −μ√(r² − β²)/r²` on `r ≥ β`.
    pub fn hollowed(mu: f64, beta: f64) -> Result<Self> {
        positive(&[("mu", mu), ("beta", beta)])?;
        Self::new(0.0, 1.0, -2.0 * mu * mu, 0.0, 4.0 * mu * mu * beta * beta)
    }

    /// `ψ = ω²r²/8`, whose radial period is `2π/ω`.
    pub fn harmonic(omega: f64) -> Result<Self> {
        positive(&[("omega", omega)])?;
        Self::new(-0.5 * omega, 0.0, 0.0, -4.0, 0.0)
    }

    pub fn classify(&self) -> PotentialClass {
        if self.b == 0.0 {
            return PotentialClass {
                family: Family::Harmonic,
                kepler_degenerate: false,
            };
        }
        let xv = self.raw_vertex();
        let family = if self.b < 0.0 {
            Family::Bounded
        } else if xv > 0.0 {
            Family::Hollowed
        } else {
            Family::Henon
        };
        PotentialClass {
            family,
            kepler_degenerate: self.b > 0.0 && xv == 0.0,
        }
    }

    pub fn domain(&self) -> Interval {
        match self.classify().family {
            Family::Harmonic | Family::Henon => Interval {
                lo: 0.0,
                hi: f64::INFINITY,
            },
            Family::Hollowed => Interval {
                lo: self.raw_vertex(),
                hi: f64::INFINITY,
            },
            Family::Bounded => Interval {
                lo: 0.0,
                hi: self.raw_vertex(),
            },
        }
    }

    pub fn greek(&self) -> GreekParams {
        if self.b == 0.0 {
            GreekParams::Harmonic {
                omega: 4.0 * self.a.abs() / (-self.d).sqrt(),
            }
        } else {
            let mu = (self.delta() / (2.0 * self.b.abs().powi(3))).sqrt();
            GreekParams::Scaled {
                mu,
                beta: (0.5 * self.raw_vertex().abs()).sqrt(),
            }
        }
    }

    /// Adds `εx + λ` to `Y`, keeping `bδ` and `x_v` fixed when `b ≠ 0`.
    pub fn apply_gauge(&self, g: GaugeTerm) -> Result<Self> {
        let GaugeTerm {
            eps_gauge: eps,
            lam_gauge: lam,
        } = g;
        if !eps.is_finite() || !lam.is_finite() {
            return Err(IsochroneError::InvalidParams(
                "gauge terms must be finite".into(),
            ));
        }
        if eps == 0.0 && lam == 0.0 {
            return Ok(*self);
        }
        let (a, b, c, d, e) = (self.a, self.b, self.c, self.d, self.e);
        if b == 0.0 {
            return Self::new(a, b, c - eps * d, d, e - lam * d);
        }
        let delta = self.delta();
        let xv = self.raw_vertex();
        let a2 = a - eps * b;
        let d2 = d - 2.0 * lam * b * b;
        let c2 = (a2 * d2 - delta) / b;
        let e2 = (4.0 * b * delta * xv + d2 * d2) / (4.0 * b * b);
        Self::new(a2, b, c2, d2, e2)
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let dom = self.domain();
        if !x.is_finite() || !dom.contains(x) {
            return Err(IsochroneError::OutOfDomain {
                x,
                lo: dom.lo,
                hi: dom.hi,
            });
        }
        Ok(())
    }

    /// `√(bδ(x − x_v))`, clamped at zero against rounding at the vertex.
    fn root_part(&self, x: f64) -> f64 {
        let q = self.b * self.delta();
        (q * (x - self.raw_vertex())).max(0.0).sqrt()
    }

    pub fn y_value(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let (a, b, c, d, e) = (self.a, self.b, self.c, self.d, self.e);
        if b == 0.0 {
            return Ok(-(c / d) * x - e / d - (a * a / d) * x * x);
        }
        let s = self.root_part(x);
        if d < 0.0 {
            // d/2 + s cancels; use (d/2 + s)(s − d/2) = s² − d²/4 = b(δx − be)
            return Ok(-(a / b) * x - (self.delta() * x - b * e) / (b * (s - 0.5 * d)));
        }
        Ok(-(a / b) * x - d / (2.0 * b * b) - s / (b * b))
    }

    /// `[Y′, Y″, Y‴, Y⁗]` at `x`.
    pub fn y_derivatives(&self, x: f64) -> Result<[f64; 4]> {
        self.check_domain(x)?;
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        if b == 0.0 {
            let k = a * a / d;
            return Ok([-c / d - 2.0 * k * x, -2.0 * k, 0.0, 0.0]);
        }
        let delta = self.delta();
        let q = b * delta;
        let s = self.root_part(x);
        if s == 0.0 {
            return Err(IsochroneError::SingularPoint { x });
        }
        let b2 = b * b;
        let s2 = s * s;
        let s3 = s2 * s;
        let y1 = -a / b - q / (2.0 * b2 * s);
        let y2 = delta * delta / (4.0 * s3);
        let y3 = -3.0 * q.powi(3) / (8.0 * b2 * s3 * s2);
        let y4 = 15.0 * q.powi(4) / (16.0 * b2 * s3 * s3 * s);
        Ok([y1, y2, y3, y4])
    }

    pub fn psi_value(&self, r: f64) -> Result<f64> {
        if r <= 0.0 || !r.is_finite() {
            return Err(IsochroneError::SingularPoint { x: 2.0 * r * r });
        }
        let x = 2.0 * r * r;
        Ok(self.y_value(x)? / x)
    }

    /// Residual of the universal parabola equation `3Y″Y⁗ − 5Y‴² = 0`.
    pub fn parabola_ode_residual(&self, x: f64) -> Result<f64> {
        let [_, y2, y3, y4] = self.y_derivatives(x)?;
        Ok(3.0 * y2 * y4 - 5.0 * y3 * y3)
    }

    /// Left side of the implicit equation at `(x, Y(x))`; zero up to rounding.
    pub fn implicit_residual(&self, x: f64) -> Result<f64> {
        let y = self.y_value(x)?;
        let (a, b, c, d, e) = (self.a, self.b, self.c, self.d, self.e);
        let l = a * x + b * y;
        Ok(l * l + c * x + d * y + e)
    }
}

impl fmt::Display for ParabolaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.a, self.b, self.c, self.d, self.e
        )
    }
}

fn positive(vals: &[(&str, f64)]) -> Result<()> {
    for (name, v) in vals {
        if !(v.is_finite() && *v > 0.0) {
            return Err(IsochroneError::InvalidParams(format!(
                "{name} must be positive (got {v})"
            )));
        }
    }
    Ok(())
}

/// A spherically symmetric potential seen through the Hénon variable.
///
/// Only `y` and `x_domain` are required; derivatives fall back to finite differences.
pub trait RadialPotential: Send + Sync {
    fn y(&self, x: f64) -> Result<f64>;

    fn x_domain(&self) -> Interval;

    fn y_derivatives(&self, x: f64) -> Result<[f64; 4]> {
        fd_derivatives(|t| self.y(t), self.x_domain(), x)
    }

    fn psi(&self, r: f64) -> Result<f64> {
        if r <= 0.0 {
            return Err(IsochroneError::SingularPoint { x: 0.0 });
        }
        let x = 2.0 * r * r;
        Ok(self.y(x)? / x)
    }

    /// Fourth-order central difference of `ψ`.
    fn dpsi_dr(&self, r: f64) -> Result<f64> {
        let h = 1e-3 * r;
        let f = |t: f64| self.psi(t);
        Ok((-f(r + 2.0 * h)? + 8.0 * f(r + h)? - 8.0 * f(r - h)? + f(r - 2.0 * h)?) / (12.0 * h))
    }
}

impl RadialPotential for ParabolaParams {
    fn y(&self, x: f64) -> Result<f64> {
        self.y_value(x)
    }
    fn x_domain(&self) -> Interval {
        self.domain()
    }
    fn y_derivatives(&self, x: f64) -> Result<[f64; 4]> {
        ParabolaParams::y_derivatives(self, x)
    }
    fn psi(&self, r: f64) -> Result<f64> {
        self.psi_value(r)
    }
    /// `dψ/dr = 4r(xY′ − Y)/x²`.
    fn dpsi_dr(&self, r: f64) -> Result<f64> {
        let x = 2.0 * r * r;
        let y = self.y_value(x)?;
        let y1 = ParabolaParams::y_derivatives(self, x)?[0];
        Ok(4.0 * r * (x * y1 - y) / (x * x))
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type DerivFn = Arc<dyn Fn(f64) -> [f64; 4] + Send + Sync>;

#[derive(Clone)]
enum Source {
    Psi(ScalarFn),
    Y(ScalarFn),
}

/// A potential given by a closure, either as `ψ(r)` or as `Y(x)`.
#[derive(Clone)]
pub struct GenericPotential {
    name: String,
    source: Source,
    derivs: Option<DerivFn>,
    dpsi: Option<ScalarFn>,
    domain: Interval,
}

impl fmt::Debug for GenericPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenericPotential")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish()
    }
}

impl GenericPotential {
    pub fn from_psi<F>(name: &str, psi: F, domain: Interval) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        GenericPotential {
            name: name.into(),
            source: Source::Psi(Arc::new(psi)),
            derivs: None,
            dpsi: None,
            domain,
        }
    }

    pub fn from_y<F>(name: &str, y: F, domain: Interval) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        GenericPotential {
            name: name.into(),
            source: Source::Y(Arc::new(y)),
            derivs: None,
            dpsi: None,
            domain,
        }
    }

    /// Supplies closed-form `[Y′, Y″, Y‴, Y⁗]` in place of finite differences.
    pub fn with_y_derivatives<F>(mut self, f: F) -> Self
    where
        F: Fn(f64) -> [f64; 4] + Send + Sync + 'static,
    {
        self.derivs = Some(Arc::new(f));
        self
    }

    /// Supplies a closed-form `dψ/dr` for the equations of motion.
    pub fn with_dpsi<F>(mut self, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.dpsi = Some(Arc::new(f));
        self
    }

    /// `ψ = −μ/√(r² + b²)`; not isochrone.
    pub fn plummer(mu: f64, b: f64) -> Result<Self> {
        positive(&[("mu", mu), ("b", b)])?;
        let b2 = b * b;
        Ok(Self::from_psi(
            "plummer",
            move |r| -mu / (r * r + b2).sqrt(),
            Interval {
                lo: 0.0,
                hi: f64::INFINITY,
            },
        )
        .with_dpsi(move |r| mu * r / (r * r + b2).powf(1.5)))
    }

    /// `Y = s·x^{5/2}`, the smallest power law that is not a parabola in any gauge.
    pub fn power_law(scale: f64) -> Result<Self> {
        positive(&[("scale", scale)])?;
        Ok(Self::from_y(
            "power_law",
            move |x| scale * x * x * x.sqrt(),
            Interval {
                lo: 0.0,
                hi: f64::INFINITY,
            },
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl RadialPotential for GenericPotential {
    fn y(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) || !x.is_finite() {
            return Err(IsochroneError::OutOfDomain {
                x,
                lo: self.domain.lo,
                hi: self.domain.hi,
            });
        }
        let v = match &self.source {
            Source::Y(f) => f(x),
            Source::Psi(f) => {
                if x == 0.0 {
                    0.0
                } else {
                    x * f((0.5 * x).sqrt())
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(IsochroneError::SingularPoint { x })
        }
    }

    fn x_domain(&self) -> Interval {
        self.domain
    }

    fn y_derivatives(&self, x: f64) -> Result<[f64; 4]> {
        match &self.derivs {
            Some(f) => {
                if !self.domain.contains(x) {
                    return Err(IsochroneError::OutOfDomain {
                        x,
                        lo: self.domain.lo,
                        hi: self.domain.hi,
                    });
                }
                Ok(f(x))
            }
            None => fd_derivatives(|t| self.y(t), self.domain, x),
        }
    }

    fn psi(&self, r: f64) -> Result<f64> {
        match &self.source {
            Source::Psi(f) => {
                let x = 2.0 * r * r;
                if r <= 0.0 || !self.domain.contains(x) {
                    return Err(IsochroneError::OutOfDomain {
                        x,
                        lo: self.domain.lo,
                        hi: self.domain.hi,
                    });
                }
                Ok(f(r))
            }
            Source::Y(_) => {
                if r <= 0.0 {
                    return Err(IsochroneError::SingularPoint { x: 0.0 });
                }
                let x = 2.0 * r * r;
                Ok(self.y(x)? / x)
            }
        }
    }

    fn dpsi_dr(&self, r: f64) -> Result<f64> {
        match &self.dpsi {
            Some(f) => Ok(f(r)),
            None => {
                let h = 1e-3 * r;
                let f = |t: f64| self.psi(t);
                Ok(
                    (-f(r + 2.0 * h)? + 8.0 * f(r + h)? - 8.0 * f(r - h)? + f(r - 2.0 * h)?)
                        / (12.0 * h),
                )
            }
        }
    }
}

/// Fourth-order central stencils for the first four derivatives. Steps are relative to `x`
/// and shrink so that the widest stencil (±3h) stays inside the domain.
pub(crate) fn fd_derivatives<F>(f: F, dom: Interval, x: f64) -> Result<[f64; 4]>
where
    F: Fn(f64) -> Result<f64>,
{
    if !dom.is_interior(x) {
        return Err(IsochroneError::SingularPoint { x });
    }
    let room = (x - dom.lo).min(dom.hi - x) / 3.5;
    let scale = x.abs().max(1e-3);
    let step = |rel: f64| (rel * scale).min(room);

    let h = step(1e-3);
    let f1 = f(x + h)?;
    let fm1 = f(x - h)?;
    let f2 = f(x + 2.0 * h)?;
    let fm2 = f(x - 2.0 * h)?;
    let d1 = (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h);

    let h = step(2e-3);
    let f0 = f(x)?;
    let (f1, fm1, f2, fm2) = (f(x + h)?, f(x - h)?, f(x + 2.0 * h)?, f(x - 2.0 * h)?);
    let d2 = (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);

    let h = step(1e-2);
    let (f1, fm1, f2, fm2) = (f(x + h)?, f(x - h)?, f(x + 2.0 * h)?, f(x - 2.0 * h)?);
    let (f3, fm3) = (f(x + 3.0 * h)?, f(x - 3.0 * h)?);
    let d3 = (-f3 + 8.0 * f2 - 13.0 * f1 + 13.0 * fm1 - 8.0 * fm2 + fm3) / (8.0 * h.powi(3));

    let h = step(2e-2);
    let (f1, fm1, f2, fm2) = (f(x + h)?, f(x - h)?, f(x + 2.0 * h)?, f(x - 2.0 * h)?);
    let (f3, fm3) = (f(x + 3.0 * h)?, f(x - 3.0 * h)?);
    let d4 = (-f3 + 12.0 * f2 - 39.0 * f1 + 56.0 * f0 - 39.0 * fm1 + 12.0 * fm2 - fm3)
        / (6.0 * h.powi(4));

    Ok([d1, d2, d3, d4])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn canonical_tuples() {
        assert_eq!(
            ParabolaParams::kepler(1.0).unwrap().latin(),
            [0.0, 1.0, -2.0, 0.0, 0.0]
        );
        assert_eq!(
            ParabolaParams::henon(1.0, 1.0).unwrap().latin(),
            [0.0, 1.0, -2.0, -4.0, 0.0]
        );
        assert_eq!(
            ParabolaParams::bounded(1.0, 1.0).unwrap().latin(),
            [0.0, -1.0, 2.0, -4.0, 0.0]
        );
        assert_eq!(
            ParabolaParams::hollowed(1.0, 1.0).unwrap().latin(),
            [0.0, 1.0, -2.0, 0.0, 4.0]
        );
        assert_eq!(
            ParabolaParams::harmonic(2.0).unwrap().latin(),
            [-1.0, 0.0, 0.0, -4.0, 0.0]
        );
    }

    #[test]
    fn classification() {
        let k = ParabolaParams::kepler(1.0).unwrap().classify();
        assert_eq!(
            k,
            PotentialClass {
                family: Family::Henon,
                kepler_degenerate: true
            }
        );
        assert_eq!(
            ParabolaParams::bounded(1.0, 1.0).unwrap().classify().family,
            Family::Bounded
        );
        assert_eq!(
            ParabolaParams::hollowed(1.0, 1.0)
                .unwrap()
                .classify()
                .family,
            Family::Hollowed
        );
        assert_eq!(
            ParabolaParams::harmonic(2.0).unwrap().classify().family,
            Family::Harmonic
        );
        let h = ParabolaParams::henon(1.0, 1.0).unwrap().classify();
        assert_eq!(
            h,
            PotentialClass {
                family: Family::Henon,
                kepler_degenerate: false
            }
        );
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ParabolaParams::new(0.0, 1.0, 2.0, 0.0, 0.0).is_err());
        assert!(ParabolaParams::new(1.0, 0.0, 0.0, 4.0, 0.0).is_err());
        // b < 0 with the vertex on the wrong side of the origin
        assert!(ParabolaParams::new(0.0, -1.0, 2.0, 0.0, 0.0).is_err());
        assert!(ParabolaParams::henon(0.0, 1.0).is_err());
        assert!(ParabolaParams::harmonic(-1.0).is_err());
    }

    #[test]
    fn y_examples() {
        let k = ParabolaParams::kepler(1.0).unwrap();
        assert!(close(k.y_value(2.0).unwrap(), -2.0, 1e-15));
        let h = ParabolaParams::harmonic(2.0).unwrap();
        assert!(close(h.y_value(2.0).unwrap(), 1.0, 1e-15));
        let he = ParabolaParams::henon(1.0, 1.0).unwrap();
        assert_eq!(he.y_value(0.0).unwrap(), 0.0);
    }

    #[test]
    fn second_derivative_examples() {
        let k = ParabolaParams::kepler(1.0).unwrap();
        assert!(close(k.y_derivatives(2.0).unwrap()[1], 0.125, 1e-15));
        let h = ParabolaParams::harmonic(2.0).unwrap();
        for x in [0.0, 1.0, 7.5] {
            assert_eq!(h.y_derivatives(x).unwrap()[1], 0.5);
        }
        let he = ParabolaParams::henon(1.0, 1.0).unwrap();
        assert!(close(he.y_derivatives(0.0).unwrap()[1], 0.125, 1e-15));
    }

    #[test]
    fn psi_examples() {
        let k = ParabolaParams::kepler(1.0).unwrap();
        assert!(close(k.psi_value(2.0).unwrap(), -0.5, 1e-15));
        let he = ParabolaParams::henon(1.0, 1.0).unwrap();
        assert!(close(
            he.psi_value(1.0).unwrap(),
            -1.0 / (1.0 + 2f64.sqrt()),
            1e-15
        ));
        let bo = ParabolaParams::bounded(1.0, 1.0).unwrap();
        assert!(close(
            bo.psi_value(0.5).unwrap(),
            1.0 / (1.0 + 0.75f64.sqrt()),
            1e-15
        ));
    }

    #[test]
    fn domains() {
        assert_eq!(
            ParabolaParams::kepler(1.0).unwrap().domain(),
            Interval {
                lo: 0.0,
                hi: f64::INFINITY
            }
        );
        assert_eq!(
            ParabolaParams::hollowed(1.0, 1.0).unwrap().domain(),
            Interval {
                lo: 2.0,
                hi: f64::INFINITY
            }
        );
        assert_eq!(
            ParabolaParams::bounded(1.0, 1.0).unwrap().domain(),
            Interval { lo: 0.0, hi: 2.0 }
        );
        let bo = ParabolaParams::bounded(1.0, 1.0).unwrap();
        assert!(matches!(
            bo.y_value(2.5),
            Err(IsochroneError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn vertex_is_finite_but_singular() {
        let ho = ParabolaParams::hollowed(1.0, 1.0).unwrap();
        assert_eq!(ho.y_value(2.0).unwrap(), 0.0);
        assert!(matches!(
            ho.y_derivatives(2.0),
            Err(IsochroneError::SingularPoint { .. })
        ));
    }

    #[test]
    fn gauge_shifts() {
        let k = ParabolaParams::kepler(1.0).unwrap();
        assert_eq!(k.apply_gauge(GaugeTerm::default()).unwrap(), k);
        let eps = 0.3;
        let g = k
            .apply_gauge(GaugeTerm {
                eps_gauge: eps,
                lam_gauge: 0.0,
            })
            .unwrap();
        assert!(close(g.psi_value(1.0).unwrap(), eps - 1.0, 1e-14));
        let lam = 0.7;
        let g = k
            .apply_gauge(GaugeTerm {
                eps_gauge: 0.0,
                lam_gauge: lam,
            })
            .unwrap();
        assert!(close(
            g.psi_value(2.0).unwrap() - k.psi_value(2.0).unwrap(),
            lam / 8.0,
            1e-14
        ));
        let h = ParabolaParams::harmonic(2.0).unwrap();
        let g = h
            .apply_gauge(GaugeTerm {
                eps_gauge: 0.2,
                lam_gauge: 0.1,
            })
            .unwrap();
        for x in [0.5, 1.0, 3.0] {
            assert!(close(
                g.y_value(x).unwrap(),
                h.y_value(x).unwrap() + 0.2 * x + 0.1,
                1e-14
            ));
        }
    }

    #[test]
    fn greek_round_trip() {
        let p = ParabolaParams::henon(1.3, 0.4).unwrap();
        match p.greek() {
            GreekParams::Scaled { mu, beta } => {
                assert!(close(mu, 1.3, 1e-14) && close(beta, 0.4, 1e-14));
            }
            _ => panic!(),
        }
        match ParabolaParams::harmonic(2.0).unwrap().greek() {
            GreekParams::Harmonic { omega } => assert!(close(omega, 2.0, 1e-15)),
            _ => panic!(),
        }
    }

    #[test]
    fn power_law_is_not_a_parabola() {
        let p = GenericPotential::power_law(1.0).unwrap();
        let [_, y2, y3, y4] = p.y_derivatives(1.0).unwrap();
        // Y″ = 15/4, Y‴ = 15/8, Y⁗ = −15/16
        assert!((y2 - 3.75).abs() < 1e-8);
        assert!((y3 - 1.875).abs() < 1e-6);
        assert!((y4 + 0.9375).abs() < 1e-5);
        let res = 3.0 * y2 * y4 - 5.0 * y3 * y3;
        assert!((res + 28.125).abs() < 1e-4);
    }

    #[test]
    fn plummer_psi_and_y_agree() {
        let p = GenericPotential::plummer(1.0, 1.0).unwrap();
        for r in [0.3, 1.0, 4.0] {
            let x = 2.0 * r * r;
            assert!(close(p.y(x).unwrap() / x, p.psi(r).unwrap(), 1e-15));
        }
    }
}
