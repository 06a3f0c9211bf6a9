//! Dormand–Prince 5(4) with step-size control, specialised to the planar radial problem
//! `r̈ = Λ²/r³ − ψ′(r)`, `θ̇ = Λ/r²`.

use crate::error::{IsochroneError, Result};
use crate::potential::RadialPotential;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// fifth-order weights, also the last stage row (FSAL)
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// difference between fifth- and fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type State = [f64; 3];

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..3 {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Right-hand side for state `(r, ṙ, θ)`.
pub(crate) struct RadialSystem<'a> {
    pub pot: &'a dyn RadialPotential,
    pub lam: f64,
}

impl RadialSystem<'_> {
    fn rhs(&self, y: &State) -> Result<State> {
        let r = y[0];
        if !(r > 0.0) {
            return Err(IsochroneError::DomainExit { t: f64::NAN, r });
        }
        let l = self.lam;
        Ok([
            y[1],
            l * l / (r * r * r) - self.pot.dpsi_dr(r)?,
            l / (r * r),
        ])
    }

    pub fn energy(&self, y: &State) -> Result<f64> {
        let r = y[0];
        Ok(0.5 * y[1] * y[1] + 0.5 * self.lam * self.lam / (r * r) + self.pot.psi(r)?)
    }
}

pub(crate) struct Stepper<'a> {
    sys: RadialSystem<'a>,
    rtol: f64,
    atol: f64,
    pub t: f64,
    pub y: State,
    k1: State,
    h: f64,
}

impl<'a> Stepper<'a> {
    pub fn new(sys: RadialSystem<'a>, y0: State, rtol: f64, atol: f64, h0: f64) -> Result<Self> {
        let k1 = sys.rhs(&y0)?;
        Ok(Stepper {
            sys,
            rtol,
            atol,
            t: 0.0,
            y: y0,
            k1,
            h: h0,
        })
    }

    pub fn system(&self) -> &RadialSystem<'a> {
        &self.sys
    }

    /// One accepted step, never stepping past `t_stop`.
    pub fn step(&mut self, t_stop: f64) -> Result<()> {
        let min_h = 1e-14 * self.t.abs().max(1e-3);
        loop {
            let mut h = self.h;
            let clipped = self.t + h >= t_stop;
            if clipped {
                h = t_stop - self.t;
            }
            if h < min_h && !clipped {
                return Err(IsochroneError::StepSizeUnderflow { t: self.t });
            }
            match self.attempt(h) {
                Ok((y_new, k7, err)) if err <= 1.0 => {
                    self.t = if clipped { t_stop } else { self.t + h };
                    self.y = y_new;
                    self.k1 = k7;
                    let fac = if err == 0.0 {
                        5.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    // a clipped step says nothing about the natural step size
                    if !clipped || fac < 1.0 {
                        self.h = h * fac;
                    }
                    return Ok(());
                }
                Ok((_, _, err)) => {
                    self.h = h * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
                }
                Err(_) => {
                    // a stage left the domain; retry smaller, fail if it persists
                    self.h = 0.25 * h;
                    if self.h < min_h {
                        return Err(IsochroneError::DomainExit {
                            t: self.t,
                            r: self.y[0],
                        });
                    }
                }
            }
        }
    }

    fn attempt(&self, h: f64) -> Result<(State, State, f64)> {
        let y = &self.y;
        let k1 = &self.k1;
        let k2 = self.sys.rhs(&axpy(y, h, &[(A21, k1)]))?;
        let k3 = self.sys.rhs(&axpy(y, h, &[(A31, k1), (A32, &k2)]))?;
        let k4 = self
            .sys
            .rhs(&axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]))?;
        let k5 = self.sys.rhs(&axpy(
            y,
            h,
            &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)],
        ))?;
        let k6 = self.sys.rhs(&axpy(
            y,
            h,
            &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ))?;
        let y_new = axpy(
            y,
            h,
            &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
        );
        let k7 = self.sys.rhs(&y_new)?;
        let mut acc = 0.0;
        for i in 0..3 {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
            acc += (e / sc) * (e / sc);
        }
        Ok((y_new, k7, (acc / 3.0).sqrt()))
    }
}
