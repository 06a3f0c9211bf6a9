//! Isochrone potentials in the Hénon variable.
//!
//! * [`potential`]: parabola parameters, classification, `Y(x)`/`ψ(r)` and gauges.
//! * [`analytic`]: closed-form orbit theory (turning points, `T`, `Θ`, `J`, `H`, trajectories).
//! * [`oracle`]: quadrature and ODE ground truth that only evaluates the potential.
//! * [`birkhoff`]: Birkhoff invariants, the isochrone and Bertrand checks, frequency invariants.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod birkhoff;
pub mod error;
pub mod oracle;
pub mod potential;
mod roots;

pub use analytic::{OrbitConstants, OrbitElements, TrajectorySample};
pub use birkhoff::{BirkhoffInvariants, FrequencyInvariants, Route};
pub use error::{IsochroneError, Result};
pub use oracle::{OdeState, QuadratureResult};
pub use potential::{
    Family, GaugeTerm, GenericPotential, GreekParams, Interval, ParabolaParams, PotentialClass,
    RadialPotential,
};
