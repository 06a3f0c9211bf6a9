use thiserror::Error;

/// Everything that can go wrong while building a potential or evaluating an orbit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsochroneError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("x = {x} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("derivative is singular at x = {x}")]
    SingularPoint { x: f64 },

    #[error("orbit is unbound (a + b*xi = {value} is not negative)")]
    UnboundOrbit { value: f64 },

    #[error("no bound orbit: {0}")]
    NoBoundOrbit(String),

    #[error("no circular orbit: {0}")]
    NoCircularOrbit(String),

    #[error("tolerance not met: achieved {achieved:e}, requested {requested:e}")]
    ToleranceNotMet { achieved: f64, requested: f64 },

    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },

    #[error("integration left the domain at t = {t} (r = {r})")]
    DomainExit { t: f64, r: f64 },
}

pub type Result<T> = std::result::Result<T, IsochroneError>;
