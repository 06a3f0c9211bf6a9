//! Process exit codes.

use std::fmt;

use isochrone::IsochroneError;

pub const OK: u8 = 0;
pub const VERIFY_FAILED: u8 = 1;
pub const INVALID_INPUT: u8 = 2;
pub const NO_BOUND_ORBIT: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Failure {
            code: INVALID_INPUT,
            message: msg.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn code_of(e: &IsochroneError) -> u8 {
    match e {
        IsochroneError::InvalidParams(_)
        | IsochroneError::OutOfDomain { .. }
        | IsochroneError::SingularPoint { .. } => INVALID_INPUT,
        IsochroneError::UnboundOrbit { .. }
        | IsochroneError::NoBoundOrbit(_)
        | IsochroneError::NoCircularOrbit(_) => NO_BOUND_ORBIT,
        IsochroneError::ToleranceNotMet { .. }
        | IsochroneError::StepSizeUnderflow { .. }
        | IsochroneError::DomainExit { .. } => VERIFY_FAILED,
    }
}

impl From<IsochroneError> for Failure {
    fn from(e: IsochroneError) -> Self {
        Failure {
            code: code_of(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: INVALID_INPUT,
            message: format!("i/o error: {e}"),
        }
    }
}
