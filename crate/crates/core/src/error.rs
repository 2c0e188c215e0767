use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Which part of the ordering `1/2 < upsilon_L < alpha < upsilon_H < 1` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    UpsilonLowNotAboveHalf,
    AlphaNotAboveUpsilonLow,
    UpsilonHighNotAboveAlpha,
    UpsilonHighNotBelowOne,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::UpsilonLowNotAboveHalf => "upsilon_L must exceed 1/2",
            Violation::AlphaNotAboveUpsilonLow => "alpha must exceed upsilon_L",
            Violation::UpsilonHighNotAboveAlpha => "upsilon_H must exceed alpha",
            Violation::UpsilonHighNotBelowOne => "upsilon_H must be below 1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{name} must lie strictly inside (0, 1), got {value}")]
    OutOfUnitInterval { name: &'static str, value: f64 },
    #[error("{0}")]
    Assumption(Violation),
    #[error("mixing weight must lie in [0, 1], got {0}")]
    GammaOutOfRange(f64),
    #[error("strategy entry must lie in [0, 1], got {0}")]
    InvalidStrategy(f64),
    #[error("off-path belief must lie in [0, 1], got {0}")]
    InvalidOffPathBelief(f64),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("root is not bracketed: G(0) = {g0}, G(1) = {g1}")]
    BracketFailure { g0: f64, g1: f64 },
    #[error("simulation needs at least one draw")]
    EmptySimulation,
    #[error("grid step must be positive and divide 1 evenly, got {0}")]
    InvalidGridStep(f64),
}
