use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name}={value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("{what} is undefined at u={u}")]
    Domain { what: &'static str, u: f64 },
    #[error("map produced a non-finite image from ({u}, {v})")]
    NonFinite { u: f64, v: f64 },
    #[error("{what} is only defined for response order h={expected}")]
    UnsupportedOrder { what: &'static str, expected: u8 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("regime precondition unmet: {0}")]
    Regime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
