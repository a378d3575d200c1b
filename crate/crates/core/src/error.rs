use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inner series must have zero constant term, found {coeff}")]
    NonzeroConstant { coeff: String },

    #[error("series precondition failed: {0}")]
    Precondition(String),

    #[error("entry ({n},{k}) is beyond the stored order {order}")]
    OutOfRange { n: usize, k: usize, order: usize },

    #[error("{what}: routes disagree at {at}: {left} != {right}")]
    RouteMismatch {
        what: String,
        at: String,
        left: String,
        right: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown {what} {name:?}")]
    Unknown { what: &'static str, name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
