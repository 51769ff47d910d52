use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of a function.
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    /// A parameter set violates its invariants.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("could not bracket a root after {doublings} doublings")]
    BracketExpansion { doublings: usize },

    #[error("{what} did not converge within {iterations} iterations")]
    NotConverged {
        what: &'static str,
        iterations: usize,
    },

    /// An emitted value failed its post-condition re-check.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code reported by the command-line front end.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Domain { .. } | Error::InvalidParam { .. } | Error::Config(_) => 2,
            Error::NoSignChange { .. }
            | Error::BracketExpansion { .. }
            | Error::NotConverged { .. }
            | Error::Consistency(_) => 3,
            Error::Io(_) => 4,
            Error::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(_) => 4,
                _ => 3,
            },
        }
    }
}

pub(crate) fn domain<T: crate::Scalar>(what: &'static str, value: T) -> Error {
    Error::Domain {
        what,
        value: value.as_f64(),
    }
}
