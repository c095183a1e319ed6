use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive and finite, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("{what} = {value} is outside its domain {domain}")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root finder did not converge within {max_iter} iterations")]
    MaxIterationsExceeded { max_iter: usize },

    #[error("{truncated} of {n_paths} paths hit the time horizon; increase max_time")]
    TruncationExcess { truncated: usize, n_paths: usize },

    #[error("invalid simulation setting: {0}")]
    InvalidConfig(String),

    #[error("internal solver failure: {0}")]
    Internal(String),
}

impl Error {
    /// Whether the error comes from invalid user input rather than from a
    /// failure of the numerics.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::NonPositiveParameter { .. }
                | Error::OutOfDomain { .. }
                | Error::TruncationExcess { .. }
                | Error::InvalidConfig(_)
        )
    }
}
