use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("range error: {0}")]
    Range(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },

    /// The boundary-condition matrix is too ill-conditioned to trust.
    #[error("ill-conditioned boundary system at n = {n}, omega = {omega} (condition number {condition:e})")]
    Conditioning { n: usize, omega: f64, condition: f64 },

    /// The multipole series did not settle before the hard cap.
    #[error("multipole series not converged after {n_max} terms (last term {last_term:e})")]
    Convergence { n_max: usize, last_term: f64 },

    /// A lower-level failure annotated with the sweep point it happened at.
    #[error("at omega = {omega}, r_A = {r_a}: {source}")]
    AtPoint {
        omega: f64,
        r_a: f64,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_point(self, omega: f64, r_a: f64) -> Self {
        Error::AtPoint { omega, r_a, source: alloc::boxed::Box::new(self) }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
