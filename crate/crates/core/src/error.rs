use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A quantum-number or parameter invariant was violated.
    #[error("{0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `∫ ρ^(a+k) e^-ρ [L]^2 dρ` diverges at the origin when `a + k < 0`.
    #[error("divergent integral: rho exponent a + k = {a} + ({k}) < 0")]
    DivergentIntegral { a: u32, k: i32 },

    /// The observable needs `<1/r^2>`, which diverges for `d = 2, l = 0`.
    #[error("{observable} undefined: divergent for d=2, l=0")]
    Undefined { observable: &'static str },

    #[error("Newton iteration for Gauss-Laguerre node {index} of order {order} did not converge")]
    NoConvergence { order: usize, index: usize },
}
