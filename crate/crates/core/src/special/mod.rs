//! Generalized Laguerre polynomials and log-gamma support.

mod gamma;
mod laguerre;

pub use gamma::{ln_factorial, ln_gamma};
pub use laguerre::{laguerre_derivative, laguerre_eval, laguerre_pair, log_norm_sq, LaguerreIndex};
