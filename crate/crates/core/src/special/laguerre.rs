//! Generalized Laguerre polynomials `L_b^a(ρ)` for integer `a, b >= 0`.
//!
//! Standard normalization: `∫ ρ^a e^-ρ L_b^a L_c^a dρ = Γ(a+b+1)/Γ(b+1) δ_bc`
//! and `L_1^a(ρ) = 1 + a - ρ`.
//!
//! Note on the derivative: the standard identity is
//! `d/dρ L_b^a = -L_{b-1}^{a+1}`. Only the ρ-multiplied form
//! `ρ L_b^a' = b L_b^a - (a+b) L_{b-1}^a` is used here.

use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// Superscript `a` and degree `b` of `L_b^a`.
///
/// For a hydrogenic state `a = 2l + d - 2` and `b = n - l - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaguerreIndex {
    pub a: u32,
    pub b: u32,
}

impl LaguerreIndex {
    pub fn new(a: u32, b: u32) -> Self {
        Self { a, b }
    }
}

/// `(L_b^a(ρ), L_{b-1}^a(ρ))`, with `L_{-1}^a = 0`.
///
/// Degree-ascending three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+a-ρ) L_k - (k+a) L_{k-1}`.
pub fn laguerre_pair(idx: LaguerreIndex, rho: f64) -> (f64, f64) {
    let a = idx.a as f64;
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..idx.b {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + a - rho) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `L_b^a(ρ)`.
pub fn laguerre_eval(idx: LaguerreIndex, rho: f64) -> f64 {
    debug_assert!(rho >= 0.0, "laguerre_eval: rho must be non-negative");
    laguerre_pair(idx, rho).0
}

/// `dL_b^a/dρ` from `ρ L' = b L_b^a - (a+b) L_{b-1}^a`. Requires `ρ > 0`.
pub fn laguerre_derivative(idx: LaguerreIndex, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "laguerre_derivative needs rho > 0, got {rho}"
        )));
    }
    if idx.b == 0 {
        return Ok(0.0);
    }
    let (l_b, l_prev) = laguerre_pair(idx, rho);
    let (a, b) = (idx.a as f64, idx.b as f64);
    Ok((b * l_b - (a + b) * l_prev) / rho)
}

/// `ln[Γ(a+b+1)/Γ(b+1)]`, the log of the squared norm of `L_b^a`.
pub fn log_norm_sq(idx: LaguerreIndex) -> f64 {
    let (a, b) = (idx.a as f64, idx.b as f64);
    ln_gamma(a + b + 1.0) - ln_gamma(b + 1.0)
}
