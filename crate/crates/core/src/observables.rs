//! Closed-form radial expectation values, uncertainties and the radial
//! uncertainty product.
//!
//! The bracketed polynomials in `n`, `l`, `d` are evaluated in `i64` and
//! cast once. Quantities that need `<1/r^2>` return [`Error::Undefined`]
//! for `d = 2, l = 0`, where that integral diverges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{self, PhysicalParams, QuantumState};

/// Marker used wherever an undefined observable is rendered.
pub const UNDEFINED_MARKER: &str = "undefined(d=2,l=0)";

fn nld(state: QuantumState) -> (i64, i64, i64) {
    (state.n() as i64, state.l() as i64, state.d() as i64)
}

/// `d^2 + d(6n - 2l - 7) + 2(3n^2 - 9n - l^2 + 2l + 6)`; `<r> = a0/(4Z)` times this.
pub fn r_bracket(state: QuantumState) -> i64 {
    let (n, l, d) = nld(state);
    d * d + d * (6 * n - 2 * l - 7) + 2 * (3 * n * n - 9 * n - l * l + 2 * l + 6)
}

/// Cubic bracket of `<r^2> = a0^2 ν / (8 Z^2)` times this.
pub fn r2_bracket(state: QuantumState) -> i64 {
    let (n, l, d) = nld(state);
    d * d * d
        + d * d * (12 * n - 6 * l - 12)
        + d * (30 * n * n - 6 * l * l - 12 * n * l - 78 * n + 30 * l + 47)
        + (20 * n * n * n - 12 * n * l * l - 90 * n * n + 18 * l * l + 24 * n * l + 130 * n
            - 36 * l
            - 60)
}

/// Quartic radicand of `Δr = a0/(4Z) sqrt(·)`.
///
/// Identically equal to `(2n+d-3) r2_bracket - r_bracket^2`, i.e.
/// `16 Z^2 Δr^2 / a0^2`, so it is positive for every admissible state.
pub fn delta_r_radicand(state: QuantumState) -> i64 {
    let (n, l, d) = nld(state);
    let (n2, l2) = (n * n, l * l);
    d * d * d * (2 * n - 2 * l - 1)
        + d * d * (6 * n2 - 6 * l2 - 18 * n + 12 * l + 10)
        + d * (8 * n2 * n - 8 * l2 * l - 36 * n2 + 24 * l2 + 62 * n - 22 * l - 33)
        + (4 * n2 * n2 - 4 * l2 * l2 - 24 * n2 * n + 16 * l2 * l + 62 * n2 - 22 * l2 - 78 * n
            + 12 * l
            + 36)
}

/// `1 - [(d-1)(d-3) + 4l(l+d-2)] / [(2n+d-3)(2l+d-2)]` as an integer
/// `(numerator, denominator)`; the denominator is zero for `d = 2, l = 0`.
pub fn momentum_ratio(state: QuantumState) -> (i64, i64) {
    let (n, l, d) = nld(state);
    let den = (2 * n + d - 3) * (2 * l + d - 2);
    let num = den - (d - 1) * (d - 3) - 4 * l * (l + d - 2);
    (num, den)
}

fn require_inverse_square(state: QuantumState, observable: &'static str) -> Result<()> {
    if state.inverse_square_defined() {
        Ok(())
    } else {
        Err(Error::Undefined { observable })
    }
}

pub fn expect_r(state: QuantumState, params: PhysicalParams) -> f64 {
    params.a0 / (4.0 * params.z) * r_bracket(state) as f64
}

pub fn expect_r2(state: QuantumState, params: PhysicalParams) -> f64 {
    let scale = params.a0 * params.a0 / (16.0 * params.z * params.z);
    scale * (state.two_nu() as i64 * r2_bracket(state)) as f64
}

pub fn delta_r(state: QuantumState, params: PhysicalParams) -> f64 {
    let radicand = delta_r_radicand(state);
    debug_assert!(radicand > 0, "negative Δr radicand for {state}");
    params.a0 / (4.0 * params.z) * (radicand as f64).sqrt()
}

/// Relative dispersion `Δr / <r>`, dimensionless.
pub fn sigma_r(state: QuantumState) -> f64 {
    (delta_r_radicand(state) as f64).sqrt() / r_bracket(state) as f64
}

/// `<1/r> = Z / (ν^2 a0)`.
pub fn expect_inv_r(state: QuantumState, params: PhysicalParams) -> f64 {
    let two_nu = state.two_nu() as f64;
    4.0 * params.z / (two_nu * two_nu * params.a0)
}

/// `<V> = -(Z hbar^2 / mu a0) <1/r>`.
pub fn expect_v(state: QuantumState, params: PhysicalParams) -> f64 {
    -params.z * params.hbar * params.hbar / (params.mu * params.a0) * expect_inv_r(state, params)
}

/// `<1/r^2> = 2 Z^2 / [a0^2 (2l+d-2) ν^3]`.
pub fn expect_inv_r2(state: QuantumState, params: PhysicalParams) -> Result<f64> {
    require_inverse_square(state, "expect_inv_r2")?;
    let a = state.laguerre_index().a as f64;
    let two_nu = state.two_nu() as f64;
    Ok(16.0 * params.z * params.z / (params.a0 * params.a0 * a * two_nu.powi(3)))
}

/// `∂E/∂l` with `∂n/∂l = 1`: `Z^2 hbar^2 / (mu ν^3 a0^2)`.
pub fn energy_l_derivative(state: QuantumState, params: PhysicalParams) -> f64 {
    let nu = state.nu();
    params.z * params.z * params.hbar * params.hbar
        / (params.mu * nu * nu * nu * params.a0 * params.a0)
}

/// `<1/r^2> = (2mu/hbar^2) (∂E/∂l) / (2l+d-2)`.
pub fn hellmann_feynman_inv_r2(state: QuantumState, params: PhysicalParams) -> Result<f64> {
    require_inverse_square(state, "hellmann_feynman_inv_r2")?;
    let a = state.laguerre_index().a as f64;
    Ok(2.0 * params.mu / (params.hbar * params.hbar) * energy_l_derivative(state, params) / a)
}

/// Always zero: `R` is real and `p_r` is Hermitian.
pub fn expect_pr(_state: QuantumState, _params: PhysicalParams) -> f64 {
    0.0
}

/// `<p_r^2> = Z^2 hbar^2 / (ν^2 a0^2) * (1 - [(d-1)(d-3) + 4l(l+d-2)] / [(2n+d-3)(2l+d-2)])`.
pub fn expect_pr2(state: QuantumState, params: PhysicalParams) -> Result<f64> {
    require_inverse_square(state, "expect_pr2")?;
    let (num, den) = momentum_ratio(state);
    let scale = params.momentum_scale() / state.nu();
    Ok(scale * scale * num as f64 / den as f64)
}

/// `<p_r^2> = -mu <V> - hbar^2 [(d-1)(d-3)/4 + l(l+d-2)] <1/r^2>`.
pub fn expect_pr2_via_potential(state: QuantumState, params: PhysicalParams) -> Result<f64> {
    let inv_r2 = expect_inv_r2(state, params)?;
    let d = state.d() as f64;
    let barrier = (d - 1.0) * (d - 3.0) / 4.0 + state.angular_eigenvalue() as f64;
    Ok(-params.mu * expect_v(state, params) - params.hbar * params.hbar * barrier * inv_r2)
}

/// `Δp_r = Z hbar / (ν a0) * sqrt(1 - ...)`.
pub fn delta_pr(state: QuantumState, params: PhysicalParams) -> Result<f64> {
    require_inverse_square(state, "delta_pr")?;
    let (num, den) = momentum_ratio(state);
    Ok(params.momentum_scale() / state.nu() * (num as f64 / den as f64).sqrt())
}

/// `Δr Δp_r`.
pub fn product(state: QuantumState, params: PhysicalParams) -> Result<f64> {
    Ok(delta_r(state, params) * delta_pr(state, params)?)
}

/// Single-expression form of the uncertainty product:
/// `sqrt(radicand) * hbar / (4ν) * sqrt(1 - ...)`, independent of `Z` and `a0`.
pub fn product_closed_form(state: QuantumState, params: PhysicalParams) -> Result<f64> {
    require_inverse_square(state, "product")?;
    let (num, den) = momentum_ratio(state);
    Ok((delta_r_radicand(state) as f64).sqrt() * params.hbar / (4.0 * state.nu())
        * (num as f64 / den as f64).sqrt())
}

/// Every closed-form quantity for one state. `None` marks observables that
/// diverge (`d = 2, l = 0`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableReport {
    pub state: QuantumState,
    pub params: PhysicalParams,
    pub expect_r: f64,
    pub expect_r2: f64,
    pub expect_inv_r: f64,
    pub expect_inv_r2: Option<f64>,
    pub expect_pr: f64,
    pub expect_pr2: Option<f64>,
    pub delta_r: f64,
    pub delta_pr: Option<f64>,
    pub sigma_r: f64,
    pub product: Option<f64>,
    pub energy: f64,
    pub expect_v: f64,
}

pub fn full_report(state: QuantumState, params: PhysicalParams) -> ObservableReport {
    ObservableReport {
        state,
        params,
        expect_r: expect_r(state, params),
        expect_r2: expect_r2(state, params),
        expect_inv_r: expect_inv_r(state, params),
        expect_inv_r2: expect_inv_r2(state, params).ok(),
        expect_pr: expect_pr(state, params),
        expect_pr2: expect_pr2(state, params).ok(),
        delta_r: delta_r(state, params),
        delta_pr: delta_pr(state, params).ok(),
        sigma_r: sigma_r(state),
        product: product(state, params).ok(),
        energy: hydrogen::energy(state, params),
        expect_v: expect_v(state, params),
    }
}

impl ObservableReport {
    /// `(name, value)` pairs in a fixed order, `None` for undefined entries.
    pub fn entries(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("expect_r", Some(self.expect_r)),
            ("expect_r2", Some(self.expect_r2)),
            ("expect_inv_r", Some(self.expect_inv_r)),
            ("expect_inv_r2", self.expect_inv_r2),
            ("expect_pr", Some(self.expect_pr)),
            ("expect_pr2", self.expect_pr2),
            ("delta_r", Some(self.delta_r)),
            ("delta_pr", self.delta_pr),
            ("sigma_r", Some(self.sigma_r)),
            ("product", self.product),
            ("energy", Some(self.energy)),
            ("expect_v", Some(self.expect_v)),
        ]
    }
}
