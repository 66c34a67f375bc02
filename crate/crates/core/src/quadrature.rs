//! Gauss–Laguerre quadrature and the radial expectation-value oracle.
//!
//! Every integrand produced by a hydrogenic state is a polynomial in
//! `ρ = βr` times `e^-ρ`, so a rule of sufficient order is exact up to
//! rounding. The oracle shares polynomial evaluation with the closed forms
//! and nothing else: no moment formulas are used on this path.
//!
//! Weights are carried as logarithms. For orders above roughly 180 the
//! outermost weights fall below the smallest subnormal `f64`, while
//! `log_weight + p ln ρ` stays representable.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{self, PhysicalParams, QuantumState};
use crate::special::{laguerre_derivative, laguerre_eval, LaguerreIndex};

pub const MAX_ORDER: usize = 500;
const MAX_NEWTON_STEPS: usize = 100;
/// Extra nodes beyond the minimum needed for polynomial exactness.
const ORDER_MARGIN: usize = 4;
/// Rescaling threshold for the node-finding recurrence (a power of two, so
/// rescaling is exact).
const RESCALE: f64 = 3.273_390_607_896_142e150; // 2^500

/// Gauss–Laguerre rule for the weight `e^-ρ` on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    log_weights: Vec<f64>,
}

/// Double-double value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    fn quick(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd { hi: s, lo: lo - (s - hi) }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        Dd::quick(s.hi, s.lo + self.lo + o.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + self.hi * o.lo + self.lo * o.hi;
        Dd::quick(p, e)
    }

    fn scale(self, k: f64) -> Dd {
        let p = self.hi * k;
        Dd::quick(p, self.hi.mul_add(k, -p) + self.lo * k)
    }

    fn div(self, k: f64) -> Dd {
        let q1 = self.hi / k;
        let p = q1 * k;
        let e = q1.mul_add(k, -p);
        let q2 = (self.hi - p - e + self.lo) / k;
        Dd::quick(q1, q2)
    }
}

/// `(L_N^0(x), L_{N-1}^0(x))` divided by a common factor `e^{log_scale}`.
///
/// The recurrence runs in double-double: near a root `L_N` is the small
/// difference of large terms, and plain `f64` leaves a noise floor above
/// the Newton tolerance for orders in the hundreds.
fn scaled_laguerre0(order: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = Dd::ZERO;
    let mut cur = Dd::ONE;
    let mut log_scale = 0.0;
    for k in 0..order {
        let k = k as f64;
        let coef = Dd::two_sum(2.0 * k + 1.0, -x);
        let next = coef.mul(cur).add(prev.scale(-k)).div(k + 1.0);
        prev = cur;
        cur = next;
        if cur.hi.abs() > RESCALE {
            cur = cur.scale(1.0 / RESCALE);
            prev = prev.scale(1.0 / RESCALE);
            log_scale += RESCALE.ln();
        }
    }
    (cur.hi + cur.lo, prev.hi + prev.lo, log_scale)
}

/// Asymptotic starting guess for node `i` given the previously converged nodes.
fn initial_guess(order: usize, i: usize, nodes: &[f64]) -> f64 {
    let n = order as f64;
    match i {
        0 => 3.0 / (1.0 + 2.4 * n),
        1 => nodes[0] + 15.0 / (1.0 + 2.5 * n),
        _ => {
            let ai = (i - 1) as f64;
            let z = nodes[i - 1];
            z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
        }
    }
}

/// Builds the order-`N` rule: Newton on the roots of `L_N^0`, weights
/// `w_i = 1 / (x_i [L_N'(x_i)]^2)`.
pub fn build_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "quadrature order must be in 1..={MAX_ORDER}, got {order}"
        )));
    }
    let n = order as f64;
    let mut nodes = Vec::with_capacity(order);
    let mut log_weights = Vec::with_capacity(order);
    for i in 0..order {
        let mut x = initial_guess(order, i, &nodes);
        let mut converged = false;
        for _ in 0..MAX_NEWTON_STEPS {
            let (p, p_prev, _) = scaled_laguerre0(order, x);
            // x L_N' = N (L_N - L_{N-1}); the common scale cancels in the ratio
            let step = x * p / (n * (p - p_prev));
            x -= step;
            if step.abs() <= 1e-14 * (1.0 + x) {
                converged = true;
                break;
            }
        }
        if !converged || !(x > 0.0) || nodes.last().is_some_and(|&last| x <= last) {
            return Err(Error::NoConvergence { order, index: i });
        }
        let (p, p_prev, log_scale) = scaled_laguerre0(order, x);
        let log_deriv = (n * (p - p_prev) / x).abs().ln() + log_scale;
        nodes.push(x);
        log_weights.push(-x.ln() - 2.0 * log_deriv);
    }
    Ok(QuadratureRule { order, nodes, log_weights })
}

/// Shared, lazily built rule of the given order.
pub fn rule(order: usize) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&order) {
        return Ok(Arc::clone(r));
    }
    let built = Arc::new(build_rule(order)?);
    Ok(Arc::clone(cache.lock().unwrap().entry(order).or_insert(built)))
}

/// Smallest order (plus margin) exact for `ρ^degree e^-ρ`.
pub fn order_for_degree(degree: u32) -> usize {
    (degree as usize + 2) / 2 + ORDER_MARGIN
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn weights(&self) -> Vec<f64> {
        self.log_weights.iter().map(|w| w.exp()).collect()
    }

    /// `∫ e^-ρ f(ρ) dρ`.
    pub fn integrate(&self, f: impl FnMut(f64) -> f64) -> f64 {
        self.integrate_with_power(0, f)
    }

    /// `∫ ρ^power e^-ρ f(ρ) dρ`, with `ρ^power` folded into the log-weight.
    pub fn integrate_with_power(&self, power: i32, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.log_weights)
            .map(|(&x, &lw)| (lw + power as f64 * x.ln()).exp() * f(x))
            .sum()
    }
}

/// `∫ ρ^(a+k) e^-ρ [L_b^a(ρ)]^2 dρ`, exact to rounding. Requires `a + k >= 0`.
pub fn moment_integral(idx: LaguerreIndex, k: i32) -> Result<f64> {
    let power = idx.a as i32 + k;
    if power < 0 {
        return Err(Error::DivergentIntegral { a: idx.a, k });
    }
    let rule = rule(order_for_degree(power as u32 + 2 * idx.b))?;
    Ok(rule.integrate_with_power(power, |x| {
        let l = laguerre_eval(idx, x);
        l * l
    }))
}

/// Operators the oracle can average over a radial eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ObservableKind {
    Norm,
    R,
    R2,
    InvR,
    InvR2,
    PR,
    PR2,
}

/// `⟨Â⟩ = ∫ r^{d-1} R (Â R) dr` by quadrature in `ρ = βr`.
///
/// For `PR` the value `c` is returned with `⟨p_r⟩ = -i c`; a real expectation
/// value requires `c = 0`. Derivatives of `R` enter analytically through
/// [`laguerre_derivative`] and the Laguerre differential equation.
pub fn expectation_oracle(
    state: QuantumState,
    params: PhysicalParams,
    kind: ObservableKind,
) -> Result<f64> {
    let wf = hydrogen::wavefunction(state, params);
    let idx = state.laguerre_index();
    let d = state.d() as f64;
    let ln_beta = wf.beta.ln();
    let ln_n2 = 2.0 * wf.log_norm;

    // ⟨r^s⟩ = N^2 β^{-(d+s)} ∫ ρ^{a+1+s} e^-ρ L^2 dρ
    let radial_moment = |s: i32| -> Result<f64> {
        let integral = moment_integral(idx, s + 1)?;
        Ok((ln_n2 - (d + s as f64) * ln_beta).exp() * integral)
    };

    match kind {
        ObservableKind::Norm => radial_moment(0),
        ObservableKind::R => radial_moment(1),
        ObservableKind::R2 => radial_moment(2),
        ObservableKind::InvR => radial_moment(-1),
        ObservableKind::InvR2 => radial_moment(-2),
        ObservableKind::PR => {
            let integral = derivative_integral(state, |x, r| {
                r.value * (r.first + (d - 1.0) / (2.0 * x) * r.value)
            })?;
            Ok(params.hbar * (ln_n2 + (1.0 - d) * ln_beta).exp() * integral)
        }
        ObservableKind::PR2 => {
            if !state.inverse_square_defined() {
                return Err(Error::DivergentIntegral { a: idx.a, k: -1 });
            }
            let integral = derivative_integral(state, |x, r| {
                r.value
                    * (r.second
                        + (d - 1.0) / x * r.first
                        + (d - 1.0) * (d - 3.0) / (4.0 * x * x) * r.value)
            })?;
            Ok(-params.hbar * params.hbar * (ln_n2 + (2.0 - d) * ln_beta).exp() * integral)
        }
    }
}

/// `e^{ρ/2} ρ^{-l} R/N` and its first two ρ-derivatives (same scaling).
struct ReducedRadial {
    value: f64,
    first: f64,
    second: f64,
}

fn reduced_radial(state: QuantumState, x: f64) -> Result<ReducedRadial> {
    let idx = state.laguerre_index();
    let (a, b, l) = (idx.a as f64, idx.b as f64, state.l() as f64);
    let lag = laguerre_eval(idx, x);
    let lag1 = laguerre_derivative(idx, x)?;
    // x L'' = (x - a - 1) L' - b L
    let lag2 = ((x - a - 1.0) * lag1 - b * lag) / x;
    // u = ρ^l L, divided through by ρ^l
    let u0 = lag;
    let u1 = l / x * lag + lag1;
    let u2 = l * (l - 1.0) / (x * x) * lag + 2.0 * l / x * lag1 + lag2;
    // R/N = e^{-ρ/2} u
    Ok(ReducedRadial {
        value: u0,
        first: u1 - 0.5 * u0,
        second: u2 - u1 + 0.25 * u0,
    })
}

/// `∫ ρ^{d-1} (R/N) (op R/N) dρ` with `f(ρ, reduced)` returning the
/// operator-applied product in reduced form; the leftover `ρ^{a+1} e^-ρ`
/// is handled by the rule.
fn derivative_integral(
    state: QuantumState,
    f: impl Fn(f64, &ReducedRadial) -> f64,
) -> Result<f64> {
    let idx = state.laguerre_index();
    let rule = rule(order_for_degree(idx.a + 2 * idx.b + 1))?;
    let mut err = None;
    let value = rule.integrate_with_power(idx.a as i32 + 1, |x| match reduced_radial(state, x) {
        Ok(r) => f(x, &r),
        Err(e) => {
            err = err.take().or(Some(e));
            0.0
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// `⟨p_r^2⟩ = 2mu (E - ⟨V_eff⟩)` with `⟨1/r⟩` and `⟨1/r^2⟩` from quadrature.
pub fn pr2_energy_route(state: QuantumState, params: PhysicalParams) -> Result<f64> {
    let inv_r = expectation_oracle(state, params, ObservableKind::InvR)?;
    let inv_r2 = expectation_oracle(state, params, ObservableKind::InvR2)?;
    let d = state.d() as f64;
    let (hbar, mu) = (params.hbar, params.mu);
    let coulomb = -params.z * hbar * hbar / (mu * params.a0) * inv_r;
    let barrier = hbar * hbar / (2.0 * mu)
        * (state.angular_eigenvalue() as f64 + (d - 1.0) * (d - 3.0) / 4.0)
        * inv_r2;
    Ok(2.0 * mu * (hydrogen::energy(state, params) - (coulomb + barrier)))
}
