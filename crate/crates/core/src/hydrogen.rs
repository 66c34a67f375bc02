//! Quantum states, the unit system, energies, the effective potential and
//! the normalized d-dimensional radial wavefunction.
//!
//! Units: lengths in `a0`, actions in `hbar`, masses in `mu`. The Coulomb
//! coupling `k e^2` never appears on its own; it is folded into
//! `a0 = hbar^2 / (mu k e^2)`.
//!
//! In two dimensions the angular label is the magnetic quantum number `m`;
//! pass `l = |m|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observables;
use crate::special::{laguerre_eval, ln_gamma, LaguerreIndex};

/// Default number of points for node counting and tabulation.
pub const DEFAULT_GRID_POINTS: usize = 2000;

/// Default radial extent for grids, in units of `<r>`.
pub const DEFAULT_GRID_EXTENT: f64 = 10.0;

/// Bound state `(n, l, d)` with `n >= 1`, `0 <= l <= n-1`, `d >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumState {
    n: u32,
    l: u32,
    d: u32,
}

impl QuantumState {
    pub fn new(n: u32, l: u32, d: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidState("n must satisfy n >= 1".into()));
        }
        if l >= n {
            return Err(Error::InvalidState("l must satisfy 0 <= l <= n-1".into()));
        }
        if d < 2 {
            return Err(Error::InvalidState("d must satisfy d >= 2".into()));
        }
        Ok(Self { n, l, d })
    }

    /// Signed-input constructor used by the CLI.
    pub fn from_signed(n: i64, l: i64, d: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidState("n must satisfy n >= 1".into()));
        }
        if l < 0 || l >= n {
            return Err(Error::InvalidState("l must satisfy 0 <= l <= n-1".into()));
        }
        if d < 2 {
            return Err(Error::InvalidState("d must satisfy d >= 2".into()));
        }
        let cast = |v: i64| {
            u32::try_from(v).map_err(|_| Error::InvalidState(format!("{v} is out of range")))
        };
        Self::new(cast(n)?, cast(l)?, cast(d)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `a = 2l + d - 2`, `b = n - l - 1`.
    pub fn laguerre_index(&self) -> LaguerreIndex {
        LaguerreIndex::new(2 * self.l + self.d - 2, self.n - self.l - 1)
    }

    /// `2ν = 2n + d - 3`, always a positive integer.
    pub fn two_nu(&self) -> u32 {
        2 * self.n + self.d - 3
    }

    /// Effective principal quantum number `ν = n + (d-3)/2`.
    pub fn nu(&self) -> f64 {
        self.two_nu() as f64 / 2.0
    }

    /// Eigenvalue factor of `L^2 / hbar^2`: `l(l + d - 2)`.
    pub fn angular_eigenvalue(&self) -> u64 {
        let l = self.l as u64;
        l * (l + self.d as u64 - 2)
    }

    /// `<1/r^2>` (and everything built on it) is finite iff `2l + d - 2 >= 1`.
    pub fn inverse_square_defined(&self) -> bool {
        self.laguerre_index().a >= 1
    }
}

impl std::fmt::Display for QuantumState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, l={}, d={})", self.n, self.l, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub z: f64,
    pub a0: f64,
    pub hbar: f64,
    pub mu: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self { z: 1.0, a0: 1.0, hbar: 1.0, mu: 1.0 }
    }
}

impl PhysicalParams {
    pub fn new(z: f64, a0: f64, hbar: f64, mu: f64) -> Result<Self> {
        for (name, v) in [("Z", z), ("a0", a0), ("hbar", hbar), ("mu", mu)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidState(format!("{name} must be a positive finite number")));
            }
        }
        Ok(Self { z, a0, hbar, mu })
    }

    /// Natural units with nuclear charge `z`.
    pub fn natural(z: f64) -> Result<Self> {
        Self::new(z, 1.0, 1.0, 1.0)
    }

    /// Momentum scale `Z hbar / a0`.
    pub fn momentum_scale(&self) -> f64 {
        self.z * self.hbar / self.a0
    }
}

/// `E = -(1/2mu) Z^2 hbar^2 / (ν^2 a0^2)`.
pub fn energy(state: QuantumState, params: PhysicalParams) -> f64 {
    let nu = state.nu();
    -params.z * params.z * params.hbar * params.hbar
        / (2.0 * params.mu * nu * nu * params.a0 * params.a0)
}

/// Coulomb potential `V(r) = -Z hbar^2 / (mu a0 r)`.
pub fn coulomb_potential(params: PhysicalParams, r: f64) -> f64 {
    -params.z * params.hbar * params.hbar / (params.mu * params.a0 * r)
}

/// Coulomb term plus the centrifugal `l(l+d-2)` and dimensional
/// `(d-1)(d-3)/4` barriers, each scaled by `hbar^2 / (2 mu r^2)`.
pub fn effective_potential(state: QuantumState, params: PhysicalParams, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "effective potential needs r > 0, got {r}"
        )));
    }
    let d = state.d() as f64;
    let barrier = state.angular_eigenvalue() as f64 + (d - 1.0) * (d - 3.0) / 4.0;
    let kinetic = params.hbar * params.hbar / (2.0 * params.mu);
    Ok(coulomb_potential(params, r) + kinetic * barrier / (r * r))
}

/// Normalized `R_nl(r) = N e^{-ρ/2} ρ^l L_{n-l-1}^{2l+d-2}(ρ)` with `ρ = βr`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialWavefunction {
    pub state: QuantumState,
    pub params: PhysicalParams,
    /// Inverse length scale `β = 2Z / (ν a0)`.
    pub beta: f64,
    /// `ln N`.
    pub log_norm: f64,
}

pub fn wavefunction(state: QuantumState, params: PhysicalParams) -> RadialWavefunction {
    let beta = 2.0 * params.z / (state.nu() * params.a0);
    let (n, l, d) = (state.n() as f64, state.l() as f64, state.d() as f64);
    let log_norm = 0.5
        * (d * beta.ln() + ln_gamma(n - l) - (state.two_nu() as f64).ln() - ln_gamma(n + l + d - 2.0));
    RadialWavefunction { state, params, beta, log_norm }
}

impl RadialWavefunction {
    pub fn norm(&self) -> f64 {
        self.log_norm.exp()
    }

    /// `R(r)` for `r >= 0`.
    pub fn eval(&self, r: f64) -> f64 {
        let rho = self.beta * r;
        let l = self.state.l();
        let poly = laguerre_eval(self.state.laguerre_index(), rho);
        if rho == 0.0 {
            return if l == 0 { self.norm() * poly } else { 0.0 };
        }
        (self.log_norm - 0.5 * rho + l as f64 * rho.ln()).exp() * poly
    }

    /// Radial probability density `P(r) = r^{d-1} |R(r)|^2`.
    pub fn density(&self, r: f64) -> f64 {
        let value = self.eval(r);
        r.powi(self.state.d() as i32 - 1) * value * value
    }

    /// Uniform grid `r_i = r_max * i / (points - 1)`, `i = 0..points`.
    pub fn tabulate(&self, r_max: f64, points: usize) -> Vec<(f64, f64, f64)> {
        uniform_grid(0.0, r_max, points)
            .into_iter()
            .map(|r| (r, self.eval(r), self.density(r)))
            .collect()
    }

    /// Sign changes of `R` over `points` equally spaced radii in `(0, r_max]`.
    pub fn node_count(&self, r_max: f64, points: usize) -> usize {
        let mut count = 0;
        let mut last = 0.0_f64;
        for i in 1..=points {
            let v = self.eval(r_max * i as f64 / points as f64);
            if v == 0.0 {
                continue;
            }
            if last != 0.0 && v.signum() != last.signum() {
                count += 1;
            }
            last = v;
        }
        count
    }

    /// Node count on the default grid `(0, 10 <r>]`, 2000 points.
    pub fn default_node_count(&self) -> usize {
        let extent = DEFAULT_GRID_EXTENT * observables::expect_r(self.state, self.params);
        self.node_count(extent, DEFAULT_GRID_POINTS)
    }
}

pub(crate) fn uniform_grid(start: f64, end: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..points)
            .map(|i| start + (end - start) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}
