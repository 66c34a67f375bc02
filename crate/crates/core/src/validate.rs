//! Closed form vs quadrature comparisons, operator-identity checks and
//! grid sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{self, uniform_grid, PhysicalParams, QuantumState};
use crate::observables as obs;
use crate::quadrature::{expectation_oracle, ObservableKind};

/// Denominator floor for relative errors against exact-zero oracles.
pub const REL_ERROR_FLOOR: f64 = 1e-300;

/// Default sweep used by `validate` and the acceptance suite.
pub const DEFAULT_N_MAX: u32 = 6;
pub const DEFAULT_D_MIN: u32 = 2;
pub const DEFAULT_D_MAX: u32 = 12;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckKind {
    Norm,
    R,
    R2,
    InvR,
    InvR2,
    PR,
    PR2,
    DeltaR,
    SigmaR,
    DeltaPr,
    Product,
    Virial,
    HfInvR2,
}

impl CheckKind {
    pub const ALL: [CheckKind; 13] = [
        CheckKind::Norm,
        CheckKind::R,
        CheckKind::R2,
        CheckKind::InvR,
        CheckKind::InvR2,
        CheckKind::PR,
        CheckKind::PR2,
        CheckKind::DeltaR,
        CheckKind::SigmaR,
        CheckKind::DeltaPr,
        CheckKind::Product,
        CheckKind::Virial,
        CheckKind::HfInvR2,
    ];

    /// Checks that depend on `<1/r^2>` and are skipped for `d = 2, l = 0`.
    pub fn needs_inverse_square(self) -> bool {
        matches!(
            self,
            CheckKind::InvR2
                | CheckKind::PR2
                | CheckKind::DeltaPr
                | CheckKind::Product
                | CheckKind::HfInvR2
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Norm => "NORM",
            CheckKind::R => "R",
            CheckKind::R2 => "R2",
            CheckKind::InvR => "INV_R",
            CheckKind::InvR2 => "INV_R2",
            CheckKind::PR => "P_R",
            CheckKind::PR2 => "P_R2",
            CheckKind::DeltaR => "DELTA_R",
            CheckKind::SigmaR => "SIGMA_R",
            CheckKind::DeltaPr => "DELTA_PR",
            CheckKind::Product => "PRODUCT",
            CheckKind::Virial => "VIRIAL",
            CheckKind::HfInvR2 => "HF_INV_R2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped: excluded domain")]
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub state: QuantumState,
    pub kind: CheckKind,
    pub closed_form: Option<f64>,
    pub oracle: Option<f64>,
    pub alt_route: Option<f64>,
    /// `|closed_form - oracle| / max(|oracle|, 1e-300)`; for `P_R` the
    /// denominator is the momentum scale `Z hbar / a0`.
    pub rel_error: Option<f64>,
    /// Same measure for `alt_route` against the oracle.
    pub alt_rel_error: Option<f64>,
    pub verdict: Verdict,
    pub tolerance: f64,
}

impl ValidationRecord {
    fn skipped(state: QuantumState, kind: CheckKind, tolerance: f64) -> Self {
        Self {
            state,
            kind,
            closed_form: None,
            oracle: None,
            alt_route: None,
            rel_error: None,
            alt_rel_error: None,
            verdict: Verdict::Skipped,
            tolerance,
        }
    }

    /// Largest of `rel_error` and `alt_rel_error`; NaN counts as infinite.
    pub fn worst_error(&self) -> Option<f64> {
        let worst = [self.rel_error, self.alt_rel_error]
            .into_iter()
            .flatten()
            .map(|e| if e.is_nan() { f64::INFINITY } else { e })
            .fold(None, |acc: Option<f64>, e| Some(acc.map_or(e, |a| a.max(e))));
        if self.verdict == Verdict::Fail && worst.is_none() {
            return Some(f64::INFINITY);
        }
        worst
    }
}

fn relative_error(value: f64, reference: f64, scale: Option<f64>) -> f64 {
    let denom = scale.unwrap_or_else(|| reference.abs().max(REL_ERROR_FLOOR));
    (value - reference).abs() / denom
}

/// Quadrature values shared by several checks.
struct OracleValues {
    norm: Result<f64>,
    r: Result<f64>,
    r2: Result<f64>,
    inv_r: Result<f64>,
    inv_r2: Result<f64>,
    pr: Result<f64>,
    pr2: Result<f64>,
}

impl OracleValues {
    fn compute(state: QuantumState, params: PhysicalParams) -> Self {
        let q = |kind| expectation_oracle(state, params, kind);
        let defined = state.inverse_square_defined();
        let undefined = || Err(Error::Undefined { observable: "oracle" });
        Self {
            norm: q(ObservableKind::Norm),
            r: q(ObservableKind::R),
            r2: q(ObservableKind::R2),
            inv_r: q(ObservableKind::InvR),
            inv_r2: if defined { q(ObservableKind::InvR2) } else { undefined() },
            pr: q(ObservableKind::PR),
            pr2: if defined { q(ObservableKind::PR2) } else { undefined() },
        }
    }

    fn delta_r(&self) -> Result<f64> {
        let r = self.r.clone()?;
        Ok((self.r2.clone()? - r * r).sqrt())
    }

    fn delta_pr(&self) -> Result<f64> {
        // ⟨p_r⟩ = -i c, so |⟨p_r⟩|^2 = c^2
        let c = self.pr.clone()?;
        Ok((self.pr2.clone()? - c * c).sqrt())
    }
}

/// One record per check kind for a single state.
pub fn validate_state(
    state: QuantumState,
    params: PhysicalParams,
    tolerance: f64,
) -> Vec<ValidationRecord> {
    let oracle = OracleValues::compute(state, params);
    CheckKind::ALL
        .iter()
        .map(|&kind| {
            if kind.needs_inverse_square() && !state.inverse_square_defined() {
                return ValidationRecord::skipped(state, kind, tolerance);
            }
            check(state, params, tolerance, kind, &oracle)
        })
        .collect()
}

fn check(
    state: QuantumState,
    params: PhysicalParams,
    tolerance: f64,
    kind: CheckKind,
    q: &OracleValues,
) -> ValidationRecord {
    // (closed form, oracle, alternative closed-form route)
    let routes: Result<(f64, f64, Option<f64>)> = (|| {
        Ok(match kind {
            CheckKind::Norm => (1.0, q.norm.clone()?, None),
            CheckKind::R => (obs::expect_r(state, params), q.r.clone()?, None),
            CheckKind::R2 => (obs::expect_r2(state, params), q.r2.clone()?, None),
            CheckKind::InvR => (obs::expect_inv_r(state, params), q.inv_r.clone()?, None),
            CheckKind::InvR2 => (obs::expect_inv_r2(state, params)?, q.inv_r2.clone()?, None),
            CheckKind::PR => (obs::expect_pr(state, params), q.pr.clone()?, None),
            CheckKind::PR2 => (
                obs::expect_pr2(state, params)?,
                q.pr2.clone()?,
                Some(obs::expect_pr2_via_potential(state, params)?),
            ),
            CheckKind::DeltaR => {
                let (r, r2) = (obs::expect_r(state, params), obs::expect_r2(state, params));
                (obs::delta_r(state, params), q.delta_r()?, Some((r2 - r * r).sqrt()))
            }
            CheckKind::SigmaR => (
                obs::sigma_r(state),
                q.delta_r()? / q.r.clone()?,
                Some(obs::delta_r(state, params) / obs::expect_r(state, params)),
            ),
            CheckKind::DeltaPr => (
                obs::delta_pr(state, params)?,
                q.delta_pr()?,
                Some(obs::expect_pr2(state, params)?.sqrt()),
            ),
            CheckKind::Product => (
                obs::product_closed_form(state, params)?,
                q.delta_r()? * q.delta_pr()?,
                Some(obs::product(state, params)?),
            ),
            CheckKind::Virial => {
                let v_quad = -params.z * params.hbar * params.hbar / (params.mu * params.a0)
                    * q.inv_r.clone()?;
                (
                    2.0 * hydrogen::energy(state, params),
                    v_quad,
                    Some(obs::expect_v(state, params)),
                )
            }
            CheckKind::HfInvR2 => (
                obs::hellmann_feynman_inv_r2(state, params)?,
                q.inv_r2.clone()?,
                Some(obs::expect_inv_r2(state, params)?),
            ),
        })
    })();

    let (closed, oracle, alt) = match routes {
        Ok(v) => v,
        Err(_) => {
            return ValidationRecord {
                verdict: Verdict::Fail,
                ..ValidationRecord::skipped(state, kind, tolerance)
            }
        }
    };
    let scale = (kind == CheckKind::PR).then(|| params.momentum_scale());
    let rel_error = relative_error(closed, oracle, scale);
    let alt_rel_error = alt.map(|a| relative_error(a, oracle, scale));
    let pass = rel_error <= tolerance && alt_rel_error.is_none_or(|e| e <= tolerance);
    ValidationRecord {
        state,
        kind,
        closed_form: Some(closed),
        oracle: Some(oracle),
        alt_route: alt,
        rel_error: Some(rel_error),
        alt_rel_error,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        tolerance,
    }
}

/// Per-radius deviation `|[r, p_r] f / (i hbar f) - 1|` for the probes
/// `f_j(r) = r^j e^{-r/2}`, `j = l .. l + probe_count - 1`, on `radii`.
///
/// Both `r p_r f` and `p_r (r f)` are built from exact product-rule
/// derivatives; the `(d-1)/2r` term enters each side separately.
pub fn commutator_profile(
    state: QuantumState,
    params: PhysicalParams,
    probe_count: usize,
    radii: &[f64],
) -> Vec<f64> {
    let d = state.d() as f64;
    let hbar = params.hbar;
    let mut out = Vec::with_capacity(probe_count * radii.len());
    for j in state.l() as usize..state.l() as usize + probe_count {
        let j = j as f64;
        for &r in radii {
            let f = r.powf(j) * (-0.5 * r).exp();
            let df = (j / r - 0.5) * f;
            // p_r g = -i hbar (g' + (d-1)/(2r) g); keep the coefficient of -i
            let pr_f = hbar * (df + (d - 1.0) / (2.0 * r) * f);
            let rf = r * f;
            let d_rf = f + r * df;
            let pr_rf = hbar * (d_rf + (d - 1.0) / (2.0 * r) * rf);
            // [r, p_r] f = -i (r pr_f - pr_rf)
            let ratio = -(r * pr_f - pr_rf) / (hbar * f);
            out.push((ratio - 1.0).abs());
        }
    }
    out
}

/// Radii used by [`commutator_check`].
pub fn commutator_radii() -> Vec<f64> {
    uniform_grid(0.05, 20.0, 400)
}

/// Maximum commutator deviation over [`commutator_radii`].
pub fn commutator_check(state: QuantumState, params: PhysicalParams, probe_count: usize) -> Result<f64> {
    if probe_count < 1 {
        return Err(Error::InvalidArgument("probe_count must be >= 1".into()));
    }
    Ok(commutator_profile(state, params, probe_count, &commutator_radii())
        .into_iter()
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n_max: u32,
    pub d_min: u32,
    pub d_max: u32,
    pub tolerance: f64,
    pub states: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub worst_rel_error: f64,
    pub worst: Option<ValidationRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub records: Vec<ValidationRecord>,
}

/// Every admissible state with `n <= n_max`, `d_min <= d <= d_max`, ordered by `(n, l, d)`.
pub fn sweep_states(n_max: u32, d_min: u32, d_max: u32) -> Result<Vec<QuantumState>> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be >= 1".into()));
    }
    if d_min < 2 || d_min > d_max {
        return Err(Error::InvalidArgument(format!(
            "dimension range must satisfy 2 <= d_min <= d_max, got {d_min}..{d_max}"
        )));
    }
    let mut states = Vec::new();
    for n in 1..=n_max {
        for l in 0..n {
            for d in d_min..=d_max {
                states.push(QuantumState::new(n, l, d)?);
            }
        }
    }
    Ok(states)
}

pub fn sweep_validate(
    n_max: u32,
    d_min: u32,
    d_max: u32,
    params: PhysicalParams,
    tolerance: f64,
) -> Result<SweepReport> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be > 0".into()));
    }
    let states = sweep_states(n_max, d_min, d_max)?;
    let records: Vec<ValidationRecord> = states
        .par_iter()
        .flat_map_iter(|&s| validate_state(s, params, tolerance))
        .collect();

    let count = |v: Verdict| records.iter().filter(|r| r.verdict == v).count();
    let worst = records
        .iter()
        .filter(|r| r.verdict != Verdict::Skipped)
        .max_by(|a, b| {
            a.worst_error()
                .unwrap_or(0.0)
                .total_cmp(&b.worst_error().unwrap_or(0.0))
        })
        .cloned();
    let summary = SweepSummary {
        n_max,
        d_min,
        d_max,
        tolerance,
        states: states.len(),
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        skipped: count(Verdict::Skipped),
        worst_rel_error: worst.as_ref().and_then(|w| w.worst_error()).unwrap_or(0.0),
        worst,
    };
    Ok(SweepReport { summary, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: u32, l: u32, d: u32) -> QuantumState {
        QuantumState::new(n, l, d).unwrap()
    }

    #[test]
    fn ground_state_3d_all_pass() {
        let recs = validate_state(st(1, 0, 3), PhysicalParams::default(), 1e-10);
        assert_eq!(recs.len(), CheckKind::ALL.len());
        for r in &recs {
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
        let norm = recs.iter().find(|r| r.kind == CheckKind::Norm).unwrap();
        assert_eq!(norm.closed_form, Some(1.0));
    }

    #[test]
    fn ground_state_2d_skips_inverse_square() {
        let recs = validate_state(st(1, 0, 2), PhysicalParams::default(), 1e-10);
        for r in &recs {
            if r.kind.needs_inverse_square() {
                assert_eq!(r.verdict, Verdict::Skipped, "{:?}", r.kind);
            } else {
                assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
            }
        }
    }

    #[test]
    fn impossible_tolerance_fails() {
        let recs = validate_state(st(3, 1, 5), PhysicalParams::default(), 1e-30);
        assert!(recs.iter().any(|r| r.verdict == Verdict::Fail));
    }

    #[test]
    fn commutator_examples() {
        let p = PhysicalParams::default();
        assert!(commutator_check(st(1, 0, 3), p, 1).unwrap() <= 1e-12);
        assert!(commutator_check(st(3, 2, 4), p, 5).unwrap() <= 1e-12);
        assert!(commutator_check(st(1, 0, 3), p, 0).is_err());
        let radii = commutator_radii();
        let a = commutator_profile(st(2, 1, 2), p, 3, &radii);
        let b = commutator_profile(st(2, 1, 9), p, 3, &radii);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!(x.max(*y) <= 1e-12);
        }
    }

    #[test]
    fn sweep_preconditions() {
        let p = PhysicalParams::default();
        assert!(sweep_validate(3, 6, 2, p, 1e-10).is_err());
        assert!(sweep_validate(0, 2, 3, p, 1e-10).is_err());
        assert!(sweep_validate(3, 1, 3, p, 1e-10).is_err());
        assert!(sweep_validate(3, 2, 3, p, 0.0).is_err());
    }

    #[test]
    fn small_sweep_has_no_failures() {
        let rep = sweep_validate(3, 2, 6, PhysicalParams::default(), 1e-10).unwrap();
        assert_eq!(rep.summary.failed, 0, "{:?}", rep.summary.worst);
        assert_eq!(rep.summary.states, 6 * 5);
        // three (n, l=0, d=2) states, five skipped kinds each
        assert_eq!(rep.summary.skipped, 3 * 5);
        assert!(rep.summary.worst_rel_error <= 1e-10);
    }

    #[test]
    fn sweep_is_deterministic_and_ordered() {
        let p = PhysicalParams::default();
        let a = sweep_validate(3, 2, 5, p, 1e-10).unwrap();
        let b = sweep_validate(3, 2, 5, p, 1e-10).unwrap();
        assert_eq!(a, b);
        let keys: Vec<_> = a.records.iter().map(|r| (r.state, r.kind)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
