//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one line; the process fails if any criterion fails.

use std::process::Command;

use hydrodim::hydrogen::{self, PhysicalParams, QuantumState};
use hydrodim::observables as obs;
use hydrodim::quadrature::{expectation_oracle, pr2_energy_route, ObservableKind};
use hydrodim::validate::{commutator_check, sweep_states, sweep_validate};

type Outcome = Result<String, String>;

const N_MAX: u32 = 6;
const D_MIN: u32 = 2;
const D_MAX: u32 = 12;

fn grid() -> Vec<QuantumState> {
    sweep_states(N_MAX, D_MIN, D_MAX).expect("grid")
}

fn one() -> PhysicalParams {
    PhysicalParams::default()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / a.abs().max(b.abs())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hydrodim"))
}

/// Tracks the worst deviation seen and the state it came from.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0, at: String::new() }
    }

    fn see(&mut self, value: f64, at: impl FnOnce() -> String) {
        if !(value <= self.value) {
            self.value = value;
            self.at = at();
        }
    }

    fn within(&self, tol: f64, what: &str) -> Outcome {
        if self.value <= tol {
            Ok(format!("{what}: max deviation {:.2e} <= {tol:.0e}", self.value))
        } else {
            Err(format!("{what}: deviation {:.2e} > {tol:.0e} at {}", self.value, self.at))
        }
    }
}

fn dual_path() -> Outcome {
    let tol = 1e-10;
    let report = sweep_validate(N_MAX, D_MIN, D_MAX, one(), tol).map_err(|e| e.to_string())?;
    let s = &report.summary;
    if s.failed != 0 {
        return Err(format!("{} failed records, worst {:?}", s.failed, s.worst));
    }
    let status = bin()
        .args(["validate", "--format", "json", "--out"])
        .arg(std::env::temp_dir().join("hydrodim-acceptance-validate.json"))
        .output()
        .map_err(|e| e.to_string())?
        .status;
    if status.code() != Some(0) {
        return Err(format!("validate exited with {status}"));
    }
    Ok(format!(
        "{} states, {} passed, {} skipped, worst relative error {:.2e}; validate exits 0",
        s.states, s.passed, s.skipped, s.worst_rel_error
    ))
}

fn ground_state_product() -> Outcome {
    let state = QuantumState::new(1, 0, 3).unwrap();
    let expected = 0.866025403784_f64;
    let report = obs::full_report(state, one());
    let value = report.product.ok_or("product undefined")?;
    let oracle_dr = {
        let r = expectation_oracle(state, one(), ObservableKind::R).map_err(|e| e.to_string())?;
        let r2 = expectation_oracle(state, one(), ObservableKind::R2).map_err(|e| e.to_string())?;
        (r2 - r * r).sqrt()
    };
    let oracle_dp = expectation_oracle(state, one(), ObservableKind::PR2)
        .map_err(|e| e.to_string())?
        .sqrt();
    for (label, v) in [("closed form", value), ("oracle", oracle_dr * oracle_dp)] {
        if (v - expected).abs() > 1e-12 {
            return Err(format!("{label} product {v} differs from {expected}"));
        }
    }
    let output = bin()
        .args(["report", "-n", "1", "-l", "0", "-d", "3", "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&output.stdout);
    if !text.lines().any(|l| l.starts_with("product,0.866025403784,")) {
        return Err(format!("report output lacks the product row:\n{text}"));
    }
    Ok(format!("product = {value:.15} hbar, oracle agrees"))
}

fn heisenberg() -> Outcome {
    let mut min = f64::INFINITY;
    let mut at = String::new();
    let mut count = 0;
    for state in grid() {
        if let Ok(p) = obs::product(state, one()) {
            count += 1;
            if p < min {
                min = p;
                at = state.to_string();
            }
        }
    }
    if min > 0.5 {
        Ok(format!("min product {min:.12} hbar at {at} over {count} states"))
    } else {
        Err(format!("product {min} <= 0.5 hbar at {at}"))
    }
}

/// Lower-dimensional formulas written out explicitly for d = 3 and d = 2.
mod low_dim {
    pub fn r_3d(n: f64, l: f64) -> f64 {
        0.5 * (3.0 * n * n - l * (l + 1.0))
    }
    pub fn r2_3d(n: f64, l: f64) -> f64 {
        0.5 * n * n * (5.0 * n * n - 3.0 * l * (l + 1.0) + 1.0)
    }
    pub fn delta_r_3d(n: f64, l: f64) -> f64 {
        0.5 * (n * n * (n * n + 2.0) - (l * (l + 1.0)).powi(2)).sqrt()
    }
    pub fn inv_r_3d(n: f64) -> f64 {
        1.0 / (n * n)
    }
    pub fn inv_r2_3d(n: f64, l: f64) -> f64 {
        2.0 / ((2.0 * l + 1.0) * n.powi(3))
    }
    pub fn delta_pr_3d(n: f64, l: f64) -> f64 {
        (1.0 - 2.0 * l * (l + 1.0) / (n * (2.0 * l + 1.0))).sqrt() / n
    }
    pub fn energy_3d(n: f64) -> f64 {
        -0.5 / (n * n)
    }
    pub fn pr2_potential_3d(n: f64, l: f64) -> f64 {
        let e = energy_3d(n);
        2.0 * (e + inv_r_3d(n)) - l * (l + 1.0) * inv_r2_3d(n, l)
    }

    pub fn r_2d(n: f64, l: f64) -> f64 {
        0.5 * (3.0 * n * n - 3.0 * n - l * l + 1.0)
    }
    pub fn r2_2d(n: f64, l: f64) -> f64 {
        0.125 * (2.0 * n - 1.0) * (n * (10.0 * n * n - 15.0 * n + 11.0) - 3.0 * l * l * (2.0 * n - 1.0) - 3.0)
    }
    pub fn delta_r_2d(n: f64, l: f64) -> f64 {
        (n * (2.0 * n * n * (n - 2.0) + 7.0 * n - 5.0) - l * l * (2.0 * l * l - 1.0) + 1.0).sqrt()
            / (2.0 * 2f64.sqrt())
    }
    pub fn inv_r_2d(n: f64) -> f64 {
        1.0 / ((n - 0.5) * (n - 0.5))
    }
    pub fn inv_r2_2d(n: f64, l: f64) -> f64 {
        1.0 / (l * (n - 0.5).powi(3))
    }
    pub fn delta_pr_2d(n: f64, l: f64) -> f64 {
        (1.0 - (2.0 * l - 1.0 / (2.0 * l)) / (2.0 * n - 1.0)).sqrt() / (n - 0.5)
    }
    pub fn energy_2d(n: f64) -> f64 {
        -0.5 / ((n - 0.5) * (n - 0.5))
    }
    pub fn pr2_potential_2d(n: f64, l: f64) -> f64 {
        let e = energy_2d(n);
        2.0 * (e + inv_r_2d(n)) - (l * l - 0.25) * inv_r2_2d(n, l)
    }
}

fn specialization() -> Outcome {
    use low_dim::*;
    let p = one();
    let mut worst = Worst::new();
    let mut compared = 0;
    for n in 1..=12u32 {
        for l in 0..n {
            let (nf, lf) = (n as f64, l as f64);

            let s3 = QuantumState::new(n, l, 3).unwrap();
            let mut pairs3 = vec![
                ("r", obs::expect_r(s3, p), r_3d(nf, lf)),
                ("r2", obs::expect_r2(s3, p), r2_3d(nf, lf)),
                ("delta_r", obs::delta_r(s3, p), delta_r_3d(nf, lf)),
                ("inv_r", obs::expect_inv_r(s3, p), inv_r_3d(nf)),
                ("inv_r2", obs::expect_inv_r2(s3, p).unwrap(), inv_r2_3d(nf, lf)),
                ("hf_inv_r2", obs::hellmann_feynman_inv_r2(s3, p).unwrap(), inv_r2_3d(nf, lf)),
                ("delta_pr", obs::delta_pr(s3, p).unwrap(), delta_pr_3d(nf, lf)),
                ("energy", hydrogen::energy(s3, p), energy_3d(nf)),
                ("pr2_potential", obs::expect_pr2_via_potential(s3, p).unwrap(), pr2_potential_3d(nf, lf)),
                ("angular", s3.angular_eigenvalue() as f64, lf * (lf + 1.0)),
            ];
            for r in [0.3, 1.7, 9.0] {
                let v = hydrogen::effective_potential(s3, p, r).unwrap();
                pairs3.push(("v_eff", v, -1.0 / r + lf * (lf + 1.0) / (2.0 * r * r)));
            }

            let s2 = QuantumState::new(n, l, 2).unwrap();
            let mut pairs2 = vec![
                ("r", obs::expect_r(s2, p), r_2d(nf, lf)),
                ("r2", obs::expect_r2(s2, p), r2_2d(nf, lf)),
                ("delta_r", obs::delta_r(s2, p), delta_r_2d(nf, lf)),
                ("inv_r", obs::expect_inv_r(s2, p), inv_r_2d(nf)),
                ("energy", hydrogen::energy(s2, p), energy_2d(nf)),
                ("angular", s2.angular_eigenvalue() as f64, lf * lf),
            ];
            for r in [0.3, 1.7, 9.0] {
                if let Ok(v) = hydrogen::effective_potential(s2, p, r) {
                    pairs2.push(("v_eff", v, -1.0 / r + lf * lf / (2.0 * r * r) - 1.0 / (8.0 * r * r)));
                }
            }
            if l == 0 {
                let excluded = [
                    obs::expect_inv_r2(s2, p).is_err(),
                    obs::hellmann_feynman_inv_r2(s2, p).is_err(),
                    obs::delta_pr(s2, p).is_err(),
                    obs::expect_pr2(s2, p).is_err(),
                    obs::product(s2, p).is_err(),
                ];
                if excluded.contains(&false) {
                    return Err(format!("{s2}: inverse-square quantity returned a value"));
                }
            } else {
                pairs2.push(("inv_r2", obs::expect_inv_r2(s2, p).unwrap(), inv_r2_2d(nf, lf)));
                pairs2.push(("hf_inv_r2", obs::hellmann_feynman_inv_r2(s2, p).unwrap(), inv_r2_2d(nf, lf)));
                pairs2.push(("delta_pr", obs::delta_pr(s2, p).unwrap(), delta_pr_2d(nf, lf)));
                pairs2.push((
                    "pr2_potential",
                    obs::expect_pr2_via_potential(s2, p).unwrap(),
                    pr2_potential_2d(nf, lf),
                ));
            }

            for (state, pairs) in [(s3, pairs3), (s2, pairs2)] {
                for (name, general, explicit) in pairs {
                    compared += 1;
                    worst.see(rel(general, explicit), || format!("{state} {name}: {general} vs {explicit}"));
                }
            }
        }
    }
    worst
        .within(1e-12, &format!("{compared} comparisons for n <= 12, d in {{2, 3}}, 2D l = 0 excluded"))
}

fn triple_route() -> Outcome {
    let p = one();
    let mut worst = Worst::new();
    let mut count = 0;
    for state in grid().into_iter().filter(|s| s.inverse_square_defined()) {
        count += 1;
        let routes = [
            obs::expect_pr2(state, p).unwrap(),
            obs::expect_pr2_via_potential(state, p).unwrap(),
            expectation_oracle(state, p, ObservableKind::PR2).map_err(|e| e.to_string())?,
            pr2_energy_route(state, p).map_err(|e| e.to_string())?,
        ];
        for i in 0..routes.len() {
            for j in i + 1..routes.len() {
                worst.see(rel(routes[i], routes[j]), || format!("{state} routes {i}/{j}: {routes:?}"));
            }
        }
    }
    worst.within(1e-10, &format!("{count} states, four routes pairwise"))
}

fn virial_and_hf() -> Outcome {
    let p = one();
    let mut worst = Worst::new();
    for state in grid() {
        let two_e = 2.0 * hydrogen::energy(state, p);
        worst.see(rel(obs::expect_v(state, p), two_e), || format!("{state} <V> vs 2E"));
        let inv_r = expectation_oracle(state, p, ObservableKind::InvR).map_err(|e| e.to_string())?;
        worst.see(rel(-p.z * inv_r, two_e), || format!("{state} quadrature <V> vs 2E"));
        if state.inverse_square_defined() {
            let hf = obs::hellmann_feynman_inv_r2(state, p).unwrap();
            let direct = obs::expect_inv_r2(state, p).unwrap();
            worst.see(rel(hf, direct), || format!("{state} Hellmann-Feynman <1/r^2>"));
        }
    }
    worst.within(1e-12, "<V> = 2E and Hellmann-Feynman <1/r^2> over the grid")
}

fn operator_identities() -> Outcome {
    let mut commutator = Worst::new();
    for state in grid() {
        let dev = commutator_check(state, one(), 6).map_err(|e| e.to_string())?;
        commutator.see(dev, || state.to_string());
    }
    let commutator_line = commutator.within(1e-12, "commutator")?;

    let mut mean_pr = Worst::new();
    for z in [1.0, 2.0, 3.5] {
        let p = PhysicalParams::natural(z).unwrap();
        for state in grid() {
            let c = expectation_oracle(state, p, ObservableKind::PR).map_err(|e| e.to_string())?;
            mean_pr.see(c.abs() / p.momentum_scale(), || format!("{state} Z={z}"));
        }
    }
    let pr_line = mean_pr.within(1e-12, "|<p_r>| / (Z hbar/a0)")?;
    Ok(format!("{commutator_line}; {pr_line}"))
}

/// Standard 3D hydrogen radial functions for Z = a0 = 1.
fn textbook_3d(n: u32, l: u32, r: f64) -> Option<f64> {
    let v = match (n, l) {
        (1, 0) => 2.0 * (-r).exp(),
        (2, 0) => (1.0 - r / 2.0) * (-r / 2.0).exp() / 2f64.sqrt(),
        (2, 1) => r * (-r / 2.0).exp() / (2.0 * 6f64.sqrt()),
        (3, 0) => 2.0 / (3.0 * 3f64.sqrt()) * (1.0 - 2.0 * r / 3.0 + 2.0 * r * r / 27.0) * (-r / 3.0).exp(),
        (3, 1) => 8.0 / (27.0 * 6f64.sqrt()) * r * (1.0 - r / 6.0) * (-r / 3.0).exp(),
        (3, 2) => 4.0 / (81.0 * 30f64.sqrt()) * r * r * (-r / 3.0).exp(),
        _ => return None,
    };
    Some(v)
}

fn structure() -> Outcome {
    let p = one();
    let mut norm = Worst::new();
    let mut nodes_checked = 0;
    for state in grid() {
        let v = expectation_oracle(state, p, ObservableKind::Norm).map_err(|e| e.to_string())?;
        norm.see((v - 1.0).abs(), || state.to_string());
        let nodes = hydrogen::wavefunction(state, p).default_node_count();
        let expected = (state.n() - state.l() - 1) as usize;
        if nodes != expected {
            return Err(format!("{state}: {nodes} nodes, expected {expected}"));
        }
        nodes_checked += 1;
    }
    let norm_line = norm.within(1e-10, "normalization")?;

    let radii: Vec<f64> = (0..50).map(|i| 0.05 + 0.4137 * i as f64).collect();
    let mut pointwise = Worst::new();
    for z in [1.0, 2.0] {
        let params = PhysicalParams::natural(z).unwrap();
        for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)] {
            let wf = hydrogen::wavefunction(QuantumState::new(n, l, 3).unwrap(), params);
            for &r in &radii {
                let expected = z.powf(1.5) * textbook_3d(n, l, z * r).unwrap();
                pointwise.see(rel(wf.eval(r), expected), || format!("n={n} l={l} Z={z} r={r}"));
            }
        }
    }
    let pointwise_line = pointwise.within(1e-12, "3D textbook match at 50 radii")?;
    Ok(format!("{norm_line}; node counts correct for {nodes_checked} states; {pointwise_line}"))
}

fn parse_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn figure_data() -> Outcome {
    let out = bin()
        .args(["sweep", "--vary", "d", "--observables", "expect_r,delta_r,sigma_r,delta_pr,product"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("sweep exited with {}", out.status));
    }
    let rows = parse_rows(&String::from_utf8_lossy(&out.stdout));
    let expected_rows = obs_pairs().len() * 19 * 5;
    if rows.len() != expected_rows {
        return Err(format!("sweep emitted {} rows, expected {expected_rows}", rows.len()));
    }
    for (n, l) in obs_pairs() {
        let series: Vec<f64> = rows
            .iter()
            .filter(|r| r[0] == n.to_string() && r[1] == l.to_string() && r[3] == "expect_r")
            .map(|r| r[4].parse().unwrap())
            .collect();
        if series.len() != 19 || series.windows(2).any(|w| w[1] <= w[0]) {
            return Err(format!("<r> not strictly increasing in d for n={n} l={l}: {series:?}"));
        }
    }
    for row in &rows {
        if row[3] == "product" {
            if let Ok(v) = row[4].parse::<f64>() {
                if v <= 0.5 {
                    return Err(format!("product row below hbar/2: {row:?}"));
                }
            }
        }
    }

    let mut curves = 0;
    for d in [2, 3, 4, 5, 7, 10] {
        for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (4, 0)] {
            let out = bin()
                .args(["wavefunction", "-n", &n.to_string(), "-l", &l.to_string(), "-d", &d.to_string()])
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!("wavefunction exited with {}", out.status));
            }
            let rows = parse_rows(&String::from_utf8_lossy(&out.stdout));
            let big_r: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
            let density: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
            let signs: Vec<f64> = big_r.iter().filter(|v| **v != 0.0).map(|v| v.signum()).collect();
            let nodes = signs.windows(2).filter(|w| w[0] != w[1]).count();
            if nodes != (n - l - 1) as usize {
                return Err(format!("n={n} l={l} d={d}: {nodes} sign changes in R"));
            }
            if density.iter().any(|v| *v < 0.0) || density[0] != 0.0 {
                return Err(format!("n={n} l={l} d={d}: density not a valid radial profile"));
            }
            curves += 1;
        }
    }
    Ok(format!(
        "sweep: {} rows, <r> strictly increasing in d for every default state; {curves} wavefunction curves with n-l-1 nodes",
        rows.len()
    ))
}

fn obs_pairs() -> Vec<(u32, u32)> {
    hydrodim::cli::DEFAULT_SWEEP_STATES.to_vec()
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("dual-path suite (n <= 6, d 2..12, 1e-10)", dual_path),
        ("ground-state 3D product = sqrt(3)/2 hbar (1e-12)", ground_state_product),
        ("Heisenberg bound product > hbar/2", heisenberg),
        ("2D/3D specialization regression (1e-12)", specialization),
        ("triple-route <p_r^2> (1e-10)", triple_route),
        ("virial and Hellmann-Feynman (1e-12)", virial_and_hf),
        ("commutator and <p_r> = 0 (1e-12)", operator_identities),
        ("normalization, nodes, 3D reduction", structure),
        ("figure data properties", figure_data),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
