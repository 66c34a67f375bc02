//! Natural log of the gamma function.
//!
//! Integer arguments (the only ones the hydrogenic normalization needs) go
//! through a table of `k!` accumulated in `f64`, which keeps every entry
//! within a few ulp of the exact factorial. Everything else uses a Lanczos
//! approximation (g = 7, 9 terms).

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Largest `k` with `k!` finite in `f64`.
const MAX_FACTORIAL: usize = 170;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn ln_factorial_table() -> &'static [f64; MAX_FACTORIAL + 1] {
    static TABLE: OnceLock<[f64; MAX_FACTORIAL + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; MAX_FACTORIAL + 1];
        let mut fact = 1.0_f64;
        for (k, slot) in table.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            *slot = fact.ln();
        }
        table
    })
}

/// `ln(k!)`.
pub fn ln_factorial(k: u64) -> f64 {
    if (k as usize) <= MAX_FACTORIAL {
        ln_factorial_table()[k as usize]
    } else {
        lanczos_ln_gamma(k as f64 + 1.0)
    }
}

/// `ln Γ(x)` for `x > 0`; returns `+inf` at `x = 0` and NaN for negative `x`.
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() || x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x.fract() == 0.0 && x <= (MAX_FACTORIAL + 1) as f64 {
        return ln_factorial(x as u64 - 1);
    }
    lanczos_ln_gamma(x)
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - lanczos_ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}
