//! Exponential integral E1.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const MAX_ITER: usize = 400;

/// Exponential integral `E1(x) = ∫_x^∞ e^{-t}/t dt` for `x > 0`.
///
/// Power series below the switch point, continued fraction above it; both
/// regimes agree to better than 1e-13 at the switch.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain("exp_integral_e1", format!("x = {x} <= 0")));
    }
    if x <= 1.0 {
        Ok(e1_series(x))
    } else {
        Ok((-x).exp() * e1_cf(x))
    }
}

/// Scaled exponential integral `e^x E1(x)`, stable for large `x` where
/// `E1(x)` itself underflows.
pub fn exp_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain("exp_e1_scaled", format!("x = {x} <= 0")));
    }
    if x <= 1.0 {
        Ok(x.exp() * e1_series(x))
    } else {
        Ok(e1_cf(x))
    }
}

/// Convergent series `E1(x) = -γ - ln x + Σ_{k≥1} (-1)^{k+1} x^k / (k·k!)`.
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0_f64;
    let mut term = 1.0_f64;
    for k in 1..=MAX_ITER {
        let kf = k as f64;
        term *= -x / kf;
        let contrib = -term / kf;
        sum += contrib;
        if contrib.abs() < f64::EPSILON * sum.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - x.ln() + sum
}

/// Modified-Lentz evaluation of the continued fraction for `e^x E1(x)`:
/// `1/(x+1- 1/(x+3- 4/(x+5- 9/(x+7- ...))))`.
fn e1_cf(x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let a = -((i * i) as f64);
        b += 2.0;
        d = (a * d + b).recip();
        c = b + a / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() <= f64::EPSILON {
            break;
        }
    }
    h
}
