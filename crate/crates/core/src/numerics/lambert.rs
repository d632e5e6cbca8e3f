//! Principal branch of the Lambert W function.

use crate::error::{Error, Result};

/// `-1/e`, the left edge of the principal branch.
const BRANCH_POINT: f64 = -0.367_879_441_171_442_33;

/// Principal branch `W0(x)` solving `w e^w = x` for `x >= -1/e`.
///
/// Halley iteration from a regime-dependent initial guess; the residual
/// `|w e^w - x|` converges to machine level in a handful of steps.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() || x < BRANCH_POINT * (1.0 + 4.0 * f64::EPSILON) - f64::MIN_POSITIVE {
        return Err(Error::domain(
            "lambert_w0",
            format!("x = {x} below -1/e"),
        ));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let x = x.max(BRANCH_POINT);

    let mut w = initial_guess(x);
    for _ in 0..40 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        // Halley step: f' = e^w (w+1), f'' = e^w (w+2).
        let denom = ew * wp1 - f * (w + 2.0) / (2.0 * wp1);
        let dw = f / denom;
        w -= dw;
        if w < -1.0 {
            w = -1.0 + 1e-16;
        }
        if dw.abs() <= 2.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        // Branch-point series in p = sqrt(2(e x + 1)).
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x < std::f64::consts::E {
        x.ln_1p()
    } else {
        let lx = x.ln();
        lx - lx.ln()
    }
}

/// `W0(e^y)` for any finite `y`, evaluated without forming `e^y`.
///
/// For large `y` this solves `w + ln w = y` by Newton iteration; otherwise it
/// defers to [`lambert_w0`]. The two regimes agree wherever both are
/// representable.
pub fn lambert_w0_of_exp(y: f64) -> f64 {
    if y <= 500.0 {
        // e^y is comfortably representable; W0 cannot fail for x > 0.
        return lambert_w0(y.exp()).expect("positive argument");
    }
    let mut w = y - y.ln();
    for _ in 0..30 {
        let f = w + w.ln() - y;
        let dw = f * w / (w + 1.0);
        w -= dw;
        if dw.abs() <= 2.0 * f64::EPSILON * w {
            break;
        }
    }
    w
}
