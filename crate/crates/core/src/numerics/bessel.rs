//! Modified Bessel function of the first kind, order zero.

use crate::error::{Error, Result};

/// Arguments past this overflow `I0` in double precision.
const I0_OVERFLOW: f64 = 709.0;
/// Below this the positive-term power series is used; above it the
/// asymptotic expansion of the scaled function.
const SERIES_CUTOFF: f64 = 20.0;

/// `I0(x)`, symmetric in `x`. Signals overflow for very large arguments;
/// use [`bessel_i0_scaled`] there instead.
pub fn bessel_i0(x: f64) -> Result<f64> {
    let ax = x.abs();
    if ax.is_nan() {
        return Err(Error::domain("bessel_i0", "NaN argument"));
    }
    if ax > I0_OVERFLOW {
        return Err(Error::domain(
            "bessel_i0",
            format!("|x| = {ax} overflows I0; use the scaled variant"),
        ));
    }
    if ax < SERIES_CUTOFF {
        Ok(i0_series(ax))
    } else {
        Ok(i0_scaled_asymptotic(ax) * ax.exp())
    }
}

/// Exponentially scaled `e^{-|x|} I0(x)`, finite for all finite arguments.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_CUTOFF {
        i0_series(ax) * (-ax).exp()
    } else {
        i0_scaled_asymptotic(ax)
    }
}

/// All-positive power series `Σ (x/2)^{2k} / (k!)^2`.
fn i0_series(ax: f64) -> f64 {
    let q = 0.25 * ax * ax;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term < f64::EPSILON * sum {
            break;
        }
    }
    sum
}

/// Asymptotic expansion `e^{-x} I0(x) ~ (2πx)^{-1/2} Σ a_k`,
/// `a_k = a_{k-1} (2k-1)^2 / (8 x k)`, truncated at the smallest term.
fn i0_scaled_asymptotic(ax: f64) -> f64 {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let m = 2.0 * kf - 1.0;
        term *= m * m / (8.0 * ax * kf);
        if term >= prev {
            break;
        }
        prev = term;
        sum += term;
        if term < f64::EPSILON * sum {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * ax).sqrt()
}
