//! Bracketed root finding (Brent's method) with geometric bracket expansion.

use crate::error::{Error, Result};

/// An interval known to bracket a sign change.
#[derive(Debug, Clone, Copy)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
}

impl RootBracket {
    /// Validates `lo < hi`; the sign change itself is checked by the solver.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::domain(
                "RootBracket",
                format!("requires lo < hi, got [{lo}, {hi}]"),
            ));
        }
        Ok(RootBracket { lo, hi })
    }
}

const MAX_ITER: usize = 200;
/// Doubling cap for bracket expansion.
const MAX_EXPANSIONS: usize = 60;

/// Brent's method on a bracketing interval. Deterministic for identical
/// inputs; stops when the interval collapses below `tol` (plus a machine
/// term) or an exact zero is hit.
pub fn find_root_bracketed(
    mut f: impl FnMut(f64) -> f64,
    bracket: RootBracket,
    tol: f64,
) -> Result<f64> {
    let mut a = bracket.lo;
    let mut b = bracket.hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            op: "find_root_bracketed",
            lo: a,
            hi: b,
        });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when only two
            // points are distinct.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(xm)
        };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Err(Error::Convergence {
        op: "find_root_bracketed",
        best: b,
        err_estimate: fb.abs(),
    })
}

/// Expands `[lo, hi]` upward by factors of two until `f` changes sign,
/// then solves. `f(lo)` fixes the reference sign.
pub fn find_root_expanding_up(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi0: f64,
    tol: f64,
) -> Result<f64> {
    let f_lo = f(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let mut hi = hi0.max(lo + f64::MIN_POSITIVE);
    for _ in 0..=MAX_EXPANSIONS {
        let f_hi = f(hi);
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if f_hi.signum() != f_lo.signum() {
            return find_root_bracketed(f, RootBracket::new(lo, hi)?, tol);
        }
        hi = lo + 2.0 * (hi - lo);
    }
    Err(Error::Bracket {
        op: "find_root_expanding_up",
        lo,
        hi,
    })
}

/// Expands the lower endpoint geometrically toward zero (`lo /= 2`) until
/// `f` changes sign against `f(hi)`, then solves. Intended for positive
/// domains where the root is known to lie in `(0, hi]`.
pub fn find_root_expanding_down(
    mut f: impl FnMut(f64) -> f64,
    lo0: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    let f_hi = f(hi);
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let mut lo = lo0;
    for _ in 0..=MAX_EXPANSIONS {
        let f_lo = f(lo);
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_lo.signum() != f_hi.signum() {
            return find_root_bracketed(f, RootBracket::new(lo, hi)?, tol);
        }
        lo *= 0.5;
    }
    Err(Error::Bracket {
        op: "find_root_expanding_down",
        lo,
        hi,
    })
}
