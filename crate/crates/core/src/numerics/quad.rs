//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals.

use crate::error::{Error, Result};

/// Tolerances and subdivision budget for one integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 240,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) || self.max_subdivisions < 1 {
            return Err(Error::domain(
                "quadrature",
                format!(
                    "invalid spec: rel_tol {} abs_tol {} max_subdivisions {}",
                    self.rel_tol, self.abs_tol, self.max_subdivisions
                ),
            ));
        }
        Ok(())
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
}

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526,
    0.949_107_912_342_758_524_526_189_684_048,
    0.864_864_423_359_769_072_789_712_788_641,
    0.741_531_185_599_394_439_863_864_773_281,
    0.586_087_235_467_691_130_294_144_838_259,
    0.405_845_151_377_397_166_906_606_412_077,
    0.207_784_955_007_898_467_600_689_403_773,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_059,
    0.063_092_092_629_978_553_290_700_663_189,
    0.104_790_010_322_250_183_839_876_322_542,
    0.140_653_259_715_525_918_745_189_590_510,
    0.169_004_726_639_267_902_826_583_426_599,
    0.190_350_578_064_785_409_913_256_402_421,
    0.204_432_940_075_298_892_414_161_999_235,
    0.209_482_141_084_727_828_012_999_174_892,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679,
    0.279_705_391_489_276_667_901_467_771_424,
    0.381_830_050_505_118_944_950_369_775_489,
    0.417_959_183_673_469_387_755_102_040_816,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// One Gauss–Kronrod 15 evaluation on `[a, b]`.
fn qk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut res_g = WG[3] * fc;
    let mut res_k = WGK[7] * fc;
    let mut res_abs = WGK[7] * fc.abs();
    let mut fv = [0.0_f64; 15];
    fv[7] = fc;

    for j in 0..3 {
        let idx = 2 * j + 1;
        let x = half * XGK[idx];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[7 - idx] = f1;
        fv[7 + idx] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let idx = 2 * j;
        let x = half * XGK[idx];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[7 - idx] = f1;
        fv[7 + idx] = f2;
        res_k += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_k;
    let mut res_asc = 0.0;
    for (i, &w) in WGK.iter().enumerate() {
        res_asc += w * (fv[7 - i] - mean).abs();
        if i != 7 {
            res_asc += w * (fv[7 + i] - mean).abs();
        }
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

/// Adaptive integration of `f` over the finite interval `[a, b]`:
/// the panel with the largest error estimate is bisected until the requested
/// tolerance or the subdivision budget is reached.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::domain(
            "integrate",
            format!("invalid interval [{a}, {b}]"),
        ));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            err_estimate: 0.0,
        });
    }
    adaptive(&f, a, b, spec)
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    let (v, e) = qk15(f, a, b);
    if !v.is_finite() {
        return Err(Error::domain("integrate", "integrand produced a non-finite value"));
    }
    let mut panels = vec![Panel {
        a,
        b,
        value: v,
        err: e,
    }];

    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        let target = spec.abs_tol.max(spec.rel_tol * total.abs());
        if err <= target {
            return Ok(QuadResult {
                value: total,
                err_estimate: err,
            });
        }
        if panels.len() >= spec.max_subdivisions {
            return Err(Error::Convergence {
                op: "integrate",
                best: total,
                err_estimate: err,
            });
        }
        // Split the worst panel.
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Interval exhausted at machine resolution; keep its estimate.
            let (v, _) = qk15(f, a, b);
            panels.push(Panel {
                a,
                b,
                value: v,
                err: 0.0,
            });
            continue;
        }
        for (lo, hi) in [(a, mid), (mid, b)] {
            let (v, e) = qk15(f, lo, hi);
            if !v.is_finite() {
                return Err(Error::domain(
                    "integrate",
                    "integrand produced a non-finite value",
                ));
            }
            panels.push(Panel {
                a: lo,
                b: hi,
                value: v,
                err: e,
            });
        }
    }
}

/// Integration over `[a, ∞)` through the substitution `t = a + (1-u)/u`,
/// which maps the tail onto `(0, 1]` and concentrates nodes where
/// exponentially decaying integrands still carry mass.
pub fn integrate_semi_infinite(
    f: impl Fn(f64) -> f64,
    a: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    spec.validate()?;
    if !a.is_finite() {
        return Err(Error::domain("integrate_semi_infinite", "lower limit must be finite"));
    }
    let g = |u: f64| {
        let t = a + (1.0 - u) / u;
        let ft = f(t);
        if ft == 0.0 {
            0.0
        } else {
            ft / (u * u)
        }
    };
    adaptive(&g, 0.0, 1.0, spec).map_err(|e| match e {
        Error::Convergence { best, err_estimate, .. } => Error::Convergence {
            op: "integrate_semi_infinite",
            best,
            err_estimate,
        },
        other => other,
    })
}
