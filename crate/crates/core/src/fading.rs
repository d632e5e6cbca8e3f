//! Rayleigh channel statistics.
//!
//! All channel gains are i.i.d. zero-mean unit-variance circularly symmetric
//! complex Gaussian, so every squared magnitude is Exp(1). The cross link is
//! observed through an MMSE estimate with error variance `sigma_p_sq`:
//!
//! `h_p = sqrt(1 - σ²) ĥ_p + sqrt(σ²) h̃_p`
//!
//! which makes `|h_p|²` given `ĥ_p` a noncentral (Rician-power) law, and the
//! squared estimate itself Exp(1). The conditional law of `β = |h_p|²/|h_pp|²`
//! has a closed-form CDF whose quantile comes out of the Lambert W function;
//! the Rician-power quantile has no closed form and is inverted numerically.

use crate::error::{Error, Result};
use crate::numerics::{
    bessel_i0_scaled, find_root_bracketed, lambert_w0_of_exp, marcum_q1, RootBracket,
};

/// Cross-link fading model: unit-variance Rayleigh observed through an MMSE
/// estimate with error variance `sigma_p_sq` in `[0, 1]`.
///
/// At `sigma_p_sq = 1` every estimate-conditioned law equals its marginal; at
/// `sigma_p_sq = 0` the conditional law of `|h_p|²` degenerates to the point
/// `|ĥ_p|²` and the conditional CDF operations refuse to run — callers branch
/// to the perfect-CSI expressions instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossLinkModel {
    sigma_p_sq: f64,
}

/// Squared magnitude of one cross-link estimate, `|ĥ_p|² >= 0`.
///
/// Under the Rayleigh decomposition the squared estimate is Exp(1)
/// distributed, which is what every outer expectation integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub hp_hat_sq: f64,
}

impl Estimate {
    pub fn new(hp_hat_sq: f64) -> Result<Self> {
        if !(hp_hat_sq >= 0.0) {
            return Err(Error::domain(
                "Estimate",
                format!("|ĥ_p|² = {hp_hat_sq} must be >= 0"),
            ));
        }
        Ok(Estimate { hp_hat_sq })
    }
}

/// Density of the secondary gain `|h_s|²` at `t` (Exp(1)).
pub fn pdf_secondary_gain(t: f64) -> Result<f64> {
    nonneg("pdf_secondary_gain", t)?;
    Ok((-t).exp())
}

/// CDF of the secondary gain `|h_s|²` at `t`.
pub fn cdf_secondary_gain(t: f64) -> Result<f64> {
    nonneg("cdf_secondary_gain", t)?;
    Ok(-(-t).exp_m1())
}

/// Marginal density of `β = |h_p|²/|h_pp|²`: `1/(1+t)²`.
pub fn pdf_beta(t: f64) -> Result<f64> {
    nonneg("pdf_beta", t)?;
    Ok(1.0 / ((1.0 + t) * (1.0 + t)))
}

/// Marginal CDF of `β`: `t/(1+t)`.
pub fn cdf_beta(t: f64) -> Result<f64> {
    nonneg("cdf_beta", t)?;
    Ok(t / (1.0 + t))
}

/// Quantile of the marginal `β` law: `u/(1-u)`.
pub fn inv_cdf_beta(u: f64) -> Result<f64> {
    check_prob("inv_cdf_beta", u)?;
    Ok(u / (1.0 - u))
}

/// CDF of `1/|h_pp|²`: `e^{-1/t}` for `t > 0`, zero otherwise.
pub fn cdf_inv_hpp_sq(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Quantile of `1/|h_pp|²`: `1/ln(1/u)`.
pub fn inv_cdf_inv_hpp_sq(u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::domain("inv_cdf_inv_hpp_sq", format!("u = {u} at or below 0")));
    }
    check_prob("inv_cdf_inv_hpp_sq", u)?;
    Ok(-1.0 / u.ln())
}

fn nonneg(op: &'static str, t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(Error::domain(op, format!("t = {t} must be >= 0")));
    }
    Ok(())
}

fn check_prob(op: &'static str, u: f64) -> Result<()> {
    if !(u >= 0.0) || u.is_nan() {
        return Err(Error::domain(op, format!("u = {u} is not a probability")));
    }
    if u >= 1.0 {
        return Err(Error::InfiniteQuantile { op });
    }
    Ok(())
}

impl CrossLinkModel {
    pub fn new(sigma_p_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&sigma_p_sq) {
            return Err(Error::domain(
                "CrossLinkModel",
                format!("sigma_p_sq = {sigma_p_sq} outside [0, 1]"),
            ));
        }
        Ok(CrossLinkModel { sigma_p_sq })
    }

    pub fn sigma_p_sq(&self) -> f64 {
        self.sigma_p_sq
    }

    pub fn is_perfect_csi(&self) -> bool {
        self.sigma_p_sq == 0.0
    }

    pub fn is_no_csi(&self) -> bool {
        self.sigma_p_sq == 1.0
    }

    fn require_nondegenerate(&self, op: &'static str) -> Result<f64> {
        if self.sigma_p_sq == 0.0 {
            return Err(Error::DegenerateModel { op });
        }
        Ok(self.sigma_p_sq)
    }

    /// Noncentrality of the conditional cross-link law, `(1-σ²)|ĥ_p|²`.
    fn noncentrality(&self, est: Estimate) -> f64 {
        (1.0 - self.sigma_p_sq) * est.hp_hat_sq
    }

    /// Conditional CDF of `|h_p|²` given the estimate:
    /// `1 - Q1(sqrt(2(1-σ²)|ĥ_p|²/σ²), sqrt(2t/σ²))`.
    pub fn cdf_crosslink_given_estimate(&self, t: f64, est: Estimate) -> Result<f64> {
        let s2 = self.require_nondegenerate("cdf_crosslink_given_estimate")?;
        nonneg("cdf_crosslink_given_estimate", t)?;
        let a = (2.0 * self.noncentrality(est) / s2).sqrt();
        let b = (2.0 * t / s2).sqrt();
        Ok(1.0 - marcum_q1(a, b)?)
    }

    /// Conditional density of `|h_p|²` given the estimate (Rician power).
    /// The exponent is folded into the scaled Bessel function, so this is
    /// finite for every finite input.
    pub fn pdf_crosslink_given_estimate(&self, t: f64, est: Estimate) -> Result<f64> {
        let s2 = self.require_nondegenerate("pdf_crosslink_given_estimate")?;
        nonneg("pdf_crosslink_given_estimate", t)?;
        let m = self.noncentrality(est);
        let z = 2.0 * (m * t).sqrt() / s2;
        let log_scale = -(t.sqrt() - m.sqrt()).powi(2) / s2;
        Ok(log_scale.exp() * bessel_i0_scaled(z) / s2)
    }

    /// Conditional quantile of `|h_p|²` given the estimate, by bracketed
    /// inversion of the Marcum-Q CDF. There is no closed form.
    pub fn inv_cdf_crosslink_given_estimate(&self, u: f64, est: Estimate) -> Result<f64> {
        let s2 = self.require_nondegenerate("inv_cdf_crosslink_given_estimate")?;
        check_prob("inv_cdf_crosslink_given_estimate", u)?;
        if u == 0.0 {
            return Ok(0.0);
        }
        if self.is_no_csi() {
            return Ok(-(-u).ln_1p());
        }
        // Seed from the no-CSI quantile scaled by σ², then expand the upper
        // end until the CDF exceeds u.
        let q_exp = -(-u).ln_1p();
        let mut hi = s2 * q_exp;
        let mut f_hi = self.cdf_crosslink_given_estimate(hi, est)? - u;
        let mut grow = 0;
        while f_hi < 0.0 {
            hi *= 2.0;
            f_hi = self.cdf_crosslink_given_estimate(hi, est)? - u;
            grow += 1;
            if grow > 60 {
                return Err(Error::Bracket {
                    op: "inv_cdf_crosslink_given_estimate",
                    lo: 0.0,
                    hi,
                });
            }
        }
        self.invert_cdf_newton(u, est, 0.0, hi)
    }

    /// Safeguarded Newton on `F(t) - u` over a maintained bracket; falls back
    /// to bisection whenever a step leaves the interval.
    fn invert_cdf_newton(&self, u: f64, est: Estimate, mut lo: f64, mut hi: f64) -> Result<f64> {
        let mut t = 0.5 * (lo + hi);
        for _ in 0..200 {
            let ft = self.cdf_crosslink_given_estimate(t, est)? - u;
            if ft > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            if ft.abs() <= 1e-13 || (hi - lo) <= 1e-13 * (1.0 + t) {
                return Ok(t);
            }
            let pdf = self.pdf_crosslink_given_estimate(t, est)?;
            let newton = if pdf > 0.0 { t - ft / pdf } else { f64::NAN };
            t = if newton.is_finite() && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Err(Error::Convergence {
            op: "inv_cdf_crosslink_given_estimate",
            best: t,
            err_estimate: hi - lo,
        })
    }

    /// Conditional CDF of `β` given the estimate:
    /// `t/(σ²+t) · exp(-(1-σ²)|ĥ_p|²/(σ²+t))`.
    pub fn cdf_beta_given_estimate(&self, t: f64, est: Estimate) -> Result<f64> {
        let s2 = self.require_nondegenerate("cdf_beta_given_estimate")?;
        nonneg("cdf_beta_given_estimate", t)?;
        let m = self.noncentrality(est);
        Ok(t / (s2 + t) * (-m / (s2 + t)).exp())
    }

    /// Conditional density of `β` given the estimate.
    pub fn pdf_beta_given_estimate(&self, t: f64, est: Estimate) -> Result<f64> {
        let s2 = self.require_nondegenerate("pdf_beta_given_estimate")?;
        nonneg("pdf_beta_given_estimate", t)?;
        let m = self.noncentrality(est);
        let s = s2 + t;
        Ok((-m / s).exp() * (s2 * s + m * t) / (s * s * s))
    }

    /// Conditional quantile of `β` in closed form via the principal Lambert W
    /// branch. With `c = (1-σ²)|ĥ_p|²/σ²`:
    ///
    /// `t = σ² w / (c - w)`, `w = W0(c·u·e^c)` computed in the log domain.
    pub fn inv_cdf_beta_given_estimate(&self, u: f64, est: Estimate) -> Result<f64> {
        let s2 = self.require_nondegenerate("inv_cdf_beta_given_estimate")?;
        check_prob("inv_cdf_beta_given_estimate", u)?;
        if u == 0.0 {
            return Ok(0.0);
        }
        let c = self.noncentrality(est) / s2;
        if c == 0.0 {
            return Ok(s2 * u / (1.0 - u));
        }
        let w = lambert_w0_of_exp((c * u).ln() + c);
        let denom = c - w;
        if denom <= 0.0 {
            return Err(Error::InfiniteQuantile {
                op: "inv_cdf_beta_given_estimate",
            });
        }
        Ok(s2 * w / denom)
    }
}

/// Numeric inversion of an arbitrary increasing CDF on `[lo, hi]`; exposed
/// for tests that need an implementation-independent quantile.
pub(crate) fn invert_monotone_cdf(
    f: impl Fn(f64) -> f64,
    u: f64,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    find_root_bracketed(|t| f(t) - u, RootBracket::new(lo, hi)?, 1e-13)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate, integrate_semi_infinite, QuadratureSpec};

    fn q() -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            max_subdivisions: 500,
        }
    }

    #[test]
    fn secondary_gain_basics() {
        assert_eq!(cdf_secondary_gain(0.0).unwrap(), 0.0);
        assert!((cdf_secondary_gain(2.0_f64.ln()).unwrap() - 0.5).abs() < 1e-15);
        let mass = integrate_semi_infinite(|t| pdf_secondary_gain(t).unwrap(), 0.0, &q())
            .unwrap()
            .value;
        assert!((mass - 1.0).abs() < 1e-10);
        assert!(pdf_secondary_gain(-0.5).is_err());
    }

    #[test]
    fn beta_marginal() {
        assert!((cdf_beta(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((inv_cdf_beta(0.76).unwrap() - 0.76 / 0.24).abs() < 1e-13);
        // pdf integrates to the cdf.
        let c = integrate(|t| pdf_beta(t).unwrap(), 0.0, 3.0, &q()).unwrap().value;
        assert!((c - cdf_beta(3.0).unwrap()).abs() < 1e-10);
        assert!(matches!(
            inv_cdf_beta(1.0),
            Err(Error::InfiniteQuantile { .. })
        ));
    }

    #[test]
    fn inv_hpp_law() {
        assert!((cdf_inv_hpp_sq(1.0) - (-1.0_f64).exp()).abs() < 1e-15);
        assert_eq!(cdf_inv_hpp_sq(-2.0), 0.0);
        let t = inv_cdf_inv_hpp_sq(0.76).unwrap();
        assert!((t - 3.643_825_585_602_064).abs() < 1e-12);
        assert!((cdf_inv_hpp_sq(t) - 0.76).abs() < 1e-13);
        assert!(inv_cdf_inv_hpp_sq(1.0).is_err());
        assert!(inv_cdf_inv_hpp_sq(0.0).is_err());
    }

    #[test]
    fn crosslink_cdf_reductions() {
        let model = CrossLinkModel::new(1.0).unwrap();
        let est = Estimate::new(3.0).unwrap();
        for &t in &[0.0, 0.3, 1.0, 4.0] {
            let got = model.cdf_crosslink_given_estimate(t, est).unwrap();
            assert!((got - (1.0 - (-t as f64).exp())).abs() < 1e-12, "t={t}");
        }
        let model = CrossLinkModel::new(0.5).unwrap();
        assert_eq!(model.cdf_crosslink_given_estimate(0.0, est).unwrap(), 0.0);
    }

    #[test]
    fn crosslink_cdf_matches_pdf_quadrature() {
        let model = CrossLinkModel::new(0.5).unwrap();
        let est = Estimate::new(1.0).unwrap();
        let mass = integrate(
            |t| model.pdf_crosslink_given_estimate(t, est).unwrap(),
            0.0,
            1.0,
            &q(),
        )
        .unwrap()
        .value;
        let cdf = model.cdf_crosslink_given_estimate(1.0, est).unwrap();
        assert!((mass - cdf).abs() < 1e-8, "quad {mass} vs cdf {cdf}");
    }

    #[test]
    fn conditional_pdfs_normalize_and_match_cdf_slope() {
        for &s2 in &[0.1, 0.5, 0.9] {
            let model = CrossLinkModel::new(s2).unwrap();
            for &v in &[0.1, 1.0, 5.0] {
                let est = Estimate::new(v).unwrap();
                let m1 = integrate_semi_infinite(
                    |t| model.pdf_crosslink_given_estimate(t, est).unwrap(),
                    0.0,
                    &q(),
                )
                .unwrap()
                .value;
                assert!((m1 - 1.0).abs() < 1e-8, "crosslink mass s2={s2} v={v}");
                let m2 = integrate_semi_infinite(
                    |t| model.pdf_beta_given_estimate(t, est).unwrap(),
                    0.0,
                    &q(),
                )
                .unwrap()
                .value;
                assert!((m2 - 1.0).abs() < 1e-8, "beta mass s2={s2} v={v}");
            }
        }
        // Finite-difference check of dF/dt = pdf at a few points.
        let model = CrossLinkModel::new(0.5).unwrap();
        let est = Estimate::new(1.0).unwrap();
        for &t in &[0.5, 1.0, 3.0] {
            let h = 1e-5;
            let dcross = (model.cdf_crosslink_given_estimate(t + h, est).unwrap()
                - model.cdf_crosslink_given_estimate(t - h, est).unwrap())
                / (2.0 * h);
            let pcross = model.pdf_crosslink_given_estimate(t, est).unwrap();
            assert!((dcross - pcross).abs() < 1e-6, "crosslink slope at {t}");
            let dbeta = (model.cdf_beta_given_estimate(t + h, est).unwrap()
                - model.cdf_beta_given_estimate(t - h, est).unwrap())
                / (2.0 * h);
            let pbeta = model.pdf_beta_given_estimate(t, est).unwrap();
            assert!((dbeta - pbeta).abs() < 1e-6, "beta slope at {t}");
        }
    }

    #[test]
    fn no_csi_limits_of_conditional_laws() {
        let model = CrossLinkModel::new(1.0).unwrap();
        let est = Estimate::new(2.7).unwrap();
        for &t in &[0.2, 1.0, 5.0] {
            let p29 = model.pdf_crosslink_given_estimate(t, est).unwrap();
            assert!((p29 - (-t as f64).exp()).abs() < 1e-13);
            let p30 = model.pdf_beta_given_estimate(t, est).unwrap();
            assert!((p30 - pdf_beta(t).unwrap()).abs() < 1e-15);
            let f34 = model.cdf_beta_given_estimate(t, est).unwrap();
            assert!((f34 - cdf_beta(t).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn beta_cdf_example_value() {
        // Direct Eq-style evaluation at t=1, |ĥ_p|²=2, σ²=0.5, cross-checked
        // against quadrature of the conditional density.
        let model = CrossLinkModel::new(0.5).unwrap();
        let est = Estimate::new(2.0).unwrap();
        let got = model.cdf_beta_given_estimate(1.0, est).unwrap();
        let want = 1.0 / 1.5 * (-(0.5 * 2.0) / 1.5_f64).exp();
        assert!((got - want).abs() < 1e-15);
        let mass = integrate(
            |t| model.pdf_beta_given_estimate(t, est).unwrap(),
            0.0,
            1.0,
            &q(),
        )
        .unwrap()
        .value;
        assert!((got - mass).abs() < 1e-9);
    }

    #[test]
    fn quantile_round_trips() {
        for &s2 in &[0.1, 0.5, 0.9] {
            let model = CrossLinkModel::new(s2).unwrap();
            for &v in &[0.1, 1.0, 5.0] {
                let est = Estimate::new(v).unwrap();
                let mut u = 0.05;
                while u < 0.96 {
                    let tq = model.inv_cdf_crosslink_given_estimate(u, est).unwrap();
                    let back = model.cdf_crosslink_given_estimate(tq, est).unwrap();
                    assert!(
                        (back - u).abs() < 1e-10,
                        "crosslink s2={s2} v={v} u={u}: {back}"
                    );
                    let tb = model.inv_cdf_beta_given_estimate(u, est).unwrap();
                    let backb = model.cdf_beta_given_estimate(tb, est).unwrap();
                    assert!(
                        (backb - u).abs() < 1e-10,
                        "beta s2={s2} v={v} u={u}: {backb}"
                    );
                    u += 0.05;
                }
            }
        }
    }

    #[test]
    fn no_csi_quantile_is_exponential() {
        let model = CrossLinkModel::new(1.0).unwrap();
        let est = Estimate::new(0.7).unwrap();
        let eps = 0.24;
        let tq = model.inv_cdf_crosslink_given_estimate(1.0 - eps, est).unwrap();
        assert!((tq - (1.0_f64 / eps).ln()).abs() < 1e-12);
    }

    #[test]
    fn beta_quantile_limits() {
        let model = CrossLinkModel::new(0.5).unwrap();
        let est = Estimate::new(1.0).unwrap();
        assert_eq!(model.inv_cdf_beta_given_estimate(0.0, est).unwrap(), 0.0);
        assert!(matches!(
            model.inv_cdf_beta_given_estimate(1.0, est),
            Err(Error::InfiniteQuantile { .. })
        ));
        // u -> 1: w -> c, quantile blows up.
        let near = model
            .inv_cdf_beta_given_estimate(1.0 - 1e-12, est)
            .unwrap();
        assert!(near > 1e8);
    }

    #[test]
    fn stochastic_ordering_in_estimate() {
        for &s2 in &[0.2, 0.7] {
            let model = CrossLinkModel::new(s2).unwrap();
            for &t in &[0.5, 2.0] {
                let mut prev_c = f64::INFINITY;
                let mut prev_b = f64::INFINITY;
                for &v in &[0.1, 0.5, 1.0, 2.0, 5.0] {
                    let est = Estimate::new(v).unwrap();
                    let c = model.cdf_crosslink_given_estimate(t, est).unwrap();
                    let b = model.cdf_beta_given_estimate(t, est).unwrap();
                    assert!(c < prev_c, "crosslink not decreasing in v at s2={s2} t={t}");
                    assert!(b < prev_b, "beta not decreasing in v at s2={s2} t={t}");
                    prev_c = c;
                    prev_b = b;
                }
            }
        }
    }

    #[test]
    fn near_marginal_limit() {
        // σ² -> 1: conditional quantiles converge to the exponential ones.
        let model = CrossLinkModel::new(1.0 - 1e-6).unwrap();
        let est = Estimate::new(1.3).unwrap();
        let mut u = 0.05;
        while u < 0.96 {
            let cond = model.inv_cdf_crosslink_given_estimate(u, est).unwrap();
            let marg = -(1.0 - u as f64).ln();
            assert!((cond - marg).abs() < 1e-4 * (1.0 + marg), "u={u}");
            u += 0.05;
        }
    }

    #[test]
    fn perfect_csi_limit_of_quantile() {
        // σ² -> 0: the (central) conditional quantile collapses onto |ĥ_p|².
        let model = CrossLinkModel::new(1e-6).unwrap();
        for &v in &[0.5, 1.0, 5.0] {
            let est = Estimate::new(v).unwrap();
            for &u in &[0.4, 0.5, 0.6] {
                let tq = model.inv_cdf_crosslink_given_estimate(u, est).unwrap();
                assert!(
                    ((tq - v) / v).abs() < 1e-3,
                    "v={v} u={u}: quantile {tq}"
                );
            }
        }
    }

    #[test]
    fn small_estimate_limits() {
        // |ĥ_p|² -> 0: cross-link quantile -> σ² ln(1/(1-u)); β quantile
        // -> σ² u/(1-u).
        let model = CrossLinkModel::new(0.5).unwrap();
        let est = Estimate::new(1e-8).unwrap();
        for &u in &[0.1, 0.5, 0.9] {
            let qc = model.inv_cdf_crosslink_given_estimate(u, est).unwrap();
            let want_c = 0.5 * (1.0 / (1.0 - u) as f64).ln();
            assert!((qc - want_c).abs() < 1e-6 * (1.0 + want_c), "crosslink u={u}");
            let qb = model.inv_cdf_beta_given_estimate(u, est).unwrap();
            let want_b = 0.5 * u / (1.0 - u);
            assert!((qb - want_b).abs() < 1e-6 * (1.0 + want_b), "beta u={u}");
        }
    }

    #[test]
    fn degenerate_model_is_signalled() {
        let model = CrossLinkModel::new(0.0).unwrap();
        let est = Estimate::new(1.0).unwrap();
        assert!(matches!(
            model.cdf_crosslink_given_estimate(1.0, est),
            Err(Error::DegenerateModel { .. })
        ));
        assert!(matches!(
            model.inv_cdf_beta_given_estimate(0.5, est),
            Err(Error::DegenerateModel { .. })
        ));
    }

    #[test]
    fn model_validation() {
        assert!(CrossLinkModel::new(-0.1).is_err());
        assert!(CrossLinkModel::new(1.1).is_err());
        assert!(Estimate::new(-1.0).is_err());
    }
}
