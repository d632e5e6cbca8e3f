//! Special functions and generic numerical kernels.
//!
//! Everything here is a pure function of its inputs; values are immutable
//! and safe to share across threads. Exponential-argument compositions go
//! through the scaled/log-domain variants so that nothing evaluates `e^c`
//! for `c` beyond the representable range.

pub mod bessel;
pub mod expint;
pub mod gamma;
pub mod lambert;
pub mod marcum;
pub mod quad;
pub mod roots;

pub use bessel::{bessel_i0, bessel_i0_scaled};
pub use expint::{exp_e1_scaled, exp_integral_e1, EULER_GAMMA};
pub use lambert::{lambert_w0, lambert_w0_of_exp};
pub use marcum::marcum_q1;
pub use quad::{integrate, integrate_semi_infinite, QuadResult, QuadratureSpec};
pub use roots::{
    find_root_bracketed, find_root_expanding_down, find_root_expanding_up, RootBracket,
};
