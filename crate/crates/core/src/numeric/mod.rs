//! Scalar numerics shared by the geometric and fitting modules.

mod digamma;
mod halton;
mod real;
mod summation;
mod wide;

pub use digamma::{arithmetic_reciprocal_sum, digamma, digamma_diff};
pub use halton::{halton, halton_2d};
pub use real::Real;
pub use summation::NeumaierSum;
pub use wide::WideFloat;

// libm wrappers; the crate is no_std so the inherent f64 methods are unavailable.
#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub(crate) fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}
#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `e^{2πi·turns}` for an angle given in turns.
#[inline]
pub fn unit_turns(turns: f64) -> num_complex::Complex64 {
    let a = core::f64::consts::TAU * turns;
    num_complex::Complex64::new(cos(a), sin(a))
}

/// `|r₁e^{2πiθ₁} − r₂e^{2πiθ₂}|`, evaluated through the radial and angular
/// differences so that nearby points keep their relative accuracy.
pub fn polar_distance(r1: f64, theta1: f64, r2: f64, theta2: f64) -> f64 {
    let dr = r1 - r2;
    let s = sin(core::f64::consts::PI * (theta1 - theta2));
    sqrt(dr * dr + 4.0 * r1 * r2 * s * s)
}
