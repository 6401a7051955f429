use core::ops::{Add, Div, Mul, Neg, Sub};

use super::WideFloat;

/// Real scalar used by the least-squares kernel, so the same Householder code
/// runs in double and in extended precision.
pub trait Real:
    Clone
    + core::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Unit roundoff of the representation.
    const EPSILON: f64;

    fn zero() -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON;

    fn zero() -> Self {
        0.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        super::sqrt(*self)
    }
    fn abs(&self) -> Self {
        super::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Real for WideFloat {
    const EPSILON: f64 = WideFloat::EPSILON;

    fn zero() -> Self {
        WideFloat::zero()
    }
    fn from_f64(v: f64) -> Self {
        WideFloat::from_f64(v)
    }
    fn to_f64(&self) -> f64 {
        WideFloat::to_f64(self)
    }
    fn sqrt(&self) -> Self {
        WideFloat::sqrt(self)
    }
    fn abs(&self) -> Self {
        WideFloat::abs(self)
    }
    fn is_zero(&self) -> bool {
        WideFloat::is_zero(self)
    }
}
