//! Fixed-precision binary floating point with a 128-bit significand.
//!
//! Values are `±mag · 2^exp` with `mag` normalised to exactly
//! [`WideFloat::BITS`] bits, rounded to nearest after every operation.

use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WideFloat {
    neg: bool,
    mag: BigUint,
    exp: i64,
}

impl WideFloat {
    pub const BITS: u64 = 128;
    pub const EPSILON: f64 = 5.877_471_754_111_438e-39; // 2^-127

    pub fn zero() -> Self {
        Self {
            neg: false,
            mag: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    fn normalized(neg: bool, mag: BigUint, exp: i64) -> Self {
        if mag.is_zero() {
            return Self::zero();
        }
        let bits = mag.bits();
        let (mag, exp) = match bits.cmp(&Self::BITS) {
            Ordering::Equal => (mag, exp),
            Ordering::Less => {
                let s = Self::BITS - bits;
                (mag << s, exp - s as i64)
            }
            Ordering::Greater => {
                let s = bits - Self::BITS;
                let half = BigUint::from(1u8) << (s - 1);
                let rounded = (mag + half) >> s;
                if rounded.bits() > Self::BITS {
                    (rounded >> 1u32, exp + s as i64 + 1)
                } else {
                    (rounded, exp + s as i64)
                }
            }
        };
        Self { neg, mag, exp }
    }

    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "WideFloat::from_f64 on a non-finite value");
        if v == 0.0 {
            return Self::zero();
        }
        let bits = v.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Self::normalized(neg, BigUint::from(mant), exp)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // keep 54 bits, round the last one away
        let shift = Self::BITS - 54;
        let top = (&self.mag >> shift).to_u64().unwrap_or(0);
        let mant = (top + 1) >> 1;
        let v = libm::ldexp(mant as f64, (self.exp + shift as i64 + 1) as i32);
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            neg: false,
            ..self.clone()
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(
            !self.neg || self.is_zero(),
            "square root of a negative WideFloat"
        );
        if self.is_zero() {
            return Self::zero();
        }
        let mut shift = 2 * Self::BITS + 2 - self.mag.bits();
        if (self.exp - shift as i64).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = &self.mag << shift;
        let root = scaled.sqrt();
        Self::normalized(false, root, (self.exp - shift as i64) / 2)
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self
                .exp
                .cmp(&other.exp)
                .then_with(|| self.mag.cmp(&other.mag)),
        }
    }

    fn add_signed(&self, other: &Self, flip: bool) -> Self {
        let other_neg = other.neg ^ flip;
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Self {
                neg: other_neg,
                ..other.clone()
            };
        }
        let (hi, hi_neg, lo, lo_neg) = if self.exp >= other.exp {
            (self, self.neg, other, other_neg)
        } else {
            (other, other_neg, self, self.neg)
        };
        let gap = (hi.exp - lo.exp) as u64;
        if gap > Self::BITS + 3 {
            return Self {
                neg: hi_neg,
                ..hi.clone()
            };
        }
        let hi_mag = &hi.mag << gap;
        let exp = lo.exp;
        if hi_neg == lo_neg {
            Self::normalized(hi_neg, hi_mag + &lo.mag, exp)
        } else {
            match hi_mag.cmp(&lo.mag) {
                Ordering::Equal => Self::zero(),
                Ordering::Greater => Self::normalized(hi_neg, hi_mag - &lo.mag, exp),
                Ordering::Less => Self::normalized(lo_neg, &lo.mag - hi_mag, exp),
            }
        }
    }
}

impl PartialOrd for WideFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let ord = match (self.neg && !self.is_zero(), other.neg && !other.is_zero()) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.cmp_magnitude(other),
            (true, true) => other.cmp_magnitude(self),
        };
        Some(ord)
    }
}

impl Add for WideFloat {
    type Output = WideFloat;
    fn add(self, rhs: Self) -> Self {
        self.add_signed(&rhs, false)
    }
}

impl Sub for WideFloat {
    type Output = WideFloat;
    fn sub(self, rhs: Self) -> Self {
        self.add_signed(&rhs, true)
    }
}

impl Mul for WideFloat {
    type Output = WideFloat;
    fn mul(self, rhs: Self) -> Self {
        Self::normalized(self.neg ^ rhs.neg, self.mag * rhs.mag, self.exp + rhs.exp)
    }
}

impl Div for WideFloat {
    type Output = WideFloat;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "WideFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let extra = Self::BITS + 2;
        let q = (self.mag << extra) / rhs.mag;
        Self::normalized(self.neg ^ rhs.neg, q, self.exp - rhs.exp - extra as i64)
    }
}

impl Neg for WideFloat {
    type Output = WideFloat;
    fn neg(self) -> Self {
        if self.is_zero() {
            self
        } else {
            Self {
                neg: !self.neg,
                ..self
            }
        }
    }
}
