use alloc::format;
use core::f64::consts::PI;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstantsMode {
    /// `c2` and `c4` chosen directly.
    Free,
    /// `c2 = δ0 / (2(2R0π + 1))` and `c4 = R1 + δ0`.
    Derived { delta0: f64, r1: f64 },
}

/// Sector bounds and the constants `c1..c4`. Angles are in turns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionConfig {
    r0: f64,
    big_r0: f64,
    theta0: f64,
    theta_t: f64,
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
    mode: ConstantsMode,
}

/// Widths are compared against a quarter turn with this relative slack, so
/// that `θT − θ0` computed in floating point from a quarter-wide pair passes.
const WIDTH_SLACK: f64 = 4.0 * f64::EPSILON;

impl PartitionConfig {
    pub fn free(r0: f64, big_r0: f64, theta0: f64, theta_t: f64, c2: f64, c4: f64) -> Result<Self> {
        Self::build(r0, big_r0, theta0, theta_t, c2, c4, ConstantsMode::Free)
    }

    pub fn derived(
        r0: f64,
        big_r0: f64,
        theta0: f64,
        theta_t: f64,
        delta0: f64,
        r1: f64,
    ) -> Result<Self> {
        if !(delta0.is_finite() && delta0 > 0.0) || !(r1.is_finite() && r1 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "need delta0 > 0 and R1 > 0 (got {delta0}, {r1})"
            )));
        }
        let c2 = delta0 / (2.0 * (2.0 * big_r0 * PI + 1.0));
        let c4 = r1 + delta0;
        Self::build(
            r0,
            big_r0,
            theta0,
            theta_t,
            c2,
            c4,
            ConstantsMode::Derived { delta0, r1 },
        )
    }

    fn build(
        r0: f64,
        big_r0: f64,
        theta0: f64,
        theta_t: f64,
        c2: f64,
        c4: f64,
        mode: ConstantsMode,
    ) -> Result<Self> {
        let bad = |msg: alloc::string::String| Err(Error::InvalidConfig(msg));
        if !(r0 > 0.0 && r0 < 1.0 && big_r0 > 1.0 && big_r0.is_finite()) {
            return bad(format!(
                "need 0 < r0 < 1 < R0 < inf (got r0 = {r0}, R0 = {big_r0})"
            ));
        }
        if !(theta0 >= 0.0 && theta0 < theta_t && theta_t <= 1.0) {
            return bad(format!(
                "need 0 <= theta0 < thetaT <= 1 (got {theta0}, {theta_t})"
            ));
        }
        if theta_t - theta0 > 0.25 * (1.0 + WIDTH_SLACK) {
            return bad(format!(
                "sector width {} exceeds a quarter turn",
                theta_t - theta0
            ));
        }
        if !(c2 > 0.0 && c2 < 1.0) {
            return bad(format!("need 0 < c2 < 1 (got {c2})"));
        }
        if !(c4 > 1.0 && c4.is_finite()) {
            return bad(format!("need c4 > 1 (got {c4})"));
        }
        let c3 = c4 / (r0 * c2);
        if !(c3 > 1.0 && c3.is_finite()) {
            return bad(format!("need c3 > 1 (got {c3})"));
        }
        let c1 = 4.0 * (c3 + 1.0);
        Ok(Self {
            r0,
            big_r0,
            theta0,
            theta_t,
            c1,
            c2,
            c3,
            c4,
            mode,
        })
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }
    pub fn big_r0(&self) -> f64 {
        self.big_r0
    }
    pub fn theta0(&self) -> f64 {
        self.theta0
    }
    pub fn theta_t(&self) -> f64 {
        self.theta_t
    }
    pub fn c1(&self) -> f64 {
        self.c1
    }
    pub fn c2(&self) -> f64 {
        self.c2
    }
    pub fn c3(&self) -> f64 {
        self.c3
    }
    pub fn c4(&self) -> f64 {
        self.c4
    }
    pub fn mode(&self) -> ConstantsMode {
        self.mode
    }

    /// `θT − θ0` in turns.
    pub fn width(&self) -> f64 {
        self.theta_t - self.theta0
    }

    /// `(2R0π + 1)·c2`, the bound on `|μ(w₀)|·|a − w₀|` over the sector.
    pub fn defect_bound(&self) -> f64 {
        (2.0 * self.big_r0 * PI + 1.0) * self.c2
    }

    pub fn contains(&self, r: f64, theta: f64) -> bool {
        self.r0 <= r && r <= self.big_r0 && self.theta0 <= theta && theta <= self.theta_t
    }
}
