use alloc::format;
use alloc::vec::Vec;

use super::{MuView, PartitionConfig};
use crate::numeric::{arithmetic_reciprocal_sum, floor, NeumaierSum};
use crate::{Error, Result};

/// Minimal `M ≥ m` with `Σ_{k=m}^{M} 1/|μ_k| > c3/|μ_m|`.
pub fn m1_of(mu: &MuView, m: u64, c3: f64) -> Result<u64> {
    let target = c3 / mu.modulus(m)?;
    if mu.closed_form().is_none() {
        let mut acc = NeumaierSum::new();
        let mut last = m;
        loop {
            acc.add(1.0 / mu.modulus(last)?);
            if acc.value() > target {
                return Ok(last);
            }
            last += 1;
        }
    }

    let exceeds = |last: u64| mu.partial_sum(m, last).map(|s| s > target);
    if exceeds(m)? {
        return Ok(m);
    }
    let mut lo = m;
    let mut step = 1u64;
    let mut hi = m + 1;
    while !exceeds(hi)? {
        lo = hi;
        step = step
            .checked_mul(2)
            .ok_or_else(|| Error::Exhausted(format!("m1({m}) beyond u64")))?;
        hi = m
            .checked_add(step)
            .ok_or_else(|| Error::Exhausted(format!("m1({m}) beyond u64")))?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if exceeds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // Rounding can make the evaluated sum non-monotone right at the threshold.
    while hi > m && exceeds(hi - 1)? {
        hi -= 1;
    }
    Ok(hi)
}

/// `σ_m = c2 · Σ_{k=m}^{m1(m)} 1/|μ_k|`.
pub fn sigma_of(mu: &MuView, m: u64, config: &PartitionConfig) -> Result<f64> {
    let m1 = m1_of(mu, m, config.c3())?;
    Ok(config.c2() * mu.partial_sum(m, m1)?)
}

/// In-block offsets: summed once for listed witnesses, evaluated in closed
/// form for arithmetic ones.
#[derive(Debug, Clone, PartialEq)]
enum Offsets {
    Cached(Vec<f64>),
    Closed { alpha: f64, beta: f64 },
}

/// The points `θ^{(m)}_ν` of one density `m`, evaluated lazily.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularPartition {
    m: u64,
    m1: u64,
    period: u64,
    sigma: f64,
    theta0: f64,
    theta_t: f64,
    c2: f64,
    nu_max: u64,
    offsets: Offsets,
}

impl AngularPartition {
    pub fn new(mu: &MuView, m: u64, config: &PartitionConfig) -> Result<Self> {
        let m1 = m1_of(mu, m, config.c3())?;
        Self::with_m1(mu, m, m1, config)
    }

    /// Same as [`AngularPartition::new`] with `m1(m)` already known.
    pub fn with_m1(mu: &MuView, m: u64, m1: u64, config: &PartitionConfig) -> Result<Self> {
        let period = m1 - m + 1;
        let c2 = config.c2();
        let (offsets, sigma) = match mu.closed_form() {
            Some((alpha, beta)) => (
                Offsets::Closed { alpha, beta },
                c2 * arithmetic_reciprocal_sum(alpha, beta, m, m1),
            ),
            _ => {
                let mut acc = NeumaierSum::new();
                let mut cached = Vec::with_capacity(period as usize);
                for k in m..=m1 {
                    cached.push(c2 * acc.value());
                    acc.add(1.0 / mu.modulus(k)?);
                }
                (Offsets::Cached(cached), c2 * acc.value())
            }
        };
        let mut part = Self {
            m,
            m1,
            period,
            sigma,
            theta0: config.theta0(),
            theta_t: config.theta_t(),
            c2,
            nu_max: 0,
            offsets,
        };
        part.nu_max = part.locate_last(config.theta_t())?;
        Ok(part)
    }

    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn m1(&self) -> u64 {
        self.m1
    }
    /// `P = m1(m) − m + 1`.
    pub fn period(&self) -> u64 {
        self.period
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    /// Largest `ν` with `θ_ν ≤ θT`.
    pub fn nu_max(&self) -> u64 {
        self.nu_max
    }

    /// `θ_j − θ0` for `0 ≤ j < P`.
    pub fn offset(&self, j: u64) -> f64 {
        debug_assert!(j < self.period);
        match &self.offsets {
            Offsets::Cached(v) => v[j as usize],
            Offsets::Closed { alpha, beta } => {
                if j == 0 {
                    0.0
                } else {
                    self.c2 * arithmetic_reciprocal_sum(*alpha, *beta, self.m, self.m + j - 1)
                }
            }
        }
    }

    /// `(k, j)` with `ν = kP + j`, `0 ≤ j < P`.
    pub fn decompose(&self, nu: u64) -> (u64, u64) {
        (nu / self.period, nu % self.period)
    }

    /// `θ^{(m)}_ν`, defined for every `ν` (not only up to `nu_max`).
    pub fn theta(&self, nu: u64) -> f64 {
        let (k, j) = self.decompose(nu);
        self.theta0 + self.offset(j) + k as f64 * self.sigma
    }

    /// Largest `ν` with `θ_ν ≤ bound`, assuming `bound ≥ θ0`.
    fn locate_last(&self, bound: f64) -> Result<u64> {
        let overflow = || {
            Error::Domain(format!(
                "angular index for density {} overflows u64",
                self.m
            ))
        };
        let at = |k: u64| k.checked_mul(self.period).ok_or_else(overflow);
        let mut k = floor((bound - self.theta0) / self.sigma) as u64;
        while self.theta(at(k + 1)?) <= bound {
            k += 1;
        }
        while k > 0 && self.theta(at(k)?) > bound {
            k -= 1;
        }
        let base = at(k)?;
        let (mut lo, mut hi) = (0u64, self.period);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.theta(base + mid) <= bound {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        base.checked_add(lo).ok_or_else(overflow)
    }

    /// Largest `n ≤ nu_max` with `θ_n ≤ theta`, for `theta ≥ θ0`.
    pub fn index_at(&self, theta: f64) -> u64 {
        if theta >= self.theta_t {
            return self.nu_max;
        }
        self.locate_last(theta)
            .map_or(self.nu_max, |n| n.min(self.nu_max))
    }

    /// Indices `n ≤ nu_max` with `lo ≤ θ_n ≤ hi`, as an inclusive range.
    pub fn index_range(&self, lo: f64, hi: f64) -> Option<(u64, u64)> {
        if hi < self.theta0 || lo > hi {
            return None;
        }
        let last = if hi >= self.theta_t {
            self.nu_max
        } else {
            self.locate_last(hi).ok()?.min(self.nu_max)
        };
        let first = if lo <= self.theta0 {
            0
        } else {
            // first index with θ ≥ lo: one past the last index with θ < lo
            let below = self.locate_last(lo).ok()?;
            if self.theta(below) < lo {
                below + 1
            } else {
                below
            }
        };
        (first <= last).then_some((first, last))
    }
}
