//! Sector partitions.
//!
//! For each density `m` the angular partition `θ^{(m)}_ν` starts at `θ0`,
//! steps by `c2/|μ_{m+n}|` for one period `P = m1(m) − m + 1` and then
//! repeats with shift `σ_m`. The radial ladder `r_ν` picks one density per
//! height; the partition `𝒫` is the union of the angular partitions placed
//! on the ladder heights.

mod angular;
mod config;
mod ladder;
mod mu;

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

pub use angular::{m1_of, sigma_of, AngularPartition};
pub use config::{ConstantsMode, PartitionConfig};
pub use ladder::{LadderLevel, RadialLadder, DEFAULT_MAX_LEVELS};
pub use mu::MuView;

use crate::numeric::unit_turns;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionPoint {
    pub level: usize,
    /// Angular index `n`.
    pub n: u64,
    /// `n = k·P + j`.
    pub k: u64,
    pub j: u64,
    pub r: f64,
    /// Angle in turns.
    pub theta: f64,
    /// `m′`: 1 at level 0, `m_ν + 1` above.
    pub density: u64,
    pub value: Complex64,
}

impl PartitionPoint {
    /// Index of `μ(w) = μ_{m′+j}`.
    pub fn mu_index(&self) -> u64 {
        self.density + self.j
    }
}

/// Filters applied to the enumeration. Indices are never renumbered.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Truncation {
    /// Last level enumerated (inclusive).
    pub max_level: Option<usize>,
    /// At most this many points per level, taken in order after the window filter.
    pub max_points_per_level: Option<u64>,
    /// Inclusive angle window in turns.
    pub theta_window: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    config: PartitionConfig,
    mu: MuView,
    ladder: RadialLadder,
    angular: Vec<AngularPartition>,
}

impl Partition {
    pub fn new(config: PartitionConfig, mu: MuView) -> Result<Self> {
        Self::with_max_levels(config, mu, DEFAULT_MAX_LEVELS)
    }

    pub fn with_max_levels(config: PartitionConfig, mu: MuView, max_levels: usize) -> Result<Self> {
        let ladder = RadialLadder::with_max_levels(&mu, &config, max_levels)?;
        let angular = ladder
            .levels()
            .iter()
            .map(|l| AngularPartition::with_m1(&mu, l.density, l.m1, &config))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            config,
            mu,
            ladder,
            angular,
        })
    }

    pub fn config(&self) -> &PartitionConfig {
        &self.config
    }

    pub fn mu(&self) -> &MuView {
        &self.mu
    }

    pub fn ladder(&self) -> &RadialLadder {
        &self.ladder
    }

    pub fn nu0(&self) -> usize {
        self.ladder.nu0()
    }

    pub fn angular(&self, level: usize) -> Option<&AngularPartition> {
        self.angular.get(level)
    }

    fn make_point(&self, level: usize, n: u64) -> PartitionPoint {
        let ang = &self.angular[level];
        let l = &self.ladder.levels()[level];
        let (k, j) = ang.decompose(n);
        let theta = ang.theta(n);
        PartitionPoint {
            level,
            n,
            k,
            j,
            r: l.r,
            theta,
            density: l.density,
            value: unit_turns(theta) * l.r,
        }
    }

    pub fn point_at(&self, level: usize, n: u64) -> Result<PartitionPoint> {
        let ang = self.angular.get(level).ok_or_else(|| {
            Error::OutOfRange(format!("level {level} exceeds nu0 = {}", self.nu0()))
        })?;
        if n > ang.nu_max() {
            return Err(Error::OutOfRange(format!(
                "angular index {n} exceeds {} at level {level}",
                ang.nu_max()
            )));
        }
        Ok(self.make_point(level, n))
    }

    /// Number of points `Σ_ν (ν_{m′} + 1)`; saturates at `u64::MAX`.
    pub fn len(&self) -> u64 {
        self.angular.iter().fold(0u64, |acc, a| {
            acc.saturating_add(a.nu_max().saturating_add(1))
        })
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Points in increasing `(level, n)` order, filtered by `truncation`.
    pub fn enumerate(&self, truncation: Truncation) -> impl Iterator<Item = PartitionPoint> + '_ {
        let last_level = truncation
            .max_level
            .map_or(self.nu0(), |m| m.min(self.nu0()));
        (0..=last_level).flat_map(move |level| {
            let ang = &self.angular[level];
            let range = match truncation.theta_window {
                Some((lo, hi)) => ang.index_range(lo, hi),
                None => Some((0, ang.nu_max())),
            };
            let (first, last) = match range {
                Some((first, last)) => {
                    let last = match truncation.max_points_per_level {
                        Some(0) => None,
                        Some(cap) => Some(last.min(first.saturating_add(cap - 1))),
                        None => Some(last),
                    };
                    (first, last)
                }
                None => (1, None),
            };
            let iter = last.map(|last| (first..=last).map(move |n| self.make_point(level, n)));
            iter.into_iter().flatten()
        })
    }
}
