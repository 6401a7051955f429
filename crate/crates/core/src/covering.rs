//! Locating the partition point `w₀` that covers a sector point `a`.
//!
//! `a = r·e^{2πiθ}` is bracketed radially by `r_ν ≤ r < r_{ν+1}` and angularly
//! on that level by `θ_n ≤ θ < θ_{n+1}`; at the top level and the last
//! angular index the upper ends clamp to `R0` and `θT`. The defect is
//! `|μ(w₀)|·|a − w₀|`.

use alloc::format;

use num_complex::Complex64;

use crate::numeric::{halton_2d, polar_distance, unit_turns, NeumaierSum};
use crate::partition::{Partition, PartitionConfig, PartitionPoint};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorPoint {
    r: f64,
    theta: f64,
}

impl SectorPoint {
    pub fn new(r: f64, theta: f64, config: &PartitionConfig) -> Result<Self> {
        if !config.contains(r, theta) {
            return Err(Error::OutOfSector { r, theta });
        }
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn value(&self) -> Complex64 {
        unit_turns(self.theta) * self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub r1: f64,
    pub r2: f64,
    pub theta1: f64,
    pub theta2: f64,
    /// `r2 = R0` at the top level.
    pub radial_clamp: bool,
    /// `θ2 = θT` at the last angular index.
    pub angular_clamp: bool,
}

impl Bracket {
    pub fn contains(&self, r: f64, theta: f64) -> bool {
        let radial = if self.radial_clamp {
            r <= self.r2
        } else {
            r < self.r2
        };
        let angular = if self.angular_clamp {
            theta <= self.theta2
        } else {
            theta < self.theta2
        };
        self.r1 <= r && radial && self.theta1 <= theta && angular
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coverage {
    pub a: SectorPoint,
    pub w0: PartitionPoint,
    pub bracket: Bracket,
    pub mu0: Complex64,
    pub mu_index: u64,
    /// `|μ(w₀)|·|a − w₀|`.
    pub defect: f64,
}

/// `(2R0π + 1)·c2`; equals `δ0/2` for derived constants.
pub fn defect_bound(config: &PartitionConfig) -> f64 {
    config.defect_bound()
}

pub fn locate(a: &SectorPoint, partition: &Partition) -> Result<Coverage> {
    let config = partition.config();
    if !config.contains(a.r, a.theta) {
        return Err(Error::OutOfSector {
            r: a.r,
            theta: a.theta,
        });
    }
    let ladder = partition.ladder();
    let level = ladder.level_below(a.r).ok_or(Error::OutOfSector {
        r: a.r,
        theta: a.theta,
    })?;
    let radial_clamp = level == partition.nu0();
    let r1 = ladder.levels()[level].r;
    let r2 = if radial_clamp {
        config.big_r0()
    } else {
        ladder.levels()[level + 1].r
    };

    let ang = partition.angular(level).expect("level within ladder");
    let n = ang.index_at(a.theta);
    let angular_clamp = n == ang.nu_max();
    let theta1 = ang.theta(n);
    let theta2 = if angular_clamp {
        config.theta_t()
    } else {
        ang.theta(n + 1)
    };

    let w0 = partition.point_at(level, n)?;
    let mu_index = w0.mu_index();
    let mu0 = partition.mu().value(mu_index)?;
    let defect = mu0.norm() * polar_distance(a.r, a.theta, r1, theta1);
    Ok(Coverage {
        a: *a,
        w0,
        bracket: Bracket {
            r1,
            r2,
            theta1,
            theta2,
            radial_clamp,
            angular_clamp,
        },
        mu0,
        mu_index,
        defect,
    })
}

/// A sub-sector `[r_lo, r_hi] × [θ_lo, θ_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubSector {
    pub r_lo: f64,
    pub r_hi: f64,
    pub theta_lo: f64,
    pub theta_hi: f64,
}

impl SubSector {
    pub fn whole(config: &PartitionConfig) -> Self {
        Self {
            r_lo: config.r0(),
            r_hi: config.big_r0(),
            theta_lo: config.theta0(),
            theta_hi: config.theta_t(),
        }
    }

    /// Checks that the sub-sector is non-empty and lies in the sector.
    pub fn validate(&self, config: &PartitionConfig) -> Result<()> {
        if !(self.r_lo <= self.r_hi && self.theta_lo <= self.theta_hi) {
            return Err(Error::Domain(format!("empty sub-sector {self:?}")));
        }
        for (r, t) in [(self.r_lo, self.theta_lo), (self.r_hi, self.theta_hi)] {
            if !config.contains(r, t) {
                return Err(Error::OutOfSector { r, theta: t });
            }
        }
        Ok(())
    }
}

/// Points that `locate` can return for sector points of `sub`.
pub fn covering_points(
    partition: &Partition,
    sub: SubSector,
) -> impl Iterator<Item = PartitionPoint> + '_ {
    let config = partition.config();
    let lo = sub.theta_lo.max(config.theta0());
    let hi = sub.theta_hi.min(config.theta_t());
    let ladder = partition.ladder();
    let first = ladder.level_below(sub.r_lo).unwrap_or(0);
    let last = ladder
        .level_below(sub.r_hi)
        .unwrap_or(0)
        .min(partition.nu0());
    (first..=last).flat_map(move |level| {
        let ang = partition.angular(level).expect("level within ladder");
        let (first, last) = (ang.index_at(lo), ang.index_at(hi));
        (first..=last).map(move |n| partition.point_at(level, n).expect("index within nu_max"))
    })
}

/// Largest index `n` in `Λ` with `λ_n = μ(w)` over the given points.
pub fn uniform_bound_m1<I>(points: I, partition: &Partition) -> Result<u64>
where
    I: IntoIterator<Item = PartitionPoint>,
{
    let mut best: Option<u64> = None;
    for p in points {
        let idx = partition.mu().lambda_index(p.mu_index())?;
        best = Some(best.map_or(idx, |b| b.max(idx)));
    }
    best.ok_or_else(|| Error::Exhausted("no partition points in the covered region".into()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepStats {
    pub samples: u64,
    pub max_defect: f64,
    pub mean_defect: f64,
    pub bound: f64,
    /// Samples with `defect > bound`.
    pub above_bound: u64,
    /// Samples whose bracket does not contain the point.
    pub bracket_failures: u64,
    /// Sample attaining `max_defect`.
    pub worst: Option<(f64, f64)>,
}

/// Halton points `skip + 1 ..= skip + samples` mapped onto `sub` as `(r, θ)`.
pub fn sample_points(sub: SubSector, skip: u64, samples: u64) -> impl Iterator<Item = (f64, f64)> {
    (0..samples).map(move |i| {
        let (u, v) = halton_2d(skip + i + 1);
        let r = (sub.r_lo + u * (sub.r_hi - sub.r_lo)).min(sub.r_hi);
        let theta = (sub.theta_lo + v * (sub.theta_hi - sub.theta_lo)).min(sub.theta_hi);
        (r, theta)
    })
}

/// Locates the points of [`sample_points`].
pub fn coverage_sweep(
    partition: &Partition,
    sub: SubSector,
    skip: u64,
    samples: u64,
) -> Result<SweepStats> {
    let config = partition.config();
    sub.validate(config)?;
    let bound = defect_bound(config);
    let mut stats = SweepStats {
        samples,
        max_defect: 0.0,
        mean_defect: 0.0,
        bound,
        above_bound: 0,
        bracket_failures: 0,
        worst: None,
    };
    let mut total = NeumaierSum::new();
    for (r, theta) in sample_points(sub, skip, samples) {
        let a = SectorPoint::new(r, theta, config)?;
        let cov = locate(&a, partition)?;
        total.add(cov.defect);
        if cov.defect > bound {
            stats.above_bound += 1;
        }
        if !cov.bracket.contains(r, theta) {
            stats.bracket_failures += 1;
        }
        if cov.defect > stats.max_defect || stats.worst.is_none() {
            stats.max_defect = cov.defect;
            stats.worst = Some((r, theta));
        }
    }
    if samples > 0 {
        stats.mean_defect = total.value() / samples as f64;
    }
    Ok(stats)
}
