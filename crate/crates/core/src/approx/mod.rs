//! Constructive polynomial approximation on the compact set `L`.
//!
//! `L` is the base disk together with the translated disks of the covered
//! points. The target `h` equals `g` on the base disk and a translate of `p`
//! on every other disk; a single polynomial `f` is fitted to `h` by least
//! squares on disk samples, and the result is checked against the
//! approximation requirement over a grid of sector points.

mod fit;
mod lsq;
mod membership;
mod polynomial;
mod target;

use alloc::vec::Vec;

pub use fit::{fit_polynomial, sup_error, DiskError, FitResult, Precision, RING_FRACTIONS};
pub use lsq::{polynomial_least_squares, LeastSquaresFit};
pub use membership::{verify_membership, MembershipFailure, MembershipReport, Z_RING_FRACTIONS};
pub use polynomial::{continuity_delta, Basis, Polynomial};
pub use target::{build_h, PiecewiseTarget, TargetSpec};

use crate::covering::{covering_points, uniform_bound_m1, SubSector};
use crate::disks::{assign_mu, verify_base, verify_pairwise, Sampler, SeparationReport};
use crate::partition::{Partition, PartitionPoint};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalOptions {
    pub degree: usize,
    pub samples_per_disk: usize,
    pub precision: Precision,
    /// Refinement factor of the sup-error grid over the fit grid.
    pub density: usize,
    /// Membership grid is `grid_size × grid_size`.
    pub grid_size: usize,
    /// Points per ring of the `|z| ≤ k1` samples.
    pub z_points: usize,
}

impl UniversalOptions {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            samples_per_disk: 2 * degree + 2,
            precision: Precision::Double,
            density: 4,
            grid_size: 50,
            z_points: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub sub_sector: SubSector,
    /// Covered partition points, one translated disk each.
    pub points: Vec<PartitionPoint>,
    pub separation: SeparationReport,
    pub base_separation: SeparationReport,
    pub m1: u64,
    pub fit: FitResult,
    pub disk_errors: Vec<DiskError>,
    /// `min{1/(2s1), ε0}`.
    pub fit_tolerance: f64,
    pub fit_certified: bool,
    pub membership: MembershipReport,
    pub certified: bool,
}

/// Covering points → disks → `h` → fit → sup errors → membership grid.
pub fn build_universal(
    partition: &Partition,
    target: &TargetSpec,
    sub: SubSector,
    options: UniversalOptions,
) -> Result<Certificate> {
    target.validate()?;
    sub.validate(partition.config())?;
    let (config, mu) = (partition.config(), partition.mu());
    let points: Vec<PartitionPoint> = covering_points(partition, sub).collect();
    let m1 = uniform_bound_m1(points.iter().copied(), partition)?;
    let assignments = points
        .iter()
        .map(|p| assign_mu(p, mu, config))
        .collect::<Result<Vec<_>>>()?;
    let separation = verify_pairwise(&points, mu, config, Sampler::Exhaustive)?;
    let base_separation = verify_base(&points, mu, config)?;
    let h = build_h(&assignments, config, target)?;
    let min_degree = target.p.degree().max(target.g.degree());
    let fit = fit_polynomial(
        &h,
        min_degree,
        options.degree,
        options.samples_per_disk,
        options.precision,
    )?;
    let disk_errors = sup_error(&fit.poly, &h, options.samples_per_disk, options.density)?;
    let fit_tolerance = target.fit_tolerance();
    let fit_certified = disk_errors.iter().all(|d| d.sup_error < fit_tolerance);
    let membership = verify_membership(
        &fit.poly,
        &h,
        partition,
        target,
        sub,
        options.grid_size,
        options.z_points,
        m1,
    )?;
    let certified =
        fit_certified && membership.grid_points > 0 && membership.passed == membership.grid_points;
    Ok(Certificate {
        sub_sector: sub,
        points,
        separation,
        base_separation,
        m1,
        fit,
        disk_errors,
        fit_tolerance,
        fit_certified,
        membership,
        certified,
    })
}
