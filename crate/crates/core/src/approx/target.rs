use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{continuity_delta, Polynomial};
use crate::disks::{separation, Disk, DiskAssignment};
use crate::partition::PartitionConfig;
use crate::{Error, Result};

/// Data of the approximation step: approximate `p` within `1/s1` on `|z| ≤ k1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpec {
    pub p: Polynomial,
    /// Function carried by the base disk.
    pub g: Polynomial,
    pub s1: u32,
    pub k1: f64,
    pub c_radius: f64,
    pub eps0: f64,
    pub r1: f64,
    pub delta0: f64,
}

impl TargetSpec {
    /// `g = 0`, `C = k1` and `δ0` from [`continuity_delta`].
    pub fn with_defaults(p: Polynomial, s1: u32, k1: f64, eps0: f64, r1: f64) -> Result<Self> {
        let delta0 = continuity_delta(&p, r1, s1);
        let spec = Self {
            p,
            g: Polynomial::zero(),
            s1,
            k1,
            c_radius: k1,
            eps0,
            r1,
            delta0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: alloc::string::String| Err(Error::InvalidConfig(m));
        if self.s1 == 0 {
            return bad("s1 must be at least 1".into());
        }
        if !(self.k1 > 0.0) || !(self.eps0 > 0.0) || !(self.c_radius >= 0.0) {
            return bad(format!(
                "need k1 > 0, eps0 > 0, C >= 0 (got {}, {}, {})",
                self.k1, self.eps0, self.c_radius
            ));
        }
        if !(self.r1 >= self.k1.max(self.c_radius)) {
            return bad(format!("R1 = {} must be at least max(k1, C)", self.r1));
        }
        if !(self.delta0 > 0.0 && self.delta0 < 1.0) {
            return bad(format!("delta0 must lie in (0, 1) (got {})", self.delta0));
        }
        let sufficient = continuity_delta(&self.p, self.r1, self.s1);
        if self.delta0 > sufficient {
            return bad(format!(
                "delta0 = {} exceeds the continuity bound {sufficient} for p on |z| <= R1",
                self.delta0
            ));
        }
        Ok(())
    }

    /// `min{1/(2s1), ε0}`.
    pub fn fit_tolerance(&self) -> f64 {
        (0.5 / self.s1 as f64).min(self.eps0)
    }

    /// `1/s1`.
    pub fn membership_tolerance(&self) -> f64 {
        1.0 / self.s1 as f64
    }
}

/// `h = g` on `𝔅` and `h(z) = p(z − wμ(w))` on each `𝔅_w`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseTarget {
    base: Disk,
    g: Polynomial,
    p: Polynomial,
    pieces: Vec<Disk>,
}

/// Relative slack for membership of boundary points.
const BOUNDARY_TOLERANCE: f64 = 1e-12;

impl PiecewiseTarget {
    pub fn base(&self) -> &Disk {
        &self.base
    }

    /// Translated disks; each center is the shift `wμ(w)`.
    pub fn pieces(&self) -> &[Disk] {
        &self.pieces
    }

    /// All disks of `L`, base first.
    pub fn disks(&self) -> impl Iterator<Item = &Disk> {
        core::iter::once(&self.base).chain(self.pieces.iter())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let inside = |d: &Disk| (z - d.center).norm() <= d.radius * (1.0 + BOUNDARY_TOLERANCE);
        if inside(&self.base) {
            return Ok(self.g.eval(z));
        }
        self.pieces
            .iter()
            .find(|d| inside(d))
            .map(|d| self.p.eval(z - d.center))
            .ok_or(Error::OutsideCompact { re: z.re, im: z.im })
    }
}

/// Assembles `h` over the given disks, which must be pairwise disjoint.
pub fn build_h(
    assignments: &[DiskAssignment],
    config: &PartitionConfig,
    target: &TargetSpec,
) -> Result<PiecewiseTarget> {
    let base = crate::disks::base_disk(config);
    let mut pieces: Vec<Disk> = Vec::with_capacity(assignments.len());
    for a in assignments {
        if pieces
            .iter()
            .chain(core::iter::once(&base))
            .any(|d| separation(d, &a.disk) <= 0.0)
        {
            return Err(Error::Precondition(format!(
                "disk of point (level {}, n {}) meets another disk of L",
                a.point.level, a.point.n
            )));
        }
        pieces.push(a.disk);
    }
    Ok(PiecewiseTarget {
        base,
        g: target.g.clone(),
        p: target.p.clone(),
        pieces,
    })
}
