use alloc::vec::Vec;

use num_complex::Complex64;

use super::{PiecewiseTarget, Polynomial, TargetSpec};
use crate::covering::{locate, SectorPoint, SubSector};
use crate::numeric::unit_turns;
use crate::partition::Partition;
use crate::Result;

/// Ring radii, as fractions of `k1`, on which `|f(z + λa) − p(z)|` is sampled.
pub const Z_RING_FRACTIONS: [f64; 5] = [1.0, 0.75, 0.5, 0.25, 0.0];

/// Failures kept in a report.
const MAX_FAILURES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFailure {
    pub r: f64,
    pub theta: f64,
    pub margin: f64,
    pub defect: f64,
    /// Distance of `θ` to the nearer end of its angular bracket, relative to the bracket width.
    pub bracket_position: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub grid_points: u64,
    pub passed: u64,
    pub pass_fraction: f64,
    /// Smallest `1/s1 − sup|f(z + λa) − p(z)|`.
    pub worst_margin: f64,
    pub worst_a: Option<(f64, f64)>,
    /// Largest `|f − h|` met at the translated samples.
    pub max_fit_term: f64,
    /// Largest `|h(z + λa) − p(z)|`.
    pub max_continuity_term: f64,
    pub max_defect: f64,
    pub m1: u64,
    /// Largest `n(a)` used.
    pub max_index: u64,
    pub index_violations: u64,
    /// Points where the observed error exceeds fit term plus continuity term.
    pub triangle_violations: u64,
    pub failures: Vec<MembershipFailure>,
}

/// Checks, for each grid point `a`, that `n(a) ≤ m1` and
/// `sup_{|z| ≤ k1} |f(z + λ_{n(a)}·a) − p(z)| < 1/s1`.
#[allow(clippy::too_many_arguments)]
pub fn verify_membership(
    f: &Polynomial,
    h: &PiecewiseTarget,
    partition: &Partition,
    target: &TargetSpec,
    grid: SubSector,
    grid_size: usize,
    z_points: usize,
    m1: u64,
) -> Result<MembershipReport> {
    let config = partition.config();
    grid.validate(config)?;
    let tol = target.membership_tolerance();
    let mut zs: Vec<Complex64> = Vec::new();
    for frac in Z_RING_FRACTIONS {
        let count = if frac == 0.0 { 1 } else { z_points.max(1) };
        zs.extend((0..count).map(|i| unit_turns(i as f64 / count as f64) * (target.k1 * frac)));
    }
    let pz: Vec<Complex64> = zs.iter().map(|&z| target.p.eval(z)).collect();
    let step = |lo: f64, hi: f64, i: usize| {
        if grid_size <= 1 {
            lo
        } else {
            (lo + (hi - lo) * i as f64 / (grid_size - 1) as f64).min(hi)
        }
    };

    let mut report = MembershipReport {
        grid_points: 0,
        passed: 0,
        pass_fraction: 0.0,
        worst_margin: f64::INFINITY,
        worst_a: None,
        max_fit_term: 0.0,
        max_continuity_term: 0.0,
        max_defect: 0.0,
        m1,
        max_index: 0,
        index_violations: 0,
        triangle_violations: 0,
        failures: Vec::new(),
    };
    for i in 0..grid_size {
        for k in 0..grid_size {
            let (r, theta) = (
                step(grid.r_lo, grid.r_hi, i),
                step(grid.theta_lo, grid.theta_hi, k),
            );
            let a = SectorPoint::new(r, theta, config)?;
            let cov = locate(&a, partition)?;
            let n_a = partition.mu().lambda_index(cov.mu_index)?;
            let lambda = partition.mu().witness().source().term(n_a)?;
            let shift = lambda * a.value();

            let (mut observed, mut fit_term, mut cont_term) = (0.0f64, 0.0f64, 0.0f64);
            for (&z, &p) in zs.iter().zip(&pz) {
                let fz = f.eval(z + shift);
                observed = observed.max((fz - p).norm());
                match h.eval(z + shift) {
                    Ok(hz) => {
                        fit_term = fit_term.max((fz - hz).norm());
                        cont_term = cont_term.max((hz - p).norm());
                    }
                    Err(_) => {
                        fit_term = f64::INFINITY;
                        cont_term = f64::INFINITY;
                    }
                }
            }
            report.grid_points += 1;
            report.max_index = report.max_index.max(n_a);
            report.max_defect = report.max_defect.max(cov.defect);
            if fit_term.is_finite() {
                report.max_fit_term = report.max_fit_term.max(fit_term);
                report.max_continuity_term = report.max_continuity_term.max(cont_term);
                if observed > fit_term + cont_term + 1e-12 * (1.0 + observed) {
                    report.triangle_violations += 1;
                }
            }
            let index_ok = n_a <= m1;
            if !index_ok {
                report.index_violations += 1;
            }
            let margin = tol - observed;
            if margin < report.worst_margin {
                report.worst_margin = margin;
                report.worst_a = Some((r, theta));
            }
            if index_ok && margin > 0.0 {
                report.passed += 1;
            } else if report.failures.len() < MAX_FAILURES {
                let b = cov.bracket;
                let width = b.theta2 - b.theta1;
                let edge = (theta - b.theta1).min(b.theta2 - theta);
                report.failures.push(MembershipFailure {
                    r,
                    theta,
                    margin,
                    defect: cov.defect,
                    bracket_position: if width > 0.0 { edge / width } else { 0.0 },
                });
            }
        }
    }
    if report.grid_points > 0 {
        report.pass_fraction = report.passed as f64 / report.grid_points as f64;
    }
    Ok(report)
}
