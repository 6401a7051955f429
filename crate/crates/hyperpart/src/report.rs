//! JSON shapes of reports and exported records.

use hyperpart_core::approx::{Certificate, DiskError, FitResult, MembershipReport};
use hyperpart_core::covering::{Coverage, SweepStats};
use hyperpart_core::disks::{CategoryReport, DiskAssignment, PointId, SeparationReport};
use hyperpart_core::partition::{MuView, PartitionPoint};
use hyperpart_core::Complex64;
use serde::Serialize;

use crate::config::RunConfig;

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Serialize)]
pub struct CategoryJson {
    pub category: &'static str,
    pub checked: u64,
    /// `null` when no pair was checked.
    pub min_margin: Option<f64>,
    /// `[first, second]`; `null` stands for the base disk.
    pub argmin_pair: Option<[Option<PointId>; 2]>,
    pub floor: f64,
    pub overlaps: u64,
    pub below_floor: u64,
}

impl From<&CategoryReport> for CategoryJson {
    fn from(c: &CategoryReport) -> Self {
        Self {
            category: c.category.name(),
            checked: c.checked,
            min_margin: (c.checked > 0).then_some(c.min_margin),
            argmin_pair: c.argmin.map(|(a, b)| [a, Some(b)]),
            floor: c.floor,
            overlaps: c.overlaps,
            below_floor: c.below_floor,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SeparationJson {
    pub exhaustive: bool,
    pub categories: Vec<CategoryJson>,
    pub jordan_checks: u64,
    pub jordan_violations: u64,
    pub all_disjoint: bool,
    pub floors_hold: bool,
}

impl From<&SeparationReport> for SeparationJson {
    fn from(r: &SeparationReport) -> Self {
        Self {
            exhaustive: r.exhaustive,
            categories: r.categories.iter().map(CategoryJson::from).collect(),
            jordan_checks: r.jordan_checks,
            jordan_violations: r.jordan_violations,
            all_disjoint: r.all_disjoint(),
            floors_hold: r.floors_hold(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PartitionLine {
    pub level: usize,
    pub n: u64,
    pub k: u64,
    pub j: u64,
    pub r: f64,
    pub theta_turns: f64,
    pub re: f64,
    pub im: f64,
    pub mu_index: u64,
    pub mu_abs: f64,
}

impl PartitionLine {
    pub fn new(p: &PartitionPoint, mu: &MuView) -> hyperpart_core::Result<Self> {
        Ok(Self {
            level: p.level,
            n: p.n,
            k: p.k,
            j: p.j,
            r: p.r,
            theta_turns: p.theta,
            re: p.value.re,
            im: p.value.im,
            mu_index: p.mu_index(),
            mu_abs: mu.modulus(p.mu_index())?,
        })
    }
}

#[derive(Debug, Serialize)]
pub struct DiskLine {
    pub level: usize,
    pub n: u64,
    pub center_re: f64,
    pub center_im: f64,
    pub radius: f64,
    pub mu_index: u64,
}

impl From<&DiskAssignment> for DiskLine {
    fn from(a: &DiskAssignment) -> Self {
        Self {
            level: a.point.level,
            n: a.point.n,
            center_re: a.disk.center.re,
            center_im: a.disk.center.im,
            radius: a.disk.radius,
            mu_index: a.mu_index,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CoverageLine {
    pub a_re: f64,
    pub a_im: f64,
    pub level: usize,
    pub n: u64,
    pub defect: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CoverageLine {
    pub fn new(c: &Coverage, bound: f64) -> Self {
        let a = c.a.value();
        Self {
            a_re: a.re,
            a_im: a.im,
            level: c.w0.level,
            n: c.w0.n,
            defect: c.defect,
            bound,
            pass: c.defect < bound,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepJson {
    pub samples: u64,
    pub max_defect: f64,
    pub mean_defect: f64,
    /// `(2R0π + 1)·c2`.
    pub chain_bound: f64,
    pub above_chain_bound: u64,
    pub bracket_failures: u64,
    /// `[r, θ]` of the largest defect.
    pub worst: Option<[f64; 2]>,
}

impl From<&SweepStats> for SweepJson {
    fn from(s: &SweepStats) -> Self {
        Self {
            samples: s.samples,
            max_defect: s.max_defect,
            mean_defect: s.mean_defect,
            chain_bound: s.bound,
            above_chain_bound: s.above_bound,
            bracket_failures: s.bracket_failures,
            worst: s.worst.map(|(r, t)| [r, t]),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DiskErrorJson {
    pub center: [f64; 2],
    pub radius: f64,
    pub sup_error: f64,
}

impl From<&DiskError> for DiskErrorJson {
    fn from(d: &DiskError) -> Self {
        Self {
            center: pair(d.center),
            radius: d.radius,
            sup_error: d.sup_error,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FitJson {
    pub degree: usize,
    pub precision: &'static str,
    pub rho: f64,
    pub samples_per_disk: usize,
    pub rows: usize,
    pub residual_norm: f64,
    pub max_sample_residual: f64,
    pub diagonal_ratio: f64,
}

impl From<&FitResult> for FitJson {
    fn from(f: &FitResult) -> Self {
        Self {
            degree: f.degree,
            precision: match f.precision {
                hyperpart_core::approx::Precision::Double => "double",
                hyperpart_core::approx::Precision::Extended => "extended",
            },
            rho: f.rho,
            samples_per_disk: f.samples_per_disk,
            rows: f.rows,
            residual_norm: f.residual_norm,
            max_sample_residual: f.max_sample_residual,
            diagonal_ratio: f.diagonal_ratio,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WorstJson {
    pub margin: f64,
    /// `[r, θ]`.
    pub a: Option<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct FailureJson {
    pub r: f64,
    pub theta: f64,
    pub margin: f64,
    pub defect: f64,
    pub bracket_position: f64,
}

#[derive(Debug, Serialize)]
pub struct MembershipJson {
    pub grid: usize,
    pub grid_points: u64,
    pub passed: u64,
    pub pass_fraction: f64,
    pub worst: WorstJson,
    pub max_fit_term: f64,
    pub max_continuity_term: f64,
    pub max_defect: f64,
    pub m1: u64,
    pub max_index: u64,
    pub index_violations: u64,
    pub triangle_violations: u64,
    pub failures: Vec<FailureJson>,
}

impl MembershipJson {
    pub fn new(r: &MembershipReport, grid: usize) -> Self {
        Self {
            grid,
            grid_points: r.grid_points,
            passed: r.passed,
            pass_fraction: r.pass_fraction,
            worst: WorstJson {
                margin: r.worst_margin,
                a: r.worst_a.map(|(r, t)| [r, t]),
            },
            max_fit_term: r.max_fit_term,
            max_continuity_term: r.max_continuity_term,
            max_defect: r.max_defect,
            m1: r.m1,
            max_index: r.max_index,
            index_violations: r.index_violations,
            triangle_violations: r.triangle_violations,
            failures: r
                .failures
                .iter()
                .map(|f| FailureJson {
                    r: f.r,
                    theta: f.theta,
                    margin: f.margin,
                    defect: f.defect,
                    bracket_position: f.bracket_position,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TargetJson {
    pub p: Vec<[f64; 2]>,
    pub g: Vec<[f64; 2]>,
    pub s1: u32,
    pub k1: f64,
    pub c_radius: f64,
    pub eps0: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    pub delta0: f64,
}

#[derive(Debug, Serialize)]
pub struct CertificateJson<'a> {
    pub config: &'a RunConfig,
    /// Sub-sector `{r: [lo, hi], theta: [lo, hi]}` covered by the disks.
    pub truncation: crate::config::SubSectorSpec,
    pub target: TargetJson,
    pub degree: usize,
    pub points: Vec<PointId>,
    pub separation: SeparationJson,
    pub base_separation: SeparationJson,
    pub fit: FitJson,
    pub per_disk_errors: Vec<DiskErrorJson>,
    pub fit_tolerance: f64,
    pub fit_certified: bool,
    pub membership: MembershipJson,
    pub certified: bool,
    pub seed: u64,
}

impl<'a> CertificateJson<'a> {
    pub fn new(
        config: &'a RunConfig,
        cert: &Certificate,
        target: &hyperpart_core::approx::TargetSpec,
        grid: usize,
    ) -> Self {
        let s = cert.sub_sector;
        Self {
            config,
            truncation: crate::config::SubSectorSpec {
                r: [s.r_lo, s.r_hi],
                theta: [s.theta_lo, s.theta_hi],
            },
            target: TargetJson {
                p: target.p.coeffs().iter().copied().map(pair).collect(),
                g: target.g.coeffs().iter().copied().map(pair).collect(),
                s1: target.s1,
                k1: target.k1,
                c_radius: target.c_radius,
                eps0: target.eps0,
                r1: target.r1,
                delta0: target.delta0,
            },
            degree: cert.fit.degree,
            points: cert.points.iter().map(|p| (p.level, p.n)).collect(),
            separation: SeparationJson::from(&cert.separation),
            base_separation: SeparationJson::from(&cert.base_separation),
            fit: FitJson::from(&cert.fit),
            per_disk_errors: cert.disk_errors.iter().map(DiskErrorJson::from).collect(),
            fit_tolerance: cert.fit_tolerance,
            fit_certified: cert.fit_certified,
            membership: MembershipJson::new(&cert.membership, grid),
            certified: cert.certified,
            seed: config.seed,
        }
    }
}

/// Coefficients as `[[re, im], …]` in the basis `(z/ρ)^k`.
pub fn coefficients_json(f: &FitResult) -> serde_json::Value {
    serde_json::json!({
        "basis": "scaled",
        "rho": f.rho,
        "coefficients": f.poly.coeffs().iter().copied().map(pair).collect::<Vec<_>>(),
    })
}
