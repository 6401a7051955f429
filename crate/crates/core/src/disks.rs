//! The translated disk family `{𝔅} ∪ {𝔅_w : w ∈ 𝒫}` and its disjointness checks.
//!
//! `𝔅` is the closed disk of radius `c4` at the origin and `𝔅_w = 𝔅 + w·μ(w)`,
//! where `μ(w) = μ_{m′+j}` for a point of density `m′` and angular index
//! `n = kP + j`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numeric::sin;
use crate::partition::{MuView, PartitionConfig, PartitionPoint};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskAssignment {
    pub point: PartitionPoint,
    pub mu_index: u64,
    pub mu_value: Complex64,
    pub disk: Disk,
}

pub fn base_disk(config: &PartitionConfig) -> Disk {
    Disk {
        center: Complex64::new(0.0, 0.0),
        radius: config.c4(),
    }
}

pub fn assign_mu(
    point: &PartitionPoint,
    mu: &MuView,
    config: &PartitionConfig,
) -> Result<DiskAssignment> {
    let mu_index = point.mu_index();
    let mu_value = mu.value(mu_index)?;
    Ok(DiskAssignment {
        point: *point,
        mu_index,
        mu_value,
        disk: Disk {
            center: point.value * mu_value,
            radius: config.c4(),
        },
    })
}

/// `|c1 − c2| − r1 − r2`; positive exactly when the closed disks are disjoint.
pub fn separation(d1: &Disk, d2: &Disk) -> f64 {
    (d1.center - d2.center).norm() - d1.radius - d2.radius
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PairCategory {
    /// `𝔅` against a translated disk.
    BaseVsW,
    /// Points on different ladder levels.
    DifferentLevel,
    /// Same level, different `μ(w)`.
    SameLevelDifferentMu,
    /// Same level and the same `μ(w)`; the tight case.
    SameLevelSameMu,
}

impl PairCategory {
    pub const ALL: [PairCategory; 4] = [
        Self::BaseVsW,
        Self::DifferentLevel,
        Self::SameLevelDifferentMu,
        Self::SameLevelSameMu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::BaseVsW => "base-vs-w",
            Self::DifferentLevel => "different-level",
            Self::SameLevelDifferentMu => "same-level-different-mu",
            Self::SameLevelSameMu => "same-level-same-mu",
        }
    }

    /// Lower bound on the margin implied by the constants.
    pub fn floor(self, config: &PartitionConfig) -> f64 {
        match self {
            Self::SameLevelSameMu => 2.0 * config.c4(),
            _ => config.r0() * config.c1() - 2.0 * config.c4(),
        }
    }
}

/// Point identifier `(level, n)`; the base disk is `None`.
pub type PointId = (usize, u64);

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryReport {
    pub category: PairCategory,
    pub checked: u64,
    pub min_margin: f64,
    pub argmin: Option<(Option<PointId>, PointId)>,
    pub floor: f64,
    /// Pairs with margin `≤ 0`.
    pub overlaps: u64,
    /// Pairs whose margin falls below the floor by more than rounding.
    pub below_floor: u64,
}

impl CategoryReport {
    fn new(category: PairCategory, config: &PartitionConfig) -> Self {
        Self {
            category,
            checked: 0,
            min_margin: f64::INFINITY,
            argmin: None,
            floor: category.floor(config),
            overlaps: 0,
            below_floor: 0,
        }
    }

    fn record(&mut self, margin: f64, a: Option<PointId>, b: PointId, scale: f64) {
        self.checked += 1;
        if margin <= 0.0 {
            self.overlaps += 1;
        }
        if margin < self.floor - 1e-12 * scale {
            self.below_floor += 1;
        }
        if margin < self.min_margin {
            self.min_margin = margin;
            self.argmin = Some((a, b));
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub categories: Vec<CategoryReport>,
    /// Whether every pair was checked.
    pub exhaustive: bool,
    /// Same-level angle differences `Δθ ∈ (0, 1/4)` checked against `sin(πΔθ) > 2Δθ`.
    pub jordan_checks: u64,
    pub jordan_violations: u64,
}

impl SeparationReport {
    pub fn category(&self, c: PairCategory) -> Option<&CategoryReport> {
        self.categories.iter().find(|r| r.category == c)
    }

    pub fn min_margin(&self) -> f64 {
        self.categories
            .iter()
            .map(|r| r.min_margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn all_disjoint(&self) -> bool {
        self.categories.iter().all(|r| r.overlaps == 0)
    }

    pub fn floors_hold(&self) -> bool {
        self.categories.iter().all(|r| r.below_floor == 0) && self.jordan_violations == 0
    }
}

/// Checks `𝔅 ∩ 𝔅_w = ∅` for every point.
pub fn verify_base(
    points: &[PartitionPoint],
    mu: &MuView,
    config: &PartitionConfig,
) -> Result<SeparationReport> {
    let base = base_disk(config);
    let mut report = CategoryReport::new(PairCategory::BaseVsW, config);
    for p in points {
        let a = assign_mu(p, mu, config)?;
        let scale = a.disk.center.norm();
        report.record(separation(&base, &a.disk), None, (p.level, p.n), scale);
    }
    Ok(SeparationReport {
        categories: alloc::vec![report],
        exhaustive: true,
        jordan_checks: 0,
        jordan_violations: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampler {
    /// Every pair.
    Exhaustive,
    /// Every pair up to `threshold` pairs; beyond it, neighbouring pairs plus
    /// `samples` random pairs per category.
    Auto {
        threshold: u64,
        samples: u64,
        seed: u64,
    },
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::Auto {
            threshold: 2_000_000,
            samples: 200_000,
            seed: 0,
        }
    }
}

fn categorize(a: &DiskAssignment, b: &DiskAssignment) -> PairCategory {
    if a.point.level != b.point.level {
        PairCategory::DifferentLevel
    } else if a.mu_index == b.mu_index {
        PairCategory::SameLevelSameMu
    } else {
        PairCategory::SameLevelDifferentMu
    }
}

struct PairChecker<'a> {
    disks: &'a [DiskAssignment],
    reports: BTreeMap<PairCategory, CategoryReport>,
    jordan_checks: u64,
    jordan_violations: u64,
}

impl PairChecker<'_> {
    fn check(&mut self, i: usize, k: usize) {
        let (a, b) = (&self.disks[i], &self.disks[k]);
        let category = categorize(a, b);
        let margin = separation(&a.disk, &b.disk);
        if a.point.level == b.point.level {
            let dtheta = (a.point.theta - b.point.theta).abs();
            if dtheta > 0.0 && dtheta < 0.25 {
                self.jordan_checks += 1;
                if !(sin(PI * dtheta) > 2.0 * dtheta) {
                    self.jordan_violations += 1;
                }
            }
        }
        let scale = a.disk.center.norm().max(b.disk.center.norm());
        let ids = ((a.point.level, a.point.n), (b.point.level, b.point.n));
        self.reports.get_mut(&category).expect("category").record(
            margin,
            Some(ids.0),
            ids.1,
            scale,
        );
    }
}

/// Checks pairwise disjointness of the translated disks of `points`.
pub fn verify_pairwise(
    points: &[PartitionPoint],
    mu: &MuView,
    config: &PartitionConfig,
    sampler: Sampler,
) -> Result<SeparationReport> {
    let disks = points
        .iter()
        .map(|p| assign_mu(p, mu, config))
        .collect::<Result<Vec<_>>>()?;
    let reports = [
        PairCategory::DifferentLevel,
        PairCategory::SameLevelDifferentMu,
        PairCategory::SameLevelSameMu,
    ]
    .into_iter()
    .map(|c| (c, CategoryReport::new(c, config)))
    .collect();
    let mut checker = PairChecker {
        disks: &disks,
        reports,
        jordan_checks: 0,
        jordan_violations: 0,
    };
    let n = disks.len();
    let pairs = (n as u64).saturating_mul(n.saturating_sub(1) as u64) / 2;

    let exhaustive = match sampler {
        Sampler::Exhaustive => true,
        Sampler::Auto { threshold, .. } => pairs <= threshold,
    };
    if exhaustive {
        for i in 0..n {
            for k in i + 1..n {
                checker.check(i, k);
            }
        }
    } else if let Sampler::Auto { samples, seed, .. } = sampler {
        sampled_pairs(&mut checker, samples, seed);
    }

    let PairChecker {
        reports,
        jordan_checks,
        jordan_violations,
        ..
    } = checker;
    Ok(SeparationReport {
        categories: reports.into_values().collect(),
        exhaustive,
        jordan_checks,
        jordan_violations,
    })
}

/// Neighbouring pairs (next index on a level, next point with the same `μ`,
/// first points of adjacent levels) followed by stratified random pairs.
fn sampled_pairs(checker: &mut PairChecker<'_>, samples: u64, seed: u64) {
    let disks = checker.disks;
    let n = disks.len();
    let mut by_level: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut by_mu: BTreeMap<(usize, u64), Vec<usize>> = BTreeMap::new();
    for (i, d) in disks.iter().enumerate() {
        by_level.entry(d.point.level).or_default().push(i);
        by_mu
            .entry((d.point.level, d.mu_index))
            .or_default()
            .push(i);
    }
    for group in by_level.values().chain(by_mu.values()) {
        for w in group.windows(2) {
            checker.check(w[0], w[1]);
        }
    }
    let levels: Vec<&Vec<usize>> = by_level.values().collect();
    for w in levels.windows(2) {
        checker.check(w[0][0], w[1][0]);
        checker.check(
            *w[0].last().expect("non-empty"),
            *w[1].last().expect("non-empty"),
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let same_mu: Vec<&Vec<usize>> = by_mu.values().filter(|g| g.len() > 1).collect();
    let multi: Vec<&Vec<usize>> = levels.iter().copied().filter(|g| g.len() > 1).collect();
    for _ in 0..samples {
        if !same_mu.is_empty() {
            let g = same_mu[rng.gen_range(0..same_mu.len())];
            let (a, b) = distinct_pair(&mut rng, g.len());
            checker.check(g[a], g[b]);
        }
        if !multi.is_empty() {
            let g = multi[rng.gen_range(0..multi.len())];
            let (a, b) = distinct_pair(&mut rng, g.len());
            if disks[g[a]].mu_index != disks[g[b]].mu_index {
                checker.check(g[a], g[b]);
            }
        }
        if levels.len() > 1 {
            let (la, lb) = distinct_pair(&mut rng, levels.len());
            let a = levels[la][rng.gen_range(0..levels[la].len())];
            let b = levels[lb][rng.gen_range(0..levels[lb].len())];
            checker.check(a, b);
        } else if n > 1 {
            let (a, b) = distinct_pair(&mut rng, n);
            checker.check(a, b);
        }
    }
}

fn distinct_pair(rng: &mut ChaCha8Rng, len: usize) -> (usize, usize) {
    let a = rng.gen_range(0..len);
    let mut b = rng.gen_range(0..len - 1);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{Partition, Truncation};
    use crate::sequence::{extract_sigma_witness, ComplexSequence};
    use proptest::prelude::*;

    fn reference() -> Partition {
        let config = PartitionConfig::free(0.9, 1.05, 0.0, 0.25, 0.9, 1.05).unwrap();
        let seq = ComplexSequence::arithmetic(0.0, 10.0).unwrap();
        let w = extract_sigma_witness(&seq, config.c1(), 8).unwrap();
        Partition::new(config, MuView::new(w, config.c1()).unwrap()).unwrap()
    }

    #[test]
    fn assignment_examples() {
        let p = reference();
        let (mu, c) = (p.mu(), p.config());
        let a = assign_mu(&p.point_at(0, 3).unwrap(), mu, c).unwrap();
        assert_eq!((a.mu_index, a.mu_value), (2, Complex64::new(20.0, 0.0)));
        let expect = crate::numeric::unit_turns(0.225) * 18.0;
        assert!((a.disk.center - expect).norm() < 1e-13);
        assert_eq!(
            assign_mu(&p.point_at(0, 0).unwrap(), mu, c)
                .unwrap()
                .mu_index,
            1
        );
        let a = assign_mu(&p.point_at(0, 2).unwrap(), mu, c).unwrap();
        assert_eq!((a.point.k, a.point.j, a.mu_value.re), (1, 0, 10.0));
    }

    #[test]
    fn base_and_separation() {
        let p = reference();
        let base = base_disk(p.config());
        assert_eq!(
            base,
            Disk {
                center: Complex64::new(0.0, 0.0),
                radius: 1.05
            }
        );
        assert_eq!(separation(&base, &base), -2.1);
        let far = Disk {
            center: Complex64::new(9.0, 0.0),
            radius: 1.05,
        };
        assert!((separation(&base, &far) - 6.9).abs() < 1e-15);
        assert_eq!(separation(&far, &base), separation(&base, &far));
        let d = PartitionConfig::derived(0.9, 1.05, 0.0, 0.25, 0.5, 1.05).unwrap();
        assert_eq!(base_disk(&d).radius, 1.55);
    }

    #[test]
    fn base_report() {
        let p = reference();
        let pts: Vec<_> = p
            .enumerate(Truncation {
                max_level: Some(0),
                ..Default::default()
            })
            .collect();
        let r = verify_base(&pts[..1], p.mu(), p.config()).unwrap();
        assert!((r.min_margin() - 6.9).abs() < 1e-13);
        let r = verify_base(&pts, p.mu(), p.config()).unwrap();
        let floor = 0.9 * p.config().c1() - 2.1;
        assert!((r.categories[0].floor - floor).abs() < 1e-15);
        assert!(r.floors_hold());
        let r = verify_base(&[], p.mu(), p.config()).unwrap();
        assert_eq!(r.min_margin(), f64::INFINITY);
    }

    #[test]
    fn same_mu_pair_example() {
        let p = reference();
        let (mu, c) = (p.mu(), p.config());
        let a = assign_mu(&p.point_at(0, 0).unwrap(), mu, c).unwrap();
        let b = assign_mu(&p.point_at(0, 2).unwrap(), mu, c).unwrap();
        let dist = (a.disk.center - b.disk.center).norm();
        assert!((dist - 18.0 * sin(PI * 0.135)).abs() < 1e-12);
        assert!(dist > 4.0 * c.c4());
    }

    #[test]
    fn first_three_levels_disjoint() {
        let p = reference();
        let pts: Vec<_> = p
            .enumerate(Truncation {
                max_level: Some(2),
                ..Default::default()
            })
            .collect();
        let r = verify_pairwise(&pts, p.mu(), p.config(), Sampler::Exhaustive).unwrap();
        assert!(r.exhaustive && r.all_disjoint() && r.floors_hold());
        assert!(r.jordan_checks > 0);
        let total: u64 = r.categories.iter().map(|c| c.checked).sum();
        assert_eq!(total as usize, pts.len() * (pts.len() - 1) / 2);
    }

    #[test]
    fn sampled_mode_runs_all_categories() {
        let p = reference();
        let pts: Vec<_> = p.enumerate(Truncation::default()).collect();
        let sampler = Sampler::Auto {
            threshold: 10,
            samples: 500,
            seed: 7,
        };
        let r = verify_pairwise(&pts, p.mu(), p.config(), sampler).unwrap();
        assert!(!r.exhaustive);
        assert!(r.categories.iter().all(|c| c.checked > 0));
        assert!(r.all_disjoint() && r.floors_hold());
        let again = verify_pairwise(&pts, p.mu(), p.config(), sampler).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn mu_range_per_point() {
        let p = reference();
        for q in p.enumerate(Truncation::default()) {
            let a = p.angular(q.level).unwrap();
            let mu = p.mu();
            let m = mu.modulus(q.mu_index()).unwrap();
            assert!(mu.modulus(a.m()).unwrap() <= m && m <= mu.modulus(a.m1()).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn exhaustive_sweep_finds_no_overlap(
            r0 in 0.9f64..0.95, big_r0 in 1.01f64..1.05, c2 in 0.85f64..0.95, c4 in 1.01f64..1.1,
            alpha in 0.0f64..5.0, beta in 1.0f64..4.0, width in 0.05f64..0.25,
        ) {
            let config = PartitionConfig::free(r0, big_r0, 0.0, width, c2, c4).unwrap();
            let seq = ComplexSequence::arithmetic(alpha, beta).unwrap();
            let w = extract_sigma_witness(&seq, config.c1(), 4).unwrap();
            let p = Partition::new(config, MuView::new(w, config.c1()).unwrap()).unwrap();
            let t = Truncation { max_level: Some(8), max_points_per_level: Some(60), theta_window: None };
            let pts: Vec<_> = p.enumerate(t).collect();
            let r = verify_pairwise(&pts, p.mu(), p.config(), Sampler::Exhaustive).unwrap();
            prop_assert!(r.all_disjoint());
            prop_assert!(r.floors_hold());
            prop_assert!(verify_base(&pts, p.mu(), p.config()).unwrap().floors_hold());
        }

        #[test]
        fn jordan_inequality(dtheta in 1e-9f64..0.25) {
            prop_assert!(sin(PI * dtheta) > 2.0 * dtheta);
        }
    }
}
