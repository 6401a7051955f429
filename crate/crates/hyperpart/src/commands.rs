//! The subcommands. Each returns its primary output and a pass flag; the
//! binary maps errors and failed verifications to exit statuses.

use hyperpart_core::approx::{build_universal, Precision, UniversalOptions};
use hyperpart_core::covering::{coverage_sweep, locate, sample_points, SectorPoint};
use hyperpart_core::disks::{assign_mu, verify_base, verify_pairwise, DiskAssignment};
use hyperpart_core::partition::{Partition, PartitionPoint, Truncation};
use hyperpart_core::sequence::{ComplexSequence, SequenceKind};
use serde::Serialize;
use serde_json::json;

use crate::config::{Mode, PrecisionSpec, RunConfig, SequenceSpec};
use crate::output::write_atomic;
use crate::report::{
    coefficients_json, CertificateJson, CoverageLine, DiskLine, PartitionLine, SeparationJson,
    SweepJson,
};
use crate::{svg, CliError};

/// Enumerations larger than this are refused rather than materialised.
pub const MAX_POINTS: usize = 2_000_000;

/// Terms listed for unbounded sequences when no length is given.
const DEFAULT_PREFIX: u64 = 100;

/// Command-line overrides of config values.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub degree: Option<usize>,
    pub precision: Option<PrecisionSpec>,
}

#[derive(Debug)]
pub struct Outcome {
    /// Written to `--out`, or to stdout.
    pub primary: Vec<u8>,
    /// One-line summary for stderr.
    pub summary: String,
    pub passed: bool,
}

fn pretty<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("report serialises");
    bytes.push(b'\n');
    bytes
}

fn json_lines<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Vec<u8> {
    let mut out = Vec::new();
    for row in rows {
        serde_json::to_writer(&mut out, &row).expect("record serialises");
        out.push(b'\n');
    }
    out
}

fn truncated_points(
    partition: &Partition,
    truncation: Truncation,
) -> Result<Vec<PartitionPoint>, CliError> {
    let points: Vec<PartitionPoint> = partition
        .enumerate(truncation)
        .take(MAX_POINTS + 1)
        .collect();
    if points.len() > MAX_POINTS {
        return Err(CliError::Validation(format!(
            "truncation selects more than {MAX_POINTS} points; lower truncation.max_level or set max_points_per_level"
        )));
    }
    Ok(points)
}

fn assignments(
    partition: &Partition,
    points: &[PartitionPoint],
) -> Result<Vec<DiskAssignment>, CliError> {
    Ok(points
        .iter()
        .map(|p| assign_mu(p, partition.mu(), partition.config()))
        .collect::<Result<_, _>>()?)
}

pub fn gen_sequence(config: &RunConfig, o: Overrides) -> Result<Outcome, CliError> {
    let seq = config.sequence.build()?;
    let requested = o.samples.or(config.grid.sequence_prefix);
    let (len, note) = prefix_length(&seq, requested);
    let prefix = seq.prefix(len)?;
    let exact: Option<Vec<String>> = match seq.kind() {
        SequenceKind::Explicit(_) => None,
        _ => Some(
            (1..=len)
                .map(|n| {
                    seq.exact_term(n)
                        .map(|t| t.expect("structured kind").to_string())
                })
                .collect::<Result<_, _>>()?,
        ),
    };
    let blocks: Option<Vec<serde_json::Value>> = match seq.kind() {
        SequenceKind::Prop61(p) => Some(
            p.blocks()
                .iter()
                .map(|b| {
                    json!({
                        "number": b.number,
                        "start": b.start.to_string(),
                        "first_index": b.first_index.to_string(),
                        "len": b.len.as_ref().map(|l| l.to_string()),
                        "within_cap": p.is_enumerable(b.number),
                    })
                })
                .collect(),
        ),
        _ => None,
    };
    let params = match &config.sequence {
        SequenceSpec::Arithmetic { alpha, beta } => json!({ "alpha": alpha, "beta": beta }),
        SequenceSpec::Prop61 { cap, .. } => {
            let SequenceKind::Prop61(p) = seq.kind() else {
                unreachable!("spec and kind agree")
            };
            json!({ "M0": p.m0().to_string(), "cap": cap })
        }
        SequenceSpec::Explicit { terms } => json!({ "len": terms.len() }),
    };
    let kind = match seq.kind() {
        SequenceKind::Arithmetic(_) => "arithmetic",
        SequenceKind::Prop61(_) => "prop61",
        SequenceKind::Explicit(_) => "explicit",
    };
    let doc = json!({
        "kind": kind,
        "params": params,
        "prefix": prefix.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "exact_prefix": exact,
        "blocks": blocks,
        "note": note,
    });
    Ok(Outcome {
        primary: pretty(&doc),
        summary: format!("{kind}: {len} terms"),
        passed: true,
    })
}

/// Number of terms to list, plus a note when the enumeration stops short.
fn prefix_length(seq: &ComplexSequence, requested: Option<u64>) -> (u64, Option<String>) {
    match seq.kind() {
        SequenceKind::Arithmetic(_) => (requested.unwrap_or(DEFAULT_PREFIX), None),
        SequenceKind::Explicit(t) => {
            let len = t.len() as u64;
            match requested {
                Some(r) if r > len => (
                    len,
                    Some(format!("explicit list has {len} terms; {r} requested")),
                ),
                Some(r) => (r, None),
                None => (len, None),
            }
        }
        SequenceKind::Prop61(p) => {
            let cap = p.cap();
            let whole = p
                .blocks()
                .iter()
                .filter(|b| p.is_enumerable(b.number))
                .rev()
                .find_map(|b| b.last_index())
                .and_then(|i| u64::try_from(i).ok())
                .unwrap_or(0);
            let partial = p.blocks().iter().find(|b| !p.is_enumerable(b.number));
            let note = partial.map(|b| {
                format!(
                    "capacity: block {} starts at index {} with a = {} and extends past the cap of {cap}",
                    b.number, b.first_index, b.start
                )
            });
            match requested {
                Some(r) if r > cap => (
                    cap,
                    Some(format!("capacity: {r} terms requested, cap is {cap}")),
                ),
                Some(r) => (r, note),
                None => (whole, note),
            }
        }
    }
}

pub fn verify_geometry(config: &RunConfig, o: Overrides) -> Result<Outcome, CliError> {
    let seed = o.seed.unwrap_or(config.seed);
    let partition = config.partition()?;
    let pc = *partition.config();
    let truncation = config.truncation.to_core();
    let points = truncated_points(&partition, truncation)?;

    let ladder = partition.ladder();
    let levels = ladder.levels();
    let top = truncation
        .max_level
        .map_or(partition.nu0(), |m| m.min(partition.nu0()));
    let mut sigma_max = 0.0f64;
    for level in 0..=top {
        sigma_max = sigma_max.max(
            partition
                .angular(level)
                .expect("level within ladder")
                .sigma(),
        );
    }
    let sigma_ok = sigma_max < 0.25;
    let monotone = levels
        .windows(2)
        .all(|w| w[0].r < w[1].r && w[0].m1 == w[1].m && w[1].density == w[1].m + 1);
    let nu0 = partition.nu0();
    let ladder_ok = monotone && levels[nu0].r <= pc.big_r0() && ladder.r_next() > pc.big_r0();

    let mut sampler = config.sampler;
    if let (Some(n), crate::config::SamplerSpec::Auto { samples, .. }) = (o.samples, &mut sampler) {
        *samples = n;
    }
    let base = verify_base(&points, partition.mu(), &pc)?;
    let pairwise = verify_pairwise(&points, partition.mu(), &pc, sampler.to_core(seed))?;
    let disjoint = base.all_disjoint() && pairwise.all_disjoint();
    let floors = base.floors_hold() && pairwise.floors_hold() && pairwise.jordan_violations == 0;
    let passed = disjoint && floors && sigma_ok && ladder_ok;
    let report = json!({
        "mode": config.mode,
        "constants": { "c1": pc.c1(), "c2": pc.c2(), "c3": pc.c3(), "c4": pc.c4() },
        "points": points.len(),
        "seed": seed,
        "invariants": {
            "levels_checked": top + 1,
            "sigma_max": sigma_max,
            "sigma_bound": 0.25,
            "sigma_ok": sigma_ok,
            "ladder_monotone": monotone,
            "nu0": nu0,
            "r_nu0": levels[nu0].r,
            "r_next": ladder.r_next(),
            "R0": pc.big_r0(),
            "ladder_ok": ladder_ok,
        },
        "base": SeparationJson::from(&base),
        "pairwise": SeparationJson::from(&pairwise),
        "passed": passed,
    });
    let min = base.min_margin().min(pairwise.min_margin());
    Ok(Outcome {
        primary: pretty(&report),
        summary: format!(
            "{} points, min margin {min}, {}",
            points.len(),
            if passed { "pass" } else { "FAIL" }
        ),
        passed,
    })
}

pub fn verify_covering(config: &RunConfig, o: Overrides) -> Result<Outcome, CliError> {
    let seed = o.seed.unwrap_or(config.seed);
    let samples = o.samples.unwrap_or(config.grid.covering_samples);
    let partition = config.partition()?;
    let pc = *partition.config();
    let sub = config.sub_sector(&pc);
    let stats = coverage_sweep(&partition, sub, seed, samples)?;
    let gated = config.mode == Mode::Derived;
    let threshold = config.delta0();
    let within = threshold.is_none_or(|d| stats.max_defect < d);
    let passed = !gated || (within && stats.bracket_failures == 0);

    if let Some(path) = &config.output.coverage_lines {
        let bound = threshold.unwrap_or(stats.bound);
        let lines = sample_points(sub, seed, samples)
            .map(|(r, t)| {
                let a = SectorPoint::new(r, t, &pc)?;
                Ok(CoverageLine::new(&locate(&a, &partition)?, bound))
            })
            .collect::<Result<Vec<_>, hyperpart_core::Error>>()?;
        write_atomic(path, &json_lines(lines))?;
    }
    let report = json!({
        "mode": config.mode,
        "gate": if gated { "on" } else { "off" },
        "delta0": threshold,
        "seed": seed,
        "sub_sector": { "r": [sub.r_lo, sub.r_hi], "theta": [sub.theta_lo, sub.theta_hi] },
        "levels": partition.nu0() + 1,
        "sweep": SweepJson::from(&stats),
        "passed": passed,
    });
    Ok(Outcome {
        primary: pretty(&report),
        summary: format!(
            "{samples} samples, max defect {}, gate {}",
            stats.max_defect,
            if gated { "on" } else { "off" }
        ),
        passed,
    })
}

pub fn build_universal_cmd(config: &RunConfig, o: Overrides) -> Result<Outcome, CliError> {
    if config.mode != Mode::Free {
        return Err(CliError::Validation(
            "build-universal runs on free-mode configs".into(),
        ));
    }
    let target_cfg = config
        .target
        .as_ref()
        .ok_or_else(|| CliError::Validation("build-universal needs a target".into()))?;
    let sub = config
        .sub_sector
        .ok_or_else(|| CliError::Validation("build-universal needs a sub_sector".into()))?
        .to_core();
    let target = target_cfg.build()?;
    let partition = config.partition()?;
    let degree = o.degree.unwrap_or(config.fit.degree);
    let samples_per_disk = match (o.samples, config.fit.samples_per_disk, o.degree) {
        (Some(s), _, _) => s as usize,
        // an explicit degree on the command line resets the derived sample count
        (None, Some(s), None) => s,
        _ => 2 * degree + 2,
    };
    let precision: Precision = o.precision.unwrap_or(config.fit.precision).into();
    let options = UniversalOptions {
        degree,
        samples_per_disk,
        precision,
        density: config.fit.density,
        grid_size: config.grid.membership,
        z_points: config.grid.z_points,
    };
    let cert = build_universal(&partition, &target, sub, options)?;
    if let Some(path) = &config.output.coefficients {
        write_atomic(path, &pretty(&coefficients_json(&cert.fit)))?;
    }
    let mut shown = config.clone();
    shown.fit.degree = degree;
    shown.fit.samples_per_disk = Some(samples_per_disk);
    shown.fit.precision = o.precision.unwrap_or(config.fit.precision);
    let doc = CertificateJson::new(&shown, &cert, &target, config.grid.membership);
    let worst = cert
        .disk_errors
        .iter()
        .map(|d| d.sup_error)
        .fold(0.0, f64::max);
    Ok(Outcome {
        primary: pretty(&doc),
        summary: format!(
            "{} disks, degree {degree}, sup error {worst:e}, membership {}/{}, {}",
            cert.points.len() + 1,
            cert.membership.passed,
            cert.membership.grid_points,
            if cert.certified {
                "certified"
            } else {
                "NOT certified"
            }
        ),
        passed: cert.certified,
    })
}

fn window_points(
    config: &RunConfig,
    partition: &Partition,
) -> Result<Vec<PartitionPoint>, CliError> {
    let Some(w) = &config.svg else {
        return truncated_points(partition, config.truncation.to_core());
    };
    let truncation = Truncation {
        max_level: Some(w.max_level),
        max_points_per_level: None,
        theta_window: Some((w.theta[0], w.theta[1])),
    };
    let mut points = truncated_points(partition, truncation)?;
    points.retain(|p| p.r >= w.r[0] && p.r <= w.r[1]);
    Ok(points)
}

pub fn export_svg(config: &RunConfig, _: Overrides) -> Result<Outcome, CliError> {
    let partition = config.partition()?;
    let points = window_points(config, &partition)?;
    let disks = assignments(&partition, &points)?;
    Ok(Outcome {
        primary: svg::render(&points, &disks).into_bytes(),
        summary: format!("{} points, {} disks", points.len(), disks.len()),
        passed: true,
    })
}

pub fn export_partition(config: &RunConfig, _: Overrides) -> Result<Outcome, CliError> {
    let partition = config.partition()?;
    let points = truncated_points(&partition, config.truncation.to_core())?;
    let lines = points
        .iter()
        .map(|p| PartitionLine::new(p, partition.mu()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome {
        primary: json_lines(lines),
        summary: format!("{} points", points.len()),
        passed: true,
    })
}

pub fn export_disks(config: &RunConfig, _: Overrides) -> Result<Outcome, CliError> {
    let partition = config.partition()?;
    let points = truncated_points(&partition, config.truncation.to_core())?;
    let disks = assignments(&partition, &points)?;
    Ok(Outcome {
        primary: json_lines(disks.iter().map(DiskLine::from)),
        summary: format!("{} disks", disks.len()),
        passed: true,
    })
}
