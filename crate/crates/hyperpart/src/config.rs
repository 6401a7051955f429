//! Run configuration documents.
//!
//! A single JSON object; unknown keys are rejected at every level and the
//! partition constants are re-validated on load.

use std::fs;
use std::path::{Path, PathBuf};

use hyperpart_core::approx::{Polynomial, Precision, TargetSpec};
use hyperpart_core::covering::SubSector;
use hyperpart_core::disks::Sampler;
use hyperpart_core::partition::{MuView, Partition, PartitionConfig, Truncation};
use hyperpart_core::sequence::{extract_sigma_witness, ComplexSequence};
use hyperpart_core::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Free,
    Derived,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorSpec {
    pub r0: f64,
    #[serde(rename = "R0")]
    pub big_r0: f64,
    pub theta0: f64,
    #[serde(rename = "thetaT")]
    pub theta_t: f64,
}

/// `{c2, c4}` in free mode, `{delta0, R1}` in derived mode. A free-mode
/// `delta0` only sets the covering threshold that is reported.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c4: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta0: Option<f64>,
    #[serde(default, rename = "R1", skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
}

/// A real number given either as a JSON number or as an exact string such
/// as `"5/2"` or `"2.5"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exact {
    Number(f64),
    Text(String),
}

impl Exact {
    pub fn to_rational(&self) -> Result<BigRational, CliError> {
        match self {
            Exact::Number(v) => BigRational::from_float(*v)
                .ok_or_else(|| CliError::Validation(format!("{v} is not a finite number"))),
            Exact::Text(s) => parse_rational(s)
                .ok_or_else(|| CliError::Validation(format!("cannot read {s:?} as a rational"))),
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let (n, d): (BigInt, BigInt) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
        return (d != BigInt::from(0)).then(|| BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let value = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -value } else { value })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SequenceSpec {
    /// `λ_n = α + βn`.
    Arithmetic { alpha: f64, beta: f64 },
    Prop61 {
        #[serde(rename = "M0")]
        m0: Exact,
        cap: u64,
    },
    /// Terms as `[re, im]` pairs.
    Explicit { terms: Vec<[f64; 2]> },
}

impl SequenceSpec {
    pub fn build(&self) -> Result<ComplexSequence, CliError> {
        Ok(match self {
            SequenceSpec::Arithmetic { alpha, beta } => ComplexSequence::arithmetic(*alpha, *beta)?,
            SequenceSpec::Prop61 { m0, cap } => ComplexSequence::prop61(m0.to_rational()?, *cap)?,
            SequenceSpec::Explicit { terms } => ComplexSequence::explicit(
                terms
                    .iter()
                    .map(|[re, im]| Complex64::new(*re, *im))
                    .collect(),
            )?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    /// Gap `M`; defaults to `c1`.
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    /// Terms extracted from listed sources.
    #[serde(default = "default_witness_count")]
    pub count: usize,
}

fn default_witness_count() -> usize {
    64
}

impl Default for WitnessSpec {
    fn default() -> Self {
        Self {
            gap: None,
            count: default_witness_count(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_points_per_level: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_window: Option<[f64; 2]>,
}

impl TruncationSpec {
    pub fn to_core(&self) -> Truncation {
        Truncation {
            max_level: self.max_level,
            max_points_per_level: self.max_points_per_level,
            theta_window: self.theta_window.map(|[lo, hi]| (lo, hi)),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubSectorSpec {
    pub r: [f64; 2],
    pub theta: [f64; 2],
}

impl SubSectorSpec {
    pub fn to_core(self) -> SubSector {
        SubSector {
            r_lo: self.r[0],
            r_hi: self.r[1],
            theta_lo: self.theta[0],
            theta_hi: self.theta[1],
        }
    }
}

/// A coefficient, real or `[re, im]`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Real(f64),
    Complex([f64; 2]),
}

fn polynomial(coeffs: &[Coefficient]) -> Polynomial {
    Polynomial::monomial(
        coeffs
            .iter()
            .map(|c| match *c {
                Coefficient::Real(re) => Complex64::new(re, 0.0),
                Coefficient::Complex([re, im]) => Complex64::new(re, im),
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    /// Monomial coefficients of `p`, constant term first.
    pub p: Vec<Coefficient>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Coefficient>>,
    pub s1: u32,
    pub k1: f64,
    pub eps0: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    /// Defaults to `continuity_delta(p, R1, s1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta0: Option<f64>,
    /// Defaults to `k1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_radius: Option<f64>,
}

impl TargetConfig {
    pub fn build(&self) -> Result<TargetSpec, CliError> {
        let mut t =
            TargetSpec::with_defaults(polynomial(&self.p), self.s1, self.k1, self.eps0, self.r1)?;
        if let Some(g) = &self.g {
            t.g = polynomial(g);
        }
        if let Some(d) = self.delta0 {
            t.delta0 = d;
        }
        if let Some(c) = self.c_radius {
            t.c_radius = c;
        }
        t.validate()?;
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PrecisionSpec {
    Double,
    Extended,
}

impl From<PrecisionSpec> for Precision {
    fn from(p: PrecisionSpec) -> Self {
        match p {
            PrecisionSpec::Double => Precision::Double,
            PrecisionSpec::Extended => Precision::Extended,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSpec {
    #[serde(default = "default_degree")]
    pub degree: usize,
    /// Defaults to `2·degree + 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_per_disk: Option<usize>,
    #[serde(default = "default_precision")]
    pub precision: PrecisionSpec,
    /// Refinement of the sup-error grid over the fit grid.
    #[serde(default = "default_density")]
    pub density: usize,
}

fn default_degree() -> usize {
    24
}
fn default_precision() -> PrecisionSpec {
    PrecisionSpec::Double
}
fn default_density() -> usize {
    4
}

impl Default for FitSpec {
    fn default() -> Self {
        Self {
            degree: default_degree(),
            samples_per_disk: None,
            precision: default_precision(),
            density: default_density(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// Membership grid is `membership × membership`.
    #[serde(default = "default_membership")]
    pub membership: usize,
    #[serde(default = "default_z_points")]
    pub z_points: usize,
    #[serde(default = "default_covering_samples")]
    pub covering_samples: u64,
    /// Terms listed by `gen-sequence`; defaults to the whole blocks below the cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence_prefix: Option<u64>,
}

fn default_membership() -> usize {
    50
}
fn default_z_points() -> usize {
    64
}
fn default_covering_samples() -> u64 {
    10_000
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            membership: default_membership(),
            z_points: default_z_points(),
            covering_samples: default_covering_samples(),
            sequence_prefix: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SamplerSpec {
    Exhaustive,
    Auto { threshold: u64, samples: u64 },
}

impl Default for SamplerSpec {
    fn default() -> Self {
        SamplerSpec::Auto {
            threshold: 2_000_000,
            samples: 200_000,
        }
    }
}

impl SamplerSpec {
    pub fn to_core(self, seed: u64) -> Sampler {
        match self {
            SamplerSpec::Exhaustive => Sampler::Exhaustive,
            SamplerSpec::Auto { threshold, samples } => Sampler::Auto {
                threshold,
                samples,
                seed,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SvgWindow {
    pub r: [f64; 2],
    pub theta: [f64; 2],
    pub max_level: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Per-sample JSON lines written by `verify-covering`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage_lines: Option<PathBuf>,
    /// Coefficients `[[re, im], …]` of the fitted polynomial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    pub sector: SectorSpec,
    pub constants: ConstantsSpec,
    pub sequence: SequenceSpec,
    #[serde(default)]
    pub witness: WitnessSpec,
    #[serde(default)]
    pub truncation: TruncationSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_sector: Option<SubSectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetConfig>,
    #[serde(default)]
    pub fit: FitSpec,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub sampler: SamplerSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<SvgWindow>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub seed: u64,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses and validates.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = serde_json::from_str(text).map_err(CliError::Parse)?;
        config.partition_config()?;
        if let Some(sub) = config.sub_sector {
            sub.to_core().validate(&config.partition_config()?)?;
        }
        if let Some(t) = &config.target {
            t.build()?;
        }
        Ok(config)
    }

    pub fn partition_config(&self) -> Result<PartitionConfig, CliError> {
        let s = &self.sector;
        let c = &self.constants;
        Ok(match self.mode {
            Mode::Free => {
                if c.r1.is_some() {
                    return Err(CliError::Validation("R1 is a derived-mode constant".into()));
                }
                let (Some(c2), Some(c4)) = (c.c2, c.c4) else {
                    return Err(CliError::Validation(
                        "free mode needs constants c2 and c4".into(),
                    ));
                };
                PartitionConfig::free(s.r0, s.big_r0, s.theta0, s.theta_t, c2, c4)?
            }
            Mode::Derived => {
                if c.c2.is_some() || c.c4.is_some() {
                    return Err(CliError::Validation(
                        "derived mode computes c2 and c4 from delta0 and R1".into(),
                    ));
                }
                let (Some(d), Some(r1)) = (c.delta0, c.r1) else {
                    return Err(CliError::Validation(
                        "derived mode needs constants delta0 and R1".into(),
                    ));
                };
                PartitionConfig::derived(s.r0, s.big_r0, s.theta0, s.theta_t, d, r1)?
            }
        })
    }

    /// Covering threshold `δ0`, if one is configured.
    pub fn delta0(&self) -> Option<f64> {
        self.constants.delta0
    }

    pub fn mu(&self, config: &PartitionConfig) -> Result<MuView, CliError> {
        let seq = self.sequence.build()?;
        let gap = self.witness.gap.unwrap_or(config.c1());
        let witness = extract_sigma_witness(&seq, gap, self.witness.count)?;
        Ok(MuView::new(witness, config.c1())?)
    }

    pub fn partition(&self) -> Result<Partition, CliError> {
        let config = self.partition_config()?;
        let mu = self.mu(&config)?;
        Ok(Partition::new(config, mu)?)
    }

    pub fn sub_sector(&self, config: &PartitionConfig) -> SubSector {
        self.sub_sector
            .map_or_else(|| SubSector::whole(config), SubSectorSpec::to_core)
    }
}
