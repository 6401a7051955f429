//! Gap witnesses: subsequences `(μ_k)` with `|μ_{k+1}| − |μ_k| > M`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{exact_from_f64, ComplexSequence, SequenceKind};
use crate::numeric::NeumaierSum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceTag {
    /// The source is structured and the reciprocal series provably diverges.
    Analytic,
    /// Only the computed partial sums back the claim.
    Empirical,
}

/// Closed form of a witness drawn from an arithmetic source:
/// `μ_k = alpha + beta·k` sits at index `first_index + (k−1)·index_step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessProgression {
    pub first_index: u64,
    pub index_step: u64,
    pub alpha: f64,
    pub beta: f64,
}

impl WitnessProgression {
    pub fn index(&self, k: u64) -> u64 {
        self.first_index + (k - 1) * self.index_step
    }

    pub fn value(&self, k: u64) -> f64 {
        self.alpha + self.beta * k as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaWitness {
    source: ComplexSequence,
    gap: f64,
    indices: Vec<u64>,
    values: Vec<Complex64>,
    partial_sums: Vec<f64>,
    divergence: DivergenceTag,
    progression: Option<WitnessProgression>,
}

impl SigmaWitness {
    fn assemble(
        source: &ComplexSequence,
        gap: f64,
        indices: Vec<u64>,
        divergence: DivergenceTag,
        progression: Option<WitnessProgression>,
    ) -> Result<Self> {
        let values = indices
            .iter()
            .map(|&n| source.term(n))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = NeumaierSum::new();
        let partial_sums = values
            .iter()
            .map(|z| {
                acc.add(1.0 / z.norm());
                acc.value()
            })
            .collect();
        Ok(Self {
            source: source.clone(),
            gap,
            indices,
            values,
            partial_sums,
            divergence,
            progression,
        })
    }

    pub fn source(&self) -> &ComplexSequence {
        &self.source
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// Indices into `Λ`, strictly increasing.
    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Running sums of `1/|μ_k|`.
    pub fn partial_sums(&self) -> &[f64] {
        &self.partial_sums
    }

    pub fn divergence(&self) -> DivergenceTag {
        self.divergence
    }

    pub fn progression(&self) -> Option<&WitnessProgression> {
        self.progression.as_ref()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn floor_u64(q: &BigRational) -> Result<u64> {
    q.floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("index {q} does not fit in u64")))
}

/// Greedy extraction: `μ_1` is the first term with `|λ| > M`, then each next
/// term is the first later one whose modulus exceeds the previous by more
/// than `M`. Exact sources are compared in rational arithmetic, explicit
/// lists in IEEE order.
pub fn extract_sigma_witness(seq: &ComplexSequence, m: f64, count: usize) -> Result<SigmaWitness> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::Domain(format!(
            "gap bound must be positive and finite (got {m})"
        )));
    }
    match seq.kind() {
        SequenceKind::Arithmetic(a) => {
            let m_exact = exact_from_f64(m).expect("finite");
            let first_index = if a.exact(1) > m_exact {
                1
            } else {
                floor_u64(&((&m_exact - a.alpha_exact()) / a.beta_exact()))? + 1
            };
            let step = floor_u64(&(&m_exact / a.beta_exact()))? + 1;
            let indices = (0..count as u64).map(|k| first_index + k * step).collect();
            let shift = BigRational::from_integer(BigInt::from(first_index) - BigInt::from(step));
            let alpha = a.alpha_exact() + a.beta_exact() * shift;
            let beta = a.beta_exact() * BigRational::from_integer(BigInt::from(step));
            let progression = WitnessProgression {
                first_index,
                index_step: step,
                alpha: alpha.to_f64().unwrap_or(f64::NAN),
                beta: beta.to_f64().unwrap_or(f64::NAN),
            };
            SigmaWitness::assemble(seq, m, indices, DivergenceTag::Analytic, Some(progression))
        }
        SequenceKind::Prop61(p) => {
            let m_exact = exact_from_f64(m).expect("finite");
            let mut indices = Vec::with_capacity(count);
            let mut threshold = m_exact.clone();
            let mut n = 1u64;
            while indices.len() < count && n <= p.cap() {
                let v = p.term(n)?;
                if v > threshold {
                    threshold = v + &m_exact;
                    indices.push(n);
                }
                n += 1;
            }
            if indices.len() < count {
                return Err(Error::Exhausted(format!(
                    "only {} of {count} witness terms within the first {} terms",
                    indices.len(),
                    p.cap()
                )));
            }
            SigmaWitness::assemble(seq, m, indices, DivergenceTag::Empirical, None)
        }
        SequenceKind::Explicit(terms) => {
            let mut indices = Vec::with_capacity(count);
            let mut last: Option<f64> = None;
            for (i, z) in terms.iter().enumerate() {
                if indices.len() == count {
                    break;
                }
                let r = z.norm();
                let take = match last {
                    None => r > m,
                    Some(prev) => r - prev > m,
                };
                if take {
                    indices.push(i as u64 + 1);
                    last = Some(r);
                }
            }
            if indices.len() < count {
                return Err(Error::Exhausted(format!(
                    "only {} of {count} witness terms among {} explicit terms",
                    indices.len(),
                    terms.len()
                )));
            }
            SigmaWitness::assemble(seq, m, indices, DivergenceTag::Empirical, None)
        }
    }
}

/// Union over the given blocks of `{a_n, a_n + N1, …, a_n + ([a_n]+1)!}` with
/// `N1 = N0 + 1`. Gaps across blocks are checked exactly.
pub fn extract_claim3(
    seq: &ComplexSequence,
    n0: u64,
    blocks: core::ops::RangeInclusive<usize>,
) -> Result<SigmaWitness> {
    let SequenceKind::Prop61(p) = seq.kind() else {
        return Err(Error::Domain(
            "block progressions need a block sequence".into(),
        ));
    };
    if n0 < 2 {
        return Err(Error::Domain(format!("N0 must be at least 2 (got {n0})")));
    }
    let n1 = n0 + 1;
    let n0_exact = BigRational::from_integer(BigInt::from(n0));
    let mut indices = Vec::new();
    let mut last_value: Option<BigRational> = None;
    for number in blocks {
        if number == 0 {
            return Err(Error::OutOfRange("block numbers start at 1".into()));
        }
        if !p.is_enumerable(number) {
            let first = p
                .blocks()
                .get(number - 1)
                .and_then(|b| b.first_index.to_u64())
                .unwrap_or(u64::MAX);
            return Err(Error::Capacity {
                index: first.max(p.cap().saturating_add(1)),
                cap: p.cap(),
            });
        }
        let block = &p.blocks()[number - 1];
        let first = block.first_index.to_u64().expect("within cap");
        let span = block.len.as_ref().expect("enumerable") - BigUint::from(1u8);
        let steps = (span / BigUint::from(n1)).to_u64().expect("within cap");
        if let Some(prev) = &last_value {
            let gap = &block.start - prev;
            if gap <= n0_exact {
                return Err(Error::GapViolation {
                    gap: gap.to_f64().unwrap_or(f64::NAN),
                    bound: n0 as f64,
                });
            }
        }
        indices.extend((0..=steps).map(|k| first + k * n1));
        let top = BigRational::from_integer(BigInt::from(steps * n1));
        last_value = Some(&block.start + top);
    }
    debug_assert!(last_value.as_ref().is_none_or(|v| !v.is_zero()));
    SigmaWitness::assemble(seq, n0 as f64, indices, DivergenceTag::Analytic, None)
}
