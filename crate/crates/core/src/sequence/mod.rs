//! Sequences `Λ = (λ_n)`: generators, gap-witness extraction and ratio
//! diagnostics.
//!
//! Indexing starts at 1 everywhere. Structured sources (arithmetic and block
//! sequences) also expose their terms as exact rationals, so gap and ratio
//! checks on them involve no rounding.

mod diagnostics;
mod prop61;
mod witness;

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use diagnostics::{
    euler_window_holds, exact_ratio_profile, harmonic_tail_check, i_lambda_estimate, ratio_profile,
    HarmonicTail, ILambdaTag, RatioProfile, EULER_GAMMA, EULER_THRESHOLD,
};
pub use prop61::{Block, Prop61};
pub use witness::{
    extract_claim3, extract_sigma_witness, DivergenceTag, SigmaWitness, WitnessProgression,
};

use crate::{Error, Result};

/// `λ_n = α + β·n` with both parameters kept exactly as well as in `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arithmetic {
    alpha: f64,
    beta: f64,
    alpha_exact: BigRational,
    beta_exact: BigRational,
}

impl Arithmetic {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub(crate) fn exact(&self, n: u64) -> BigRational {
        &self.alpha_exact + &self.beta_exact * BigRational::from_integer(BigInt::from(n))
    }

    pub(crate) fn alpha_exact(&self) -> &BigRational {
        &self.alpha_exact
    }

    pub(crate) fn beta_exact(&self) -> &BigRational {
        &self.beta_exact
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind {
    Arithmetic(Arithmetic),
    Prop61(Prop61),
    Explicit(Vec<Complex64>),
}

/// A lazily indexed sequence of nonzero complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSequence {
    kind: SequenceKind,
}

pub(crate) fn exact_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

impl ComplexSequence {
    /// `λ_n = α + β·n`. Requires `α ≥ 0` and `β > 0`, which keeps the terms
    /// positive and strictly increasing.
    pub fn arithmetic(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) || alpha < 0.0 || beta <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "arithmetic sequence needs alpha >= 0 and beta > 0 (got {alpha}, {beta})"
            )));
        }
        let kind = SequenceKind::Arithmetic(Arithmetic {
            alpha,
            beta,
            alpha_exact: exact_from_f64(alpha).expect("finite"),
            beta_exact: exact_from_f64(beta).expect("finite"),
        });
        Ok(Self { kind })
    }

    /// The block sequence with ratio parameter `m0`, enumerable up to index `cap`.
    pub fn prop61(m0: BigRational, cap: u64) -> Result<Self> {
        Ok(Self {
            kind: SequenceKind::Prop61(Prop61::new(m0, cap)?),
        })
    }

    /// Same as [`ComplexSequence::prop61`] with `m0` converted exactly from `f64`.
    pub fn prop61_from_f64(m0: f64, cap: u64) -> Result<Self> {
        let exact = exact_from_f64(m0)
            .ok_or_else(|| Error::InvalidConfig(format!("M0 must be finite (got {m0})")))?;
        Self::prop61(exact, cap)
    }

    pub fn explicit(terms: Vec<Complex64>) -> Result<Self> {
        if let Some(pos) = terms
            .iter()
            .position(|z| *z == Complex64::new(0.0, 0.0) || !z.is_finite())
        {
            return Err(Error::InvalidConfig(format!(
                "explicit term {} is zero or not finite",
                pos + 1
            )));
        }
        Ok(Self {
            kind: SequenceKind::Explicit(terms),
        })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    /// Number of addressable terms, `None` when unbounded.
    pub fn available(&self) -> Option<u64> {
        match &self.kind {
            SequenceKind::Arithmetic(_) => None,
            SequenceKind::Prop61(p) => Some(p.cap()),
            SequenceKind::Explicit(t) => Some(t.len() as u64),
        }
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::OutOfRange("sequence indices start at 1".into()));
        }
        match (&self.kind, self.available()) {
            (SequenceKind::Prop61(_), Some(cap)) if n > cap => {
                Err(Error::Capacity { index: n, cap })
            }
            (SequenceKind::Explicit(_), Some(len)) if n > len => Err(Error::Exhausted(format!(
                "explicit sequence has {len} terms, index {n} requested"
            ))),
            _ => Ok(()),
        }
    }

    /// `λ_n` as an exact rational for the structured kinds (whose terms are
    /// real and positive), `None` for explicit lists.
    pub fn exact_term(&self, n: u64) -> Result<Option<BigRational>> {
        self.check_index(n)?;
        Ok(match &self.kind {
            SequenceKind::Arithmetic(a) => Some(a.exact(n)),
            SequenceKind::Prop61(p) => Some(p.term(n)?),
            SequenceKind::Explicit(_) => None,
        })
    }

    pub fn term(&self, n: u64) -> Result<Complex64> {
        self.check_index(n)?;
        Ok(match &self.kind {
            SequenceKind::Arithmetic(a) => Complex64::new(a.alpha + a.beta * n as f64, 0.0),
            SequenceKind::Prop61(p) => {
                Complex64::new(p.term(n)?.to_f64().unwrap_or(f64::INFINITY), 0.0)
            }
            SequenceKind::Explicit(t) => t[(n - 1) as usize],
        })
    }

    pub fn modulus(&self, n: u64) -> Result<f64> {
        self.term(n).map(|z| z.norm())
    }

    /// The first `len` terms.
    pub fn prefix(&self, len: u64) -> Result<Vec<Complex64>> {
        (1..=len).map(|n| self.term(n)).collect()
    }
}
