use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numeric::{arithmetic_reciprocal_sum, NeumaierSum};
use crate::sequence::{SigmaWitness, WitnessProgression};
use crate::{Error, Result};

/// The subsequence `(μ_k)` seen by the partition, with the gap conditions
/// against `c1` checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MuView {
    witness: SigmaWitness,
    progression: Option<WitnessProgression>,
    moduli: Vec<f64>,
}

impl MuView {
    pub fn new(witness: SigmaWitness, c1: f64) -> Result<Self> {
        let progression = witness.progression().copied();
        let moduli: Vec<f64> = witness.values().iter().map(|z| z.norm()).collect();
        match &progression {
            Some(p) => {
                let first = p.value(1);
                if !(first > c1) {
                    return Err(Error::Precondition(format!(
                        "|mu_1| = {first} does not exceed c1 = {c1}"
                    )));
                }
                if !(p.beta > c1) {
                    return Err(Error::GapViolation {
                        gap: p.beta,
                        bound: c1,
                    });
                }
            }
            None => {
                let Some(&first) = moduli.first() else {
                    return Err(Error::Precondition("empty witness".into()));
                };
                if !(first > c1) {
                    return Err(Error::Precondition(format!(
                        "|mu_1| = {first} does not exceed c1 = {c1}"
                    )));
                }
                if let Some(w) = moduli.windows(2).find(|w| !(w[1] - w[0] > c1)) {
                    return Err(Error::GapViolation {
                        gap: w[1] - w[0],
                        bound: c1,
                    });
                }
            }
        }
        Ok(Self {
            witness,
            progression,
            moduli,
        })
    }

    pub fn witness(&self) -> &SigmaWitness {
        &self.witness
    }

    /// `(α, β)` with `μ_k = α + βk`, when the witness is an arithmetic progression.
    pub fn closed_form(&self) -> Option<(f64, f64)> {
        self.progression.map(|p| (p.alpha, p.beta))
    }

    /// Number of accessible terms, `None` when unbounded.
    pub fn term_count(&self) -> Option<u64> {
        match self.progression {
            Some(_) => None,
            None => Some(self.moduli.len() as u64),
        }
    }

    fn check(&self, k: u64) -> Result<()> {
        if k == 0 {
            return Err(Error::OutOfRange("witness indices start at 1".into()));
        }
        match self.term_count() {
            Some(len) if k > len => Err(Error::Exhausted(format!(
                "witness has {len} terms, mu_{k} requested"
            ))),
            _ => Ok(()),
        }
    }

    pub fn modulus(&self, k: u64) -> Result<f64> {
        self.check(k)?;
        Ok(match &self.progression {
            Some(p) => p.value(k),
            None => self.moduli[(k - 1) as usize],
        })
    }

    pub fn value(&self, k: u64) -> Result<Complex64> {
        self.check(k)?;
        Ok(match &self.progression {
            Some(p) => Complex64::new(p.value(k), 0.0),
            None => self.witness.values()[(k - 1) as usize],
        })
    }

    /// Index of `μ_k` inside `Λ`.
    pub fn lambda_index(&self, k: u64) -> Result<u64> {
        self.check(k)?;
        Ok(match &self.progression {
            Some(p) => p.index(k),
            None => self.witness.indices()[(k - 1) as usize],
        })
    }

    /// `Σ_{k=m}^{last} 1/|μ_k|`; zero when `last < m`.
    pub fn partial_sum(&self, m: u64, last: u64) -> Result<f64> {
        if last < m {
            return Ok(0.0);
        }
        self.check(m)?;
        self.check(last)?;
        Ok(match &self.progression {
            Some(p) => arithmetic_reciprocal_sum(p.alpha, p.beta, m, last),
            None => self.moduli[(m - 1) as usize..last as usize]
                .iter()
                .map(|r| 1.0 / r)
                .collect::<NeumaierSum>()
                .value(),
        })
    }
}
