use alloc::vec::Vec;

use super::{m1_of, MuView, PartitionConfig};
use crate::numeric::NeumaierSum;
use crate::{Error, Result};

/// Default bound on the number of ladder levels.
pub const DEFAULT_MAX_LEVELS: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderLevel {
    pub nu: usize,
    pub r: f64,
    /// `m_ν` (`m_0 = 1`).
    pub m: u64,
    /// Density of the angular partition at this height: 1 at level 0, `m_ν + 1` above.
    pub density: u64,
    /// `m1(density)`, which is also `m_{ν+1}`.
    pub m1: u64,
}

/// Heights `r_0 < r_1 < … < r_{ν0} ≤ R0 < r_{ν0+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialLadder {
    levels: Vec<LadderLevel>,
    r_next: f64,
}

impl RadialLadder {
    pub fn new(mu: &MuView, config: &PartitionConfig) -> Result<Self> {
        Self::with_max_levels(mu, config, DEFAULT_MAX_LEVELS)
    }

    pub fn with_max_levels(
        mu: &MuView,
        config: &PartitionConfig,
        max_levels: usize,
    ) -> Result<Self> {
        let mut levels = Vec::new();
        let mut r = config.r0();
        let mut m = 1u64;
        let mut density = 1u64;
        loop {
            let nu = levels.len();
            let m1 = m1_of(mu, density, config.c3())?;
            levels.push(LadderLevel {
                nu,
                r,
                m,
                density,
                m1,
            });
            let r_next = r + config.c2() / mu.modulus(m1)?;
            if r_next <= r {
                return Err(Error::LadderStalled { level: nu, r });
            }
            if r_next > config.big_r0() {
                return Ok(Self { levels, r_next });
            }
            if levels.len() >= max_levels {
                return Err(Error::Exhausted(alloc::format!(
                    "radial ladder needs more than {max_levels} levels (r = {r_next})"
                )));
            }
            r = r_next;
            m = m1;
            density = m1 + 1;
        }
    }

    pub fn levels(&self) -> &[LadderLevel] {
        &self.levels
    }

    pub fn nu0(&self) -> usize {
        self.levels.len() - 1
    }

    /// `r_{ν0+1}`, the first height beyond `R0`.
    pub fn r_next(&self) -> f64 {
        self.r_next
    }

    pub fn radius(&self, nu: usize) -> Option<f64> {
        self.levels.get(nu).map(|l| l.r)
    }

    /// `r0 + c2·Σ_{k=1}^{ν} 1/|μ_{m_k}|` with compensated summation.
    pub fn closed_form_radius(
        &self,
        mu: &MuView,
        config: &PartitionConfig,
        nu: usize,
    ) -> Result<f64> {
        let sum: NeumaierSum = self.levels[1..=nu]
            .iter()
            .map(|l| mu.modulus(l.m).map(|x| 1.0 / x))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect();
        Ok(config.r0() + config.c2() * sum.value())
    }

    /// Largest level with `r_ν ≤ r`, `None` below `r_0`.
    pub fn level_below(&self, r: f64) -> Option<usize> {
        let pos = self.levels.partition_point(|l| l.r <= r);
        pos.checked_sub(1)
    }
}
