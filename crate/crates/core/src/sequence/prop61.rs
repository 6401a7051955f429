//! Block sequences with prescribed ratio structure.
//!
//! `𝔇_1 = {1}`; for `n ≥ 2` the block `𝔇_n = {a_n + ν : ν = 0..=([a_n]+1)!}`
//! starts at `a_n = M0 · max 𝔇_{n−1}`. The sequence enumerates the union in
//! increasing order. Blocks are stored as `(start, length, first index)` and
//! never materialised.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::{Error, Result};

/// Factorials beyond this argument are not evaluated; such a block is far
/// larger than any enumeration cap.
const FACTORIAL_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    /// 1-based block number.
    pub number: usize,
    /// `a_n = min 𝔇_n`.
    pub start: BigRational,
    /// Number of elements `([a_n]+1)! + 1`; `None` when too large to evaluate.
    pub len: Option<BigUint>,
    /// Index in `Λ` of `a_n`.
    pub first_index: BigUint,
}

impl Block {
    /// `max 𝔇_n`, when the block length is known.
    pub fn max(&self) -> Option<BigRational> {
        self.len.as_ref().map(|len| {
            let last = BigInt::from(len.clone()) - BigInt::one();
            &self.start + BigRational::from_integer(last)
        })
    }

    /// Index in `Λ` of `max 𝔇_n`.
    pub fn last_index(&self) -> Option<BigUint> {
        self.len
            .as_ref()
            .map(|len| &self.first_index + len - BigUint::one())
    }
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn block_len(start: &BigRational) -> Option<BigUint> {
    let arg = start.floor().to_integer() + BigInt::one();
    let arg = arg.to_u64().filter(|&a| a <= FACTORIAL_LIMIT)?;
    Some(factorial(arg) + BigUint::one())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop61 {
    m0: BigRational,
    cap: u64,
    blocks: Vec<Block>,
}

impl Prop61 {
    pub fn new(m0: BigRational, cap: u64) -> Result<Self> {
        if m0 <= BigRational::one() {
            return Err(Error::InvalidConfig(format!("M0 must exceed 1 (got {m0})")));
        }
        if cap == 0 {
            return Err(Error::InvalidConfig("cap must be at least 1".into()));
        }
        let cap_big = BigUint::from(cap);
        let mut blocks = alloc::vec![Block {
            number: 1,
            start: BigRational::one(),
            len: Some(BigUint::one()),
            first_index: BigUint::one(),
        }];
        // Keep one block past the cap so the boundary ratio at the cap stays queryable.
        loop {
            let prev = blocks.last().expect("non-empty");
            if prev.first_index > cap_big {
                break;
            }
            let (Some(max), Some(last)) = (prev.max(), prev.last_index()) else {
                break;
            };
            let start = &m0 * max;
            let len = block_len(&start);
            blocks.push(Block {
                number: prev.number + 1,
                start,
                len,
                first_index: last + BigUint::one(),
            });
        }
        Ok(Self { m0, cap, blocks })
    }

    pub fn m0(&self) -> &BigRational {
        &self.m0
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Blocks whose start is known, in order. The last one may begin past the cap.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The block containing index `n` (`n ≤ cap`).
    pub fn block_of(&self, n: u64) -> Result<&Block> {
        if n == 0 {
            return Err(Error::OutOfRange("sequence indices start at 1".into()));
        }
        if n > self.cap {
            return Err(Error::Capacity {
                index: n,
                cap: self.cap,
            });
        }
        let n_big = BigUint::from(n);
        let pos = self.blocks.partition_point(|b| b.first_index <= n_big);
        Ok(&self.blocks[pos - 1])
    }

    /// Whether the whole of block `number` lies within the cap.
    pub fn is_enumerable(&self, number: usize) -> bool {
        self.blocks
            .get(number.wrapping_sub(1))
            .and_then(Block::last_index)
            .is_some_and(|last| last <= BigUint::from(self.cap))
    }

    pub fn term(&self, n: u64) -> Result<BigRational> {
        let block = self.block_of(n)?;
        let offset = BigInt::from(BigUint::from(n) - &block.first_index);
        Ok(&block.start + BigRational::from_integer(offset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(n: i64) -> BigRational {
        q(n, 1)
    }

    #[test]
    fn m0_three_prefix() {
        let p = Prop61::new(int(3), 100).unwrap();
        let prefix: Vec<BigRational> = (1..=28).map(|n| p.term(n).unwrap()).collect();
        assert_eq!(prefix[0], int(1));
        assert_eq!(prefix[1], int(3));
        assert_eq!(prefix[2], int(4));
        assert_eq!(prefix[25], int(27));
        assert_eq!(prefix[26], int(81));
        assert_eq!(prefix[27], int(82));
        assert_eq!(p.blocks()[1].len, Some(BigUint::from(25u32)));
        assert_eq!(p.blocks()[2].start, int(81));
        assert_eq!(p.blocks()[2].first_index, BigUint::from(27u32));
    }

    #[test]
    fn fractional_m0() {
        let p = Prop61::new(q(5, 2), 20).unwrap();
        assert_eq!(p.term(2).unwrap(), q(5, 2));
        // [2.5] = 2, so 3! + 1 = 7 elements: 2.5 ..= 8.5
        assert_eq!(p.blocks()[1].len, Some(BigUint::from(7u32)));
        assert_eq!(p.term(8).unwrap(), q(17, 2));
        assert_eq!(p.term(9).unwrap(), q(85, 4));
    }

    #[test]
    fn rule_three_holds_exactly() {
        for m0 in [int(2), q(5, 2), int(3), int(5)] {
            let p = Prop61::new(m0.clone(), 10_000).unwrap();
            for pair in p.blocks().windows(2) {
                if let Some(max) = pair[0].max() {
                    assert_eq!(pair[1].start, &m0 * max);
                }
            }
        }
    }

    #[test]
    fn blocks_are_disjoint_and_contiguous_in_index() {
        let p = Prop61::new(int(2), 5_000).unwrap();
        for pair in p.blocks().windows(2) {
            assert!(pair[0].max().unwrap() < pair[1].start);
            assert_eq!(
                pair[0].last_index().unwrap() + BigUint::one(),
                pair[1].first_index
            );
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Prop61::new(int(1), 10).is_err());
        assert!(Prop61::new(int(3), 0).is_err());
    }

    #[test]
    fn enumerability() {
        let p = Prop61::new(int(3), 100).unwrap();
        assert!(p.is_enumerable(1));
        assert!(p.is_enumerable(2));
        assert!(!p.is_enumerable(3));
        assert!(!p.is_enumerable(0));
    }
}
