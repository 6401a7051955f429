//! Ratio profiles, the `i(Λ)` estimate and harmonic tail bounds.

use alloc::vec::Vec;

use num_rational::BigRational;

use super::{ComplexSequence, SequenceKind};
use crate::numeric::{ln, NeumaierSum};
use crate::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Smallest `n` for which the tail bound is asserted.
pub const EULER_THRESHOLD: u64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct RatioProfile {
    /// `|λ_{n+1}|/|λ_n|` for `n = 1..=N`.
    pub ratios: Vec<f64>,
    /// Maximum over the second half of `ratios`.
    pub prefix_limsup: f64,
}

fn ensure_available(seq: &ComplexSequence, needed: u64) -> Result<()> {
    match seq.available() {
        Some(avail) if needed > avail => match seq.kind() {
            SequenceKind::Prop61(_) => Err(Error::Capacity {
                index: needed,
                cap: avail,
            }),
            _ => Err(Error::Exhausted(alloc::format!(
                "{needed} terms needed, {avail} available"
            ))),
        },
        _ => Ok(()),
    }
}

fn tail_max(ratios: &[f64]) -> f64 {
    ratios[ratios.len() / 2..]
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn ratio_profile(seq: &ComplexSequence, n: u64) -> Result<RatioProfile> {
    if n == 0 {
        return Err(Error::Domain("profile length must be at least 1".into()));
    }
    ensure_available(seq, n + 1)?;
    let moduli = (1..=n + 1)
        .map(|k| seq.modulus(k))
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = moduli.windows(2).map(|p| p[1] / p[0]).collect();
    let prefix_limsup = tail_max(&ratios);
    Ok(RatioProfile {
        ratios,
        prefix_limsup,
    })
}

/// Exact consecutive ratios for the structured kinds.
pub fn exact_ratio_profile(seq: &ComplexSequence, n: u64) -> Result<Vec<BigRational>> {
    if matches!(seq.kind(), SequenceKind::Explicit(_)) {
        return Err(Error::Domain(
            "explicit sequences carry no exact terms".into(),
        ));
    }
    ensure_available(seq, n + 1)?;
    let terms = (1..=n + 1)
        .map(|k| seq.exact_term(k).map(|t| t.expect("structured")))
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.windows(2).map(|p| &p[1] / &p[0]).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ILambdaTag {
    ExactStructural,
    Heuristic,
}

/// `i(Λ)`: exact for the structured kinds, the prefix limsup of
/// consecutive ratios otherwise.
pub fn i_lambda_estimate(seq: &ComplexSequence, n: u64) -> Result<(f64, ILambdaTag)> {
    use num_traits::ToPrimitive;
    match seq.kind() {
        SequenceKind::Arithmetic(_) => Ok((1.0, ILambdaTag::ExactStructural)),
        SequenceKind::Prop61(p) => {
            ensure_available(seq, n)?;
            Ok((
                p.m0().to_f64().unwrap_or(f64::NAN),
                ILambdaTag::ExactStructural,
            ))
        }
        SequenceKind::Explicit(_) => {
            if n < 2 {
                return Err(Error::Domain("at least two terms are needed".into()));
            }
            let profile = ratio_profile(seq, n - 1)?;
            Ok((profile.prefix_limsup, ILambdaTag::Heuristic))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicTail {
    /// `Σ_{k=n+1}^{m} 1/k`, summed directly.
    pub lhs: f64,
    /// `log(m/(n·e))`.
    pub rhs: f64,
    pub holds: bool,
}

pub fn harmonic_tail_check(n: u64, m: u64) -> Result<HarmonicTail> {
    if m <= n {
        return Err(Error::Domain(alloc::format!(
            "need m > n (got n = {n}, m = {m})"
        )));
    }
    if n < EULER_THRESHOLD {
        return Err(Error::Domain(alloc::format!(
            "need n >= {EULER_THRESHOLD} (got {n})"
        )));
    }
    let lhs: f64 = (n + 1..=m)
        .map(|k| 1.0 / k as f64)
        .collect::<NeumaierSum>()
        .value();
    let rhs = ln(m as f64 / n as f64) - 1.0;
    Ok(HarmonicTail {
        lhs,
        rhs,
        holds: lhs > rhs,
    })
}

/// `−1/2 < H_n − log n − γ < 1/2`.
pub fn euler_window_holds(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let h: f64 = (1..=n)
        .map(|k| 1.0 / k as f64)
        .collect::<NeumaierSum>()
        .value();
    let d = h - ln(n as f64) - EULER_GAMMA;
    -0.5 < d && d < 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_bigint::BigInt;
    use num_complex::Complex64;

    #[test]
    fn integer_ratios() {
        let s = ComplexSequence::arithmetic(0.0, 1.0).unwrap();
        let p = ratio_profile(&s, 10).unwrap();
        for (i, r) in p.ratios.iter().enumerate() {
            let n = (i + 1) as f64;
            assert_eq!(*r, (n + 1.0) / n);
        }
        assert_eq!(p.prefix_limsup, 7.0 / 6.0);
    }

    #[test]
    fn explicit_geometric() {
        let s = ComplexSequence::explicit(vec![1.0.into(), 2.0.into(), 4.0.into(), 8.0.into()])
            .unwrap();
        assert_eq!(ratio_profile(&s, 3).unwrap().ratios, vec![2.0, 2.0, 2.0]);
        assert!(ratio_profile(&s, 4).is_err());
    }

    #[test]
    fn block_ratios_are_three_or_successor() {
        let s = ComplexSequence::prop61_from_f64(3.0, 100).unwrap();
        let exact = exact_ratio_profile(&s, 26).unwrap();
        let three = BigRational::from_integer(BigInt::from(3));
        for (i, r) in exact.iter().enumerate() {
            let lambda = s.exact_term(i as u64 + 1).unwrap().unwrap();
            let succ = (&lambda + BigRational::from_integer(BigInt::from(1))) / &lambda;
            assert!(*r == three || *r == succ, "ratio {i}: {r}");
        }
        assert_eq!(exact[0], three);
        assert_eq!(exact[25], three);
    }

    #[test]
    fn i_lambda() {
        let a = ComplexSequence::arithmetic(0.0, 1.0).unwrap();
        assert_eq!(
            i_lambda_estimate(&a, 10).unwrap(),
            (1.0, ILambdaTag::ExactStructural)
        );
        let p = ComplexSequence::prop61_from_f64(3.0, 100).unwrap();
        assert_eq!(
            i_lambda_estimate(&p, 50).unwrap(),
            (3.0, ILambdaTag::ExactStructural)
        );
        assert!(matches!(
            i_lambda_estimate(&p, 101),
            Err(Error::Capacity { .. })
        ));
        let e: Vec<Complex64> = [1.0, 2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&x| x.into())
            .collect();
        let e = ComplexSequence::explicit(e).unwrap();
        assert_eq!(
            i_lambda_estimate(&e, 4).unwrap(),
            (2.0, ILambdaTag::Heuristic)
        );
    }

    #[test]
    fn harmonic_examples() {
        let t = harmonic_tail_check(10, 100).unwrap();
        let direct: f64 = (11..=100).map(|k| 1.0 / k as f64).sum();
        assert!((t.lhs - direct).abs() < 1e-14);
        assert!((t.rhs - 1.302585092994046).abs() < 1e-12);
        assert!(t.holds);
        let t = harmonic_tail_check(50, 51).unwrap();
        assert_eq!(t.lhs, 1.0 / 51.0);
        assert!(t.rhs < 0.0 && t.holds);
        assert!(harmonic_tail_check(10, 10).is_err());
        assert!(harmonic_tail_check(2, 10).is_err());
    }

    #[test]
    fn euler_window() {
        for n in 1..2000 {
            assert!(euler_window_holds(n), "n = {n}");
        }
    }
}
