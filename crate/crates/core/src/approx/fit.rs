use alloc::vec::Vec;

use num_complex::Complex64;

use super::lsq::polynomial_least_squares;
use super::{Basis, PiecewiseTarget, Polynomial};
use crate::numeric::{unit_turns, WideFloat};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    /// 128-bit significand.
    Extended,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Fitted `f` in the basis `(z/ρ)^k`.
    pub poly: Polynomial,
    pub rho: f64,
    pub degree: usize,
    pub samples_per_disk: usize,
    pub rows: usize,
    pub precision: Precision,
    pub residual_norm: f64,
    /// Largest `|f − h|` over the fit samples.
    pub max_sample_residual: f64,
    /// `min |R_kk| / max |R_kk|`.
    pub diagonal_ratio: f64,
}

/// Boundary samples `c + r·e^{2πi·i/n}` plus the center.
fn disk_samples(center: Complex64, radius: f64, n: usize) -> impl Iterator<Item = Complex64> {
    (0..n)
        .map(move |i| center + unit_turns(i as f64 / n as f64) * radius)
        .chain(core::iter::once(center))
}

/// Least-squares fit of `f` to `h` on boundary and center samples of every disk of `L`.
pub fn fit_polynomial(
    h: &PiecewiseTarget,
    min_degree: usize,
    degree: usize,
    samples_per_disk: usize,
    precision: Precision,
) -> Result<FitResult> {
    if degree < min_degree {
        return Err(Error::Precondition(alloc::format!(
            "degree {degree} is below deg p = {min_degree}"
        )));
    }
    if samples_per_disk < 2 * degree + 2 {
        return Err(Error::Precondition(alloc::format!(
            "{samples_per_disk} samples per disk, at least {} needed",
            2 * degree + 2
        )));
    }
    let rho = h
        .disks()
        .map(|d| d.center.norm() + d.radius)
        .fold(0.0, f64::max);
    let mut z = Vec::new();
    for d in h.disks() {
        z.extend(disk_samples(d.center, d.radius, samples_per_disk));
    }
    let values = z.iter().map(|&p| h.eval(p)).collect::<Result<Vec<_>>>()?;
    let scaled: Vec<Complex64> = z.iter().map(|p| p / rho).collect();
    let (poly, residual_norm, diagonal) = match precision {
        Precision::Double => {
            let fit = polynomial_least_squares::<f64>(&scaled, &values, degree)?;
            (
                Polynomial::new(fit.coeffs, Basis::Scaled(rho)),
                fit.residual_norm,
                fit.diagonal,
            )
        }
        Precision::Extended => {
            let fit = polynomial_least_squares::<WideFloat>(&scaled, &values, degree)?;
            (
                Polynomial::with_wide(fit.working, Basis::Scaled(rho)),
                fit.residual_norm,
                fit.diagonal,
            )
        }
    };
    let max_sample_residual = z
        .iter()
        .zip(&values)
        .map(|(&p, v)| (poly.eval(p) - v).norm())
        .fold(0.0, f64::max);
    let largest = diagonal.iter().copied().fold(0.0, f64::max);
    let smallest = diagonal.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(FitResult {
        poly,
        rho,
        degree,
        samples_per_disk,
        rows: z.len(),
        precision,
        residual_norm,
        max_sample_residual,
        diagonal_ratio: smallest / largest,
    })
}

/// Ring radii, as fractions of the disk radius, used by [`sup_error`].
pub const RING_FRACTIONS: [f64; 4] = [1.0, 0.9, 0.5, 0.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskError {
    pub center: Complex64,
    pub radius: f64,
    pub sup_error: f64,
}

/// Empirical `sup |f − h|` per disk over rings of `density·samples_per_disk` points.
pub fn sup_error(
    f: &Polynomial,
    h: &PiecewiseTarget,
    samples_per_disk: usize,
    density: usize,
) -> Result<Vec<DiskError>> {
    let n = (density.max(1) * samples_per_disk).max(1);
    h.disks()
        .map(|d| {
            let mut worst = 0.0f64;
            for frac in RING_FRACTIONS {
                let count = if frac == 0.0 { 1 } else { n };
                for i in 0..count {
                    let z = d.center + unit_turns(i as f64 / count as f64) * (d.radius * frac);
                    worst = worst.max((f.eval(z) - h.eval(z)?).norm());
                }
            }
            Ok(DiskError {
                center: d.center,
                radius: d.radius,
                sup_error: worst,
            })
        })
        .collect()
}
