//! Dense complex least squares by Householder QR, generic over the real scalar.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numeric::Real;
use crate::{Error, Result};

#[derive(Debug, Clone)]
struct Cx<T> {
    re: T,
    im: T,
}

impl<T: Real> Cx<T> {
    fn zero() -> Self {
        Self {
            re: T::zero(),
            im: T::zero(),
        }
    }

    fn from_c64(z: Complex64) -> Self {
        Self {
            re: T::from_f64(z.re),
            im: T::from_f64(z.im),
        }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.clone() + o.re.clone(),
            im: self.im.clone() + o.im.clone(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: self.re.clone() - o.re.clone(),
            im: self.im.clone() - o.im.clone(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        }
    }

    /// `conj(self) · o`
    fn conj_mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.clone() * o.re.clone() + self.im.clone() * o.im.clone(),
            im: self.re.clone() * o.im.clone() - self.im.clone() * o.re.clone(),
        }
    }

    fn scale(&self, s: &T) -> Self {
        Self {
            re: self.re.clone() * s.clone(),
            im: self.im.clone() * s.clone(),
        }
    }

    fn norm_sqr(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let n = o.conj_mul(self);
        Self {
            re: n.re / d.clone(),
            im: n.im / d,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresFit<T> {
    /// Solution rounded to f64.
    pub coeffs: Vec<Complex64>,
    /// Solution at working precision as `(re, im)`.
    pub working: Vec<(T, T)>,
    /// `‖Ax − b‖₂` at the solution.
    pub residual_norm: f64,
    /// `|R_kk|` for each column.
    pub diagonal: Vec<f64>,
}

/// Minimises `Σ_i |Σ_k c_k x_i^k − b_i|²` over `c_0..c_degree`.
pub fn polynomial_least_squares<T: Real>(
    x: &[Complex64],
    b: &[Complex64],
    degree: usize,
) -> Result<LeastSquaresFit<T>> {
    let rows = x.len();
    let cols = degree + 1;
    if rows != b.len() || rows < cols {
        return Err(Error::Precondition(alloc::format!(
            "{rows} samples for {cols} unknowns (values: {})",
            b.len()
        )));
    }
    // column-major, powers formed at working precision
    let xs: Vec<Cx<T>> = x.iter().map(|&z| Cx::from_c64(z)).collect();
    let mut a: Vec<Vec<Cx<T>>> = Vec::with_capacity(cols);
    let mut col: Vec<Cx<T>> = (0..rows)
        .map(|_| Cx {
            re: T::from_f64(1.0),
            im: T::zero(),
        })
        .collect();
    for _ in 0..cols {
        let next = col.iter().zip(&xs).map(|(c, z)| c.mul(z)).collect();
        a.push(core::mem::replace(&mut col, next));
    }
    let mut rhs: Vec<Cx<T>> = b.iter().map(|&z| Cx::from_c64(z)).collect();

    let two = T::from_f64(2.0);
    let mut diag: Vec<Cx<T>> = Vec::with_capacity(cols);
    for k in 0..cols {
        let norm = a[k][k..]
            .iter()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr())
            .sqrt();
        if norm.is_zero() {
            return Err(Error::IllConditioned {
                column: k,
                columns: cols,
            });
        }
        let x0 = a[k][k].clone();
        let x0_abs = x0.norm_sqr().sqrt();
        let phase = if x0_abs.is_zero() {
            Cx {
                re: T::from_f64(1.0),
                im: T::zero(),
            }
        } else {
            Cx {
                re: x0.re.clone() / x0_abs.clone(),
                im: x0.im.clone() / x0_abs,
            }
        };
        let mut v: Vec<Cx<T>> = a[k][k..].to_vec();
        v[0] = x0.add(&phase.scale(&norm));
        let alpha = phase.scale(&-norm);
        let v_norm2 = v.iter().fold(T::zero(), |acc, e| acc + e.norm_sqr());
        let factor = two.clone() / v_norm2;

        let reflect = |target: &mut [Cx<T>]| {
            let s = v
                .iter()
                .zip(target.iter())
                .fold(Cx::zero(), |acc: Cx<T>, (vi, ti)| acc.add(&vi.conj_mul(ti)));
            let s = s.scale(&factor);
            for (ti, vi) in target.iter_mut().zip(&v) {
                *ti = ti.sub(&vi.mul(&s));
            }
        };
        for col in &mut a[k + 1..] {
            reflect(&mut col[k..]);
        }
        reflect(&mut rhs[k..]);
        a[k][k] = alpha.clone();
        diag.push(alpha);
    }

    let moduli: Vec<f64> = diag.iter().map(|d| d.norm_sqr().sqrt().to_f64()).collect();
    let largest = moduli.iter().copied().fold(0.0, f64::max);
    let tol = rows as f64 * T::EPSILON * largest;
    if let Some(k) = moduli.iter().position(|&m| !(m > tol)) {
        return Err(Error::IllConditioned {
            column: k,
            columns: cols,
        });
    }

    let mut sol: Vec<Cx<T>> = (0..cols).map(|_| Cx::zero()).collect();
    for k in (0..cols).rev() {
        let mut acc = rhs[k].clone();
        for j in k + 1..cols {
            acc = acc.sub(&a[j][k].mul(&sol[j]));
        }
        sol[k] = acc.div(&a[k][k]);
    }
    let residual = rhs[cols..]
        .iter()
        .fold(T::zero(), |acc, e| acc + e.norm_sqr())
        .sqrt();
    Ok(LeastSquaresFit {
        coeffs: sol.iter().map(Cx::to_c64).collect(),
        working: sol.into_iter().map(|c| (c.re, c.im)).collect(),
        residual_norm: residual.to_f64(),
        diagonal: moduli,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{unit_turns, WideFloat};

    fn circle(n: usize, center: f64, radius: f64) -> Vec<Complex64> {
        (0..n)
            .map(|i| Complex64::new(center, 0.0) + unit_turns(i as f64 / n as f64) * radius)
            .collect()
    }

    #[test]
    fn recovers_exact_polynomial() {
        let x = circle(40, 0.0, 0.8);
        let c = [
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, 0.25),
        ];
        let b: Vec<Complex64> = x.iter().map(|z| c[0] + c[1] * z + c[2] * z * z).collect();
        let double = polynomial_least_squares::<f64>(&x, &b, 4).unwrap();
        let wide = polynomial_least_squares::<WideFloat>(&x, &b, 4).unwrap();
        for (coeffs, residual) in [
            (&double.coeffs, double.residual_norm),
            (&wide.coeffs, wide.residual_norm),
        ] {
            for (k, got) in coeffs.iter().enumerate() {
                let want = c.get(k).copied().unwrap_or_default();
                assert!((got - want).norm() < 1e-12, "k = {k}: {got}");
            }
            assert!(residual < 1e-12);
        }
        assert_eq!(wide.working.len(), 5);
    }

    #[test]
    fn residual_matches_direct_evaluation() {
        let x = circle(30, 0.3, 0.5);
        let b: Vec<Complex64> = x.iter().map(|z| (z * 3.0).exp()).collect();
        let fit = polynomial_least_squares::<f64>(&x, &b, 6).unwrap();
        let direct: f64 = x
            .iter()
            .zip(&b)
            .map(|(z, bz)| {
                let p = fit
                    .coeffs
                    .iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
                (p - bz).norm_sqr()
            })
            .sum::<f64>()
            .sqrt();
        assert!((direct - fit.residual_norm).abs() < 1e-10 * (1.0 + direct));
    }

    #[test]
    fn rank_loss_is_reported() {
        let x = alloc::vec![Complex64::new(0.5, 0.0); 10];
        let b = alloc::vec![Complex64::new(1.0, 0.0); 10];
        assert!(matches!(
            polynomial_least_squares::<f64>(&x, &b, 2),
            Err(Error::IllConditioned { .. })
        ));
        assert!(polynomial_least_squares::<f64>(&x[..2], &b[..2], 2).is_err());
    }

    #[test]
    fn extended_precision_reaches_further() {
        // Two well-separated clusters force geometric decay of R_kk.
        let mut x = circle(60, 0.0, 0.1);
        x.extend(circle(60, 0.9, 0.1));
        let b: Vec<Complex64> = x
            .iter()
            .map(|z| {
                if z.re > 0.5 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        assert!(matches!(
            polynomial_least_squares::<f64>(&x, &b, 45),
            Err(Error::IllConditioned { .. })
        ));
        assert!(polynomial_least_squares::<WideFloat>(&x, &b, 45).is_ok());
    }
}
