use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numeric::WideFloat;

/// Basis for the coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    /// `z^k`
    Monomial,
    /// `(z/ρ)^k`
    Scaled(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
    /// Coefficients at 128-bit precision, used for evaluation when present.
    wide: Option<Vec<(WideFloat, WideFloat)>>,
    basis: Basis,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>, basis: Basis) -> Self {
        let coeffs = if coeffs.is_empty() {
            alloc::vec![Complex64::new(0.0, 0.0)]
        } else {
            coeffs
        };
        Self {
            coeffs,
            wide: None,
            basis,
        }
    }

    /// Coefficients held at 128-bit precision. The f64 roundings are kept for
    /// reporting; evaluation uses the wide values, since the roundings of
    /// large coefficients lose the cancellation in `Σ c_k x^k`.
    pub fn with_wide(coeffs: Vec<(WideFloat, WideFloat)>, basis: Basis) -> Self {
        let rounded = coeffs
            .iter()
            .map(|(re, im)| Complex64::new(re.to_f64(), im.to_f64()))
            .collect();
        let mut p = Self::new(rounded, basis);
        if !coeffs.is_empty() {
            p.wide = Some(coeffs);
        }
        p
    }

    pub fn is_wide(&self) -> bool {
        self.wide.is_some()
    }

    pub fn monomial(coeffs: Vec<Complex64>) -> Self {
        Self::new(coeffs, Basis::Monomial)
    }

    /// Real monomial coefficients, constant term first.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::monomial(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::monomial(Vec::new())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Index of the last nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        if let Some(wide) = &self.wide {
            return self.eval_wide(z, wide);
        }
        let x = match self.basis {
            Basis::Monomial => z,
            Basis::Scaled(rho) => z / rho,
        };
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    fn eval_wide(&self, z: Complex64, wide: &[(WideFloat, WideFloat)]) -> Complex64 {
        let (mut xr, mut xi) = (WideFloat::from_f64(z.re), WideFloat::from_f64(z.im));
        if let Basis::Scaled(rho) = self.basis {
            let rho = WideFloat::from_f64(rho);
            xr = xr / rho.clone();
            xi = xi / rho;
        }
        let (mut ar, mut ai) = (WideFloat::zero(), WideFloat::zero());
        for (cr, ci) in wide.iter().rev() {
            let re = ar.clone() * xr.clone() - ai.clone() * xi.clone() + cr.clone();
            ai = ar * xi.clone() + ai * xr.clone() + ci.clone();
            ar = re;
        }
        Complex64::new(ar.to_f64(), ai.to_f64())
    }

    /// Conversions work on the f64 coefficients.
    pub fn to_monomial(&self) -> Polynomial {
        match self.basis {
            Basis::Monomial => Polynomial::monomial(self.coeffs.clone()),
            Basis::Scaled(rho) => {
                let mut scale = 1.0;
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|c| {
                        let out = c / scale;
                        scale *= rho;
                        out
                    })
                    .collect();
                Polynomial::monomial(coeffs)
            }
        }
    }

    pub fn to_scaled(&self, rho: f64) -> Polynomial {
        let mono = self.to_monomial();
        let mut scale = 1.0;
        let coeffs = mono
            .coeffs
            .iter()
            .map(|c| {
                let out = c * scale;
                scale *= rho;
                out
            })
            .collect();
        Polynomial::new(coeffs, Basis::Scaled(rho))
    }

    /// Derivative in the monomial basis.
    pub fn derivative(&self) -> Polynomial {
        let mono = self.to_monomial();
        let coeffs = mono
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Polynomial::monomial(coeffs)
    }

    /// `Σ k|a_k| R^{k−1}`, an upper bound for `|p′|` on `|z| ≤ R`.
    pub fn derivative_bound(&self, radius: f64) -> f64 {
        let mono = self.to_monomial();
        let mut pow = 1.0;
        let mut total = 0.0;
        for (k, c) in mono.coeffs.iter().enumerate().skip(1) {
            total += k as f64 * c.norm() * pow;
            pow *= radius;
        }
        total
    }
}

/// `min(0.99, (1/(2s1)) / max_{|z| ≤ R1+1} |p′(z)|)`, with the maximum bounded
/// by coefficient majorisation. Then `|z| ≤ R1`, `|z − w| < δ0` give
/// `|p(z) − p(w)| < 1/(2s1)`.
pub fn continuity_delta(p: &Polynomial, r1: f64, s1: u32) -> f64 {
    let bound = p.derivative_bound(r1 + 1.0);
    if bound == 0.0 {
        return 0.99;
    }
    (0.5 / s1 as f64 / bound).min(0.99)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn continuity_examples() {
        assert_eq!(
            continuity_delta(&Polynomial::from_real(&[0.0, 1.0]), 1.0, 2),
            0.25
        );
        assert_eq!(
            continuity_delta(&Polynomial::from_real(&[3.0]), 1.0, 2),
            0.99
        );
        assert_eq!(
            continuity_delta(&Polynomial::from_real(&[0.0, 0.0, 1.0]), 1.0, 1),
            0.125
        );
    }

    #[test]
    fn scaled_eval_at_zero() {
        let p = Polynomial::new(
            alloc::vec![Complex64::new(2.0, -1.0), Complex64::new(5.0, 0.0)],
            Basis::Scaled(3.0),
        );
        assert_eq!(p.eval(Complex64::new(0.0, 0.0)), Complex64::new(2.0, -1.0));
        assert_eq!(p.eval(Complex64::new(3.0, 0.0)), Complex64::new(7.0, -1.0));
    }

    #[test]
    fn wide_coefficients_survive_cancellation() {
        // (1e17 + 0.5)x − 1e17·x² at x = 1; the 0.5 is below the f64 spacing of 1e17.
        let w = |v: f64| WideFloat::from_f64(v);
        let coeffs = alloc::vec![
            (w(0.0), w(0.0)),
            (w(1e17) + w(0.5), w(0.0)),
            (w(-1e17), w(0.0)),
        ];
        let p = Polynomial::with_wide(coeffs, Basis::Scaled(2.0));
        assert!(p.is_wide());
        assert_eq!(p.eval(Complex64::new(2.0, 0.0)), Complex64::new(0.5, 0.0));
        let rounded = Polynomial::new(p.coeffs().to_vec(), Basis::Scaled(2.0));
        assert_eq!(
            rounded.eval(Complex64::new(2.0, 0.0)),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn degree_and_derivative() {
        let p = Polynomial::from_real(&[1.0, 2.0, 3.0, 0.0]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.derivative(), Polynomial::from_real(&[2.0, 6.0, 0.0]));
        assert_eq!(Polynomial::zero().degree(), 0);
    }

    proptest! {
        #[test]
        fn basis_round_trip(
            coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..65),
            rho in 0.5f64..2.0,
        ) {
            let p = Polynomial::monomial(coeffs.iter().map(|&(a, b)| Complex64::new(a, b)).collect());
            let back = p.to_scaled(rho).to_monomial();
            for (a, b) in p.coeffs().iter().zip(back.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-300) + 1e-300);
            }
            let z = Complex64::new(0.3, -0.2);
            let (u, v) = (p.eval(z), p.to_scaled(rho).eval(z));
            prop_assert!((u - v).norm() <= 1e-10 * (1.0 + u.norm()));
        }
    }
}
