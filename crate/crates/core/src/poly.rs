//! Dense univariate polynomials over `f64`, ascending coefficient order.

use num_complex::Complex64;

/// `coeffs[k]` multiplies `z^k`. The zero polynomial is the empty vector.
///
/// Trimming removes only coefficients that are exactly `0.0`. The recurrence
/// never writes junk above the true degree, and thresholded trimming would be
/// unsafe here: tables reach ~1e13 while the leading coefficient can be
/// exactly `1`, so any relative cutoff could eat the lead.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        RealPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RealPolynomial { coeffs: Vec::new() }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<f64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &ck| acc * z + ck)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &ck| acc * z + ck)
    }

    pub fn derivative(&self) -> RealPolynomial {
        let d: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &ck)| k as f64 * ck)
            .collect();
        RealPolynomial::new(d)
    }
}
