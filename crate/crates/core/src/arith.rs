//! Scalar abstraction for the coefficient pipeline.
//!
//! Coefficient tables grow like the dominant inverse root power, a few times
//! 10^12 at depth 60 near the boundary ratios, so plain `f64` generation
//! rounds the low-order coefficients enough to move roots by ~1e-4. The
//! recurrence is therefore generic over [`Scalar`] and run in double-double
//! ([`Dd`]) or arbitrary precision ([`Big`]) when the caller asks for it.

use astro_float::{BigFloat, RoundingMode};

/// Ring operations the recurrence needs. Division is deliberately absent;
/// generation and polishing are multiply-add only.
pub(crate) trait Scalar: Clone {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact-zero test, used only for structural trimming of coefficients
    /// that are zero by construction (products with a zero multiplier).
    fn is_exact_zero(&self) -> bool;
}

impl Scalar for f64 {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
}

/// Unevaluated double-double number `hi + lo`, `|lo| <= ulp(hi)/2`.
///
/// Classic error-free transformations (Dekker/Knuth); `two_prod` leans on
/// fused multiply-add. Roughly 106 bits of significand, which keeps the
/// depth-60 coefficient tables exact to well below the root tolerances.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Requires `|a| >= |b|` or `a == 0`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Long division by repeated correction; accurate to roughly the full
    /// double-double precision. Not on [`Scalar`] because table generation
    /// must stay division-free.
    pub(crate) fn div(&self, rhs: &Dd) -> Dd {
        let q0 = self.hi / rhs.hi;
        let r1 = self.sub(&rhs.mul(&Dd::from_f64(q0)));
        let q1 = r1.hi / rhs.hi;
        let r2 = r1.sub(&rhs.mul(&Dd::from_f64(q1)));
        let q2 = r2.hi / rhs.hi;
        let (s, e) = two_sum(q0, q1);
        let (hi, lo) = quick_two_sum(s, e + q2);
        Dd { hi, lo }
    }
}

impl Scalar for Dd {
    fn add(&self, rhs: &Self) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    fn neg(&self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn to_f64(&self) -> f64 {
        self.hi + self.lo
    }
    fn is_exact_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

/// Arbitrary-precision scalar, a thin wrapper fixing the working precision
/// per value so the trait operations need no extra context.
#[derive(Debug, Clone)]
pub(crate) struct Big {
    value: BigFloat,
    bits: usize,
}

impl Big {
    pub fn from_f64(x: f64, bits: usize) -> Self {
        Big {
            value: BigFloat::from_f64(x, bits),
            bits,
        }
    }
}

impl Scalar for Big {
    fn add(&self, rhs: &Self) -> Self {
        Big {
            value: self.value.add(&rhs.value, self.bits, RoundingMode::ToEven),
            bits: self.bits,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Big {
            value: self.value.sub(&rhs.value, self.bits, RoundingMode::ToEven),
            bits: self.bits,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Big {
            value: self.value.mul(&rhs.value, self.bits, RoundingMode::ToEven),
            bits: self.bits,
        }
    }

    fn neg(&self) -> Self {
        Big {
            value: self.value.neg(),
            bits: self.bits,
        }
    }

    fn to_f64(&self) -> f64 {
        // The wrapped type exposes no direct f64 conversion; its Display
        // output round-trips through the standard parser instead.
        if self.value.is_zero() {
            return 0.0;
        }
        format!("{}", self.value).parse().unwrap_or(f64::NAN)
    }
    fn is_exact_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_add_keeps_cancelled_tail() {
        let a = Dd::from_f64(1.0);
        let tiny = Dd::from_f64(1e-30);
        let s = a.add(&tiny).sub(&a);
        assert_eq!(s.to_f64(), 1e-30);
    }

    #[test]
    fn dd_div_recovers_below_f64_precision() {
        // 1/3 in double-double: hi is the f64 rounding, lo its residual.
        let q = Dd::from_f64(1.0).div(&Dd::from_f64(3.0));
        assert_eq!(q.hi, 1.0 / 3.0);
        let back = q.mul(&Dd::from_f64(3.0));
        assert_eq!(back.hi, 1.0);
        assert!(back.lo.abs() < 1e-31);
    }

    #[test]
    fn dd_mul_is_exact_on_representable_products() {
        let a = Dd::from_f64(1.0 + 2f64.powi(-30));
        let p = a.mul(&a);
        // (1 + u)^2 = 1 + 2u + u^2 exactly; f64 alone would drop u^2.
        assert_eq!(p.hi, 1.0 + 2f64.powi(-29));
        assert_eq!(p.lo, 2f64.powi(-60));
    }

    #[test]
    fn big_round_trips_f64() {
        for &x in &[0.0, 1.0, -4.0 / 27.0, 3.5e12, 1e-9] {
            let b = Big::from_f64(x, 200);
            assert_eq!(b.to_f64(), x);
        }
    }

    #[test]
    fn big_sees_binary_rounding_of_decimals() {
        let x = Big::from_f64(3.0, 160);
        let y = Big::from_f64(0.1, 160);
        let s = x.mul(&y).sub(&Big::from_f64(0.3, 160));
        // 3 * 0.1 in binary is not 0.3; the defect is the usual 2^-54-ish.
        assert!(s.to_f64().abs() < 1e-16);
        assert!(s.to_f64().abs() > 0.0);
    }
}
