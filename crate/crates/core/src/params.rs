//! Parameter handling for the three computational regimes.

use crate::error::Error;

/// Which form of the recurrence the coefficient tables are generated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `c^2 = b / a` scaled away: `H_m = -(H_{m-1} + a H_{m-2} + z H_{m-3})`.
    /// Zeros of the raw family are `c^3` times the zeros computed here.
    Normalized,
    /// The recurrence exactly as given, `H_m = -(c H_{m-1} + b H_{m-2} + z H_{m-3})`.
    RawBC,
    /// `c = 0`. For `b > 0` the variable change `t -> t / sqrt(b)` reduces to
    /// `b = 1` and zeros scale by `b^{3/2}`; for `b <= 0` the raw recurrence
    /// is used as is.
    CZero,
}

/// A `(b, c)` pair together with the regime its sequences are generated in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceParams {
    pub b: f64,
    pub c: f64,
    pub regime: Regime,
}

impl SequenceParams {
    /// Raw parameters as the user states them. Picks [`Regime::CZero`] when
    /// `c` is exactly zero and [`Regime::RawBC`] otherwise.
    pub fn from_bc(b: f64, c: f64) -> Result<Self, Error> {
        if !b.is_finite() || !c.is_finite() {
            return Err(Error::Domain(format!("non-finite parameters b = {b}, c = {c}")));
        }
        let regime = if c == 0.0 { Regime::CZero } else { Regime::RawBC };
        Ok(SequenceParams { b, c, regime })
    }

    /// The one-parameter family `c = 1`, `b = a`, which every `c != 0` pair
    /// collapses to under the cubic scaling of zeros.
    pub fn normalized(a: f64) -> Result<Self, Error> {
        if !a.is_finite() {
            return Err(Error::Domain(format!("non-finite ratio a = {a}")));
        }
        Ok(SequenceParams {
            b: a,
            c: 1.0,
            regime: Regime::Normalized,
        })
    }

    /// The shape ratio `a = b / c^2` that the real-zero condition and the
    /// whole theta side depend on.
    pub fn a(&self) -> Result<f64, Error> {
        match self.regime {
            Regime::Normalized | Regime::RawBC => {
                if self.c == 0.0 {
                    return Err(Error::Domain("a = b / c^2 needs c != 0".into()));
                }
                Ok(self.b / (self.c * self.c))
            }
            Regime::CZero => Err(Error::Domain("shape ratio is undefined for c = 0".into())),
        }
    }

    /// Factor mapping zeros of the internally generated (normalized or
    /// rescaled) sequence back to zeros of the raw one.
    pub fn zero_scale(&self) -> f64 {
        match self.regime {
            Regime::Normalized => {
                let c = self.c;
                c * c * c
            }
            Regime::RawBC => 1.0,
            Regime::CZero => {
                if self.b > 0.0 {
                    self.b * self.b.sqrt()
                } else {
                    1.0
                }
            }
        }
    }
}
