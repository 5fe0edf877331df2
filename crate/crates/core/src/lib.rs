//! Zero analysis for polynomial sequences `H_m(z)` driven by the four-term
//! recurrence
//!
//! ```text
//! H_m + c H_{m-1} + b H_{m-2} + z H_{m-3} = 0,    m >= 3,
//! ```
//!
//! with `H_0 = 1`, `H_1 = -c`, `H_2 = c^2 - b`, equivalently by the
//! generating function `1 / (1 + c t + b t^2 + z t^3)`.
//!
//! The crate decides, for given `(b, c)`, whether every `H_m` has only real
//! zeros, and backs the verdict with two independent computations:
//!
//! * direct root extraction from the coefficient tables
//!   ([`polynomial_zeros`], [`analyze`]), and
//! * a trigonometric parameterization of the limiting zero locus that counts
//!   and locates the zeros without ever forming the polynomial
//!   ([`theta`], [`count_g_zeros`]).
//!
//! For parameter ratios outside the real-zero region, [`nonreal_witness`]
//! constructs a certified non-real accumulation point of the zero sets.

mod arith;
mod classify;
mod cubic;
mod density;
mod error;
mod gcount;
mod matching;
mod params;
mod poly;
mod recurrence;
mod roots;
pub mod theta;

pub use arith::Dd;
pub use classify::{
    classify, classify_with, equimodular_check, nonreal_witness, Classification, Condition,
    Verdict, Witness, WitnessOptions, WitnessProbe,
};
pub use cubic::cubic_roots;
pub use density::{density_sample, DensityReport};
pub use error::Error;
pub use gcount::{count_g_zeros, czero_case_count, czero_g_roots, CellKind, CellLog, GmZeroSet};
pub use matching::{analyze, match_zeros, ThetaMatch, ZeroReport};
pub use params::{Regime, SequenceParams};
pub use poly::RealPolynomial;
pub use recurrence::{
    closed_form_eval, degree_bound, generate_sequence, generate_sequence_bits, SequenceWindow,
};
pub use roots::polynomial_zeros;

/// Default relative tolerance for flagging a computed zero as real.
pub const TOL_REAL: f64 = 1e-7;

/// Default relative tolerance for the pairing of theta-side and
/// polynomial-side zeros.
pub const TOL_RESIDUAL: f64 = 1e-6;
