use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter left the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// The quadratic for the zeta branch lost its real solutions; unreachable
    /// for parameters inside the real-zero region.
    #[error("negative discriminant at theta = {theta} for a = {a}")]
    NegativeDiscriminant { a: f64, theta: f64 },

    /// Evaluation was requested at the vertical asymptote of zeta.
    #[error("theta = {theta} hits the zeta asymptote for a = {a}")]
    AsymptoteHit { a: f64, theta: f64 },

    /// The cubic in the closed-form evaluation has a repeated root, so the
    /// partial-fraction form degenerates.
    #[error("degenerate cubic roots at z = {z}")]
    DegenerateRoots { z: f64 },

    /// An operation that divides by `z` received `z = 0`.
    #[error("z = 0 is outside the domain of this evaluation")]
    ZeroArgument,

    /// The zero polynomial has no meaningful root set.
    #[error("cannot extract roots of the zero polynomial")]
    ZeroPolynomial,

    /// The certified sign-change scan located fewer roots than the count the
    /// theory guarantees.
    #[error("located {found} g-roots for m = {m}, expected {expected}")]
    CountDeficit { m: u32, found: usize, expected: usize },

    /// Theta-side and polynomial-side zero lists could not be paired within
    /// tolerance.
    #[error("zero matching failed: {0}")]
    MatchFailure(String),

    /// No delta in the probe schedule satisfied every witness guarantee.
    #[error("witness search exhausted its schedule for a = {a}")]
    WitnessSearchFailure { a: f64 },

    /// The requested window does not meet the support of the zero sets.
    #[error("window [{lo}, {hi}] misses the zero locus")]
    EmptyWindow { lo: f64, hi: f64 },
}
