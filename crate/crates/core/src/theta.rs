//! Trigonometric parameterization of the limiting zero locus.
//!
//! For the normalized family (`c = 1`, shape ratio `a`), every real zero is
//! the image of an angle `theta` in `(2*pi/3, pi)` under a map built from one
//! root of the quadratic
//!
//! ```text
//! (1 - 4a cos^2 t) x^2 + 2 cos t (1 - 2a) x - a = 0,
//! ```
//!
//! the branch [`zeta`] with `zeta(2*pi/3) = 1`. Everything downstream (the
//! zero curve [`z_of_theta`], the counting functions [`g_m`], the explicit
//! inverse-root triple [`cubic_roots_at`]) is expressed through `zeta` and
//! its reciprocal `u`; `u` stays bounded through the pole of `zeta`, so it is
//! the preferred variable near the asymptote.
//!
//! The `c = 0` family has its own, simpler parameterization in [`czero`].

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::Error;
use crate::params::{Regime, SequenceParams};

/// Lower end of the angle window, `2*pi/3`.
pub const THETA_LO: f64 = 2.0 * PI / 3.0;
/// Upper end of the angle window, `pi`.
pub const THETA_HI: f64 = PI;

fn check_theta(a: f64, theta: f64) -> Result<(), Error> {
    if !a.is_finite() || !theta.is_finite() {
        return Err(Error::Domain(format!("non-finite input a = {a}, theta = {theta}")));
    }
    if theta < THETA_LO - 1e-12 || theta > THETA_HI + 1e-12 {
        return Err(Error::Domain(format!(
            "theta = {theta} outside [2*pi/3, pi]"
        )));
    }
    Ok(())
}

/// The distinguished quadratic root and its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zeta {
    /// `zeta` itself; infinite exactly on the asymptote.
    pub value: f64,
    /// `u = 1/zeta`, continuous (and zero) through the asymptote.
    pub recip: f64,
}

/// Branch of the quadratic that equals `1` at `theta = 2*pi/3` and carries
/// the zero parameterization.
///
/// Fails with [`Error::NegativeDiscriminant`] where the quadratic has no real
/// roots, which happens only for `a > 1/3`.
pub fn zeta(a: f64, theta: f64) -> Result<Zeta, Error> {
    check_theta(a, theta)?;
    let ct = theta.cos();
    let aa = 1.0 - 4.0 * a * ct * ct;
    let disc = (1.0 - 4.0 * a) * ct * ct + a;
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant { a, theta });
    }
    // For a <= 1/3 both terms of the numerator are nonnegative, so neither
    // the root nor its reciprocal cancels.
    let num = (2.0 * a - 1.0) * ct + disc.sqrt();
    Ok(Zeta {
        value: num / aa,
        recip: aa / num,
    })
}

/// The other quadratic root, in the pole-free form `-a / (B + sqrt(D))`.
/// Kept for cross-checks; the parameterization never uses it.
#[allow(dead_code)]
pub(crate) fn zeta_minus(a: f64, theta: f64) -> Result<f64, Error> {
    check_theta(a, theta)?;
    let ct = theta.cos();
    let disc = (1.0 - 4.0 * a) * ct * ct + a;
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant { a, theta });
    }
    Ok(-a / ((2.0 * a - 1.0) * ct + disc.sqrt()))
}

/// Angle at which `zeta` blows up, present exactly for `1/4 < a <= 1/3`.
pub fn asymptote_theta(a: f64) -> Option<f64> {
    (0.25 < a && a <= 1.0 / 3.0).then(|| (-0.5 / a.sqrt()).acos())
}

/// The zero curve `z(theta) = u / (u + 2 cos theta)^3` with `u = 1/zeta`.
///
/// This form is total on the open window: it passes through the asymptote
/// (where it returns exactly `0`) and degenerates gracefully at `a = 0`.
pub fn z_of_theta(a: f64, theta: f64) -> Result<f64, Error> {
    let u = zeta(a, theta)?.recip;
    let w = u + 2.0 * theta.cos();
    Ok(u / (w * w * w))
}

/// Oscillating counting function whose sign changes locate the zeros of
/// `H_m` on the angle window:
///
/// ```text
/// g_m(t) = (zeta - cos t) sin((m+1)t)/sin t - cos((m+1)t) + u^{m+1}.
/// ```
///
/// Near the asymptote the prefactor is evaluated through `u` so the huge
/// `zeta` never enters a subtraction.
pub fn g_m(a: f64, m: u32, theta: f64) -> Result<f64, Error> {
    let zt = zeta(a, theta)?;
    let ct = theta.cos();
    let aa = 1.0 - 4.0 * a * ct * ct;
    let prefactor = if aa.abs() >= 1e-8 {
        zt.value - ct
    } else {
        (1.0 - zt.recip * ct) / zt.recip
    };
    let mp1 = (m + 1) as f64;
    let ratio = (mp1 * theta).sin() / theta.sin();
    Ok(prefactor * ratio - (mp1 * theta).cos() + zt.recip.powi(m as i32 + 1))
}

/// Inverse roots of the generating cubic `1 + t + a t^2 + z t^3` at
/// `z = z_of_theta(a, theta)`, written directly in terms of `u`:
///
/// ```text
/// t0 = -(2 cos t + u) e^{-it},   t1 = conj(t0),   t2 = -(2 cos t + u)/u.
/// ```
///
/// `t0` and `t1` are equimodular by construction; this is the witness
/// geometry specialized to real `z`. Fails on the asymptote (`u = 0`), where
/// the cubic loses its third root.
pub fn cubic_roots_at(a: f64, theta: f64) -> Result<[Complex64; 3], Error> {
    let u = zeta(a, theta)?.recip;
    if u == 0.0 {
        return Err(Error::AsymptoteHit { a, theta });
    }
    let r = -(2.0 * theta.cos() + u);
    let t0 = r * Complex64::new(0.0, -theta).exp();
    Ok([t0, t0.conj(), Complex64::new(r / u, 0.0)])
}

/// One sample of the full parameterization, as reported by the curve
/// tooling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPoint {
    pub theta: f64,
    pub zeta: f64,
    pub recip: f64,
    pub z: f64,
}

pub fn sample(a: f64, theta: f64) -> Result<ThetaPoint, Error> {
    let zt = zeta(a, theta)?;
    let w = zt.recip + 2.0 * theta.cos();
    Ok(ThetaPoint {
        theta,
        zeta: zt.value,
        recip: zt.recip,
        z: zt.recip / (w * w * w),
    })
}

/// Right end of the limiting zero support for the normalized family,
///
/// ```text
/// E(a) = (-2 + 9a - 2 sqrt((1 - 3a)^3)) / 27,      a <= 1/3,
/// ```
///
/// i.e. `z(pi)`. Zeros accumulate on all of `(-inf, E(a)]`.
pub fn interval_endpoint(a: f64) -> Result<f64, Error> {
    if !(a <= 1.0 / 3.0) {
        return Err(Error::Domain(format!(
            "support endpoint needs a <= 1/3, got a = {a}"
        )));
    }
    let s = 1.0 - 3.0 * a;
    Ok((-2.0 + 9.0 * a - 2.0 * (s * s * s).sqrt()) / 27.0)
}

/// Which side of the endpoint the zero locus occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `(-inf, endpoint]`
    LeftRay,
    /// `[endpoint, inf)`
    RightRay,
}

/// Support ray of the raw-variable zero locus: the normalized ray scaled by
/// `c^3`, which flips direction when `c < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalSpec {
    pub endpoint: f64,
    /// The factor `c^3` the normalized locus was scaled by.
    pub scale: f64,
    pub orientation: Orientation,
}

impl IntervalSpec {
    pub fn for_params(params: &SequenceParams) -> Result<Self, Error> {
        match params.regime {
            Regime::Normalized | Regime::RawBC => {
                let scale = params.c * params.c * params.c;
                let endpoint = scale * interval_endpoint(params.a()?)?;
                let orientation = if scale > 0.0 {
                    Orientation::LeftRay
                } else {
                    Orientation::RightRay
                };
                Ok(IntervalSpec {
                    endpoint,
                    scale,
                    orientation,
                })
            }
            Regime::CZero => Err(Error::Domain(
                "the c = 0 locus is not a ray; see the czero module".into(),
            )),
        }
    }

    pub fn contains(&self, z: f64, tol: f64) -> bool {
        match self.orientation {
            Orientation::LeftRay => z <= self.endpoint + tol,
            Orientation::RightRay => z >= self.endpoint - tol,
        }
    }
}

/// Parameterization of the `c = 0`, `b = 1` family on `(pi/3, pi/2)`.
///
/// Zeros of that family come in symmetric pairs `±z(theta)`, so everything
/// here describes the positive half only.
pub mod czero {
    use super::PI;
    use crate::error::Error;

    /// Lower end of the angle window, `pi/3`.
    pub const THETA_LO: f64 = PI / 3.0;
    /// Upper end of the angle window, `pi/2`.
    pub const THETA_HI: f64 = PI / 2.0;

    fn check_theta(theta: f64) -> Result<(), Error> {
        if !(theta > THETA_LO - 1e-12 && theta < THETA_HI + 1e-12) {
            return Err(Error::Domain(format!(
                "theta = {theta} outside (pi/3, pi/2)"
            )));
        }
        Ok(())
    }

    /// `zeta = -1/(2 cos theta)`, the relevant quadratic root here.
    pub fn zeta(theta: f64) -> Result<f64, Error> {
        check_theta(theta)?;
        Ok(-0.5 / theta.cos())
    }

    /// Positive branch of the zero curve,
    /// `z(theta) = 2 cos theta / (1 - 4 cos^2 theta)^{3/2}`,
    /// strictly decreasing from `+inf` to `0` across the window.
    pub fn z_of_theta(theta: f64) -> Result<f64, Error> {
        check_theta(theta)?;
        let ct = theta.cos();
        let s = 1.0 - 4.0 * ct * ct;
        if s <= 0.0 {
            return Err(Error::Domain(format!(
                "theta = {theta} is outside the open window"
            )));
        }
        Ok(2.0 * ct / (s * s * s).sqrt())
    }

    /// Counting function for the positive-half zeros:
    ///
    /// ```text
    /// g_m(t) = -sin((m+1)t)(2 + cos 2t)/(2 cos t sin t)
    ///          - cos((m+1)t) + (-2 cos t)^{m+1}.
    /// ```
    pub fn g_m(m: u32, theta: f64) -> Result<f64, Error> {
        check_theta(theta)?;
        let ct = theta.cos();
        let mp1 = (m + 1) as f64;
        let lead = -(mp1 * theta).sin() * (2.0 + (2.0 * theta).cos()) / (2.0 * ct * theta.sin());
        Ok(lead - (mp1 * theta).cos() + (-2.0 * ct).powi(m as i32 + 1))
    }

    /// Inverse of [`z_of_theta`] by bisection, for positive targets.
    pub fn theta_for_z(target: f64) -> Result<f64, Error> {
        if !(target > 0.0) || !target.is_finite() {
            return Err(Error::Domain(format!(
                "the positive zero curve only reaches z > 0, got {target}"
            )));
        }
        let mut lo = THETA_LO + 1e-13;
        let mut hi = THETA_HI - 1e-13;
        // z decreases in theta: z(lo) is huge, z(hi) nearly 0.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if z_of_theta(mid)? > target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zeta_frozen_samples() {
        let cases = [
            (-0.5, 2.8, 1.208862453125003, 0.8272239719373553),
            (0.2, 2.9, 4.906234972058817, 0.20382228036264785),
            (0.3, 2.75, -28.929279586781206, -0.03456705504885558),
            (0.3, 3.0, -4.07979582277294, -0.24511030537805778),
            (-1.0, 2.3, 1.1179872421307477, 0.8944645898589341),
        ];
        for (a, theta, want_zeta, want_u) in cases {
            let zt = zeta(a, theta).unwrap();
            assert_relative_eq!(zt.value, want_zeta, max_relative = 1e-12);
            assert_relative_eq!(zt.recip, want_u, max_relative = 1e-12);
        }
    }

    #[test]
    fn zeta_is_one_at_window_start() {
        for &a in &[-1.0, -0.5, 0.0, 0.2, 0.25, 1.0 / 3.0] {
            let zt = zeta(a, THETA_LO).unwrap();
            assert_relative_eq!(zt.value, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn zeta_at_pi_closed_form() {
        for &a in &[-1.0f64, -0.5, 0.0, 0.2] {
            let want = (1.0 - 2.0 * a + (1.0 - 3.0 * a).sqrt()) / (1.0 - 4.0 * a);
            assert_relative_eq!(zeta(a, PI).unwrap().value, want, max_relative = 1e-14);
        }
    }

    #[test]
    fn zeta_degenerates_at_a_zero() {
        // The quadratic drops to a linear factor times x: the branch must
        // still come out as -2 cos t.
        for theta in [2.2, 2.5, 3.0] {
            assert_relative_eq!(
                zeta(0.0, theta).unwrap().value,
                -2.0 * theta.cos(),
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn zeta_minus_is_the_other_root() {
        assert_relative_eq!(
            zeta_minus(-0.5, 2.8).unwrap(),
            0.14901897633598185,
            max_relative = 1e-12
        );
        // Vieta: product of roots is C/A = -a/A.
        let a = -0.5;
        let theta = 2.8f64;
        let ct = theta.cos();
        let aa = 1.0 - 4.0 * a * ct * ct;
        let prod = zeta(a, theta).unwrap().value * zeta_minus(a, theta).unwrap();
        assert_relative_eq!(prod, -a / aa, max_relative = 1e-12);
    }

    #[test]
    fn zeta_rejects_out_of_window_angles() {
        assert!(zeta(0.0, 1.0).is_err());
        assert!(zeta(0.0, 3.3).is_err());
    }

    #[test]
    fn negative_discriminant_outside_real_range() {
        match zeta(0.4, 2.6) {
            Err(Error::NegativeDiscriminant { .. }) => {}
            other => panic!("expected negative discriminant, got {other:?}"),
        }
        assert!(zeta(0.4, 2.2).is_ok());
    }

    #[test]
    fn z_frozen_samples() {
        let cases = [
            (-0.5, 2.8, -0.7000452708103361),
            (0.2, 2.9, -0.03881788219064177),
            (0.3, 2.75, 0.005175979486162408),
            (0.3, 3.0, 0.022249267766219216),
            (-1.0, 2.3, -10.63850760269352),
        ];
        for (a, theta, want) in cases {
            assert_relative_eq!(z_of_theta(a, theta).unwrap(), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn z_reaches_endpoint_at_pi() {
        for &a in &[-1.0, -0.5, 0.0, 0.2, 0.3] {
            assert_relative_eq!(
                z_of_theta(a, PI).unwrap(),
                interval_endpoint(a).unwrap(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn g_frozen_samples() {
        assert_relative_eq!(
            g_m(-0.5, 5, 2.8).unwrap(),
            -4.91828880826008,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            g_m(0.3, 12, 3.0).unwrap(),
            -21.36881145444209,
            max_relative = 1e-10
        );
    }

    #[test]
    fn asymptote_position_and_behavior() {
        assert_eq!(asymptote_theta(0.2), None);
        assert_eq!(asymptote_theta(0.25), None);
        assert_eq!(asymptote_theta(0.34), None);
        let t3 = asymptote_theta(0.3).unwrap();
        assert_relative_eq!(t3, 2.721058318305828, max_relative = 1e-14);
        assert_relative_eq!(
            asymptote_theta(0.26).unwrap(),
            2.9441970937399122,
            max_relative = 1e-14
        );

        // zeta explodes with opposite signs across the pole; u and z stay
        // tame and z crosses zero.
        let below = zeta(0.3, t3 - 1e-7).unwrap();
        let above = zeta(0.3, t3 + 1e-7).unwrap();
        assert!(below.value > 1e6);
        assert!(above.value < -1e6);
        assert!(below.recip.abs() < 2e-7);
        assert!(z_of_theta(0.3, t3 - 1e-7).unwrap().abs() < 1e-7);
        assert!(z_of_theta(0.3, t3 + 1e-7).unwrap().abs() < 1e-7);
    }

    #[test]
    fn cubic_root_structure() {
        let a = 0.2;
        let theta = 2.9;
        let [t0, t1, t2] = cubic_roots_at(a, theta).unwrap();
        assert_eq!(t1, t0.conj());
        assert!(t2.im == 0.0);
        assert_relative_eq!(t0.norm(), t1.norm(), max_relative = 1e-15);

        // All three must kill 1 + t + a t^2 + z t^3.
        let z = z_of_theta(a, theta).unwrap();
        for t in [t0, t1, t2] {
            let residual = Complex64::ONE + t + a * t * t + z * t * t * t;
            assert!(residual.norm() < 1e-12, "residual {}", residual.norm());
        }
    }

    #[test]
    fn endpoint_exact_values() {
        assert_eq!(interval_endpoint(1.0 / 3.0).unwrap(), 1.0 / 27.0);
        assert_eq!(interval_endpoint(0.0).unwrap(), -4.0 / 27.0);
        assert_eq!(interval_endpoint(-1.0).unwrap(), -1.0);
        assert_eq!(interval_endpoint(0.25).unwrap(), 0.0);
        assert!(interval_endpoint(0.34).is_err());
    }

    #[test]
    fn interval_orientation_follows_sign_of_c() {
        let pos = IntervalSpec::for_params(&SequenceParams::from_bc(0.0, 2.0).unwrap()).unwrap();
        assert_eq!(pos.orientation, Orientation::LeftRay);
        assert_relative_eq!(pos.endpoint, 8.0 * (-4.0 / 27.0), max_relative = 1e-15);
        assert!(pos.contains(-2.0, 0.0));
        assert!(!pos.contains(0.0, 0.0));

        let neg = IntervalSpec::for_params(&SequenceParams::from_bc(0.0, -2.0).unwrap()).unwrap();
        assert_eq!(neg.orientation, Orientation::RightRay);
        assert_relative_eq!(neg.endpoint, 32.0 / 27.0, max_relative = 1e-15);
        assert!(neg.contains(2.0, 0.0));
        assert!(!neg.contains(0.0, 0.0));
    }

    #[test]
    fn czero_frozen_samples() {
        assert_relative_eq!(
            czero::zeta(1.2).unwrap(),
            -1.379851800666203,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            czero::zeta(1.4).unwrap(),
            -2.941745042413671,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            czero::z_of_theta(1.2).unwrap(),
            2.2152295453778876,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            czero::z_of_theta(1.4).unwrap(),
            0.40868524446207194,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            czero::g_m(6, 1.2).unwrap(),
            -1.1831622551450196,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            czero::g_m(7, 1.2).unwrap(),
            1.3866396016626563,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            czero::g_m(6, 1.4).unwrap(),
            2.087117117026152,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            czero::g_m(7, 1.4).unwrap(),
            2.889080797938185,
            max_relative = 1e-10
        );
    }

    #[test]
    fn czero_curve_inversion() {
        let theta = czero::theta_for_z(1.0).unwrap();
        assert_relative_eq!(theta, 1.2851141121184906, max_relative = 1e-12);
        for target in [0.01, 0.5, 7.0, 3000.0] {
            let t = czero::theta_for_z(target).unwrap();
            assert_relative_eq!(czero::z_of_theta(t).unwrap(), target, max_relative = 1e-9);
        }
        assert!(czero::theta_for_z(-1.0).is_err());
    }
}
