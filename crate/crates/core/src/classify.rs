//! The real-zero classifier and the certified counterexample it hands out
//! on the other side of the boundary.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::cubic::cubic_roots;
use crate::error::Error;
use crate::params::{Regime, SequenceParams};
use crate::recurrence::{generate_sequence, generate_tables};
use crate::roots::polynomial_zeros;
use crate::theta::czero;

/// Does every table in the family have only real zeros?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AllReal,
    NotAllReal,
}

/// Which clause of the boundary description fired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Condition {
    /// `c = 0`, `b >= 0`: all zeros real (in fact purely so by symmetry).
    CZeroNonnegativeB { b: f64 },
    /// `c = 0`, `b < 0`: zeros are purely imaginary.
    CZeroNegativeB { b: f64 },
    /// `-1 <= b/c^2 <= 1/3`.
    RatioInRange { a: f64 },
    /// `b/c^2 < -1`.
    RatioBelowRange { a: f64 },
    /// `b/c^2 > 1/3`.
    RatioAboveRange { a: f64 },
}

impl Condition {
    pub fn verdict(&self) -> Verdict {
        match self {
            Condition::CZeroNonnegativeB { .. } | Condition::RatioInRange { .. } => {
                Verdict::AllReal
            }
            _ => Verdict::NotAllReal,
        }
    }
}

/// Classifier output; the witness is present only when requested and only
/// on the non-real side.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub params: SequenceParams,
    pub verdict: Verdict,
    pub condition: Condition,
    pub witness: Option<Witness>,
}

/// Knobs for the witness search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessOptions {
    /// Depth limit for the attraction scan.
    pub empirical_mmax: u32,
    /// Skip the attraction scan entirely when false.
    pub run_empirical: bool,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            empirical_mmax: 60,
            run_empirical: true,
        }
    }
}

/// One step of the offset schedule and why it was (or was not) accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessProbe {
    pub delta: f64,
    pub accepted: bool,
    pub rejection: Option<String>,
}

/// A certified non-real accumulation point of the zero sets.
///
/// Construction guarantees (all re-verified, not assumed): the witness is
/// genuinely non-real, the three constructed inverse roots satisfy their
/// cubic to working precision, and an independent closed-form solve of the
/// same cubic confirms that its two smallest roots are equimodular while
/// all three stay distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// The accumulation point in the raw variable.
    pub z_star: Complex64,
    /// The same point in normalized (scale-free) coordinates.
    pub z_star_normalized: Complex64,
    /// Angle the construction was anchored at.
    pub theta_star: f64,
    /// Offset of the accepted probe (zero for the `c = 0` construction,
    /// which needs no schedule).
    pub delta: f64,
    /// The complex quadratic root behind the construction.
    pub zeta: Complex64,
    /// Constructed inverse roots; the first two are equimodular.
    pub roots: [Complex64; 3],
    /// Worst scaled residual of the constructed roots in their cubic.
    pub construction_residual: f64,
    /// Modulus gap of the two smallest roots from the independent solve.
    pub equimodular_gap: f64,
    /// Full schedule trace.
    pub probes: Vec<WitnessProbe>,
    /// Smallest depth at which some table zero comes within 0.1 of the
    /// witness (normalized coordinates) while being clearly non-real;
    /// `None` when the scan was skipped or nothing attracts at this depth.
    pub attracted_m: Option<u32>,
    /// Closest non-real approach seen in the scan.
    pub closest_distance: f64,
}

/// Boundary description evaluated literally on the raw parameters.
pub fn classify(b: f64, c: f64) -> Result<Classification, Error> {
    let params = SequenceParams::from_bc(b, c)?;
    let condition = if c == 0.0 {
        if b >= 0.0 {
            Condition::CZeroNonnegativeB { b }
        } else {
            Condition::CZeroNegativeB { b }
        }
    } else {
        let a = b / (c * c);
        if a < -1.0 {
            Condition::RatioBelowRange { a }
        } else if a <= 1.0 / 3.0 {
            Condition::RatioInRange { a }
        } else {
            Condition::RatioAboveRange { a }
        }
    };
    Ok(Classification {
        params,
        verdict: condition.verdict(),
        condition,
        witness: None,
    })
}

/// [`classify`], plus a witness whenever the verdict is negative.
pub fn classify_with(b: f64, c: f64, opts: &WitnessOptions) -> Result<Classification, Error> {
    let mut cls = classify(b, c)?;
    if cls.verdict == Verdict::NotAllReal {
        cls.witness = Some(nonreal_witness(&cls.params, opts)?);
    }
    Ok(cls)
}

/// Solve the generating cubic of `params` at `z` in closed form and report
/// the roots sorted by modulus together with the relative modulus gap of
/// the smallest two. Independent of the witness construction by design.
pub fn equimodular_check(
    params: &SequenceParams,
    z: Complex64,
) -> Result<([Complex64; 3], f64), Error> {
    let roots = cubic_roots([
        Complex64::ONE,
        Complex64::new(params.c, 0.0),
        Complex64::new(params.b, 0.0),
        z,
    ])?;
    let mut sorted = roots;
    sorted.sort_by(|p, q| p.norm().total_cmp(&q.norm()));
    let gap = (sorted[1].norm() - sorted[0].norm()) / (1.0 + sorted[0].norm());
    Ok((sorted, gap))
}

struct Candidate {
    theta: f64,
    zeta: Complex64,
    z_norm: Complex64,
    roots: [Complex64; 3],
    residual: f64,
    gap: f64,
}

fn candidate(a: f64, delta: f64) -> Result<Candidate, String> {
    let theta = if a < -1.0 {
        // The discriminant is most negative at the center of the window.
        FRAC_PI_2 - delta
    } else {
        // Just past the angle where the discriminant turns negative.
        let beta = (a / (4.0 * a - 1.0)).sqrt();
        let ct = beta + delta;
        if !(ct < 1.0) {
            return Err(format!("cos(theta) = {ct} leaves the unit range"));
        }
        ct.acos()
    };
    let ct = theta.cos();
    let aa = 1.0 - 4.0 * a * ct * ct;
    let disc = (1.0 - 4.0 * a) * ct * ct + a;
    if !(disc < 0.0) {
        return Err(format!("discriminant {disc} is not negative"));
    }
    let zeta = Complex64::new((2.0 * a - 1.0) * ct, (-disc).sqrt()) / aa;
    if zeta.im.abs() <= 1e-10 * (1.0 + zeta.norm()) {
        return Err("quadratic root is numerically real".into());
    }
    if zeta.norm() <= 1.0 {
        return Err(format!("|zeta| = {} is not above 1", zeta.norm()));
    }
    let u = zeta.inv();
    let w = u + 2.0 * ct;
    let z_norm = u / (w * w * w);
    if z_norm.im.abs() <= 1e-8 {
        return Err("witness point is numerically real".into());
    }

    // Inverse roots in the u-form; the first two are equimodular because
    // they differ by a unit factor exp(2 i theta).
    let e = Complex64::new(0.0, -theta).exp();
    let t0 = -w * e;
    let t1 = -w * e.conj();
    let t2 = -w / u;
    let roots = [t0, t1, t2];

    let mut residual = 0.0f64;
    for t in roots {
        let p = Complex64::ONE + t + a * t * t + z_norm * t * t * t;
        let scale = 1.0 + t.norm() + (a * t * t).norm() + (z_norm * t * t * t).norm();
        residual = residual.max(p.norm() / scale);
    }
    if residual > 1e-9 {
        return Err(format!("construction residual {residual:.3e} too large"));
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (roots[i] - roots[j]).norm() <= 1e-8 {
                return Err("constructed roots collide".into());
            }
        }
    }

    let solved = cubic_roots([
        Complex64::ONE,
        Complex64::ONE,
        Complex64::new(a, 0.0),
        z_norm,
    ])
    .map_err(|e| format!("independent solve failed: {e}"))?;
    let mut sorted = solved;
    sorted.sort_by(|p, q| p.norm().total_cmp(&q.norm()));
    let gap = (sorted[1].norm() - sorted[0].norm()) / (1.0 + sorted[0].norm());
    if gap > 1e-10 {
        return Err(format!("smallest moduli differ by {gap:.3e}"));
    }

    Ok(Candidate {
        theta,
        zeta,
        z_norm,
        roots,
        residual,
        gap,
    })
}

fn attraction(
    polys: &[crate::poly::RealPolynomial],
    target: Complex64,
    scale: f64,
) -> Result<(Option<u32>, f64), Error> {
    let mut attracted = None;
    let mut closest = f64::INFINITY;
    for (m, poly) in polys.iter().enumerate().skip(3) {
        if poly.degree().unwrap_or(0) == 0 {
            continue;
        }
        for root in polynomial_zeros(poly)? {
            let scaled = root / scale;
            if scaled.im.abs() > 1e-4 {
                let d = (scaled - target).norm();
                closest = closest.min(d);
                if d <= 0.1 && attracted.is_none() {
                    attracted = Some(m as u32);
                }
            }
        }
    }
    Ok((attracted, closest))
}

/// Construct a non-real accumulation point for parameters outside the
/// real-zero region.
///
/// For `c != 0` an offset schedule walks the anchor angle into the
/// complex-root range until every guarantee holds; the first offsets
/// usually pass, and the whole trace is returned. For `c = 0`, `b < 0` no
/// search is needed: `i |b|^{3/2}` is an exact zero of the depth-6 table.
pub fn nonreal_witness(params: &SequenceParams, opts: &WitnessOptions) -> Result<Witness, Error> {
    match params.regime {
        Regime::Normalized | Regime::RawBC => {
            let a = params.a()?;
            if (-1.0..=1.0 / 3.0).contains(&a) {
                return Err(Error::Domain(format!(
                    "parameters with b/c^2 = {a} have only real zeros; no witness exists"
                )));
            }
            let mut probes = Vec::new();
            let mut found: Option<Candidate> = None;
            for k in 1..=8 {
                let delta = 10f64.powi(-k);
                match candidate(a, delta) {
                    Ok(c) => {
                        probes.push(WitnessProbe {
                            delta,
                            accepted: true,
                            rejection: None,
                        });
                        found = Some(c);
                        break;
                    }
                    Err(reason) => probes.push(WitnessProbe {
                        delta,
                        accepted: false,
                        rejection: Some(reason),
                    }),
                }
            }
            let cand = found.ok_or(Error::WitnessSearchFailure { a })?;

            let (attracted_m, closest) = if opts.run_empirical {
                let norm = SequenceParams::normalized(a)?;
                let window = generate_sequence(&norm, opts.empirical_mmax)?;
                attraction(&window.polys, cand.z_norm, 1.0)?
            } else {
                (None, f64::INFINITY)
            };

            let c3 = params.c * params.c * params.c;
            Ok(Witness {
                z_star: cand.z_norm * c3,
                z_star_normalized: cand.z_norm,
                theta_star: cand.theta,
                delta: probes.last().map_or(0.0, |p| p.delta),
                zeta: cand.zeta,
                roots: cand.roots,
                construction_residual: cand.residual,
                equimodular_gap: cand.gap,
                probes,
                attracted_m,
                closest_distance: closest,
            })
        }
        Regime::CZero => {
            if params.b >= 0.0 {
                return Err(Error::Domain(
                    "c = 0 with b >= 0 has only real zeros; no witness exists".into(),
                ));
            }
            let scale = -params.b * (-params.b).sqrt();
            let z_star = Complex64::new(0.0, scale);
            // The angle whose curve value matches the witness modulus in
            // scaled coordinates.
            let theta_star = czero::theta_for_z(1.0)?;
            let (sorted, gap) = equimodular_check(params, z_star)?;

            let tables = generate_tables(params, 6, &|x| x)?;
            let h6 = crate::poly::RealPolynomial::new(tables[6].clone());
            let residual = h6.eval_complex(z_star).norm() / (1.0 + scale * scale);

            let (attracted_m, closest) = if opts.run_empirical {
                let window = generate_sequence(params, opts.empirical_mmax.max(6))?;
                attraction(&window.polys, Complex64::I, scale)?
            } else {
                (None, f64::INFINITY)
            };

            Ok(Witness {
                z_star,
                z_star_normalized: Complex64::I,
                theta_star,
                delta: 0.0,
                zeta: Complex64::new(czero::zeta(theta_star)?, 0.0),
                roots: sorted,
                construction_residual: residual,
                equimodular_gap: gap,
                probes: Vec::new(),
                attracted_m,
                closest_distance: closest,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn region_predicate() {
        assert_eq!(classify(1.0, 0.0).unwrap().verdict, Verdict::AllReal);
        assert_eq!(classify(0.0, 0.0).unwrap().verdict, Verdict::AllReal);
        assert_eq!(classify(-0.1, 0.0).unwrap().verdict, Verdict::NotAllReal);
        assert_eq!(classify(0.25, 1.0).unwrap().verdict, Verdict::AllReal);
        assert_eq!(classify(-1.0, 1.0).unwrap().verdict, Verdict::AllReal);
        assert_eq!(classify(-1.0000001, 1.0).unwrap().verdict, Verdict::NotAllReal);
        assert_eq!(classify(0.34, 1.0).unwrap().verdict, Verdict::NotAllReal);
        // The ratio is what matters, not b itself.
        assert_eq!(classify(1.2, 2.0).unwrap().verdict, Verdict::AllReal);
        assert_eq!(classify(1.2, -2.0).unwrap().verdict, Verdict::AllReal);
    }

    #[test]
    fn witness_frozen_anchors() {
        let w = nonreal_witness(
            &SequenceParams::normalized(0.4).unwrap(),
            &WitnessOptions::default(),
        )
        .unwrap();
        assert_eq!(w.delta, 0.1);
        assert_relative_eq!(w.theta_star, 0.4115632387603609, max_relative = 1e-12);
        assert_relative_eq!(w.z_star.re, 0.06466132049637786, max_relative = 1e-10);
        assert_relative_eq!(w.z_star.im, 0.002521064331168619, max_relative = 1e-10);
        assert_eq!(w.attracted_m, Some(10));

        let w = nonreal_witness(
            &SequenceParams::normalized(-1.5).unwrap(),
            &WitnessOptions::default(),
        )
        .unwrap();
        assert_eq!(w.delta, 0.1);
        assert_relative_eq!(w.z_star.re, -1.637066484166422, max_relative = 1e-10);
        assert_relative_eq!(w.z_star.im, 0.1187585002631085, max_relative = 1e-10);
        assert_eq!(w.attracted_m, Some(31));
    }

    #[test]
    fn witness_schedule_can_reject_first_offsets() {
        let w = nonreal_witness(
            &SequenceParams::normalized(2.0).unwrap(),
            &WitnessOptions {
                run_empirical: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(w.delta, 0.01);
        assert_eq!(w.probes.len(), 2);
        assert!(!w.probes[0].accepted);
        assert!(w.probes[0].rejection.as_ref().unwrap().contains("zeta"));
    }

    #[test]
    fn witness_guarantees_hold() {
        for &a in &[-3.0, -1.5, 0.4, 0.6, 1.0, 2.0] {
            let w = nonreal_witness(
                &SequenceParams::normalized(a).unwrap(),
                &WitnessOptions {
                    run_empirical: false,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(w.z_star.im.abs() > 1e-8, "a = {a}");
            assert!(w.construction_residual <= 1e-9, "a = {a}");
            assert!(w.equimodular_gap <= 1e-10, "a = {a}");
            assert_relative_eq!(w.roots[0].norm(), w.roots[1].norm(), max_relative = 1e-12);
        }
    }

    #[test]
    fn czero_witness_is_exact_at_depth_six() {
        let w = nonreal_witness(
            &SequenceParams::from_bc(-1.0, 0.0).unwrap(),
            &WitnessOptions::default(),
        )
        .unwrap();
        assert_eq!(w.z_star, Complex64::new(0.0, 1.0));
        assert_relative_eq!(w.theta_star, 1.2851141121184906, max_relative = 1e-12);
        assert!(w.construction_residual < 1e-12);
        assert_eq!(w.attracted_m, Some(6));

        let w = nonreal_witness(
            &SequenceParams::from_bc(-4.0, 0.0).unwrap(),
            &WitnessOptions::default(),
        )
        .unwrap();
        assert_relative_eq!(w.z_star.im, 8.0, max_relative = 1e-15);
        assert_eq!(w.attracted_m, Some(6));
    }

    #[test]
    fn no_witness_inside_the_region() {
        assert!(nonreal_witness(
            &SequenceParams::normalized(0.2).unwrap(),
            &WitnessOptions::default()
        )
        .is_err());
        assert!(nonreal_witness(
            &SequenceParams::from_bc(2.0, 0.0).unwrap(),
            &WitnessOptions::default()
        )
        .is_err());
    }

    #[test]
    fn classify_with_attaches_witness_only_when_needed() {
        let opts = WitnessOptions {
            run_empirical: false,
            ..Default::default()
        };
        assert!(classify_with(0.2, 1.0, &opts).unwrap().witness.is_none());
        let cls = classify_with(0.5, 1.0, &opts).unwrap();
        assert!(cls.witness.is_some());
        match cls.condition {
            Condition::RatioAboveRange { a } => assert_eq!(a, 0.5),
            other => panic!("wrong condition {other:?}"),
        }
    }
}
