//! The dual-route verification: polynomial zeros against the curve image.

use num_complex::Complex64;

use crate::error::Error;
use crate::gcount::{count_g_zeros, czero_g_roots, GmZeroSet};
use crate::params::{Regime, SequenceParams};
use crate::recurrence::tables_dd;
use crate::roots::zeros_dd;
use crate::theta::{czero, z_of_theta};
use crate::{TOL_REAL, TOL_RESIDUAL};

/// One paired zero: where the counting function put it and where the
/// eigenvalue route put it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaMatch {
    /// Angle of the counting-function zero (`pi/2` marks the symmetry
    /// center of the `c = 0` family, where its odd tables vanish).
    pub theta: f64,
    /// Zero location predicted by the curve, raw scale.
    pub z_curve: f64,
    /// Zero computed from the coefficient table, raw scale.
    pub z_poly: Complex64,
    /// `|z_poly - z_curve| / (1 + |z_curve|)`.
    pub residual: f64,
}

/// Pair two independently computed zero lists, both ascending, and insist
/// on agreement within `tol * (1 + |z|)`.
pub fn match_zeros(
    curve: &[(f64, f64)],
    poly: &[Complex64],
    tol: f64,
) -> Result<Vec<ThetaMatch>, Error> {
    if curve.len() != poly.len() {
        return Err(Error::MatchFailure(format!(
            "curve route found {} zeros, polynomial route {}",
            curve.len(),
            poly.len()
        )));
    }
    let mut out = Vec::with_capacity(curve.len());
    for (&(theta, z_curve), &z_poly) in curve.iter().zip(poly) {
        let residual = (z_poly - z_curve).norm() / (1.0 + z_curve.abs());
        if residual > tol {
            return Err(Error::MatchFailure(format!(
                "curve zero {z_curve} and polynomial zero {z_poly} disagree \
                 (residual {residual:.3e} > {tol:.1e})"
            )));
        }
        out.push(ThetaMatch {
            theta,
            z_curve,
            z_poly,
            residual,
        });
    }
    Ok(out)
}

/// Everything the dual-route analysis of one `H_m` produces.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    pub params: SequenceParams,
    pub m: u32,
    /// `None` when the table is identically zero.
    pub degree: Option<usize>,
    /// All zeros of the raw-family table, ascending by real part.
    pub zeros: Vec<Complex64>,
    /// Real parts of the zeros that pass the realness tolerance, ascending.
    pub real_zeros: Vec<f64>,
    /// Worst `|Im z| / (1 + |Re z|)` over all zeros.
    pub max_im_ratio: f64,
    pub all_real: bool,
    /// Certified counting data for the `c != 0` routes.
    pub counts: Option<GmZeroSet>,
    pub matches: Vec<ThetaMatch>,
    pub worst_residual: f64,
}

fn finish(
    params: &SequenceParams,
    m: u32,
    degree: Option<usize>,
    zeros: Vec<Complex64>,
    counts: Option<GmZeroSet>,
    curve: Vec<(f64, f64)>,
) -> Result<ZeroReport, Error> {
    let matches = match_zeros(&curve, &zeros, TOL_RESIDUAL)?;
    let worst_residual = matches.iter().map(|p| p.residual).fold(0.0, f64::max);
    let mut max_im_ratio = 0.0f64;
    let mut real_zeros = Vec::with_capacity(zeros.len());
    for z in &zeros {
        let ratio = z.im.abs() / (1.0 + z.re.abs());
        max_im_ratio = max_im_ratio.max(ratio);
        if z.im.abs() <= TOL_REAL * (1.0 + z.re.abs()) {
            real_zeros.push(z.re);
        }
    }
    let all_real = real_zeros.len() == zeros.len();
    Ok(ZeroReport {
        params: *params,
        m,
        degree,
        zeros,
        real_zeros,
        max_im_ratio,
        all_real,
        counts,
        matches,
        worst_residual,
    })
}

/// Full dual-route analysis of `H_m`: generate the table in double-double,
/// extract its zeros, certify the zero count on the curve side, map the
/// counting-function zeros through the curve, and pair the two lists.
///
/// Only parameters inside the real-zero region are accepted; everything
/// else has no curve to match against (see `classify` for that side).
pub fn analyze(params: &SequenceParams, m: u32) -> Result<ZeroReport, Error> {
    let tables = tables_dd(params, m)?;
    let row = &tables[m as usize];

    if row.is_empty() {
        // Identically zero table (only the c = 0 family produces these);
        // nothing to extract and nothing to count.
        return Ok(ZeroReport {
            params: *params,
            m,
            degree: None,
            zeros: Vec::new(),
            real_zeros: Vec::new(),
            max_im_ratio: 0.0,
            all_real: true,
            counts: None,
            matches: Vec::new(),
            worst_residual: 0.0,
        });
    }
    let degree = Some(row.len() - 1);

    let scale = params.zero_scale();
    let mut zeros: Vec<Complex64> = zeros_dd(row)?.into_iter().map(|z| z * scale).collect();
    zeros.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));

    match params.regime {
        Regime::Normalized | Regime::RawBC => {
            let a = params.a()?;
            if !(-1.0 - 1e-12..=1.0 / 3.0 + 1e-12).contains(&a) {
                return Err(Error::Domain(format!(
                    "dual-route analysis needs b/c^2 in [-1, 1/3], got {a}"
                )));
            }
            let counts = count_g_zeros(a, m)?;
            let c3 = params.c * params.c * params.c;
            let mut curve: Vec<(f64, f64)> = counts
                .roots
                .iter()
                .map(|&theta| Ok((theta, c3 * z_of_theta(counts.a_used, theta)?)))
                .collect::<Result<_, Error>>()?;
            curve.sort_by(|p, q| p.1.total_cmp(&q.1));
            finish(params, m, degree, zeros, Some(counts), curve)
        }
        Regime::CZero => {
            if params.b > 0.0 {
                let thetas = czero_g_roots(m)?;
                let mut curve: Vec<(f64, f64)> = Vec::new();
                for &theta in &thetas {
                    let z = scale * czero::z_of_theta(theta)?;
                    curve.push((theta, z));
                    curve.push((theta, -z));
                }
                if m % 2 == 1 {
                    curve.push((std::f64::consts::FRAC_PI_2, 0.0));
                }
                curve.sort_by(|p, q| p.1.total_cmp(&q.1));
                finish(params, m, degree, zeros, None, curve)
            } else if params.b == 0.0 {
                // H_m = (-z)^(m/3): every zero sits at the origin.
                let curve = vec![(std::f64::consts::FRAC_PI_2, 0.0); zeros.len()];
                finish(params, m, degree, zeros, None, curve)
            } else {
                Err(Error::Domain(
                    "c = 0 with b < 0 has no real-zero curve to verify against".into(),
                ))
            }
        }
    }
}
