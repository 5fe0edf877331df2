//! Certified counting of the oscillation zeros.
//!
//! The zeros of `H_m` correspond to sign changes of `g_m` on the angle
//! window. The Chebyshev-like grid `theta_h = h pi/(m+1)` pins the sign of
//! `g_m` at every grid point (`sin((m+1)theta)` vanishes there, leaving
//! `-cos(h pi)` plus a strictly smaller power term), so each change sits in
//! a known cell and plain bisection certifies it. Two spots need care: the
//! pole of `zeta` for `1/4 < a <= 1/3`, whose cell is split with one-sided
//! samples, and the right end, where the sign is evaluated just below `pi`.

use std::f64::consts::PI;

use crate::error::Error;
use crate::theta::{asymptote_theta, czero, g_m};

/// Where a scanned cell came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// Between two consecutive grid angles.
    Interior,
    /// Lower part of a cell that was split at the asymptote.
    AsymptoteBelow,
    /// Upper part of a cell that was split at the asymptote.
    AsymptoteAbove,
    /// From the last grid angle up to (just below) `pi`.
    Terminal,
}

/// One scanned cell with the evaluated endpoint values and the root found
/// in it, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct CellLog {
    pub lo: f64,
    pub hi: f64,
    pub g_lo: f64,
    pub g_hi: f64,
    pub kind: CellKind,
    pub root: Option<f64>,
}

/// Certified zero set of `g_m` for one `(a, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GmZeroSet {
    pub m: u32,
    pub a_requested: f64,
    /// Differs from the request when a boundary or grid-collision nudge was
    /// applied; always within `2e-9` of the request.
    pub a_used: f64,
    pub perturbed: bool,
    /// Ascending angles; always exactly `floor(m/3)` of them.
    pub roots: Vec<f64>,
    pub cells: Vec<CellLog>,
}

fn sgn(x: f64) -> i32 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, mut s_lo: i32) -> Result<f64, Error>
where
    F: Fn(f64) -> Result<f64, Error>,
{
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-12 {
            return Ok(mid);
        }
        let s = sgn(f(mid)?);
        if s == 0 {
            return Ok(mid);
        }
        if s == s_lo {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

struct Cell {
    lo: f64,
    hi: f64,
    g_lo: f64,
    g_hi: f64,
    kind: CellKind,
}

/// Locate all zeros of `g_m(a, .)` on the open angle window and certify
/// that there are exactly `floor(m/3)` of them.
///
/// Boundary ratios are nudged by `1e-9`: `a` within `1e-12` of `1/4` (where
/// the asymptote is born at `pi`), and any `a` whose asymptote lands within
/// `1e-10` of a grid angle. Shrinking `a` moves the asymptote up, away from
/// the grid angle it collided with, which always approaches from below.
pub fn count_g_zeros(a: f64, m: u32) -> Result<GmZeroSet, Error> {
    if !a.is_finite() {
        return Err(Error::Domain(format!("non-finite ratio a = {a}")));
    }
    if !(-1.0 - 1e-12..=1.0 / 3.0 + 1e-12).contains(&a) {
        return Err(Error::Domain(format!(
            "the counting argument covers -1 <= a <= 1/3, got a = {a}"
        )));
    }
    let mut a_used = a.clamp(-1.0, 1.0 / 3.0);
    if (a_used - 0.25).abs() < 1e-12 {
        a_used = 0.25 - 1e-9;
    }

    let expected = (m / 3) as usize;
    let grid_lo = 2 * (m + 1) / 3 + 1;
    if grid_lo > m {
        return Ok(GmZeroSet {
            m,
            a_requested: a,
            a_used,
            perturbed: a_used != a,
            roots: Vec::new(),
            cells: Vec::new(),
        });
    }

    let spacing = PI / (m + 1) as f64;
    let mut asym = asymptote_theta(a_used);
    for _ in 0..4 {
        match asym {
            Some(t)
                if (grid_lo..=m).any(|h| (t - h as f64 * spacing).abs() < 1e-10) =>
            {
                a_used -= 1e-9;
                asym = asymptote_theta(a_used);
            }
            _ => break,
        }
    }
    let perturbed = a_used != a;

    let g = |theta: f64| g_m(a_used, m, theta);

    let mut points = Vec::with_capacity((m - grid_lo + 2) as usize);
    for h in grid_lo..=m {
        let theta = h as f64 * spacing;
        points.push((h, theta, g(theta)?));
    }
    let pi_side = PI - 1e-9;
    points.push((m + 1, pi_side, g(pi_side)?));

    let mut cells: Vec<Cell> = Vec::new();
    for w in points.windows(2) {
        let (h, lo, g_lo) = w[0];
        let (hh, hi, g_hi) = w[1];
        let kind = if hh == m + 1 {
            CellKind::Terminal
        } else {
            CellKind::Interior
        };
        match asym {
            Some(t) if lo < t && t < hi => {
                // Sign of g at the pole's flanks: sin((m+1)theta) holds the
                // sign (-1)^h throughout the open cell, and zeta goes to
                // +inf below the pole and -inf above it.
                let below = if h % 2 == 0 { 1 } else { -1 };
                let pick = |target: i32, side: f64| -> Result<(f64, f64), Error> {
                    for eps in [1e-7, 1e-9, 1e-11, 1e-13] {
                        let x = t + side * eps;
                        if x <= lo || x >= hi {
                            continue;
                        }
                        let v = g(x)?;
                        if sgn(v) == target {
                            return Ok((x, v));
                        }
                    }
                    Err(Error::Domain(format!(
                        "no valid one-sided sample next to the asymptote at theta = {t}"
                    )))
                };
                let (x_b, v_b) = pick(below, -1.0)?;
                let (x_a, v_a) = pick(-below, 1.0)?;
                cells.push(Cell {
                    lo,
                    hi: x_b,
                    g_lo,
                    g_hi: v_b,
                    kind: CellKind::AsymptoteBelow,
                });
                cells.push(Cell {
                    lo: x_a,
                    hi,
                    g_lo: v_a,
                    g_hi,
                    kind: CellKind::AsymptoteAbove,
                });
            }
            _ => cells.push(Cell {
                lo,
                hi,
                g_lo,
                g_hi,
                kind,
            }),
        }
    }

    let mut roots = Vec::with_capacity(expected);
    let mut logs = Vec::with_capacity(cells.len());
    for cell in &cells {
        let root = if sgn(cell.g_lo) * sgn(cell.g_hi) < 0 {
            let r = bisect(&g, cell.lo, cell.hi, sgn(cell.g_lo))?;
            roots.push(r);
            Some(r)
        } else {
            None
        };
        logs.push(CellLog {
            lo: cell.lo,
            hi: cell.hi,
            g_lo: cell.g_lo,
            g_hi: cell.g_hi,
            kind: cell.kind,
            root,
        });
    }
    roots.sort_by(f64::total_cmp);

    if roots.len() != expected {
        return Err(Error::CountDeficit {
            m,
            found: roots.len(),
            expected,
        });
    }
    Ok(GmZeroSet {
        m,
        a_requested: a,
        a_used,
        perturbed,
        roots,
        cells: logs,
    })
}

/// Number of zeros of the `c = 0` counting function on `(pi/3, pi/2)`,
/// split by `m mod 3` and parity. Each such zero is one positive real zero
/// of `H_m`; the full real count is twice this, plus one for odd `m` (the
/// zero at the origin).
pub fn czero_case_count(m: u32) -> usize {
    let m = i64::from(m);
    let n = match (m % 3, m % 2) {
        (0, 0) => m / 6,
        (0, _) => (m - 3) / 6,
        (1, 0) => (m - 4) / 6,
        (1, _) => (m - 7) / 6,
        (_, 0) => (m - 2) / 6,
        _ => (m - 5) / 6,
    };
    n.max(0) as usize
}

/// Certified zeros of the `c = 0` counting function, ascending.
///
/// The same grid-and-bisect scheme, without any asymptote: the only
/// delicate ends are `pi/3` (where `g_m` can vanish on the boundary for
/// `m = 2 mod 3`) and `pi/2`, both handled by sampling slightly inside.
pub fn czero_g_roots(m: u32) -> Result<Vec<f64>, Error> {
    if m == 1 {
        // The table is identically zero and so is its counting function;
        // scanning numerical noise would fabricate sign changes.
        return Ok(Vec::new());
    }
    let expected = czero_case_count(m);
    let g = |theta: f64| czero::g_m(m, theta);
    let spacing = PI / (m + 1) as f64;
    let k_lo = (m + 1) / 3 + 1;
    let k_hi = m / 2;

    let mut points = Vec::new();
    points.push({
        let t = PI / 3.0 + 1e-7;
        (t, g(t)?)
    });
    for k in k_lo..=k_hi {
        let t = k as f64 * spacing;
        points.push((t, g(t)?));
    }
    points.push({
        let t = PI / 2.0 - 1e-9;
        (t, g(t)?)
    });

    let mut roots = Vec::new();
    for w in points.windows(2) {
        let (lo, g_lo) = w[0];
        let (hi, g_hi) = w[1];
        if sgn(g_lo) * sgn(g_hi) < 0 {
            roots.push(bisect(&g, lo, hi, sgn(g_lo))?);
        }
    }
    roots.sort_by(f64::total_cmp);

    if roots.len() != expected {
        return Err(Error::CountDeficit {
            m,
            found: roots.len(),
            expected,
        });
    }
    Ok(roots)
}
