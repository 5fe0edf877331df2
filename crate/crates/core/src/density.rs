//! How densely the accumulated real zeros fill a window of the limit ray.

use crate::error::Error;
use crate::recurrence::tables_dd;
use crate::roots::zeros_dd;
use crate::{params::SequenceParams, TOL_REAL};

/// Gap statistics for the union of real zeros of all tables up to a depth.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub mmax: u32,
    pub window: (f64, f64),
    /// Real zeros landing in the window, sorted ascending, one entry per
    /// table occurrence (coincident zeros of different tables repeat).
    pub zeros: Vec<f64>,
    /// Largest gap between consecutive zeros, counting the distance from
    /// each window edge to its nearest zero.
    pub max_gap: f64,
}

/// Collect the real zeros of every table with `3 <= m <= mmax` that fall
/// in `[lo, hi]` and measure the worst gap. Including the edge distances
/// keeps the statistic honest: an empty stretch at either end counts.
pub fn density_sample(
    params: &SequenceParams,
    mmax: u32,
    lo: f64,
    hi: f64,
) -> Result<DensityReport, Error> {
    if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let tables = tables_dd(params, mmax)?;
    let scale = params.zero_scale();
    let mut zeros = Vec::new();
    for table in tables.iter().skip(3) {
        if table.len() < 2 {
            continue;
        }
        for root in zeros_dd(table)? {
            let z = root.re * scale;
            let im = root.im * scale;
            if im.abs() <= TOL_REAL * (1.0 + z.abs()) && (lo..=hi).contains(&z) {
                zeros.push(z);
            }
        }
    }
    if zeros.is_empty() {
        return Err(Error::EmptyWindow { lo, hi });
    }
    zeros.sort_by(f64::total_cmp);
    let mut max_gap = (zeros[0] - lo).max(hi - zeros[zeros.len() - 1]);
    for pair in zeros.windows(2) {
        max_gap = max_gap.max(pair[1] - pair[0]);
    }
    Ok(DensityReport {
        mmax,
        window: (lo, hi),
        zeros,
        max_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaps_shrink_as_depth_grows() {
        let p = SequenceParams::normalized(0.0).unwrap();
        let lo = -2.0;
        let hi = -4.0 / 27.0;
        let r20 = density_sample(&p, 20, lo, hi).unwrap();
        let r40 = density_sample(&p, 40, lo, hi).unwrap();
        let r60 = density_sample(&p, 60, lo, hi).unwrap();
        assert_eq!(r20.zeros.len(), 50);
        assert_eq!(r40.zeros.len(), 200);
        assert_eq!(r60.zeros.len(), 450);
        assert_relative_eq!(r20.max_gap, 0.28060461825496663, max_relative = 1e-6);
        assert_relative_eq!(r40.max_gap, 0.1498877725968093, max_relative = 1e-6);
        assert_relative_eq!(r60.max_gap, 0.10226137568119431, max_relative = 1e-6);
        assert!(r40.max_gap < r20.max_gap);
        assert!(r60.max_gap < r40.max_gap);
    }

    #[test]
    fn edge_distances_count_as_gaps() {
        let p = SequenceParams::normalized(0.0).unwrap();
        // A window reaching far left of the leftmost zero at this depth
        // must report the empty stretch as its gap.
        let r = density_sample(&p, 12, -100.0, -4.0 / 27.0).unwrap();
        let leftmost = r.zeros[0];
        assert_relative_eq!(leftmost, -18.51687333823491, max_relative = 1e-9);
        assert_relative_eq!(r.max_gap, leftmost + 100.0, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_windows_are_rejected() {
        let p = SequenceParams::normalized(0.0).unwrap();
        assert!(matches!(
            density_sample(&p, 20, 1.0, 1.0),
            Err(Error::EmptyWindow { .. })
        ));
        assert!(matches!(
            density_sample(&p, 20, -1.0, -2.0),
            Err(Error::EmptyWindow { .. })
        ));
        // The ray never reaches positive values, so this window is empty.
        assert!(matches!(
            density_sample(&p, 20, 5.0, 6.0),
            Err(Error::EmptyWindow { .. })
        ));
    }

    #[test]
    fn raw_parameters_scale_the_window() {
        // b = 1, c = 2 has ratio 1/4 and scale 8: zeros live on
        // 8 * (-inf, 0]. A window around 8 * (-4/27) must be populated.
        let p = SequenceParams::from_bc(1.0, 2.0).unwrap();
        let r = density_sample(&p, 15, -3.0, 0.0).unwrap();
        assert!(!r.zeros.is_empty());
        assert!(r.zeros.iter().all(|z| (-3.0..=0.0).contains(z)));
    }
}
