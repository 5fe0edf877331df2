//! Cubic equations with complex coefficients.
//!
//! Closed-form (Cardano) solve plus a short Newton polish. This solver is
//! intentionally independent of the eigenvalue-based machinery in
//! [`crate::roots`]; it cross-checks constructions that were produced the
//! other way around.

use num_complex::Complex64;

use crate::error::Error;

const OMEGA: Complex64 = Complex64::new(-0.5, 0.866_025_403_784_438_6);

fn horner(c: &[Complex64; 4], t: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::ZERO;
    let mut dp = Complex64::ZERO;
    for &ck in c.iter().rev() {
        dp = dp * t + p;
        p = p * t + ck;
    }
    (p, dp)
}

/// All three roots of `c[0] + c[1] t + c[2] t^2 + c[3] t^3`, unordered.
///
/// Fails when the leading coefficient is zero.
pub fn cubic_roots(c: [Complex64; 4]) -> Result<[Complex64; 3], Error> {
    if c[3] == Complex64::ZERO {
        return Err(Error::Domain("cubic solve needs a nonzero t^3 coefficient".into()));
    }
    let p2 = c[2] / c[3];
    let p1 = c[1] / c[3];
    let p0 = c[0] / c[3];

    // Depress with t = s - p2/3.
    let shift = p2 / 3.0;
    let pp = p1 - p2 * p2 / 3.0;
    let qq = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;

    let disc = (qq / 2.0) * (qq / 2.0) + (pp / 3.0) * (pp / 3.0) * (pp / 3.0);
    let sq = disc.sqrt();
    // Of -q/2 +- sqrt(disc), cube-root the branch with the larger modulus so
    // u never cancels to noise while p is still finite.
    let cand_a = -qq / 2.0 + sq;
    let cand_b = -qq / 2.0 - sq;
    let u3 = if cand_a.norm() >= cand_b.norm() { cand_a } else { cand_b };

    let mut roots = if u3.norm() == 0.0 {
        // p and q both vanish: triple root at the shift point.
        [Complex64::ZERO; 3]
    } else {
        let u = u3.cbrt();
        let mut out = [Complex64::ZERO; 3];
        let mut w = Complex64::ONE;
        for slot in &mut out {
            let uw = u * w;
            *slot = uw - pp / (3.0 * uw);
            w *= OMEGA;
        }
        out
    };

    for r in &mut roots {
        let mut t = *r - shift;
        for _ in 0..8 {
            let (val, der) = horner(&c, t);
            if der == Complex64::ZERO {
                break;
            }
            let step = val / der;
            t -= step;
            if step.norm() <= 1e-16 * (1.0 + t.norm()) {
                break;
            }
        }
        *r = t;
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_root_set(c: [Complex64; 4], expected: &[Complex64]) {
        let mut got = cubic_roots(c).unwrap().to_vec();
        for e in expected {
            let (idx, _) = got
                .iter()
                .enumerate()
                .min_by(|x, y| (x.1 - e).norm().partial_cmp(&(y.1 - e).norm()).unwrap())
                .unwrap();
            assert!((got[idx] - e).norm() < 1e-12, "missing root {e}");
            got.remove(idx);
        }
    }

    #[test]
    fn real_distinct_roots() {
        // (t - 1)(t - 2)(t + 3) = t^3 - 7t + 6
        let c = [
            Complex64::new(6.0, 0.0),
            Complex64::new(-7.0, 0.0),
            Complex64::ZERO,
            Complex64::ONE,
        ];
        assert_root_set(
            c,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(-3.0, 0.0),
            ],
        );
    }

    #[test]
    fn complex_coefficients() {
        // (t - i)(t + 2i)(t - 1) = t^3 + (i - 1)t^2 + (2 - i)t - 2
        let i = Complex64::I;
        let c = [
            Complex64::new(-2.0, 0.0),
            Complex64::new(2.0, -1.0),
            Complex64::new(-1.0, 1.0),
            Complex64::ONE,
        ];
        assert_root_set(c, &[i, -2.0 * i, Complex64::ONE]);
    }

    #[test]
    fn triple_root() {
        // (t + 2)^3
        let c = [
            Complex64::new(8.0, 0.0),
            Complex64::new(12.0, 0.0),
            Complex64::new(6.0, 0.0),
            Complex64::ONE,
        ];
        let roots = cubic_roots(c).unwrap();
        for r in roots {
            assert!((r - Complex64::new(-2.0, 0.0)).norm() < 1e-5);
        }
    }

    #[test]
    fn rejects_degenerate_leading_coefficient() {
        let c = [Complex64::ONE, Complex64::ONE, Complex64::ONE, Complex64::ZERO];
        assert!(cubic_roots(c).is_err());
    }
}
