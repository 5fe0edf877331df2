//! Polynomial root extraction.
//!
//! Eigenvalues of the balanced companion matrix seed a simultaneous
//! Aberth-Ehrlich refinement. The eigenvalue stage is robust across the huge
//! dynamic range of deep coefficient tables (entries up to ~1e13 next to a
//! leading 1), and the refinement stage removes the spurious imaginary dust
//! the QR iteration leaves on tightly clustered real roots.

use nalgebra::{linalg::Schur, DMatrix};
use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::arith::{Dd, Scalar};
use crate::error::Error;
use crate::poly::RealPolynomial;

fn horner(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::ZERO, |acc, &ck| acc * x + ck)
}

/// In-place Parlett-Reinsch balancing by powers of two; a similarity
/// transform, so eigenvalues are untouched while row/column norms equalize.
fn balance(m: &mut DMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let n = m.nrows();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    r += m[(i, j)].abs();
                    c += m[(j, i)].abs();
                }
            }
            if r == 0.0 || c == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut c2 = c;
            let mut r2 = r;
            while c2 < r2 / RADIX {
                c2 *= RADIX;
                r2 /= RADIX;
                f *= RADIX;
            }
            while c2 >= r2 * RADIX {
                c2 /= RADIX;
                r2 *= RADIX;
                f /= RADIX;
            }
            if c2 + r2 < 0.95 * s && f != 1.0 {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            return;
        }
    }
}

fn companion_eigenvalues(monic_tail: &[f64]) -> Vec<Complex64> {
    let d = monic_tail.len();
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 0..d {
        m[(i, d - 1)] = -monic_tail[i];
        if i + 1 < d {
            m[(i + 1, i)] = 1.0;
        }
    }
    balance(&mut m);
    // The unbounded Schur iteration can cycle on defective matrices, so cap
    // it; on failure fall back to guesses on a circle at the Cauchy bound
    // and let the refinement stage do the work.
    match Schur::try_new(m, f64::EPSILON, 100 * d.max(10)) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => {
            let r = 1.0 + monic_tail.iter().fold(0.0f64, |acc, &ck| acc.max(ck.abs()));
            (0..d)
                .map(|k| Complex64::from_polar(r, 0.4 + TAU * k as f64 / d as f64))
                .collect()
        }
    }
}

/// Simultaneous Newton-with-repulsion refinement of a full root set.
fn aberth(coeffs: &[f64], roots: &mut [Complex64]) {
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &ck)| k as f64 * ck)
        .collect();
    for _ in 0..60 {
        let mut worst = 0.0f64;
        let snapshot: Vec<Complex64> = roots.to_vec();
        for (i, xi) in roots.iter_mut().enumerate() {
            let p = horner(coeffs, *xi);
            if p == Complex64::ZERO {
                continue;
            }
            let dp = horner(&deriv, *xi);
            if dp == Complex64::ZERO {
                continue;
            }
            let newton = p / dp;
            let mut repulse = Complex64::ZERO;
            for (j, xj) in snapshot.iter().enumerate() {
                if j != i {
                    let gap = *xi - *xj;
                    if gap != Complex64::ZERO {
                        repulse += gap.inv();
                    }
                }
            }
            let denom = Complex64::ONE - newton * repulse;
            let step = if denom == Complex64::ZERO { newton } else { newton / denom };
            *xi -= step;
            worst = worst.max(step.norm() / (1.0 + xi.norm()));
        }
        if worst <= 4e-16 {
            break;
        }
    }
}

fn sorted(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    roots.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
    roots
}

/// All complex roots, ascending by real part (ties by imaginary part).
///
/// Errors on the zero polynomial; a nonzero constant has an empty root set.
pub fn polynomial_zeros(p: &RealPolynomial) -> Result<Vec<Complex64>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // Exact deflation at the origin: each leading zero coefficient is a
    // zero root, and keeping them would hand the eigensolver a singular
    // companion matrix for no benefit. Deep tables with c = 0 are full of
    // such factors.
    let k = p.coeffs().iter().take_while(|&&ck| ck == 0.0).count();
    let c = &p.coeffs()[k..];
    let mut roots = vec![Complex64::ZERO; k];
    let d = c.len() - 1;
    match d {
        0 => {}
        1 => roots.push(Complex64::new(-c[0] / c[1], 0.0)),
        2 => {
            let (a, b, cc) = (c[2], c[1], c[0]);
            let disc = b * b - 4.0 * a * cc;
            if disc >= 0.0 {
                let q = -0.5 * (b + b.signum() * disc.sqrt());
                if q != 0.0 {
                    roots.push(Complex64::new(q / a, 0.0));
                    roots.push(Complex64::new(cc / q, 0.0));
                } else {
                    roots.push(Complex64::ZERO);
                    roots.push(Complex64::new(-b / a, 0.0));
                }
            } else {
                let re = -b / (2.0 * a);
                let im = (-disc).sqrt() / (2.0 * a.abs());
                roots.push(Complex64::new(re, -im));
                roots.push(Complex64::new(re, im));
            }
        }
        _ => {
            let lead = c[d];
            let monic_tail: Vec<f64> = c[..d].iter().map(|&ck| ck / lead).collect();
            let mut seeded = companion_eigenvalues(&monic_tail);
            aberth(c, &mut seeded);
            roots.extend(seeded);
        }
    }
    Ok(sorted(roots))
}

/// Complex number with double-double components, for the refinement stage.
#[derive(Clone, Copy)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    fn zero() -> Self {
        Cdd {
            re: Dd::from_f64(0.0),
            im: Dd::from_f64(0.0),
        }
    }

    fn one() -> Self {
        Cdd {
            re: Dd::from_f64(1.0),
            im: Dd::from_f64(0.0),
        }
    }

    fn from_c64(z: Complex64) -> Self {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn add(&self, rhs: &Cdd) -> Cdd {
        Cdd {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    fn sub(&self, rhs: &Cdd) -> Cdd {
        Cdd {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    fn mul(&self, rhs: &Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    fn div(&self, rhs: &Cdd) -> Cdd {
        let den = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        Cdd {
            re: self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)).div(&den),
            im: self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)).div(&den),
        }
    }

    /// Magnitude estimate from the leading components; used for step-size
    /// and zero guards only, never for arithmetic.
    fn norm_hint(&self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}

fn horner_cdd(coeffs: &[Cdd], x: Cdd) -> Cdd {
    let mut acc = Cdd::zero();
    for ck in coeffs.iter().rev() {
        acc = acc.mul(&x).add(ck);
    }
    acc
}

/// The Aberth-Ehrlich sweep again, but in complex double-double arithmetic
/// against the exact table. The simultaneous repulsion is what matters
/// here: it hands each seed its own root even when the f64 stage scattered
/// a tight cluster by more than its spacing.
fn aberth_dd(coeffs: &[Dd], seeds: Vec<Complex64>) -> Vec<Complex64> {
    let cs: Vec<Cdd> = coeffs
        .iter()
        .map(|&c| Cdd {
            re: c,
            im: Dd::from_f64(0.0),
        })
        .collect();
    let deriv: Vec<Cdd> = cs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, ck)| Cdd {
            re: ck.re.mul(&Dd::from_f64(k as f64)),
            im: ck.im.mul(&Dd::from_f64(k as f64)),
        })
        .collect();
    let mut xs: Vec<Cdd> = seeds.into_iter().map(Cdd::from_c64).collect();
    for _ in 0..80 {
        let snapshot = xs.clone();
        let mut worst = 0.0f64;
        for (i, xi) in xs.iter_mut().enumerate() {
            let p = horner_cdd(&cs, *xi);
            if p.norm_hint() == 0.0 {
                continue;
            }
            let dp = horner_cdd(&deriv, *xi);
            if dp.norm_hint() == 0.0 {
                continue;
            }
            let newton = p.div(&dp);
            let mut repulse = Cdd::zero();
            for (j, xj) in snapshot.iter().enumerate() {
                if j != i {
                    let gap = xi.sub(xj);
                    if gap.norm_hint() != 0.0 {
                        repulse = repulse.add(&Cdd::one().div(&gap));
                    }
                }
            }
            let denom = Cdd::one().sub(&newton.mul(&repulse));
            let step = if denom.norm_hint() == 0.0 {
                newton
            } else {
                newton.div(&denom)
            };
            *xi = xi.sub(&step);
            worst = worst.max(step.norm_hint() / (1.0 + xi.norm_hint()));
        }
        if worst <= 1e-28 {
            break;
        }
    }
    xs.into_iter().map(Cdd::to_c64).collect()
}

/// Sign of the table at a real point, by double-double Horner. The noise
/// floor of this evaluation sits many orders below the shallowest sign
/// structure these tables exhibit between clustered roots.
fn dd_sign_at(coeffs: &[Dd], x: f64) -> i8 {
    let xd = Dd::from_f64(x);
    let mut acc = Dd::from_f64(0.0);
    for ck in coeffs.iter().rev() {
        acc = acc.mul(&xd).add(ck);
    }
    if acc.hi > 0.0 {
        1
    } else if acc.hi < 0.0 {
        -1
    } else {
        0
    }
}

/// Bisect a sign change down to f64 resolution.
fn dd_bisect(coeffs: &[Dd], mut lo: f64, mut hi: f64) -> f64 {
    let s_lo = dd_sign_at(coeffs, lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let s = dd_sign_at(coeffs, mid);
        if s == 0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Probe `n` uniform interior points of (lo, hi) and bisect the first two
/// sign changes. A probe landing exactly on a root counts as a change.
fn two_bracketed_roots(coeffs: &[Dd], lo: f64, hi: f64, n: usize) -> Option<(f64, f64)> {
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let at = |k: usize| lo + (hi - lo) * k as f64 / (n as f64 + 1.0);
    let mut prev_x = at(1);
    let mut prev_s = dd_sign_at(coeffs, prev_x);
    if prev_s == 0 {
        brackets.push((prev_x, prev_x));
    }
    for k in 2..=n {
        let xk = at(k);
        let s = dd_sign_at(coeffs, xk);
        if s == 0 {
            brackets.push((xk, xk));
        } else if prev_s != 0 && s != prev_s {
            brackets.push((prev_x, xk));
        }
        prev_x = xk;
        prev_s = s;
        if brackets.len() == 2 {
            break;
        }
    }
    if brackets.len() < 2 {
        return None;
    }
    let refine = |(a, b): (f64, f64)| if a == b { a } else { dd_bisect(coeffs, a, b) };
    Some((refine(brackets[0]), refine(brackets[1])))
}

/// Land stalled conjugate pairs back on the axis.
///
/// The simultaneous refinement preserves conjugate symmetry, and a
/// conjugate pair can only split onto two distinct real roots by breaking
/// that symmetry; over a near-degenerate real pair it stalls off the axis
/// instead of converging, sometimes displaced sideways into a neighbor's
/// basin. Root count conservation pins the recovery down: the two missing
/// real roots must sit strictly inside a gap between consecutive converged
/// real roots, so the gap holding the pair's center (then each adjacent
/// gap) is sign-probed at escalating resolution and the first two brackets
/// are bisected out. A pair with no sign change nearby is genuinely
/// complex and is left alone.
fn realize_real_pairs(coeffs: &[Dd], roots: &mut [Complex64]) {
    let n = roots.len();
    for i in 0..n {
        let zi = roots[i];
        let near = 1e-3 * (1.0 + zi.re.abs());
        if zi.im <= 0.0 || zi.im > near {
            continue;
        }
        let mut partner: Option<(usize, f64)> = None;
        for (j, zj) in roots.iter().enumerate() {
            if j != i && zj.im < 0.0 {
                let d = (zj - zi.conj()).norm();
                if d <= near && partner.is_none_or(|(_, best)| d < best) {
                    partner = Some((j, d));
                }
            }
        }
        let Some((j, _)) = partner else { continue };
        let x = 0.5 * (zi.re + roots[j].re);
        let y = 0.5 * (zi.im - roots[j].im);
        let mut reals: Vec<f64> = roots
            .iter()
            .enumerate()
            .filter(|&(k, zk)| k != i && k != j && zk.im.abs() <= 1e-12 * (1.0 + zk.re.abs()))
            .map(|(_, zk)| zk.re)
            .collect();
        reals.sort_by(f64::total_cmp);
        // Gap g spans (reals[g-1], reals[g]), unbounded at the ends; a
        // missing end is synthesized a few stall-widths out.
        let pos = reals.partition_point(|&r| r < x) as isize;
        let mut landed = None;
        'gaps: for g in [pos, pos - 1, pos + 1] {
            if g < 0 || g as usize > reals.len() {
                continue;
            }
            let g = g as usize;
            let reach = |other: Option<&f64>| {
                4.0 * (y + other.map_or(0.0, |&r| (x - r).abs())).max(f64::EPSILON * (1.0 + x.abs()))
            };
            let lo = match g.checked_sub(1).and_then(|p| reals.get(p)) {
                Some(&r) => r,
                None => x - reach(reals.get(g)),
            };
            let hi = match reals.get(g) {
                Some(&r) => r,
                None => x + reach(reals.last()),
            };
            if !(lo < hi) {
                continue;
            }
            for probes in [64, 512, 4096] {
                if let Some((r1, r2)) = two_bracketed_roots(coeffs, lo, hi, probes) {
                    landed = Some((r1, r2));
                    break 'gaps;
                }
            }
        }
        if let Some((r1, r2)) = landed {
            roots[i] = Complex64::new(r1, 0.0);
            roots[j] = Complex64::new(r2, 0.0);
        }
    }
}

/// Root extraction for a double-double coefficient table.
///
/// The f64 pipeline supplies seeds; [`aberth_dd`] then refines them against
/// the exact table. The second stage matters: rounding coefficients of size
/// ~1e13 to f64 moves roots near the ray endpoint by more than their
/// spacing, scattering tight real clusters into complex pairs that no
/// per-root correction can untangle. Conjugate pairs left stranded over a
/// near-degenerate real pair are then landed by [`realize_real_pairs`],
/// and imaginary parts at the double-double noise floor are snapped to
/// the axis.
pub(crate) fn zeros_dd(coeffs: &[Dd]) -> Result<Vec<Complex64>, Error> {
    let rounded = RealPolynomial::new(coeffs.iter().map(Scalar::to_f64).collect());
    if rounded.coeffs().len() != coeffs.len() {
        // A nonzero double-double lead rounded to zero cannot happen for
        // these tables; bail out loudly rather than drop a root.
        return Err(Error::Domain(
            "double-double table has an f64-invisible lead coefficient".into(),
        ));
    }
    let seeds = polynomial_zeros(&rounded)?;
    if seeds.is_empty() {
        return Ok(seeds);
    }
    let mut roots = aberth_dd(coeffs, seeds);
    realize_real_pairs(coeffs, &mut roots);
    for r in &mut roots {
        if r.im.abs() <= 1e-12 * (1.0 + r.re.abs()) {
            r.im = 0.0;
        }
    }
    Ok(sorted(roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_zero_polynomial_and_handles_constants() {
        assert_eq!(
            polynomial_zeros(&RealPolynomial::zero()),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(
            polynomial_zeros(&RealPolynomial::new(vec![5.0])).unwrap(),
            Vec::new()
        );
    }

    #[test]
    fn low_degree_closed_forms() {
        let lin = polynomial_zeros(&RealPolynomial::new(vec![-3.0, 2.0])).unwrap();
        assert_eq!(lin, vec![Complex64::new(1.5, 0.0)]);

        let conj = polynomial_zeros(&RealPolynomial::new(vec![1.0, 0.0, 1.0])).unwrap();
        assert_eq!(conj[0], Complex64::new(0.0, -1.0));
        assert_eq!(conj[1], Complex64::new(0.0, 1.0));

        // b + sign trick keeps the small root accurate.
        let q = polynomial_zeros(&RealPolynomial::new(vec![1.0, -1e8, 1.0])).unwrap();
        assert_relative_eq!(q[0].re, 1e-8, max_relative = 1e-14);
        assert_relative_eq!(q[1].re, 1e8, max_relative = 1e-14);
    }

    #[test]
    fn cubic_and_quartic_real_roots() {
        let p = RealPolynomial::new(vec![-6.0, 11.0, -6.0, 1.0]);
        let roots = polynomial_zeros(&p).unwrap();
        for (r, want) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert_relative_eq!(r.re, want, max_relative = 1e-12);
            assert!(r.im.abs() < 1e-12);
        }

        // (z^2 - 2)(z^2 - 3)
        let q = RealPolynomial::new(vec![6.0, 0.0, -5.0, 0.0, 1.0]);
        let roots = polynomial_zeros(&q).unwrap();
        let want = [-3f64.sqrt(), -2f64.sqrt(), 2f64.sqrt(), 3f64.sqrt()];
        for (r, w) in roots.iter().zip(want) {
            assert_relative_eq!(r.re, w, max_relative = 1e-13);
            assert!(r.im.abs() < 1e-13);
        }
    }

    #[test]
    fn balancing_copes_with_wild_scales() {
        // 3e12 (z - 1)(z + 2)(z - 4)
        let p = RealPolynomial::new(vec![2.4e13, -1.8e13, -9e12, 3e12]);
        let roots = polynomial_zeros(&p).unwrap();
        for (r, want) in roots.iter().zip([-2.0, 1.0, 4.0]) {
            assert_relative_eq!(r.re, want, max_relative = 1e-11);
            assert!(r.im.abs() < 1e-11);
        }
    }

    #[test]
    fn ordering_is_total_and_stable() {
        let p = RealPolynomial::new(vec![4.0, 0.0, 5.0, 0.0, 1.0]);
        let roots = polynomial_zeros(&p).unwrap();
        // +-i and +-2i: ascending (re, im).
        assert_eq!(roots[0], Complex64::new(0.0, -2.0));
        assert_eq!(roots[1], Complex64::new(0.0, -1.0));
        assert_eq!(roots[2], Complex64::new(0.0, 1.0));
        assert_eq!(roots[3], Complex64::new(0.0, 2.0));
    }

    #[test]
    fn dd_path_agrees_on_exactly_representable_tables() {
        // All coefficients integers: the polish must be a no-op beyond the
        // f64 result. (z - 1)(z - 2)(z + 5)(z - 7) expanded.
        let f = vec![-70.0, 101.0, -27.0, -5.0, 1.0];
        let dd: Vec<Dd> = f.iter().map(|&x| Dd::from_f64(x)).collect();
        let plain = polynomial_zeros(&RealPolynomial::new(f)).unwrap();
        let refined = zeros_dd(&dd).unwrap();
        assert_eq!(plain.len(), refined.len());
        for (p, r) in plain.iter().zip(&refined) {
            assert_relative_eq!(p.re, r.re, max_relative = 1e-13);
            assert!(r.im.abs() < 1e-13, "refined {refined:?} plain {plain:?}");
        }
        for (r, want) in refined.iter().zip([-5.0, 1.0, 2.0, 7.0]) {
            assert_relative_eq!(r.re, want, max_relative = 1e-12);
        }
    }
}
