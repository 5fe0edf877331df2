//! Coefficient-table generation and the partial-fraction closed form.

use num_complex::Complex64;

use crate::arith::{Big, Dd, Scalar};
use crate::cubic::cubic_roots;
use crate::error::Error;
use crate::params::{Regime, SequenceParams};
use crate::poly::RealPolynomial;

/// Effective recurrence `H_m = -(g1 H_{m-1} + g2 H_{m-2} + z H_{m-3})`
/// together with the first three polynomials, per regime.
///
/// * normalized: `g1 = 1`, `g2 = a`, seeds `1, -1, 1 - a`
/// * raw: `g1 = c`, `g2 = b`, seeds `1, -c, c^2 - b`
/// * `c = 0`, `b > 0` (rescaled to `b = 1`): `g1 = 0`, `g2 = 1`, seeds `1, 0, -1`
/// * `c = 0`, `b <= 0`: `g1 = 0`, `g2 = b`, seeds `1, 0, -b`
fn effective(params: &SequenceParams) -> Result<(f64, f64), Error> {
    match params.regime {
        Regime::Normalized => Ok((1.0, params.a()?)),
        Regime::RawBC => Ok((params.c, params.b)),
        Regime::CZero => {
            if params.c != 0.0 {
                return Err(Error::Domain(format!(
                    "c-zero regime with c = {}",
                    params.c
                )));
            }
            Ok((0.0, if params.b > 0.0 { 1.0 } else { params.b }))
        }
    }
}

fn step<S: Scalar>(g1: &S, g2: &S, h1: &[S], h2: &[S], h3: &[S], zero: &S) -> Vec<S> {
    let len = h1.len().max(h2.len()).max(h3.len() + 1);
    let mut out = vec![zero.clone(); len];
    for (k, v) in h1.iter().enumerate() {
        out[k] = out[k].add(&g1.mul(v));
    }
    for (k, v) in h2.iter().enumerate() {
        out[k] = out[k].add(&g2.mul(v));
    }
    for (k, v) in h3.iter().enumerate() {
        out[k + 1] = out[k + 1].add(v);
    }
    for v in &mut out {
        *v = v.neg();
    }
    while out.last().map(Scalar::is_exact_zero) == Some(true) {
        out.pop();
    }
    out
}

/// All tables `H_0 ..= H_mmax` in the effective form, over any scalar.
pub(crate) fn generate_tables<S: Scalar>(
    params: &SequenceParams,
    mmax: u32,
    lift: &dyn Fn(f64) -> S,
) -> Result<Vec<Vec<S>>, Error> {
    let (g1f, g2f) = effective(params)?;
    let g1 = lift(g1f);
    let g2 = lift(g2f);
    let zero = lift(0.0);
    let one = lift(1.0);

    // Seeds in scalar arithmetic so higher precisions do not inherit f64
    // rounding of c^2 - b (or 1 - a).
    let h0 = vec![one];
    let h1 = vec![g1.neg()];
    let h2 = vec![g1.mul(&g1).sub(&g2)];
    let trim = |mut v: Vec<S>| {
        while v.last().map(Scalar::is_exact_zero) == Some(true) {
            v.pop();
        }
        v
    };

    let mut tables: Vec<Vec<S>> = vec![trim(h0), trim(h1), trim(h2)];
    for m in 3..=mmax as usize {
        let next = step(
            &g1,
            &g2,
            &tables[m - 1],
            &tables[m - 2],
            &tables[m - 3],
            &zero,
        );
        tables.push(next);
    }
    tables.truncate(mmax as usize + 1);
    Ok(tables)
}

pub(crate) fn tables_dd(params: &SequenceParams, mmax: u32) -> Result<Vec<Vec<Dd>>, Error> {
    generate_tables(params, mmax, &Dd::from_f64)
}

/// Coefficient tables `H_0 ..= H_mmax` for one parameter pair.
#[derive(Debug, Clone)]
pub struct SequenceWindow {
    pub params: SequenceParams,
    /// `polys[m]` is `H_m` of the effective (normalized or rescaled) family.
    pub polys: Vec<RealPolynomial>,
    /// Multiply zeros of `polys[m]` by this to get zeros of the raw family.
    pub zero_scale: f64,
}

impl SequenceWindow {
    pub fn mmax(&self) -> u32 {
        self.polys.len() as u32 - 1
    }
}

/// Plain double-precision generation.
pub fn generate_sequence(params: &SequenceParams, mmax: u32) -> Result<SequenceWindow, Error> {
    let tables = generate_tables(params, mmax, &|x| x)?;
    Ok(SequenceWindow {
        params: *params,
        polys: tables.into_iter().map(RealPolynomial::new).collect(),
        zero_scale: params.zero_scale(),
    })
}

/// Generation at a requested significand width, rounded to `f64` at the end.
/// Up to 53 bits this is plain `f64`, up to 106 double-double, beyond that
/// arbitrary precision.
pub fn generate_sequence_bits(
    params: &SequenceParams,
    mmax: u32,
    bits: u32,
) -> Result<SequenceWindow, Error> {
    let tables: Vec<Vec<f64>> = if bits <= 53 {
        generate_tables(params, mmax, &|x| x)?
    } else if bits <= 106 {
        tables_dd(params, mmax)?
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.to_f64()).collect())
            .collect()
    } else {
        let b = bits as usize;
        generate_tables(params, mmax, &move |x| Big::from_f64(x, b))?
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.to_f64()).collect())
            .collect()
    };
    Ok(SequenceWindow {
        params: *params,
        polys: tables.into_iter().map(RealPolynomial::new).collect(),
        zero_scale: params.zero_scale(),
    })
}

/// Structural degree bound of the effective `H_m`; `None` marks tables that
/// are identically zero. In the hyperbolic range the bound is attained.
pub fn degree_bound(params: &SequenceParams, m: u32) -> Option<usize> {
    let m = m as usize;
    match params.regime {
        Regime::Normalized | Regime::RawBC => Some(m / 3),
        Regime::CZero => {
            if params.b == 0.0 {
                return (m % 3 == 0).then_some(m / 3);
            }
            match m % 3 {
                0 => Some(m / 3),
                1 => m.checked_sub(4).map(|d| d / 3),
                _ => Some((m - 2) / 3),
            }
        }
    }
}

/// `H_m(z)` straight from the generating function: with `t_0, t_1, t_2` the
/// roots of `1 + g1 t + g2 t^2 + z t^3`,
///
/// ```text
/// H_m(z) = -(1/z) * sum_k 1 / ( prod_{j != k} (t_k - t_j) * t_k^{m+1} ).
/// ```
///
/// Independent of the recurrence; used to cross-check generated tables.
/// Undefined at `z = 0` and wherever the cubic has a repeated root.
pub fn closed_form_eval(params: &SequenceParams, m: u32, z: f64) -> Result<f64, Error> {
    if z == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let (g1, g2) = effective(params)?;
    let roots = cubic_roots([
        Complex64::ONE,
        Complex64::new(g1, 0.0),
        Complex64::new(g2, 0.0),
        Complex64::new(z, 0.0),
    ])?;

    let scale = 1.0 + roots.iter().map(|t| t.norm()).fold(0.0, f64::max);
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (roots[i] - roots[j]).norm() <= 1e-8 * scale {
                return Err(Error::DegenerateRoots { z });
            }
        }
    }

    let mut sum = Complex64::ZERO;
    for k in 0..3 {
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let denom = (roots[k] - roots[i]) * (roots[k] - roots[j]) * roots[k].powu(m + 1);
        sum += denom.inv();
    }
    Ok((-sum / z).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn normalized(a: f64) -> SequenceParams {
        SequenceParams::normalized(a).unwrap()
    }

    #[test]
    fn seeds_and_small_tables_normalized() {
        let w = generate_sequence(&normalized(0.2), 4).unwrap();
        assert_eq!(w.polys[0].coeffs(), &[1.0]);
        assert_eq!(w.polys[1].coeffs(), &[-1.0]);
        assert_eq!(w.polys[2].coeffs(), &[0.8]);
        assert_eq!(w.polys[3].coeffs(), &[-0.6000000000000001, -1.0]);
        assert_eq!(w.polys[4].coeffs(), &[0.44000000000000006, 2.0]);
    }

    #[test]
    fn integer_tables_at_a_zero() {
        let w = generate_sequence(&normalized(0.0), 12).unwrap();
        assert_eq!(w.polys[9].coeffs(), &[-1.0, -7.0, -10.0, -1.0]);
        assert_eq!(w.polys[12].coeffs(), &[1.0, 10.0, 28.0, 20.0, 1.0]);
    }

    #[test]
    fn table_deep_negative_a() {
        let w = generate_sequence(&normalized(-0.5), 9).unwrap();
        assert_eq!(w.polys[9].coeffs(), &[-13.0625, -30.0, -16.0, -1.0]);
    }

    #[test]
    fn raw_tables() {
        let p = SequenceParams::from_bc(1.0, 2.0).unwrap();
        let w = generate_sequence(&p, 6).unwrap();
        assert_eq!(w.polys[3].coeffs(), &[-4.0, -1.0]);
        assert_eq!(w.polys[4].coeffs(), &[5.0, 4.0]);
        assert_eq!(w.polys[5].coeffs(), &[-6.0, -10.0]);
        assert_eq!(w.polys[6].coeffs(), &[7.0, 20.0, 1.0]);
        assert_eq!(w.zero_scale, 1.0);
    }

    #[test]
    fn czero_rescaled_tables() {
        let p = SequenceParams::from_bc(1.0, 0.0).unwrap();
        let w = generate_sequence(&p, 12).unwrap();
        assert!(w.polys[1].is_zero());
        assert_eq!(w.polys[2].coeffs(), &[-1.0]);
        let expected: [&[f64]; 6] = [
            &[0.0, -3.0],
            &[1.0, 0.0, -3.0],
            &[0.0, 4.0, 0.0, -1.0],
            &[-1.0, 0.0, 6.0],
            &[0.0, -5.0, 0.0, 4.0],
            &[1.0, 0.0, -10.0, 0.0, 1.0],
        ];
        for (m, want) in (7..=12).zip(expected) {
            assert_eq!(w.polys[m].coeffs(), want, "H_{m}");
        }
    }

    #[test]
    fn czero_negative_and_zero_b() {
        let neg = generate_sequence(&SequenceParams::from_bc(-1.0, 0.0).unwrap(), 6).unwrap();
        assert_eq!(neg.polys[6].coeffs(), &[1.0, 0.0, 1.0]);

        let null = generate_sequence(&SequenceParams::from_bc(0.0, 0.0).unwrap(), 9).unwrap();
        for m in 0..=9u32 {
            if m % 3 == 0 {
                let k = (m / 3) as usize;
                let mut want = vec![0.0; k + 1];
                want[k] = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(null.polys[m as usize].coeffs(), &want[..], "H_{m}");
            } else {
                assert!(null.polys[m as usize].is_zero(), "H_{m}");
            }
        }
    }

    #[test]
    fn degree_bounds_match_tables() {
        for &a in &[-1.0, -0.3, 0.0, 0.2, 1.0 / 3.0] {
            let w = generate_sequence(&normalized(a), 30).unwrap();
            for m in 0..=30u32 {
                assert_eq!(
                    w.polys[m as usize].degree(),
                    degree_bound(&w.params, m),
                    "a = {a}, m = {m}"
                );
            }
        }
        for &b in &[1.0, -1.0, 0.0] {
            let p = SequenceParams::from_bc(b, 0.0).unwrap();
            let w = generate_sequence(&p, 30).unwrap();
            for m in 0..=30u32 {
                assert_eq!(
                    w.polys[m as usize].degree(),
                    degree_bound(&p, m),
                    "b = {b}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn double_double_agrees_and_differs_where_it_should() {
        let a = -1.0 + 1e-9;
        let p = normalized(a);
        let plain = generate_sequence(&p, 60).unwrap();
        let dd = tables_dd(&p, 60).unwrap();

        let mut any_difference = false;
        for m in 0..=60usize {
            let f = plain.polys[m].coeffs();
            let d = &dd[m];
            assert_eq!(f.len(), d.len(), "m = {m}");
            for (pf, pd) in f.iter().zip(d) {
                let rounded = pd.to_f64();
                assert_relative_eq!(*pf, rounded, max_relative = 1e-12);
                if *pf != rounded {
                    any_difference = true;
                }
            }
        }
        // Plain f64 accumulation drifts by a few ulps at this depth; the
        // whole point of the double-double path is that this is visible.
        assert!(any_difference);
    }

    #[test]
    fn bit_selector_routes_precisions() {
        let p = normalized(0.2);
        let f = generate_sequence_bits(&p, 20, 53).unwrap();
        let d = generate_sequence_bits(&p, 20, 106).unwrap();
        let b = generate_sequence_bits(&p, 20, 200).unwrap();
        assert_eq!(f.polys, generate_sequence(&p, 20).unwrap().polys);
        for m in 0..=20usize {
            for (x, y) in d.polys[m].coeffs().iter().zip(b.polys[m].coeffs()) {
                assert_relative_eq!(*x, *y, max_relative = 4e-16);
            }
        }
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for &(a, m, z) in &[(0.2, 3u32, -1.0), (0.2, 7, 0.3), (-0.5, 11, -2.2)] {
            let p = normalized(a);
            let w = generate_sequence(&p, m).unwrap();
            let direct = w.polys[m as usize].eval(z);
            let cf = closed_form_eval(&p, m, z).unwrap();
            assert_relative_eq!(direct, cf, max_relative = 1e-9);
        }
        let p = normalized(0.2);
        assert_relative_eq!(
            closed_form_eval(&p, 3, -1.0).unwrap(),
            0.4,
            max_relative = 1e-12
        );
    }

    #[test]
    fn closed_form_rejects_bad_arguments() {
        let p = normalized(0.0);
        assert_eq!(closed_form_eval(&p, 5, 0.0), Err(Error::ZeroArgument));
        match closed_form_eval(&p, 5, -4.0 / 27.0) {
            Err(Error::DegenerateRoots { .. }) => {}
            other => panic!("expected degenerate-root error, got {other:?}"),
        }
    }
}
