//! Brute-force homogeneous limits: evaluate the exact rational determinants along a
//! ray w_i = c_i t, extrapolate to t = 0, then interpolate in ζ.

use super::families::Spec;
use super::{interpolate, extrapolate, Poly, PolyQ};
use crate::closed_forms::rational::Rational;
use crate::field::{Field, Q};
use crate::modular::{crt, rational_reconstruct, residue, Zp, PRIMES};
use crate::{Error, Result};
use rayon::prelude::*;

/// Extra ζ samples used to confirm the interpolant.
pub const VERIFY_POINTS: usize = 3;

/// Value at t = 0 of a function that is a polynomial of degree ≤ `degree` in t along
/// the ray w_i = (i+1) t, i < free. Sample points hitting a pole are skipped.
pub fn ray_limit<F: Field, G>(f: G, free: usize, degree: usize) -> Result<F>
where
    G: Fn(&[F]) -> Result<F>,
{
    if free == 0 {
        return f(&[]);
    }
    let mut ts = Vec::with_capacity(degree + 1);
    let mut ys = Vec::with_capacity(degree + 1);
    let mut k = 0i64;
    while ts.len() <= degree {
        k += 1;
        if k > 8 * (degree as i64 + 8) {
            return Err(Error::Interpolation("too many ray samples hit poles".into()));
        }
        let t = F::from_ratio(k, 3);
        let ws: Vec<F> = (0..free).map(|i| t.clone() * F::from_i64(i as i64 + 1)).collect();
        match f(&ws) {
            Ok(v) => {
                ts.push(t);
                ys.push(v);
            }
            Err(Error::DivisionByZero(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(extrapolate(&ts, &ys, &F::zero()))
}

/// Interpolate a polynomial in ζ of degree ≤ `degree` from values at ζ = k/7, checking
/// VERIFY_POINTS further samples. ζ = ±1 and samples returning a pole are skipped.
pub fn zeta_polynomial<F: Field + Send + Sync, G>(f: G, degree: usize) -> Result<Poly<F>>
where
    G: Fn(&F) -> Result<F> + Sync,
{
    let need = degree + 1 + VERIFY_POINTS;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut next = 1i64;
    while xs.len() < need {
        if next > 2 * need as i64 + 16 {
            break;
        }
        let ks: Vec<i64> = (next..).filter(|k| k % 7 != 0).take(need - xs.len()).collect();
        next = ks.last().map_or(next, |k| k + 1);
        let batch: Vec<F> = ks.into_iter().map(|k| F::from_ratio(k, 7)).collect();
        let vals: Vec<Result<F>> = batch.par_iter().map(&f).collect();
        for (z, v) in batch.into_iter().zip(vals) {
            match v {
                Ok(v) => {
                    xs.push(z);
                    ys.push(v);
                }
                Err(Error::DivisionByZero(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    if xs.len() < need {
        return Err(Error::Interpolation("not enough regular zeta samples".into()));
    }
    let p = interpolate(&xs[..degree + 1], &ys[..degree + 1]);
    for (x, y) in xs[degree + 1..].iter().zip(&ys[degree + 1..]) {
        if &p.eval(x) != y {
            return Err(Error::Interpolation(format!("degree bound {degree} violated")));
        }
    }
    Ok(p)
}

/// H_2m(S, 0, …, 0) at one ζ.
pub fn oracle_h_at<F: Field>(zeta: &F, m: usize, spec: &Spec) -> Result<F> {
    let r = Rational::new(zeta.clone());
    let free = 2 * m - spec.len();
    let js: Vec<F> = spec.0.iter().map(|&c| r.coupling(c)).collect();
    ray_limit(
        |ws| {
            let mut v = ws.to_vec();
            v.extend(js.iter().cloned());
            r.h_det(&v)
        },
        free,
        free * m.saturating_sub(1),
    )
}

/// H_2m(S, 0, …, 0) as an exact polynomial in ζ (unscaled), evaluated over the
/// rationals throughout.
pub fn oracle_h_exact(m: usize, spec: &Spec) -> Result<PolyQ> {
    if 2 * m < spec.len() {
        return Err(Error::SizeOverflow(m));
    }
    if m == 0 {
        return Ok(PolyQ::from_ints(&[1]));
    }
    zeta_polynomial(|z: &Q| oracle_h_at(z, m, spec), m * (m - 1))
}

fn residues<const P: u64>(m: usize, spec: &Spec) -> Result<Vec<u64>> {
    let p: Poly<Zp<P>> = zeta_polynomial(|z: &Zp<P>| oracle_h_at(z, m, spec), m * (m - 1))?;
    Ok((0..=m * (m - 1)).map(|k| p.coeff(k).0).collect())
}

fn residues_for(i: usize, m: usize, spec: &Spec) -> Result<Vec<u64>> {
    match i {
        0 => residues::<{ PRIMES[0] }>(m, spec),
        1 => residues::<{ PRIMES[1] }>(m, spec),
        2 => residues::<{ PRIMES[2] }>(m, spec),
        3 => residues::<{ PRIMES[3] }>(m, spec),
        4 => residues::<{ PRIMES[4] }>(m, spec),
        5 => residues::<{ PRIMES[5] }>(m, spec),
        _ => unreachable!("only {} primes", PRIMES.len()),
    }
}

/// Primes combined before the first reconstruction attempt.
const FIRST_PRIMES: usize = 3;

/// Same polynomial as [`oracle_h_exact`], computed modulo several primes. Coefficients are
/// recovered by rational reconstruction and accepted once one more prime agrees.
pub fn oracle_h(m: usize, spec: &Spec) -> Result<PolyQ> {
    if 2 * m < spec.len() {
        return Err(Error::SizeOverflow(m));
    }
    if m <= 1 {
        return oracle_h_exact(m, spec);
    }
    let mut res: Vec<Vec<u64>> = Vec::new();
    for i in 0..PRIMES.len() {
        res.push(residues_for(i, m, spec)?);
        if res.len() < FIRST_PRIMES {
            continue;
        }
        let (head, last) = res.split_at(res.len() - 1);
        let rebuilt: Option<Vec<Q>> = (0..=m * (m - 1))
            .map(|k| {
                let pairs: Vec<(u64, u64)> = head.iter().zip(PRIMES).map(|(r, p)| (r[k], p)).collect();
                let (x, md) = crt(&pairs);
                rational_reconstruct(&x, &md)
            })
            .collect();
        let p = PRIMES[res.len() - 1];
        if let Some(c) = rebuilt {
            let agrees = c.iter().zip(&last[0]).all(|(x, r)| residue(x, p) == Some(*r));
            if agrees {
                return Ok(PolyQ::new(c));
            }
        }
    }
    Err(Error::Interpolation("modular reconstruction did not stabilize".into()))
}

/// (1−ζ²)^n · 2^{n+1} A_n B_n at the homogeneous point, through the Pfaffians directly.
pub fn oracle_x(n: usize) -> Result<PolyQ> {
    let bound = super::analytics::x_degree_bound(n);
    zeta_polynomial(
        |z: &Q| {
            let r = Rational::new(z.clone());
            let scale = r.alpha().powi(n as u32);
            Ok(scale * ray_limit(|ws| r.x_n(ws), n, n * (2 * n - 1))?)
        },
        bound,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::rational::Coupling;
    use crate::field::q;

    #[test]
    fn modular_matches_rational() {
        for spec in [Spec::empty(), Spec(vec![Coupling::J2]), Spec(vec![Coupling::J2, Coupling::J3, Coupling::J4])] {
            for m in 2..=3 {
                assert_eq!(oracle_h(m, &spec).unwrap(), oracle_h_exact(m, &spec).unwrap(), "{spec} m={m}");
            }
        }
    }

    #[test]
    fn small_table_entries() {
        assert_eq!(oracle_h(2, &Spec::empty()).unwrap(), PolyQ::from_ints(&[3, 0, 1]));
        assert_eq!(oracle_h(2, &Spec(vec![Coupling::J3])).unwrap(), PolyQ::from_ints(&[2, 1, 1]));
        assert_eq!(oracle_h(1, &Spec(vec![Coupling::J2, Coupling::J3])).unwrap(), PolyQ::from_ints(&[1]));
        let j2 = oracle_h(3, &Spec(vec![Coupling::J2])).unwrap().scale(&q(4, 1));
        assert_eq!(j2, PolyQ::from_ints(&[143, 0, 99, 0, 13, 0, 1]));
    }

    #[test]
    fn degree_violation_is_detected() {
        let e = zeta_polynomial(|z: &Q| Ok(z.powi(5)), 3);
        assert!(matches!(e, Err(Error::Interpolation(_))));
    }
}
