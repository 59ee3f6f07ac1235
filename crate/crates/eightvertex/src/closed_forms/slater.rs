//! Slater determinant of the odd theta basis of degree 6m.

use super::elliptic::Elliptic;
use crate::field::{Field, Jet, Q};
use crate::linalg::{det, Rows};
use crate::theta::{c, re, theta, EllipticContext, C};
use crate::Result;

/// 1, 2, 4, 5, …, 3m−2, 3m−1
pub fn k_sequence(m: usize) -> Vec<i64> {
    (1..3 * m as i64).filter(|k| k % 3 != 0).collect()
}

/// s_k(x) = e^{2ikx} θ₃(kπτ+6mx, p^{6m}) − e^{−2ikx} θ₃(kπτ−6mx, p^{6m})
pub fn basis(k: i64, x: C, m: usize, ctx: &EllipticContext) -> Result<C> {
    let nome = ctx.p.powu(6 * m as u32);
    let kt = ctx.pi_tau() * k as f64;
    let six = 6.0 * m as f64;
    let i2kx = c(0.0, 2.0 * k as f64) * x;
    Ok(i2kx.exp() * theta(3, kt + x * six, nome)? - (-i2kx).exp() * theta(3, kt - x * six, nome)?)
}

pub fn slater(xs: &[C], ctx: &EllipticContext) -> Result<C> {
    let m = xs.len() / 2;
    let ks = k_sequence(m);
    let mut rows: Rows<C> = Vec::with_capacity(xs.len());
    for &x in xs {
        rows.push(ks.iter().map(|&k| basis(k, x, m, ctx)).collect::<Result<_>>()?);
    }
    Ok(det(&rows))
}

/// Π_{i<j} θ(x_i−x_j) Π_{i≤j} θ(x_i+x_j) ℋ_2m
pub fn s_from_h(xs: &[C], ctx: &EllipticContext) -> Result<C> {
    let e = Elliptic::new(ctx);
    let mut pre = re(1.0);
    for i in 0..xs.len() {
        for j in i..xs.len() {
            if i < j {
                pre *= ctx.th(1, xs[i] - xs[j]);
            }
            pre *= ctx.th(1, xs[i] + xs[j]);
        }
    }
    Ok(pre * e.h_det(xs)?)
}

/// Relative spread of S_2m / slater over the draws.
pub fn ratio_spread(draws: &[Vec<C>], ctx: &EllipticContext) -> Result<f64> {
    let ratios: Vec<C> = draws
        .iter()
        .map(|xs| Ok(s_from_h(xs, ctx)? / slater(xs, ctx)?))
        .collect::<Result<_>>()?;
    let r0 = ratios[0];
    Ok(ratios.iter().map(|r| (r - r0).norm() / r0.norm()).fold(0.0, f64::max))
}

/// (Σ∂²_{x_i} + 24m p∂_p) S / S by Richardson-refined finite differences, for a real nome.
pub fn eigen_constant<S>(xs: &[C], p: f64, f: S) -> Result<C>
where
    S: Fn(&[C], &EllipticContext) -> Result<C>,
{
    let m = xs.len() / 2;
    let ctx = EllipticContext::real(p)?;
    let s0 = f(xs, &ctx)?;
    let h = 2e-3;
    let second = |h: f64| -> Result<C> {
        let mut acc = re(0.0);
        for i in 0..xs.len() {
            let mut a = xs.to_vec();
            let mut b = xs.to_vec();
            a[i] += h;
            b[i] -= h;
            acc += (f(&a, &ctx)? + f(&b, &ctx)? - s0 * 2.0) / (h * h);
        }
        Ok(acc)
    };
    let lap = (second(h)? * 4.0 - second(2.0 * h)?) / 3.0;
    let hp = 1e-4 * p;
    let at = |dp: f64| f(xs, &EllipticContext::real(p + dp)?);
    let d1 = (at(hp)? - at(-hp)?) / (2.0 * hp);
    let d2 = (at(2.0 * hp)? - at(-2.0 * hp)?) / (4.0 * hp);
    let dp = (d1 * 4.0 - d2) / 3.0;
    Ok((lap + dp * (24.0 * m as f64 * p)) / s0)
}

/// Trigonometric Slater determinant det(z_i^{k_j} − z_i^{−k_j}).
pub fn trig_slater<F: Field>(zs: &[F]) -> F {
    let ks = k_sequence(zs.len() / 2);
    let rows: Rows<F> = zs.iter().map(|z| ks.iter().map(|&k| z.powz(k) - z.powz(-k)).collect()).collect();
    det(&rows)
}

/// Σ_i (z_i∂_{z_i})² S / S evaluated exactly with second-order jets.
pub fn trig_euler_eigenvalue(zs: &[Q]) -> Result<Q> {
    let s0 = trig_slater(zs);
    let mut acc = Q::zero();
    for i in 0..zs.len() {
        let v: Vec<Jet<Q>> = zs
            .iter()
            .enumerate()
            .map(|(j, z)| if j == i { Jet::variable(z.clone(), 2) } else { Jet::constant(z.clone()) })
            .collect();
        let s = trig_slater(&v);
        let z = zs[i].clone();
        acc = acc + z.clone() * s.derivative(1) + z.clone() * z * s.derivative(2);
    }
    if s0.is_zero() {
        return Err(crate::Error::DivisionByZero("trigonometric Slater determinant"));
    }
    Ok(acc / s0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::theta::ETA;

    #[test]
    fn three_term_relation() {
        let ctx = EllipticContext::real(0.15).unwrap();
        let x = c(0.37, 0.11);
        for m in 1..=2 {
            for k in 0..3 * m as i64 {
                let s = basis(k, x, m, &ctx).unwrap()
                    + basis(k, x + ETA, m, &ctx).unwrap()
                    + basis(k, x + 2.0 * ETA, m, &ctx).unwrap();
                let scale = basis(k, x, m, &ctx).unwrap().norm();
                assert_eq!(s.norm() < 1e-10 * scale, k % 3 != 0, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn ratio_is_constant() {
        let ctx = EllipticContext::real(0.15).unwrap();
        let draws = vec![
            vec![c(0.3, 0.1), c(-0.5, 0.2), c(0.8, -0.1), c(0.1, 0.3)],
            vec![c(-0.2, 0.05), c(0.6, 0.2), c(1.1, 0.1), c(-0.9, -0.2)],
            vec![c(0.45, -0.15), c(-0.25, 0.1), c(0.7, 0.25), c(1.3, 0.05)],
        ];
        assert!(ratio_spread(&draws, &ctx).unwrap() < 1e-8);
    }

    #[test]
    fn trig_eigenvalue() {
        for m in 1..=3usize {
            let zs: Vec<Q> = (0..2 * m as i64).map(|k| q(k + 2, 2 * k + 3)).collect();
            let want = (m * (6 * m * m - 1)) as i64;
            assert_eq!(trig_euler_eigenvalue(&zs).unwrap(), q(want, 1));
        }
    }
}
