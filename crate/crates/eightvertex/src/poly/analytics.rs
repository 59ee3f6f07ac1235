//! Differential and divided-difference equations for the kernel determinant,
//! checked exactly at rational points with truncated jets.

use super::{interpolate, PolyQ};
use crate::closed_forms::rational::subsets_of_parity;
use crate::field::{q, Field, Jet, Q};
use crate::linalg::{det, Rows};
use crate::{Error, Result};

/// Degree in ζ of (1−ζ²)^n 2^{n+1} A_n B_n at w = 0: Σ over the parity-n subsets S of
/// k(k−1), 2k = n + |S|.
pub fn x_degree_bound(n: usize) -> usize {
    subsets_of_parity(n % 2)
        .iter()
        .map(|s| {
            let k = (n + s.len()) / 2;
            k * k.saturating_sub(1)
        })
        .sum()
}

/// h in terms of α = 1 − ζ²: 1 + uv(α(u+v+1) − 4).
pub fn h_alpha<F: Field>(u: &F, v: &F, alpha: &F) -> F {
    F::one() + u.clone() * v.clone() * (alpha.clone() * (u.clone() + v.clone() + F::one()) - F::from_i64(4))
}

fn need_nonzero<F: Field>(x: F, what: &'static str) -> Result<F> {
    if x.is_zero() {
        Err(Error::DivisionByZero(what))
    } else {
        Ok(x)
    }
}

/// det(1/h(w_i, w_{m+j})).
pub fn kernel_det<F: Field>(ws: &[F], alpha: &F) -> Result<F> {
    let m = ws.len() / 2;
    let (a, b) = ws.split_at(m);
    let mut rows: Rows<F> = Vec::with_capacity(m);
    for x in a {
        let mut row = Vec::with_capacity(m);
        for y in b {
            row.push(F::one() / need_nonzero(h_alpha(x, y, alpha), "h(w_i, w_j)")?);
        }
        rows.push(row);
    }
    Ok(det(&rows))
}

/// S_2m = Π_{i<j}(w_i − w_j) H_2m, a polynomial in all arguments and α.
pub fn s_poly<F: Field>(ws: &[F], alpha: &F) -> Result<F> {
    let m = ws.len() / 2;
    let (a, b) = ws.split_at(m);
    let mut cross = F::one();
    for x in a {
        for y in b {
            cross = cross * h_alpha(x, y, alpha);
        }
    }
    let mut groups = F::one();
    for g in [a, b] {
        for i in 0..m {
            for j in i + 1..m {
                groups = groups * (g[i].clone() - g[j].clone());
            }
        }
    }
    let mut all = F::one();
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            all = all * (ws[i].clone() - ws[j].clone());
        }
    }
    Ok(all * cross * kernel_det(ws, alpha)? / need_nonzero(groups, "w_i - w_j")?)
}

/// Which form of the one-body shift σ(u).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftForm {
    /// 5u(α − 4 + αu)
    Corrected,
    /// 5u(α − 4 + 4αu)
    Printed,
}

fn rho(u: &Q, a: &Q) -> Q {
    (q(1, 1) + q(2, 1) * u) * (q(4, 1) - q(6, 1) * u + u * a + u * u * a)
}

fn sigma(u: &Q, a: &Q, form: ShiftForm) -> Q {
    let k = match form {
        ShiftForm::Corrected => q(1, 1),
        ShiftForm::Printed => q(4, 1),
    };
    q(5, 1) * u * (a - q(4, 1) + k * a * u)
}

/// Σ_i [ρ(w_i)∂_i + σ(w_i) + δ_i] D + 2(1−α)(8+α)∂_α D, δ_i D = (D − D|_{w_i=0})/w_i.
pub fn divided_difference_residual(ws: &[Q], alpha: &Q, form: ShiftForm) -> Result<Q> {
    let d0 = kernel_det(ws, alpha)?;
    let jets = |i: Option<usize>| -> Vec<Jet<Q>> {
        ws.iter().enumerate().map(|(j, w)| if Some(j) == i { Jet::variable(w.clone(), 1) } else { Jet::constant(w.clone()) }).collect()
    };
    let da = kernel_det(&jets(None), &Jet::variable(alpha.clone(), 1))?.derivative(1);
    let mut acc = q(2, 1) * (q(1, 1) - alpha) * (q(8, 1) + alpha) * da;
    for (i, w) in ws.iter().enumerate() {
        if Field::is_zero(w) {
            return Err(Error::DivisionByZero("divided difference at w = 0"));
        }
        let di = kernel_det(&jets(Some(i)), &Jet::constant(alpha.clone()))?.derivative(1);
        let mut zeroed = ws.to_vec();
        zeroed[i] = q(0, 1);
        let delta = (d0.clone() - kernel_det(&zeroed, alpha)?) / w.clone();
        acc = acc + rho(w, alpha) * di + sigma(w, alpha, form) * d0.clone() + delta;
    }
    Ok(acc)
}

/// Sign in front of the ∂_α term of the second-order operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaSign {
    /// −24mα(1−α)(8+α)
    Corrected,
    /// +24mα(1−α)(8+α)
    Printed,
}

fn gamma0(w: &Q, a: &Q, m: i64) -> Q {
    let m = q(m, 1);
    let a2 = a * a;
    q(18, 1) * &a2 * (&m - q(1, 1)) * (q(3, 1) * &m - q(2, 1)) * w * w
        + q(6, 1) * a * (a - q(4, 1)) * (q(3, 1) * &m - q(2, 1)) * (q(4, 1) * &m - q(3, 1)) * w
        + q(64, 1) * &m * &m - q(12, 1) * &a2 * &m + q(96, 1) * a * &m - q(192, 1) * &m + q(80, 1) + q(5, 1) * &a2
        - q(40, 1) * a
        + q(10, 1) * &a2 * &m * &m
        - q(20, 1) * a * &m * &m
}

fn gamma1(w: &Q, a: &Q, m: i64) -> Q {
    let m = q(m, 1);
    let a2 = a * a;
    q(-36, 1) * &a2 * (&m - q(1, 1)) * w * w * w - q(6, 1) * a * (a - q(4, 1)) * (q(10, 1) * &m - q(9, 1)) * w * w
        + q(6, 1)
            * (q(3, 1) * &a2 - q(24, 1) * a - q(4, 1) * &a2 * &m + q(12, 1) * a * &m - q(32, 1) * &m + q(48, 1))
            * w
        - q(36, 1) * a
}

fn gamma2(w: &Q, a: &Q) -> Q {
    q(6, 1) * w * (a * w - q(4, 1)) * (a + a * w * w + q(2, 1) * a * w - q(4, 1) * w)
}

/// Σ_i (γ2 ∂_i² + γ1 ∂_i + γ0) S ± 24mα(1−α)(8+α)∂_α S.
pub fn second_order_residual(ws: &[Q], alpha: &Q, sign: AlphaSign) -> Result<Q> {
    let m = (ws.len() / 2) as i64;
    let s0 = s_poly(ws, alpha)?;
    let consts: Vec<Jet<Q>> = ws.iter().map(|w| Jet::constant(w.clone())).collect();
    let sa = s_poly(&consts, &Jet::variable(alpha.clone(), 1))?.derivative(1);
    let k = match sign {
        AlphaSign::Corrected => q(-24, 1),
        AlphaSign::Printed => q(24, 1),
    };
    let mut acc = k * q(m, 1) * alpha * (q(1, 1) - alpha) * (q(8, 1) + alpha) * sa;
    for (i, w) in ws.iter().enumerate() {
        let mut v = consts.clone();
        v[i] = Jet::variable(w.clone(), 2);
        let s = s_poly(&v, &Jet::constant(alpha.clone()))?;
        acc = acc + gamma2(w, alpha) * s.derivative(2) + gamma1(w, alpha, m) * s.derivative(1) + gamma0(w, alpha, m) * s0.clone();
    }
    Ok(acc)
}

/// Expansion of S_2m along the ray w_i = c_i t, normalized by α^{m(m−1)}Π w_i^{m−1}Π(w_i−w_j).
/// Returns the normalized leading coefficient and the two next ones.
pub fn ray_asymptotics(cs: &[Q], alpha: &Q) -> Result<[Q; 3]> {
    let m = cs.len() / 2;
    let deg = 2 * m * m.saturating_sub(1) + m * (2 * m).saturating_sub(1);
    let mut ts = Vec::new();
    let mut ys = Vec::new();
    let mut k = 0i64;
    while ts.len() < deg + 3 {
        k += 1;
        let t = q(k, 2);
        let ws: Vec<Q> = cs.iter().map(|c| c * &t).collect();
        match s_poly(&ws, alpha) {
            Ok(v) => {
                ts.push(t);
                ys.push(v);
            }
            Err(Error::DivisionByZero(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let p: PolyQ = interpolate(&ts, &ys);
    if p.degree().is_some_and(|d| d > deg) {
        return Err(Error::Interpolation(format!("degree above {deg}")));
    }
    let mut norm = alpha.powi((m * m.saturating_sub(1)) as u32);
    for c in cs {
        norm *= c.powi(m.saturating_sub(1) as u32);
    }
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            norm *= &cs[i] - &cs[j];
        }
    }
    let norm = need_nonzero(norm, "ray normalization")?;
    let below = |k: usize| deg.checked_sub(k).map_or(q(0, 1), |d| p.coeff(d));
    Ok([p.coeff(deg) / norm.clone(), below(1) / norm.clone(), below(2) / norm])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(m: usize, seed: i64) -> Vec<Q> {
        (0..2 * m as i64).map(|k| q((k + seed) * 7 % 11 + 1, (k * 3 + seed) % 5 + 2) * q(if k % 2 == 0 { 1 } else { -1 }, 1)).collect()
    }

    #[test]
    fn bound_small() {
        // n=1: S = {J2},{J3},{J4},{J2,J3,J4}, k = 1,1,1,2
        assert_eq!(x_degree_bound(1), 2);
        // n=2: S = ∅ and the three pairs, k = 1,2,2,2
        assert_eq!(x_degree_bound(2), 6);
    }

    #[test]
    fn divided_difference_equation() {
        let a = q(3, 7);
        for m in 1..=3 {
            let ws = pts(m, 1);
            assert_eq!(divided_difference_residual(&ws, &a, ShiftForm::Corrected).unwrap(), q(0, 1), "m={m}");
        }
        assert_ne!(divided_difference_residual(&pts(1, 1), &a, ShiftForm::Printed).unwrap(), q(0, 1));
    }

    #[test]
    fn second_order_equation() {
        let a = q(-2, 5);
        for m in 1..=3 {
            let ws = pts(m, 2);
            assert_eq!(second_order_residual(&ws, &a, AlphaSign::Corrected).unwrap(), q(0, 1), "m={m}");
        }
        assert_ne!(second_order_residual(&pts(2, 2), &a, AlphaSign::Printed).unwrap(), q(0, 1));
    }

    #[test]
    fn leading_behaviour() {
        let a = q(5, 3);
        for m in 1..=3 {
            let cs: Vec<Q> = (0..2 * m as i64).map(|k| q(k + 1, 1) + q(1, 3 + k)).collect();
            let [lead, sub1, sub2] = ray_asymptotics(&cs, &a).unwrap();
            assert_eq!(lead, q(1, 1), "m={m}");
            assert_eq!((sub1, sub2), (q(0, 1), q(0, 1)), "m={m}");
        }
    }
}
