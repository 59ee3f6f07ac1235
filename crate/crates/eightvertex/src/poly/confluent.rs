//! Two-cluster specialization H_2m(S, u,…,u; v,…,v) as an exact truncated Taylor
//! series in (u, v) around (0, 0), via the confluent form of the determinant.

use crate::closed_forms::rational::{Coupling, Rational};
use crate::field::{Field, Jet, Q};
use crate::{Error, Result};

pub const MAX_ORDER: usize = 3;

/// Truncated bivariate series Σ c[a][b] u^a v^b, a ≤ nu, b ≤ nv.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<F: Field> {
    pub nu: usize,
    pub nv: usize,
    pub c: Vec<Vec<F>>,
}

impl<F: Field> BiSeries<F> {
    pub fn zero(nu: usize, nv: usize) -> Self {
        BiSeries { nu, nv, c: vec![vec![F::zero(); nv + 1]; nu + 1] }
    }
    pub fn constant(x: F, nu: usize, nv: usize) -> Self {
        let mut s = Self::zero(nu, nv);
        s.c[0][0] = x;
        s
    }
    pub fn coeff(&self, a: usize, b: usize) -> F {
        self.c.get(a).and_then(|r| r.get(b)).cloned().unwrap_or_else(F::zero)
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for a in 0..=self.nu {
            for b in 0..=self.nv {
                s.c[a][b] = s.c[a][b].clone() + o.coeff(a, b);
            }
        }
        s
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }
    pub fn scale(&self, k: &F) -> Self {
        let mut s = self.clone();
        for row in s.c.iter_mut() {
            for x in row.iter_mut() {
                *x = x.clone() * k.clone();
            }
        }
        s
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut s = Self::zero(self.nu, self.nv);
        for a in 0..=self.nu {
            for b in 0..=self.nv {
                let x = &self.c[a][b];
                if x.is_zero() {
                    continue;
                }
                for a2 in 0..=self.nu - a {
                    for b2 in 0..=self.nv - b {
                        let y = o.coeff(a2, b2);
                        if !y.is_zero() {
                            s.c[a + a2][b + b2] = s.c[a + a2][b + b2].clone() + x.clone() * y;
                        }
                    }
                }
            }
        }
        s
    }
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(F::one(), self.nu, self.nv);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
    /// Inverse for a series with invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.c[0][0].clone();
        if c0.is_zero() {
            return Err(Error::DivisionByZero("series constant term"));
        }
        let one = Self::constant(F::one(), self.nu, self.nv);
        // 1/(c0 (1 − x)) = (1/c0) Σ x^n
        let x = one.sub(&self.scale(&(F::one() / c0.clone())));
        let mut acc = one.clone();
        let mut term = one;
        for _ in 0..(self.nu + self.nv) {
            term = term.mul(&x);
            acc = acc.add(&term);
        }
        Ok(acc.scale(&(F::one() / c0)))
    }
}

/// Determinant by cofactor expansion; entries need not be invertible.
pub fn det_expand<F: Field>(m: &[Vec<BiSeries<F>>], nu: usize, nv: usize) -> BiSeries<F> {
    let n = m.len();
    if n == 0 {
        return BiSeries::constant(F::one(), nu, nv);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BiSeries::zero(nu, nv);
    for j in 0..n {
        let minor: Vec<Vec<BiSeries<F>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = m[0][j].mul(&det_expand(&minor, nu, nv));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn binom(n: usize, k: usize) -> i64 {
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// Series of 1 − βuv + γuv(u+v) with β = 3+ζ², γ = 1−ζ².
fn h_series<F: Field>(zeta: &F, nu: usize, nv: usize) -> BiSeries<F> {
    let z2 = zeta.clone() * zeta.clone();
    let beta = F::from_i64(3) + z2.clone();
    let gamma = F::one() - z2;
    let mut s = BiSeries::constant(F::one(), nu, nv);
    let mut put = |a: usize, b: usize, x: F| {
        if a <= nu && b <= nv {
            s.c[a][b] = x;
        }
    };
    put(1, 1, -beta);
    put(2, 1, gamma.clone());
    put(1, 2, gamma);
    s
}

/// Coefficients of 1/h(j, v) in v up to v^n.
fn row_series<F: Field>(r: &Rational<F>, j: &F, n: usize) -> Result<Vec<F>> {
    let z2 = r.zeta.clone() * r.zeta.clone();
    let beta = F::from_i64(3) + z2.clone();
    let gamma = F::one() - z2;
    let c1 = gamma.clone() * j.clone() * j.clone() - beta * j.clone();
    let c2 = gamma * j.clone();
    let h = BiSeries { nu: 0, nv: n, c: vec![(0..=n).map(|b| match b { 0 => F::one(), 1 => c1.clone(), 2 => c2.clone(), _ => F::zero() }).collect()] };
    Ok(h.inv()?.c.remove(0))
}

/// H_2m(S…, u×k; v×m), k = m − |S|, as a series of order (ou, ov) in (u, v).
pub fn cluster_series<F: Field>(zeta: &F, m: usize, spec: &[Coupling], ou: usize, ov: usize) -> Result<BiSeries<F>> {
    if ou > MAX_ORDER || ov > MAX_ORDER {
        return Err(Error::OrderOverflow(ou.max(ov)));
    }
    if spec.len() > m {
        return Err(Error::SizeOverflow(m));
    }
    let k = m - spec.len();
    let r = Rational::new(zeta.clone());
    let js: Vec<F> = spec.iter().map(|&c| r.coupling(c)).collect();
    let gu = k.saturating_sub(1) + ou;
    let gv = m - 1 + ov;
    let g = h_series(zeta, gu, gv).inv()?;
    let mut rows: Vec<Vec<BiSeries<F>>> = Vec::with_capacity(m);
    for j in &js {
        let gj = row_series(&r, j, gv)?;
        rows.push(
            (0..m)
                .map(|c| {
                    let mut s = BiSeries::zero(ou, ov);
                    for b in 0..=ov {
                        s.c[0][b] = gj[b + c].clone() * F::from_i64(binom(b + c, c));
                    }
                    s
                })
                .collect(),
        );
    }
    for rr in 0..k {
        rows.push(
            (0..m)
                .map(|c| {
                    let mut s = BiSeries::zero(ou, ov);
                    for a in 0..=ou {
                        for b in 0..=ov {
                            s.c[a][b] = g.c[a + rr][b + c].clone() * F::from_i64(binom(a + rr, rr) * binom(b + c, c));
                        }
                    }
                    s
                })
                .collect(),
        );
    }
    let d = det_expand(&rows, ou, ov);
    let h = h_series(zeta, ou, ov);
    let mut pref = h.pow(k * m);
    let mut den = F::one();
    for (i, j) in js.iter().enumerate() {
        // h(J, v)^m and 1/(J − u)^k
        let mut hj = BiSeries::zero(ou, ov);
        let z2 = zeta.clone() * zeta.clone();
        let beta = F::from_i64(3) + z2.clone();
        let gamma = F::one() - z2;
        hj.c[0][0] = F::one();
        if ov >= 1 {
            hj.c[0][1] = gamma.clone() * j.clone() * j.clone() - beta * j.clone();
        }
        if ov >= 2 {
            hj.c[0][2] = gamma * j.clone();
        }
        let mut ju = BiSeries::constant(j.clone(), ou, ov);
        if ou >= 1 {
            ju.c[1][0] = -F::one();
        }
        pref = pref.mul(&hj.pow(m)).mul(&ju.inv()?.pow(k));
        for jj in &js[i + 1..] {
            den = den * (j.clone() - jj.clone());
        }
    }
    if den.is_zero() {
        return Err(Error::DivisionByZero("coincident couplings"));
    }
    let sign_exp = k * (k.max(1) - 1) / 2 + m * (m - 1) / 2;
    let sign = if sign_exp.is_multiple_of(2) { F::one() } else { -F::one() };
    Ok(pref.mul(&d).scale(&(sign / den)))
}

/// The seven-component derivative vector (∂uv, ∂uu, ∂αα, ∂uα, ∂u, ∂α, id) at u = v = 0, ζ = ζ0.
pub fn derivative_vector(zeta0: &Q, m: usize, spec: &[Coupling]) -> Result<[Q; 7]> {
    if zeta0 == &Q::zero() {
        return Err(Error::DivisionByZero("alpha derivative at zeta = 0"));
    }
    let z = Jet::variable(zeta0.clone(), 2);
    let s = cluster_series(&z, m, spec, 2, 1)?;
    let d_alpha = |t: &Jet<Q>| -> (Q, Q) {
        let t1 = t.derivative(1);
        let t2 = t.derivative(2);
        let ta = -t1 / (Q::from_i64(2) * zeta0.clone());
        let taa = (t2 + Q::from_i64(2) * ta.clone()) / (Q::from_i64(4) * zeta0.clone() * zeta0.clone());
        (ta, taa)
    };
    let h = s.coeff(0, 0);
    let hu = s.coeff(1, 0);
    let (ha, haa) = d_alpha(&h);
    let (hua, _) = d_alpha(&hu);
    Ok([
        s.coeff(1, 1).coeff(0),
        s.coeff(2, 0).coeff(0) * Q::from_i64(2),
        haa,
        hua,
        hu.coeff(0),
        ha,
        h.coeff(0),
    ])
}

/// (1/m²)∂uv log H_2m + ∂uv log g − H_{2(m+1)}H_{2(m−1)}/(g²H²_2m) at u = v = 0.
pub fn toda_residual(zeta: &Q, m: usize) -> Result<Q> {
    let s = cluster_series(zeta, m, &[], 1, 1)?;
    let h = s.coeff(0, 0);
    let lap = (h.clone() * s.coeff(1, 1) - s.coeff(1, 0) * s.coeff(0, 1)) / (h.clone() * h.clone());
    // ∂uv log g at the origin is −∂uv h = 3 + ζ²
    let log_g = Q::from_i64(3) + zeta.clone() * zeta.clone();
    let up = cluster_series(zeta, m + 1, &[], 0, 0)?.coeff(0, 0);
    let down = if m == 1 { Q::one() } else { cluster_series(zeta, m - 1, &[], 0, 0)?.coeff(0, 0) };
    Ok(lap / Q::from_i64((m * m) as i64) + log_g - up * down / (h.clone() * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::poly::families::Spec;
    use crate::poly::oracle::oracle_h_at;
    use Coupling::*;

    #[test]
    fn origin_matches_oracle() {
        let z = q(2, 7);
        for (m, spec) in [(1, vec![]), (2, vec![]), (3, vec![]), (2, vec![J2]), (2, vec![J3]), (3, vec![J2, J4]), (2, vec![J3, J4]), (3, vec![J2, J3, J4])] {
            let s = cluster_series(&z, m, &spec, 0, 0).unwrap();
            assert_eq!(s.coeff(0, 0), oracle_h_at(&z, m, &Spec::new(spec.clone())).unwrap(), "m={m} {spec:?}");
        }
    }

    #[test]
    fn size_one_is_taylor_of_g() {
        let z = q(3, 5);
        let s = cluster_series(&z, 1, &[], 2, 2).unwrap();
        // H_2 = h·g = 1 identically
        assert_eq!(s, BiSeries::constant(q(1, 1), 2, 2));
    }

    #[test]
    fn toda_small() {
        for m in 1..=3 {
            assert_eq!(toda_residual(&q(1, 3), m).unwrap(), q(0, 1), "m={m}");
        }
    }
}
