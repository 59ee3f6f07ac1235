//! Exact univariate polynomials and the homogeneous-limit polynomial families.

pub mod analytics;
pub mod confluent;
pub mod families;
pub mod oracle;
pub mod recurrence;
pub mod relations;

use crate::field::{q, q_to_string, Field, Q};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense polynomial, coefficient of x^k at index k, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    pub c: Vec<F>,
}

pub type PolyQ = Poly<Q>;

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }
    pub fn zero() -> Self {
        Poly { c: vec![] }
    }
    pub fn constant(x: F) -> Self {
        Poly::new(vec![x])
    }
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }
    pub fn monomial(x: F, k: usize) -> Self {
        let mut c = vec![F::zero(); k + 1];
        c[k] = x;
        Poly::new(c)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }
    pub fn coeff(&self, k: usize) -> F {
        self.c.get(k).cloned().unwrap_or_else(F::zero)
    }
    pub fn lead(&self) -> F {
        self.c.last().cloned().unwrap_or_else(F::zero)
    }
    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }
    pub fn scale(&self, s: &F) -> Self {
        Poly::new(self.c.iter().map(|a| a.clone() * s.clone()).collect())
    }
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::constant(F::one());
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
    /// Euclidean division; returns (quotient, remainder).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let lead = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut qv = vec![F::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let t = r[k + dd].clone() / lead.clone();
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - t.clone() * b.clone();
                }
            }
            qv[k] = t;
        }
        r.truncate(dd);
        (Poly::new(qv), Poly::new(r))
    }
    /// Division asserting a zero remainder.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (qt, r) = self.div_rem(d);
        if r.is_zero() {
            Some(qt)
        } else {
            None
        }
    }
    /// p(x) -> p(s x)
    pub fn rescale_var(&self, s: &F) -> Self {
        let mut f = F::one();
        let mut out = Vec::with_capacity(self.c.len());
        for a in &self.c {
            out.push(a.clone() * f.clone());
            f = f * s.clone();
        }
        Poly::new(out)
    }
    /// p(x) -> p(a + b x)
    pub fn compose_affine(&self, a: &F, b: &F) -> Self {
        let lin = Poly::new(vec![a.clone(), b.clone()]);
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = acc * lin.clone() + Poly::constant(c.clone());
        }
        acc
    }
    pub fn is_even(&self) -> bool {
        self.c.iter().enumerate().all(|(k, a)| k % 2 == 0 || a.is_zero())
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}
impl<F: Field> Sub for Poly<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}
impl<F: Field> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly::new(self.c.into_iter().map(|a| -a).collect())
    }
}
impl<F: Field> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }
}

impl PolyQ {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&k| q(k, 1)).collect())
    }
    pub fn coeff_strings(&self) -> Vec<String> {
        if self.c.is_empty() {
            return vec!["0".to_string()];
        }
        self.c.iter().map(q_to_string).collect()
    }
    /// Even polynomial in ζ rewritten as a polynomial in α = 1 − ζ².
    pub fn zeta_even_to_alpha(&self) -> Option<PolyQ> {
        if !self.is_even() {
            return None;
        }
        // ζ² = 1 − α
        let s = Poly::new(vec![q(1, 1), q(-1, 1)]);
        let mut acc = Poly::zero();
        let half: Vec<Q> = self.c.iter().step_by(2).cloned().collect();
        for a in half.iter().rev() {
            acc = acc * s.clone() + Poly::constant(a.clone());
        }
        Some(acc)
    }
    /// Polynomial in α rewritten in ζ.
    pub fn alpha_to_zeta(&self) -> PolyQ {
        let s = Poly::new(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = acc * s.clone() + Poly::constant(a.clone());
        }
        acc
    }
    /// ζ^N p(1/ζ) as a coefficient reversal, requires deg p ≤ N.
    pub fn reciprocal(&self, n: usize) -> Option<PolyQ> {
        if self.c.len() > n + 1 {
            return None;
        }
        let mut c = self.c.clone();
        c.resize(n + 1, q(0, 1));
        c.reverse();
        Some(Poly::new(c))
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if num_traits::Zero::is_zero(a) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", q_to_string(a))?,
                1 => write!(f, "({})z", q_to_string(a))?,
                _ => write!(f, "({})z^{}", q_to_string(a), k)?,
            }
        }
        Ok(())
    }
}

/// JSON form of a polynomial: exact coefficients as decimal strings.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PolyJson {
    pub variable: String,
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn zeta(p: &PolyQ) -> Self {
        PolyJson { variable: "zeta".into(), coeffs: p.coeff_strings() }
    }
}

/// Lagrange interpolation through (xs[i], ys[i]) by Newton divided differences.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> Poly<F> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let mut dd: Vec<F> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - j].clone());
        }
    }
    let mut acc = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), F::one()]);
        acc = acc * lin + Poly::constant(dd[i].clone());
    }
    acc
}

/// Value at `x` of the interpolant through the given nodes, as Σ y_i ℓ_i(x). The
/// Lagrange weights only involve the nodes, which are usually much smaller than the values.
pub fn extrapolate<F: Field>(xs: &[F], ys: &[F], x: &F) -> F {
    let mut acc = F::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut num = F::one();
        let mut den = F::one();
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                num = num * (x.clone() - xj.clone());
                den = den * (xi.clone() - xj.clone());
            }
        }
        acc = acc + yi.clone() * (num / den);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = PolyQ> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|v| PolyQ::from_ints(&v))
    }

    #[test]
    fn division_with_remainder() {
        let a = PolyQ::from_ints(&[-1, 0, 1]);
        let b = PolyQ::from_ints(&[1, 1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, PolyQ::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert!(PolyQ::from_ints(&[1, 0, 1]).exact_div(&b).is_none());
    }

    #[test]
    fn alpha_zeta_roundtrip() {
        let h4 = PolyQ::from_ints(&[3, 0, 1]);
        let a = h4.zeta_even_to_alpha().unwrap();
        assert_eq!(a, PolyQ::from_ints(&[4, -1]));
        assert_eq!(a.alpha_to_zeta(), h4);
    }

    proptest! {
        #[test]
        fn product_divides_exactly(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = a.clone() * b.clone();
            prop_assert_eq!(p.exact_div(&b), Some(a));
        }

        #[test]
        fn interpolation_recovers(a in arb_poly()) {
            let n = a.c.len().max(1);
            let xs: Vec<Q> = (0..n as i64).map(|k| q(2 * k + 1, 3)).collect();
            let ys: Vec<Q> = xs.iter().map(|x| a.eval(x)).collect();
            prop_assert_eq!(interpolate(&xs, &ys), a.clone());
            let z = q(-5, 11);
            prop_assert_eq!(extrapolate(&xs, &ys, &z), a.eval(&z));
        }
    }
}
