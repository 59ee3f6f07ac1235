//! Scalar types shared by the exact and floating evaluators.
//!
//! Every closed-form routine is generic over [`Field`], so the same code runs on
//! exact rationals, complex floats, truncated jets (for exact derivatives),
//! truncated Laurent series (for singular limits) and the cyclotomic field Q(ω).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Q = BigRational;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Size used to choose elimination pivots; zero means "not invertible".
    fn pivot_weight(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
    fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
    fn powz(&self, k: i64) -> Self {
        if k >= 0 {
            self.powi(k as u32)
        } else {
            Self::one() / self.powi((-k) as u32)
        }
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        q(num, den)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn pivot_weight(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            // prefer small-height pivots to limit coefficient growth
            let bits = self.numer().bits() + self.denom().bits();
            1.0 / (1.0 + bits as f64)
        }
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

/// Truncated power series c_0 + c_1 ε + … + c_N ε^N.
///
/// A constant is stored with a single coefficient and broadcasts to any order.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<F: Field> {
    pub c: Vec<F>,
}

impl<F: Field> Jet<F> {
    pub fn constant(x: F) -> Self {
        Jet { c: vec![x] }
    }
    /// The variable x0 + ε truncated at `order`.
    pub fn variable(x0: F, order: usize) -> Self {
        let mut c = vec![F::zero(); order + 1];
        c[0] = x0;
        if order >= 1 {
            c[1] = F::one();
        }
        Jet { c }
    }
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }
    pub fn coeff(&self, k: usize) -> F {
        self.c.get(k).cloned().unwrap_or_else(F::zero)
    }
    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> F {
        let mut f = 1i64;
        for i in 2..=k as i64 {
            f *= i;
        }
        self.coeff(k) * F::from_i64(f)
    }
    fn padded(&self, n: usize) -> Vec<F> {
        let mut v = self.c.clone();
        if v.len() == 1 && n > 1 {
            v.resize(n, F::zero());
        } else {
            v.resize(n.max(v.len()), F::zero());
        }
        v
    }
    fn join_len(a: &Self, b: &Self) -> usize {
        a.c.len().max(b.c.len())
    }
}

impl<F: Field> Add for Jet<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = Self::join_len(&self, &o);
        let (a, b) = (self.padded(n), o.padded(n));
        Jet { c: a.into_iter().zip(b).map(|(x, y)| x + y).collect() }
    }
}
impl<F: Field> Sub for Jet<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = Self::join_len(&self, &o);
        let (a, b) = (self.padded(n), o.padded(n));
        Jet { c: a.into_iter().zip(b).map(|(x, y)| x - y).collect() }
    }
}
impl<F: Field> Neg for Jet<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet { c: self.c.into_iter().map(|x| -x).collect() }
    }
}
impl<F: Field> Mul for Jet<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let n = Self::join_len(&self, &o);
        let mut out = vec![F::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if i + j < n {
                    out[i + j] = out[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        Jet { c: out }
    }
}
impl<F: Field> Div for Jet<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = Self::join_len(&self, &o);
        let a = self.padded(n);
        let b = o.padded(n);
        let b0 = b[0].clone();
        let mut out: Vec<F> = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = a[k].clone();
            for j in 1..=k {
                s = s - b[j].clone() * out[k - j].clone();
            }
            out.push(s / b0.clone());
        }
        Jet { c: out }
    }
}

impl<F: Field> Field for Jet<F> {
    fn zero() -> Self {
        Jet::constant(F::zero())
    }
    fn one() -> Self {
        Jet::constant(F::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Jet::constant(F::from_ratio(num, den))
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn pivot_weight(&self) -> f64 {
        self.c[0].pivot_weight()
    }
}

/// Truncated Laurent series Σ_{k≥val} c_k ε^k with `c.len()` known terms.
#[derive(Clone, Debug)]
pub struct Laurent<F: Field> {
    pub val: i64,
    pub c: Vec<F>,
}

pub const LAURENT_PREC: usize = 28;

impl<F: Field> Laurent<F> {
    pub fn constant(x: F) -> Self {
        let mut c = vec![F::zero(); LAURENT_PREC];
        c[0] = x;
        Laurent { val: 0, c }.normalized()
    }
    /// The series ε itself.
    pub fn epsilon() -> Self {
        let mut c = vec![F::zero(); LAURENT_PREC];
        c[0] = F::one();
        Laurent { val: 1, c }
    }
    fn normalized(mut self) -> Self {
        let lead = self.c.iter().position(|x| !x.is_zero());
        match lead {
            None => Laurent { val: self.val + self.c.len() as i64, c: Vec::new() },
            Some(0) => self,
            Some(k) => {
                self.c.drain(0..k);
                self.val += k as i64;
                self
            }
        }
    }
    /// End of the known range (absolute exponent).
    fn horizon(&self) -> i64 {
        self.val + self.c.len() as i64
    }
    pub fn coeff(&self, k: i64) -> F {
        if k < self.val || k >= self.horizon() {
            F::zero()
        } else {
            self.c[(k - self.val) as usize].clone()
        }
    }
    /// Value at ε = 0, failing if the series has a pole.
    pub fn limit(&self) -> Result<F, i64> {
        if self.c.is_empty() {
            return Ok(F::zero());
        }
        if self.val < 0 {
            Err(self.val)
        } else {
            Ok(self.coeff(0))
        }
    }
    pub fn precision(&self) -> usize {
        self.c.len()
    }
}

impl<F: Field> PartialEq for Laurent<F> {
    fn eq(&self, o: &Self) -> bool {
        (self.clone() - o.clone()).is_zero()
    }
}

impl<F: Field> Add for Laurent<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let lo = self.val.min(o.val);
        let hi = self.horizon().min(o.horizon());
        if hi <= lo {
            return Laurent { val: hi, c: vec![] };
        }
        let c = (lo..hi).map(|k| self.coeff(k) + o.coeff(k)).collect();
        Laurent { val: lo, c }.normalized()
    }
}
impl<F: Field> Neg for Laurent<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent { val: self.val, c: self.c.into_iter().map(|x| -x).collect() }
    }
}
impl<F: Field> Sub for Laurent<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}
impl<F: Field> Mul for Laurent<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let n = self.c.len().min(o.c.len());
        let mut c = vec![F::zero(); n];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                c[i + j] = c[i + j].clone() + self.c[i].clone() * o.c[j].clone();
            }
        }
        Laurent { val: self.val + o.val, c }.normalized()
    }
}
impl<F: Field> Div for Laurent<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.c.is_empty(), "division by a Laurent series with no known terms");
        let n = self.c.len().min(o.c.len());
        let mut inv: Vec<F> = Vec::with_capacity(n);
        let b0 = o.c[0].clone();
        for k in 0..n {
            let mut s = if k == 0 { F::one() } else { F::zero() };
            for j in 1..=k {
                s = s - o.c[j].clone() * inv[k - j].clone();
            }
            inv.push(s / b0.clone());
        }
        let invs = Laurent { val: -o.val, c: inv };
        let a = Laurent { val: self.val, c: self.c[..n.min(self.c.len())].to_vec() };
        a * invs
    }
}

impl<F: Field> Field for Laurent<F> {
    fn zero() -> Self {
        Laurent { val: LAURENT_PREC as i64 * 4, c: vec![] }
    }
    fn one() -> Self {
        Laurent::constant(F::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        if num == 0 {
            Self::zero()
        } else {
            Laurent::constant(F::from_ratio(num, den))
        }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn pivot_weight(&self) -> f64 {
        if self.c.is_empty() {
            0.0
        } else {
            // lower valuation first
            1.0 / (2.0 + (self.val + 1000) as f64)
        }
    }
}

/// Elements a + bω of Q(ω), ω = e^{iπ/3}, ω² = ω − 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Cyclo {
    pub a: Q,
    pub b: Q,
}

impl Cyclo {
    pub fn new(a: Q, b: Q) -> Self {
        Cyclo { a, b }
    }
    pub fn omega() -> Self {
        Cyclo { a: <Q as Zero>::zero(), b: <Q as One>::one() }
    }
    pub fn rational(a: Q) -> Self {
        Cyclo { a, b: <Q as Zero>::zero() }
    }
    pub fn to_complex(&self) -> Complex64 {
        let w = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        Complex64::new(q_to_f64(&self.a), 0.0) + w * q_to_f64(&self.b)
    }
    pub fn norm(&self) -> Q {
        self.a.clone() * self.a.clone() + self.a.clone() * self.b.clone() + self.b.clone() * self.b.clone()
    }
}

impl Add for Cyclo {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cyclo { a: self.a + o.a, b: self.b + o.b }
    }
}
impl Sub for Cyclo {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cyclo { a: self.a - o.a, b: self.b - o.b }
    }
}
impl Neg for Cyclo {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclo { a: -self.a, b: -self.b }
    }
}
impl Mul for Cyclo {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let bd = self.b.clone() * o.b.clone();
        Cyclo {
            a: self.a.clone() * o.a.clone() - bd.clone(),
            b: self.a * o.b + self.b * o.a + bd,
        }
    }
}
impl Div for Cyclo {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        let conj = Cyclo { a: o.a.clone() + o.b.clone(), b: -o.b };
        let t = self * conj;
        Cyclo { a: t.a / n.clone(), b: t.b / n }
    }
}

impl Field for Cyclo {
    fn zero() -> Self {
        Cyclo::rational(<Q as Zero>::zero())
    }
    fn one() -> Self {
        Cyclo::rational(<Q as One>::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Cyclo::rational(q(num, den))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclo_omega_is_sixth_root() {
        let w = Cyclo::omega();
        let w6 = w.powi(6);
        assert_eq!(w6, Cyclo::one());
        let w3 = w.powi(3);
        assert_eq!(w3, -Cyclo::one());
        let x = Cyclo::new(q(3, 2), q(-5, 7));
        assert_eq!(x.clone() / x, Cyclo::one());
    }

    #[test]
    fn jet_derivatives_of_rational_function() {
        // f(x) = 1/(1 - x) at x0 = 1/2: f = 2, f' = 4, f'' = 16
        let x = Jet::variable(q(1, 2), 2);
        let f = Jet::<Q>::one() / (Jet::one() - x);
        assert_eq!(f.derivative(0), q(2, 1));
        assert_eq!(f.derivative(1), q(4, 1));
        assert_eq!(f.derivative(2), q(16, 1));
    }

    #[test]
    fn laurent_pole_and_limit() {
        let e = Laurent::<Q>::epsilon();
        let x = (Laurent::one() + e.clone()) / e.clone();
        assert_eq!(x.val, -1);
        let y = x * e;
        assert_eq!(y.limit().unwrap(), q(1, 1));
    }
}
