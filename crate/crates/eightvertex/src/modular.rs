//! Prime-field scalars, Chinese remaindering and rational reconstruction.

use crate::field::{Field, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Primes below 2^62 used for modular evaluation.
pub const PRIMES: [u64; 6] = [
    (1 << 61) - 1,
    (1 << 62) - 57,
    (1 << 62) - 87,
    (1 << 61) - 31,
    (1 << 60) - 93,
    (1 << 59) - 55,
];

/// Residue modulo the prime P.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp<const P: u64>(pub u64);

impl<const P: u64> Zp<P> {
    pub fn new(x: i64) -> Self {
        Zp(x.rem_euclid(P as i64) as u64)
    }
    fn pow(self, mut e: u64) -> Self {
        let mut acc = Zp(1);
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }
    pub fn inv(self) -> Self {
        assert!(self.0 != 0, "inverse of zero mod {P}");
        self.pow(P - 2)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 as u128 + o.0 as u128;
        Zp((s % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Zp(P - self.0)
        }
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Zp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u64> Field for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn one() -> Self {
        Zp(1)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Zp::new(num) / Zp::new(den)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn pivot_weight(&self) -> f64 {
        if self.0 == 0 {
            0.0
        } else {
            1.0
        }
    }
}

/// The residue of a rational, or None when P divides its denominator.
pub fn reduce<const P: u64>(x: &Q) -> Option<Zp<P>> {
    residue(x, P).map(Zp)
}

/// x mod p for a prime p, or None when p divides the denominator.
pub fn residue(x: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb);
    if d.is_zero() {
        return None;
    }
    let inv = d.modpow(&(&pb - 2u32), &pb);
    u64::try_from((x.numer().mod_floor(&pb) * inv).mod_floor(&pb)).ok()
}

/// Combine residues r_i mod m_i into the residue mod Π m_i in [0, M).
pub fn crt(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(r, p) in residues {
        let p = BigInt::from(p);
        // x + m t ≡ r (mod p)
        let inv = m.modpow(&(&p - 2u32), &p);
        let t = ((BigInt::from(r) - &x).mod_floor(&p) * inv).mod_floor(&p);
        x += &m * t;
        m *= p;
    }
    (x, m)
}

/// The rational n/d ≡ x (mod m) with |n|, d ≤ √(m/2), if one exists.
pub fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (k, r) = r0.div_mod_floor(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &k * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Q::new(r1, s1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use proptest::prelude::*;

    const P0: u64 = PRIMES[0];
    const P1: u64 = PRIMES[1];

    #[test]
    fn inverse_and_ratio() {
        let a = Zp::<P0>::new(-7);
        assert_eq!(a * a.inv(), Zp(1));
        assert_eq!(Zp::<P0>::from_ratio(3, 4) * Zp::new(4), Zp::new(3));
    }

    proptest! {
        #[test]
        fn reconstructs_small_rationals(n in -1_000_000_000i64..1_000_000_000, d in 1i64..1_000_000_000) {
            let x = q(n, d);
            let r0 = reduce::<P0>(&x).unwrap();
            let r1 = reduce::<P1>(&x).unwrap();
            let (v, m) = crt(&[(r0.0, P0), (r1.0, P1)]);
            prop_assert_eq!(rational_reconstruct(&v, &m), Some(x));
        }
    }
}
