//! Seeded draws shared by the numerical suites.

use crate::field::{q, Q};
use crate::theta::{c, C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Draws {
    rng: ChaCha8Rng,
}

impl Draws {
    pub fn new(seed: u64) -> Self {
        Draws { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream for a named sub-task, so suites do not shift each other's draws.
    pub fn fork(seed: u64, tag: u64) -> Self {
        Draws::new(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ tag)
    }

    /// Spectral parameter with Re in (−1, 1) and a small imaginary part.
    pub fn spectral(&mut self) -> C {
        c(self.rng.random_range(-1.0..1.0), self.rng.random_range(-0.3..0.3))
    }

    pub fn spectral_vec(&mut self, k: usize) -> Vec<C> {
        (0..k).map(|_| self.spectral()).collect()
    }

    pub fn angle(&mut self) -> f64 {
        self.rng.random_range(-1.5..1.5)
    }

    /// Nonzero rational a/b with |a| ≤ 9, 1 ≤ b ≤ 9.
    pub fn rational(&mut self) -> Q {
        loop {
            let a: i64 = self.rng.random_range(-9..=9);
            let b: i64 = self.rng.random_range(1..=9);
            if a != 0 {
                return q(a, b);
            }
        }
    }

    /// Distinct nonzero rationals avoiding ±1 and reciprocal pairs.
    pub fn distinct_rationals(&mut self, k: usize) -> Vec<Q> {
        let mut out: Vec<Q> = Vec::with_capacity(k);
        let one = q(1, 1);
        while out.len() < k {
            let x = self.rational();
            let bad = x == one || x == -one.clone() || out.iter().any(|y| *y == x || y.clone() * x.clone() == one);
            if !bad {
                out.push(x);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<C> = Draws::new(7).spectral_vec(4);
        let b: Vec<C> = Draws::new(7).spectral_vec(4);
        assert_eq!(a, b);
        let r = Draws::new(3).distinct_rationals(6);
        assert_eq!(r.len(), 6);
    }
}
