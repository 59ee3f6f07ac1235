//! Elliptic Pfaffians 𝒜_n, ℬ_n and determinants ℋ_2m (theta functions of nome p).

use crate::linalg::{det, pfaffian_unchecked, Rows};
use crate::theta::{re, EllipticContext, C};
use crate::{Error, Result};

pub const DENOMINATOR_TOL: f64 = 1e-14;

pub fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(a.norm()).max(1e-300)
}

pub struct Elliptic<'a> {
    pub ctx: &'a EllipticContext,
}

impl<'a> Elliptic<'a> {
    pub fn new(ctx: &'a EllipticContext) -> Self {
        Elliptic { ctx }
    }

    pub fn t(&self, k: u8, x: C) -> C {
        self.ctx.th(k, x)
    }

    pub fn eta(&self) -> C {
        re(self.ctx.eta)
    }

    /// 𝔥(x,y) = θ(η+x−y)θ(η+x+y)θ(η−x−y)θ(η−x+y)
    pub fn hh(&self, x: C, y: C) -> C {
        let e = self.eta();
        self.t(1, e + x - y) * self.t(1, e + x + y) * self.t(1, e - x - y) * self.t(1, e - x + y)
    }

    pub fn a2(&self, x: C, y: C) -> C {
        let e = self.eta();
        let nu2 = self.ctx.nu * self.ctx.nu;
        -nu2 * self.t(2, e) / self.t(2, re(0.0))
            * (self.t(3, x + e) * self.t(3, x - e) * self.t(4, y).powi(2)
                + self.t(4, x + e) * self.t(4, x - e) * self.t(3, y).powi(2))
    }

    pub fn f(&self, x: C, y: C) -> C {
        self.t(1, x - y) * self.t(1, x + y) * self.a2(x, y) / self.hh(x, y)
    }

    /// g(x,y) = θ(2x)θ(2y)/𝔥(x,y)
    pub fn g(&self, x: C, y: C) -> C {
        self.t(1, x * 2.0) * self.t(1, y * 2.0) / self.hh(x, y)
    }

    /// Skew matrix 𝕄_n with the ±1 border for odd n.
    pub fn skew_matrix(&self, xs: &[C]) -> Rows<C> {
        let n = xs.len();
        let size = 2 * n.div_ceil(2);
        let mut m = vec![vec![re(0.0); size]; size];
        for i in 0..size {
            for j in 0..size {
                if i == j {
                    continue;
                }
                m[i][j] = if n % 2 == 1 && i == size - 1 {
                    re(-1.0)
                } else if n % 2 == 1 && j == size - 1 {
                    re(1.0)
                } else {
                    self.f(xs[i], xs[j])
                };
            }
        }
        m
    }

    pub fn a_n(&self, xs: &[C]) -> Result<C> {
        let n = xs.len();
        if n == 0 {
            return Ok(re(1.0));
        }
        let mut pre = re(1.0);
        for i in 0..n {
            for j in i + 1..n {
                let d = self.t(1, xs[i] - xs[j]) * self.t(1, xs[i] + xs[j]);
                if d.norm() < DENOMINATOR_TOL {
                    return Err(Error::DivisionByZero("theta(x_i - x_j) theta(x_i + x_j)"));
                }
                pre *= self.hh(xs[i], xs[j]) / d;
            }
        }
        Ok(pre * pfaffian_unchecked(&self.skew_matrix(xs)))
    }

    pub fn b_n(&self, xs: &[C]) -> Result<C> {
        let mut v = xs.to_vec();
        v.push(self.ctx.beta[0]);
        self.a_n(&v)
    }

    /// ℋ_2m with groups (first m; last m).
    pub fn h_det(&self, xs: &[C]) -> Result<C> {
        let m = xs.len() / 2;
        assert_eq!(xs.len(), 2 * m, "H needs an even number of arguments");
        if m == 0 {
            return Ok(re(1.0));
        }
        let (a, b) = xs.split_at(m);
        let mut num = re(1.0);
        for &x in a {
            for &y in b {
                num *= self.hh(x, y);
            }
        }
        let mut den = re(1.0);
        for g in [a, b] {
            for i in 0..m {
                for j in i + 1..m {
                    den *= self.t(1, g[i] - g[j]) * self.t(1, g[i] + g[j]);
                }
            }
        }
        if den.norm() < DENOMINATOR_TOL {
            return Err(Error::DivisionByZero("theta(x_i - x_j) theta(x_i + x_j)"));
        }
        let k: Rows<C> = a.iter().map(|&x| b.iter().map(|&y| re(1.0) / self.hh(x, y)).collect()).collect();
        Ok(num / den * det(&k))
    }

    /// (−ν²κ²)^{−n} 𝒜_n ℬ_n
    pub fn x_closed(&self, xs: &[C]) -> Result<C> {
        let n = xs.len() as i32;
        let k = -self.ctx.nu * self.ctx.nu * self.ctx.kappa * self.ctx.kappa;
        Ok(k.powi(-n) * self.a_n(xs)? * self.b_n(xs)?)
    }

    /// φ(x) = θ(2x)/θ(x)
    pub fn phi(&self, x: C) -> C {
        self.t(1, x * 2.0) / self.t(1, x)
    }

    /// Reference even theta function θ(x−η)θ(x+η).
    pub fn reference(&self, x: C) -> C {
        self.t(1, x - self.eta()) * self.t(1, x + self.eta())
    }
}

/// Deviation of one identity at one point.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub n: usize,
    pub deviation: f64,
}

const STRING_STEP: f64 = 1e-3;

fn limit<F: Fn(f64) -> Result<C>>(f: F) -> Result<C> {
    crate::partition::symmetric_limit(f, STRING_STEP)
}

impl<'a> Elliptic<'a> {
    fn string_prefactor(&self, x: C, rest: &[C]) -> C {
        let e = self.eta();
        rest.iter().fold(re(1.0), |acc, &z| acc * (self.t(1, x - e - z) * self.t(1, x - e + z)).powi(2))
    }

    /// The eight relations of the Pfaffian recurrence block at size n, using `pts` (≥ n values).
    pub fn pfaffian_recurrences(&self, n: usize, pts: &[C]) -> Result<Vec<IdentityCheck>> {
        assert!(n >= 2 && pts.len() >= n);
        let ctx = self.ctx;
        let e = self.eta();
        let nu = ctx.nu;
        let t2e = self.t(2, e);
        let mut out = Vec::new();
        let mut push = |name: &str, a: C, b: C| out.push(IdentityCheck { name: name.to_string(), n, deviation: rel(a, b) });

        let x = pts[0];
        let rest = &pts[1..n - 1];
        let with_pair = |d: f64| {
            let mut v = rest.to_vec();
            v.push(x);
            v.push(x + e + d);
            v
        };
        let core = -nu * nu * self.t(3, x) * self.t(3, x + e) * self.t(4, x) * self.t(4, x + e) * self.string_prefactor(x, rest);
        let lhs = limit(|d| self.a_n(&with_pair(d)))?;
        push("A string", lhs, core * self.a_n(rest)?);
        let lhs = limit(|d| self.b_n(&with_pair(d)))?;
        let b2 = (self.t(2, x) * self.t(2, x + e)).powi(2);
        push("B string", lhs, core * b2 * self.b_n(rest)?);

        let head = &pts[..n - 1];
        let b = ctx.beta;
        let mut v = head.to_vec();
        v.push(b[0]);
        push("A at beta2", self.a_n(&v)?, self.b_n(head)?);
        let lhs = limit(|d| {
            let mut v = head.to_vec();
            v.push(b[0] + d);
            self.b_n(&v)
        })?;
        let p2 = head.iter().fold(re(1.0), |acc, &z| acc * self.t(2, z).powi(4));
        push("B at beta2", lhs, -nu * nu * (self.t(3, e) * self.t(4, e)).powi(2) * p2 * self.a_n(head)?);
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        for (k, name_a, name_b) in [(3u8, "A at beta3", "B at beta3"), (4, "A at beta4", "B at beta4")] {
            let bk = b[k as usize - 2];
            let pk = head.iter().fold(re(1.0), |acc, &z| acc * self.t(k, z).powi(2));
            let mut v = head.to_vec();
            v.push(bk);
            let ca = nu.powi(n as i32) * t2e * (nu * t2e).powi(sign);
            push(name_a, self.a_n(&v)?, ca * pk * self.a_n(head)?);
            let cb = nu.powi(n as i32 + 1) * t2e * (nu * t2e).powi(-sign) * (self.t(3, e) * self.t(4, e)).powi(2)
                / self.t(k, e).powi(2);
            push(name_b, self.b_n(&v)?, cb * pk * self.b_n(head)?);
        }
        Ok(out)
    }

    /// 𝒜_n and ℬ_n as products of two ℋ at size n, using the first n entries of `pts`.
    pub fn determinant_factorizations(&self, n: usize, pts: &[C]) -> Result<Vec<IdentityCheck>> {
        let xs = &pts[..n];
        let [b2, b3, b4] = self.ctx.beta;
        let plus = |extra: &[C]| {
            let mut v = xs.to_vec();
            v.extend_from_slice(extra);
            v
        };
        let (a_rhs, b_rhs) = if n.is_multiple_of(2) {
            (
                self.h_det(xs)? * self.h_det(&plus(&[b3, b4]))?,
                self.h_det(&plus(&[b2, b3]))? * self.h_det(&plus(&[b2, b4]))?,
            )
        } else {
            (
                self.h_det(&plus(&[b3]))? * self.h_det(&plus(&[b4]))?,
                self.h_det(&plus(&[b2]))? * self.h_det(&plus(&[b2, b3, b4]))?,
            )
        };
        Ok(vec![
            IdentityCheck { name: format!("A_{n} as H H"), n, deviation: rel(self.a_n(xs)?, a_rhs) },
            IdentityCheck { name: format!("B_{n} as H H"), n, deviation: rel(self.b_n(xs)?, b_rhs) },
        ])
    }

    /// ℋ_2m(…,x; …,x+η) = Π θ(x−η−x_i)θ(x−η+x_i) ℋ_2m−2, using 2m−1 entries of `pts`.
    pub fn h_recurrence(&self, m: usize, pts: &[C]) -> Result<IdentityCheck> {
        let x = pts[0];
        let rest = &pts[1..2 * m - 1];
        let e = self.eta();
        let lhs = limit(|d| {
            let mut v = rest[..m - 1].to_vec();
            v.push(x);
            v.extend_from_slice(&rest[m - 1..]);
            v.push(x + e + d);
            self.h_det(&v)
        })?;
        let pref = rest.iter().fold(re(1.0), |acc, &z| acc * self.t(1, x - e - z) * self.t(1, x - e + z));
        Ok(IdentityCheck { name: "H string".into(), n: 2 * m, deviation: rel(lhs, pref * self.h_det(rest)?) })
    }

    /// A_2 special values.
    pub fn a2_recurrences(&self, x: C) -> Vec<IdentityCheck> {
        let e = self.eta();
        let nu = self.ctx.nu;
        let mut out = vec![IdentityCheck {
            name: "A2 string".into(),
            n: 2,
            deviation: rel(self.a2(x, x + e), -nu * nu * self.t(3, x) * self.t(3, x + e) * self.t(4, x) * self.t(4, x + e)),
        }];
        for k in [3u8, 4] {
            let rhs = nu.powi(3) * self.t(2, e).powi(2) * self.t(k, x).powi(2);
            out.push(IdentityCheck {
                name: format!("A2 at beta{k}"),
                n: 2,
                deviation: rel(self.a2(x, self.ctx.beta[k as usize - 2]), rhs),
            });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::symmetric_limit;
    use crate::theta::c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn draws(rng: &mut ChaCha8Rng, k: usize) -> Vec<C> {
        (0..k).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-0.3..0.3))).collect()
    }

    #[test]
    fn a2_closed_recurrences() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let e = Elliptic::new(&ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = draws(&mut rng, 2);
        let (x, y) = (v[0], v[1]);
        let eta = e.eta();
        let nu = ctx.nu;
        assert!(rel(e.a2(x, y), e.a2(y, x)) < 1e-12);
        let rhs = -nu * nu * e.t(3, x) * e.t(3, x + eta) * e.t(4, x) * e.t(4, x + eta);
        assert!(rel(e.a2(x, x + eta), rhs) < 1e-12);
        for (k, b) in [(3u8, ctx.beta[1]), (4, ctx.beta[2])] {
            let rhs = nu.powi(3) * e.t(2, eta).powi(2) * e.t(k, x).powi(2);
            assert!(rel(e.a2(x, b), rhs) < 1e-10);
        }
        assert!(rel(e.a_n(&[x, y]).unwrap(), e.a2(x, y)) < 1e-12);
    }

    #[test]
    fn h_is_fully_symmetric() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let e = Elliptic::new(&ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let xs = draws(&mut rng, 6);
        let h0 = e.h_det(&xs).unwrap();
        let sw = vec![xs[3], xs[1], xs[2], xs[0], xs[4], xs[5]];
        assert!(rel(e.h_det(&sw).unwrap(), h0) < 1e-8);
        assert!((e.h_det(&xs[..2]).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn pfaffian_recurrence_block() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let e = Elliptic::new(&ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pts = draws(&mut rng, 5);
        for n in 2..=4 {
            for c in e.pfaffian_recurrences(n, &pts).unwrap() {
                assert!(c.deviation < 1e-7, "{} n={} {}", c.name, n, c.deviation);
            }
            for c in e.determinant_factorizations(n, &pts).unwrap() {
                assert!(c.deviation < 1e-8, "{} {}", c.name, c.deviation);
            }
        }
    }

    #[test]
    fn h_string_recurrence() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let e = Elliptic::new(&ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = draws(&mut rng, 5);
        let x = v[0];
        let eta = e.eta();
        let lhs = symmetric_limit(|d| e.h_det(&[v[1], v[2], x, v[3], v[4], x + eta + d]), 1e-3).unwrap();
        let pref = v[1..].iter().fold(re(1.0), |a, &z| a * e.t(1, x - eta - z) * e.t(1, x - eta + z));
        assert!(rel(lhs, pref * e.h_det(&v[1..]).unwrap()) < 1e-7);
    }
}
