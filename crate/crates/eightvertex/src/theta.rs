//! Jacobi theta functions and the constants of the model at η = π/3.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub type C = Complex64;

pub const ETA: f64 = PI / 3.0;
pub const DEFAULT_CUTOFF: f64 = 1e-17;
pub const MAX_TERMS: usize = 400;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn re(x: f64) -> C {
    C::new(x, 0.0)
}

/// θ_kind(x; nome) by the q-series, stopping once a term is below `cutoff`
/// times the accumulated magnitude.
pub fn theta_with_cutoff(kind: u8, x: C, nome: C, cutoff: f64) -> Result<C> {
    if nome.norm() >= 1.0 {
        return Err(Error::Nonconvergent(nome.norm()));
    }
    if nome.norm() == 0.0 {
        return Ok(match kind {
            1 | 2 => re(0.0),
            _ => re(1.0),
        });
    }
    let q4 = nome.powf(0.25);
    let mut sum = re(0.0);
    let mut scale = 0.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let term = match kind {
            1 => {
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                nome.powf(kf * (kf + 1.0)) * ((2.0 * kf + 1.0) * x).sin() * s
            }
            2 => nome.powf(kf * (kf + 1.0)) * ((2.0 * kf + 1.0) * x).cos(),
            3 | 4 => {
                if k == 0 {
                    re(0.5)
                } else {
                    let s = if kind == 4 && k % 2 == 1 { -1.0 } else { 1.0 };
                    nome.powf(kf * kf) * (2.0 * kf * x).cos() * s
                }
            }
            _ => panic!("theta kind must be 1..4"),
        };
        sum += term;
        scale = scale.max(term.norm()).max(sum.norm());
        let bound = nome.norm().powf((kf + 1.0) * (kf + 1.0)) * (2.0 * (kf + 2.0) * x.im.abs()).exp();
        if k >= 1 && term.norm() <= cutoff * scale && bound <= cutoff * scale.max(1e-300) {
            return Ok(match kind {
                1 | 2 => sum * q4 * 2.0,
                _ => sum * 2.0,
            });
        }
    }
    Err(Error::CutoffNotReached(MAX_TERMS))
}

pub fn theta(kind: u8, x: C, nome: C) -> Result<C> {
    theta_with_cutoff(kind, x, nome, DEFAULT_CUTOFF)
}

/// All constants of the model for one value of the nome p.
#[derive(Clone, Debug)]
pub struct EllipticContext {
    pub p: C,
    pub p2: C,
    pub tau: C,
    pub eta: f64,
    pub zeta: C,
    pub kappa: C,
    pub nu: C,
    /// β_2, β_3, β_4
    pub beta: [C; 3],
    /// J_2, J_3, J_4
    pub j: [C; 3],
    pub cutoff: f64,
}

impl EllipticContext {
    pub fn new(p: C) -> Result<Self> {
        if p.norm() >= 1.0 {
            return Err(Error::Nonconvergent(p.norm()));
        }
        let p2 = p * p;
        let eta = ETA;
        let t1 = theta(1, re(eta), p2)?;
        let t4 = theta(4, re(eta), p2)?;
        let zeta = (t1 / t4) * (t1 / t4);
        let tau = if p.norm() == 0.0 { c(0.0, f64::INFINITY) } else { p.ln() / c(0.0, PI) };
        let pt = tau * PI;
        let beta = [re(PI / 2.0 + eta), re(PI / 2.0 + eta) + pt / 2.0, pt / 2.0 + eta];
        let kappa = if p.norm() == 0.0 {
            re(0.0)
        } else {
            theta(2, re(0.0), p)? * theta(3, re(0.0), p)? * theta(4, re(0.0), p)? / 2.0
        };
        let nu = if p.norm() == 0.0 {
            re(f64::INFINITY)
        } else {
            C::from_polar(1.0, -2.0 * PI / 3.0) / p.sqrt()
        };
        let one = re(1.0);
        let j = [re(-0.5), one / (one + zeta), one / (one - zeta)];
        Ok(EllipticContext { p, p2, tau, eta, zeta, kappa, nu, beta, j, cutoff: DEFAULT_CUTOFF })
    }

    pub fn real(p: f64) -> Result<Self> {
        Self::new(re(p))
    }

    /// θ_k(x; p)
    pub fn th(&self, k: u8, x: C) -> C {
        theta_with_cutoff(k, x, self.p, self.cutoff).expect("nome validated at construction")
    }
    /// θ_k(x; p²)
    pub fn th2(&self, k: u8, x: C) -> C {
        theta_with_cutoff(k, x, self.p2, self.cutoff).expect("nome validated at construction")
    }
    /// πτ
    pub fn pi_tau(&self) -> C {
        self.tau * PI
    }

    /// The rational uniformizing variable w(x).
    pub fn uniformize(&self, x: C) -> Result<C> {
        let den = self.th(1, x - self.eta) * self.th(1, x + self.eta);
        if den.norm() < 1e-300 {
            return Err(Error::Pole);
        }
        let one = re(1.0);
        let pref = (one - self.zeta * self.zeta).powf(-1.0 / 3.0);
        let t = self.th(1, x);
        Ok(pref * t * t / den)
    }

    /// κ from its second expression θ_2(η)θ_3(η)θ_4(η).
    pub fn kappa_alt(&self) -> C {
        let e = re(self.eta);
        self.th(2, e) * self.th(3, e) * self.th(4, e)
    }

    /// κ_k for k = 2, 3, 4 at size n.
    pub fn kappa_k(&self, k: usize, n: usize) -> C {
        match k {
            2 => re(1.0),
            _ => -self.nu.powi(2 * n as i32 - 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn direct_theta1(x: f64, q: f64, terms: usize) -> f64 {
        let mut s = 0.0;
        for k in 0..terms {
            let kf = k as f64;
            let sg = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sg * q.powf(kf * (kf + 1.0)) * ((2.0 * kf + 1.0) * x).sin();
        }
        2.0 * q.powf(0.25) * s
    }

    #[test]
    fn odd_and_zero_nome() {
        assert!(theta(1, re(0.0), re(0.3)).unwrap().norm() < 1e-16);
        assert_eq!(theta(4, c(0.4, 0.2), re(0.0)).unwrap(), re(1.0));
        assert!(matches!(theta(3, re(0.1), re(1.0)), Err(Error::Nonconvergent(_))));
    }

    #[test]
    fn matches_fifty_term_sum() {
        let v = theta(1, re(0.7), re(0.25)).unwrap();
        assert!((v.re - direct_theta1(0.7, 0.25, 50)).abs() < 1e-15);
        assert!(v.im.abs() < 1e-16);
    }

    #[test]
    fn trigonometric_context() {
        let ctx = EllipticContext::real(0.0).unwrap();
        assert_eq!(ctx.zeta, re(0.0));
        assert!((ctx.j[1] - 1.0).norm() < 1e-15 && (ctx.j[2] - 1.0).norm() < 1e-15);
    }

    #[test]
    fn zeta_is_theta_ratio() {
        let ctx = EllipticContext::real(0.1).unwrap();
        let q = 0.01;
        let r = direct_theta1(ETA, q, 50) / {
            let mut s = 1.0;
            for k in 1..50 {
                let kf = k as f64;
                let sg = if k % 2 == 1 { -1.0 } else { 1.0 };
                s += 2.0 * sg * q.powf(kf * kf) * (2.0 * kf * ETA).cos();
            }
            s
        };
        assert!((ctx.zeta.re - r * r).abs() < 1e-14);
        assert_eq!(ctx.j[0], re(-0.5));
        let sum = ctx.j[0] + ctx.j[1] + ctx.j[2];
        let z = ctx.zeta.re;
        assert!((sum.re - (-0.5 + 1.0 / (1.0 + z) + 1.0 / (1.0 - z))).abs() < 1e-15);
    }

    #[test]
    fn kappa_two_ways() {
        for &p in &[0.05, 0.2, 0.45] {
            let ctx = EllipticContext::real(p).unwrap();
            assert!((ctx.kappa - ctx.kappa_alt()).norm() < 1e-13 * ctx.kappa.norm());
        }
    }

    #[test]
    fn special_values_of_w() {
        for k in 1..=10 {
            let ctx = EllipticContext::real(0.05 * k as f64).unwrap();
            for i in 0..3 {
                let w = ctx.uniformize(ctx.beta[i]).unwrap();
                assert!((w - ctx.j[i]).norm() < 1e-10 * ctx.j[i].norm(), "beta_{} p={}", i + 2, ctx.p);
            }
            assert!(ctx.uniformize(re(0.0)).unwrap().norm() < 1e-16);
            assert!(matches!(ctx.uniformize(re(ETA)), Err(Error::Pole)));
        }
    }

    #[test]
    fn trigonometric_limit_of_w() {
        let ctx = EllipticContext::real(1e-6).unwrap();
        for &x in &[0.3, 0.9, 1.4] {
            let z = C::from_polar(1.0, -2.0 * x);
            let lim = (z - 1.0) * (z - 1.0) / (z * z + z + 1.0);
            assert!((ctx.uniformize(re(x)).unwrap() - lim).norm() < 1e-5);
        }
    }

    proptest! {
        #[test]
        fn quasi_periodicity(x in -2.0f64..2.0, y in -0.3f64..0.3, qv in 0.01f64..0.6) {
            let z = c(x, y);
            let nq = re(qv);
            let a = theta(1, z + PI, nq).unwrap();
            let b = theta(1, z, nq).unwrap();
            prop_assert!((a + b).norm() < 1e-12 * (1.0 + b.norm()));
            let a4 = theta(4, z + PI, nq).unwrap();
            let b4 = theta(4, z, nq).unwrap();
            prop_assert!((a4 - b4).norm() < 1e-12 * (1.0 + b4.norm()));
            let s = theta(1, z + PI / 2.0, nq).unwrap() - theta(2, z, nq).unwrap();
            prop_assert!(s.norm() < 1e-12 * (1.0 + b.norm()));
        }
    }
}
