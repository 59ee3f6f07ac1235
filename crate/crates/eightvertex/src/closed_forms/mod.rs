//! Closed-form evaluators for the half-specialized partition function:
//! Pfaffians, Tsuchiya-type determinants and the Slater determinant, in the
//! elliptic variables and in the rational uniformized variables.

pub mod elliptic;
pub mod rational;
pub mod slater;

use crate::theta::{EllipticContext, C};
use crate::Result;
use elliptic::Elliptic;
use rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    A,
    B,
    H,
}

/// rational(w(x)) · Π(θ(x_i−η)θ(x_i+η))^{e} / elliptic(x); constant in x once the exponent is right.
pub fn normalization_constant(form: Form, xs: &[C], ctx: &EllipticContext) -> Result<C> {
    let e = Elliptic::new(ctx);
    let r = Rational::new(ctx.zeta);
    let ws: Vec<C> = xs.iter().map(|&x| ctx.uniformize(x)).collect::<Result<_>>()?;
    let n = xs.len();
    let (rat, ell, power) = match form {
        Form::A => (r.a_n(&ws)?, e.a_n(xs)?, n.saturating_sub(1)),
        Form::B => (r.b_n(&ws)?, e.b_n(xs)?, n),
        Form::H => (r.h_det(&ws)?, e.h_det(xs)?, n / 2 - 1),
    };
    let refp = xs.iter().fold(C::new(1.0, 0.0), |acc, &x| acc * e.reference(x).powi(power as i32));
    Ok(rat * refp / ell)
}

/// Fit the normalization at the first point and report the relative deviation at the others.
pub fn consistency(form: Form, draws: &[Vec<C>], ctx: &EllipticContext) -> Result<(C, f64)> {
    let c0 = normalization_constant(form, &draws[0], ctx)?;
    let mut worst: f64 = 0.0;
    for xs in &draws[1..] {
        let c = normalization_constant(form, xs, ctx)?;
        worst = worst.max(elliptic::rel(c, c0));
    }
    Ok((c0, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::c;

    #[test]
    fn rational_matches_elliptic() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let draws: Vec<Vec<C>> = (0..3)
            .map(|k| (0..4).map(|i| c(0.2 + 0.31 * i as f64 - 0.17 * k as f64, 0.05 + 0.07 * k as f64)).collect())
            .collect();
        for n in 1..=4 {
            let d: Vec<Vec<C>> = draws.iter().map(|v| v[..n].to_vec()).collect();
            for f in [Form::A, Form::B] {
                let (_, dev) = consistency(f, &d, &ctx).unwrap();
                assert!(dev < 1e-8, "{f:?} n={n} {dev}");
            }
            if n % 2 == 0 {
                let (_, dev) = consistency(Form::H, &d, &ctx).unwrap();
                assert!(dev < 1e-8, "H n={n} {dev}");
            }
        }
    }
}
