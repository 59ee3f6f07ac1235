//! Cylinder partition function Z_L = ⟨Ψ(−x)|Ψ(x)⟩ and its half-specialization X_n.

use crate::ground_state::{canonical, safe_order};
use crate::theta::{re, EllipticContext, C};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct PartitionValue {
    pub l: usize,
    pub xs: Vec<C>,
    pub value: C,
    /// Scalar dividing the raw pairing; 1 in the canonical normalization.
    pub normalization_scalar: C,
}

fn pairing(order: &[usize], xs: &[C], ctx: &EllipticContext) -> Result<C> {
    let plus: Vec<C> = order.iter().map(|&k| xs[k]).collect();
    let minus: Vec<C> = plus.iter().map(|&x| -x).collect();
    let a = canonical(&plus, ctx)?;
    let b = canonical(&minus, ctx)?;
    // bilinear, not sesquilinear
    Ok(a.amplitudes.iter().zip(b.amplitudes.iter()).map(|(u, v)| u * v).sum())
}

/// Z_L at the given parameters, canonical normalization (Z_1 = 2).
pub fn partition(xs: &[C], ctx: &EllipticContext) -> Result<PartitionValue> {
    let fwd = safe_order(xs, ctx.eta);
    let neg: Vec<C> = xs.iter().map(|&x| -x).collect();
    let bwd = safe_order(&neg, ctx.eta);
    let value = match pairing(&fwd, xs, ctx) {
        Ok(v) => v,
        Err(Error::DivisionByZero(_)) => pairing(&bwd, xs, ctx)?,
        Err(e) => return Err(e),
    };
    Ok(PartitionValue { l: xs.len(), xs: xs.to_vec(), value, normalization_scalar: re(1.0) })
}

pub fn z(xs: &[C], ctx: &EllipticContext) -> Result<C> {
    Ok(partition(xs, ctx)?.value)
}

/// Symmetric Richardson limit of f(d) as d → 0 using ±d and ±2d.
pub fn symmetric_limit<F: Fn(f64) -> Result<C>>(f: F, d: f64) -> Result<C> {
    let a = (f(d)? + f(-d)?) / 2.0;
    let b = (f(2.0 * d)? + f(-2.0 * d)?) / 2.0;
    Ok((a * 4.0 - b) / 3.0)
}

/// Richardson-refined central first derivative.
pub fn central_derivative<F: Fn(f64) -> Result<C>>(f: F, h: f64) -> Result<C> {
    let d1 = (f(h)? - f(-h)?) / (2.0 * h);
    let d2 = (f(2.0 * h)? - f(-2.0 * h)?) / (4.0 * h);
    Ok((d1 * 4.0 - d2) / 3.0)
}

pub const LIMIT_STEP: f64 = 1e-3;

/// Z_L(head…, x, x+η) / (Π θ²(x−η−x_i) Z_{L−2}(head…)), one scalar per size.
pub fn recurrence_ratio(head: &[C], x: C, ctx: &EllipticContext) -> Result<C> {
    let eta = re(ctx.eta);
    let lhs = symmetric_limit(
        |d| {
            let mut xs = head.to_vec();
            xs.push(x);
            xs.push(x + eta + d);
            z(&xs, ctx)
        },
        LIMIT_STEP,
    )?;
    let pref = head.iter().fold(re(1.0), |acc, &xi| acc * ctx.th(1, x - eta - xi).powi(2));
    Ok(lhs / (pref * z(head, ctx)?))
}

#[derive(Clone, Debug)]
pub struct HalfSpecialized {
    pub n: usize,
    pub xs: Vec<C>,
    pub x_value: C,
}

fn half_args(xs: &[C]) -> Vec<C> {
    let mut args = xs.to_vec();
    args.extend(xs.iter().map(|&x| -x));
    args.push(re(0.0));
    args
}

/// X_n(x) = Z_L(x, −x, 0) / (2 Π θ²(x_i−η)θ²(x_i+η)).
pub fn half_specialize(xs: &[C], ctx: &EllipticContext) -> Result<HalfSpecialized> {
    let eta = re(ctx.eta);
    let zv = z(&half_args(xs), ctx)?;
    let den = xs.iter().fold(re(2.0), |acc, &x| {
        acc * (ctx.th(1, x - eta) * ctx.th(1, x + eta)).powi(2)
    });
    Ok(HalfSpecialized { n: xs.len(), xs: xs.to_vec(), x_value: zv / den })
}

#[derive(Clone, Debug)]
pub struct DoubleZero {
    pub value: f64,
    pub derivative: f64,
}

/// Value and x-derivative of Z_L(x, 0, −x, rest…) at x = −2η, relative to |Z| at a generic point.
pub fn double_zero(rest: &[C], ctx: &EllipticContext) -> Result<DoubleZero> {
    let eta = ctx.eta;
    let build = |x: C| {
        let mut v = vec![x, re(0.0), -x];
        v.extend_from_slice(rest);
        v
    };
    let x0 = re(-2.0 * eta);
    let scale = z(&build(x0 + C::new(0.3, 0.1)), ctx)?.norm();
    let value = symmetric_limit(|d| z(&build(x0 + C::new(0.0, d)), ctx), LIMIT_STEP)?.norm() / scale;
    let der = central_derivative(|h| z(&build(x0 + re(h)), ctx), LIMIT_STEP)?.norm() / scale;
    Ok(DoubleZero { value, derivative: der })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::c;

    #[test]
    fn size_one_is_two() {
        let ctx = EllipticContext::real(0.2).unwrap();
        assert!((z(&[c(0.4, 0.1)], &ctx).unwrap() - 2.0).norm() < 1e-12);
    }

    #[test]
    fn symmetric_and_periodic() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let xs = vec![c(0.3, 0.1), c(-0.6, 0.05), c(0.9, -0.1)];
        let z0 = z(&xs, &ctx).unwrap();
        let z1 = z(&[xs[1], xs[0], xs[2]], &ctx).unwrap();
        let z2 = z(&[xs[0] + std::f64::consts::PI, xs[1], xs[2]], &ctx).unwrap();
        assert!((z1 - z0).norm() < 1e-8 * z0.norm());
        assert!((z2 - z0).norm() < 1e-8 * z0.norm());
    }

    #[test]
    fn recurrence_constant_is_one_at_size_three() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let r = recurrence_ratio(&[c(0.25, 0.1)], c(-0.4, 0.05), &ctx).unwrap();
        assert!((r - 1.0).norm() < 1e-6, "{r}");
    }

    #[test]
    fn half_specialized_is_even() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let a = half_specialize(&[c(0.3, 0.1)], &ctx).unwrap().x_value;
        let b = half_specialize(&[c(-0.3, -0.1)], &ctx).unwrap().x_value;
        assert!((a - b).norm() < 1e-8 * a.norm());
    }
}
