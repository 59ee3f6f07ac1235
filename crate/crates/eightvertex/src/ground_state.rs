//! The distinguished eigenvector Ψ_L of the transfer matrix and numerical
//! checks of its exchange, flip, periodicity, wheel and recurrence properties.

use crate::lattice::{
    apply_two_site, eigenvalue, flip_all_matrix, flip_site, insert_singlet, r_check, r_factor,
    sigma_z_product_sign, transfer,
};
use crate::linalg::{fit_scalar, nullspace_vector, projective_residual, singular_values_ascending, CMat, CVec};
use crate::theta::{c, re, EllipticContext, C};
use crate::{Error, Result};

/// Shift parameters used for the stacked solve and its independent validation.
pub const SOLVE_U: C = C::new(0.123, 0.05);
pub const VALIDATE_U: C = C::new(-0.311, 0.137);
pub const KERNEL_TOL: f64 = 1e-8;
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Unit 2-norm, phase arbitrary.
    Projective,
    /// Fixed by the recursive construction from Ψ_1 = (1,1).
    Canonical,
}

#[derive(Clone, Debug)]
pub struct GroundState {
    pub l: usize,
    pub n: usize,
    pub xs: Vec<C>,
    pub amplitudes: CVec,
    /// Relative eigen-residual at the validation shift.
    pub residual: f64,
    /// Number of near-zero singular values of (T − t) and of the stacked system.
    pub kernel_dims: (usize, usize),
    pub normalization: Normalization,
}

fn count_small(sv: &[f64], tol: f64) -> usize {
    let top = sv.last().copied().unwrap_or(0.0);
    sv.iter().filter(|&&s| s <= tol * top).count()
}

pub fn eigen_residual(v: &CVec, xs: &[C], u: C, ctx: &EllipticContext) -> Result<f64> {
    let t = transfer(u, xs, ctx)?;
    let lam = eigenvalue(u, xs, ctx);
    Ok((t.apply(v) - v * lam).norm() / (v.norm() * lam.norm()))
}

/// Joint kernel of (T_L(u) − t_L(u)) and (F_* − (−1)^n) at one shift, validated at another.
/// Fails with `DegenerateKernel` unless the joint kernel is one-dimensional.
pub fn solve(xs: &[C], ctx: &EllipticContext) -> Result<GroundState> {
    let gs = solve_unchecked(xs, ctx)?;
    if gs.kernel_dims.1 != 1 {
        return Err(Error::DegenerateKernel(gs.kernel_dims.1));
    }
    if gs.residual > RESIDUAL_TOL {
        return Err(Error::ResidualTooLarge(gs.residual));
    }
    Ok(gs)
}

/// As [`solve`] but returns the smallest-singular-vector whatever the kernel dimensions.
pub fn solve_unchecked(xs: &[C], ctx: &EllipticContext) -> Result<GroundState> {
    let l = xs.len();
    let n = (l - 1) / 2;
    let dim = 1usize << l;
    if l == 1 {
        let v = CVec::from_vec(vec![re(1.0), re(1.0)]).unscale(2f64.sqrt());
        return Ok(GroundState {
            l,
            n,
            xs: xs.to_vec(),
            amplitudes: v,
            residual: 0.0,
            kernel_dims: (2, 1),
            normalization: Normalization::Projective,
        });
    }
    let t = transfer(SOLVE_U, xs, ctx)?;
    let lam = eigenvalue(SOLVE_U, xs, ctx);
    let shifted = &t.m - CMat::identity(dim, dim) * lam;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let fl = flip_all_matrix(l) - CMat::identity(dim, dim) * re(sign);
    let mut stacked = CMat::zeros(2 * dim, dim);
    stacked.view_mut((0, 0), (dim, dim)).copy_from(&(&shifted / lam));
    stacked.view_mut((dim, 0), (dim, dim)).copy_from(&fl);
    let (v, sv) = nullspace_vector(&stacked);
    let joint = count_small(&sv, KERNEL_TOL);
    let alone = count_small(&singular_values_ascending(&(&shifted / lam)), KERNEL_TOL);
    let residual = eigen_residual(&v, xs, VALIDATE_U, ctx)?;
    Ok(GroundState {
        l,
        n,
        xs: xs.to_vec(),
        amplitudes: v,
        residual,
        kernel_dims: (alone, joint),
        normalization: Normalization::Projective,
    })
}

/// Ψ_L in its canonical normalization.
///
/// Components with Π_{k<L} σ^z_k = +1 are obtained from the projective
/// solve; the others are reconstructed exactly by elliptic Lagrange
/// interpolation in x_L through the recursion nodes x_L = x_j + 2η,
/// and the ratio of the two fixes the scale.
pub fn canonical(xs: &[C], ctx: &EllipticContext) -> Result<GroundState> {
    let l = xs.len();
    if l == 1 {
        return Ok(GroundState {
            l,
            n: 0,
            xs: xs.to_vec(),
            amplitudes: CVec::from_vec(vec![re(1.0), re(1.0)]),
            residual: 0.0,
            kernel_dims: (2, 1),
            normalization: Normalization::Canonical,
        });
    }
    let proj = solve_unchecked(xs, ctx)?;
    let interp = interpolated_components(xs, ctx)?;
    let (idx, part) = interp;
    let mut num = re(0.0);
    let mut den = re(0.0);
    for (k, &a) in idx.iter().enumerate() {
        num += proj.amplitudes[a].conj() * part[k];
        den += proj.amplitudes[a].norm_sqr();
    }
    if den == re(0.0) {
        return Err(Error::DivisionByZero("canonical normalization"));
    }
    let mu = num / den;
    Ok(GroundState { amplitudes: proj.amplitudes * mu, normalization: Normalization::Canonical, ..proj })
}

/// Indices with Π_{k<L} σ^z_k = −1 and their values from the recursion nodes.
fn interpolated_components(xs: &[C], ctx: &EllipticContext) -> Result<(Vec<usize>, Vec<C>)> {
    let l = xs.len();
    let others = &xs[..l - 1];
    let two_eta = re(2.0 * ctx.eta);
    let mut nodes = Vec::with_capacity(l - 1);
    let mut node_vecs = Vec::with_capacity(l - 1);
    for j in 0..l - 1 {
        let y = others[j] + two_eta;
        let rest: Vec<C> = others.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect();
        let pref = rest.iter().fold(re(1.0), |acc, &xk| acc * ctx.th(1, others[j] - two_eta - xk));
        let inner = canonical(&rest, ctx)?;
        let mut v = insert_singlet(&inner.amplitudes, j, l - 2) * pref;
        // move the spectral parameter y from site j+1 to the last site
        for (q, &e) in others.iter().enumerate().skip(j + 1) {
            let r = r_factor(e - y, ctx);
            if r.norm() < 1e-13 {
                return Err(Error::DivisionByZero("exchange to last site"));
            }
            v = apply_two_site(&r_check(e - y, ctx), &v, q, l) / r;
        }
        nodes.push(y);
        node_vecs.push(v);
    }
    let x = xs[l - 1];
    let total: C = others.iter().sum();
    let pt = ctx.pi_tau();
    let basis = |m: usize, t: C| -> C {
        let mut b = total - pt;
        let mut prod = re(1.0);
        for (k, &y) in nodes.iter().enumerate() {
            if k != m {
                b -= y;
                prod *= ctx.th2(1, t - y);
            }
        }
        (c(0.0, 1.0) * t).exp() * ctx.th2(1, t - b) * prod
    };
    let mut coef = Vec::with_capacity(l - 1);
    for m in 0..l - 1 {
        let d = basis(m, nodes[m]);
        if d.norm() < 1e-300 {
            return Err(Error::DivisionByZero("interpolation node"));
        }
        coef.push(basis(m, x) / d);
    }
    let mut idx = Vec::new();
    let mut vals = Vec::new();
    for a in 0..(1usize << l) {
        if sigma_z_product_sign(a, l, Some(l - 1)) < 0.0 {
            idx.push(a);
            vals.push((0..l - 1).map(|m| node_vecs[m][a] * coef[m]).sum());
        }
    }
    Ok((idx, vals))
}

/// Reorders arguments so that no later entry equals an earlier one plus η
/// modulo π (such pairs make the canonical construction singular).
/// Returns the permutation applied.
pub fn safe_order(xs: &[C], eta: f64) -> Vec<usize> {
    let l = xs.len();
    let near = |a: C, b: C| -> bool {
        // a ≡ b + η (mod π)
        let d = a - b - eta;
        let k = (d.re / std::f64::consts::PI).round();
        (d - k * std::f64::consts::PI).norm() < 0.05
    };
    let mut remaining: Vec<usize> = (0..l).collect();
    let mut order = Vec::with_capacity(l);
    while !remaining.is_empty() {
        // pick an element that no remaining one must precede
        let pos = remaining
            .iter()
            .position(|&i| !remaining.iter().any(|&k| k != i && near(xs[k], xs[i])))
            .unwrap_or(0);
        order.push(remaining.remove(pos));
    }
    order
}

/// Exchange relation residual at sites (i, i+1), 0-based.
pub fn check_exchange(xs: &[C], i: usize, ctx: &EllipticContext) -> Result<f64> {
    let a = solve(xs, ctx)?;
    let mut sw = xs.to_vec();
    sw.swap(i, i + 1);
    let b = solve(&sw, ctx)?;
    let d = xs[i + 1] - xs[i];
    let lhs = apply_two_site(&r_check(d, ctx), &a.amplitudes, i, xs.len());
    let rhs = &b.amplitudes * r_factor(d, ctx);
    Ok(projective_residual(&lhs, &rhs))
}

#[derive(Clone, Debug)]
pub struct FlipCheck {
    pub projective: f64,
    /// |λ/prefactor − 1| for the canonical normalization.
    pub prefactor: f64,
}

fn flip_prefactor(xs: &[C], i: usize, ctx: &EllipticContext) -> C {
    let n = ((xs.len() - 1) / 2) as i32;
    let rest: C = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).sum();
    (-ctx.p).powi(n) * (c(0.0, 2.0 * n as f64) * xs[i] - c(0.0, 1.0) * rest).exp()
}

/// F_i Ψ(…x_i…) against Ψ(…x_i+πτ…).
pub fn check_flip(xs: &[C], i: usize, ctx: &EllipticContext) -> Result<FlipCheck> {
    let l = xs.len();
    let mut sh = xs.to_vec();
    sh[i] += ctx.pi_tau();
    let a = canonical(xs, ctx)?;
    let b = canonical(&sh, ctx)?;
    let lhs = flip_site(&a.amplitudes, i, l);
    let rhs = solve(&sh, ctx)?;
    let projective = projective_residual(&lhs, &rhs.amplitudes);
    let lam = fit_scalar(&lhs, &b.amplitudes);
    let pref = flip_prefactor(xs, i, ctx);
    Ok(FlipCheck { projective, prefactor: (lam / pref - 1.0).norm() })
}

/// Ψ(…x_i+π…) against Π_{j≠i} σ^z_j Ψ, both projectively and in the canonical scale.
pub fn check_pi_shift(xs: &[C], i: usize, ctx: &EllipticContext) -> Result<(f64, f64)> {
    let l = xs.len();
    let mut sh = xs.to_vec();
    sh[i] += re(std::f64::consts::PI);
    let a = canonical(xs, ctx)?;
    let b = canonical(&sh, ctx)?;
    let signed = CVec::from_fn(1 << l, |k, _| a.amplitudes[k] * sigma_z_product_sign(k, l, Some(i)));
    let proj = projective_residual(&solve(&sh, ctx)?.amplitudes, &signed);
    Ok((proj, (&b.amplitudes - &signed).norm() / signed.norm()))
}

#[derive(Clone, Debug)]
pub struct WheelCheck {
    /// ‖Ψ(wheel)‖ / ‖Ψ(reference)‖ in the canonical normalization.
    pub ratio: f64,
    pub kernel_dims: (usize, usize),
}

/// Wheel (x, x+2η, x+4η) on the last three sites; `pi_shift` adds π to the middle entry.
/// The reference point moves the last entry off the wheel.
pub fn check_wheel(head: &[C], x: C, pi_shift: bool, ctx: &EllipticContext) -> Result<WheelCheck> {
    let two_eta = re(2.0 * ctx.eta);
    let mid = x + two_eta + if pi_shift { re(std::f64::consts::PI) } else { re(0.0) };
    let mut xs = head.to_vec();
    xs.extend_from_slice(&[x, mid, x + two_eta * 2.0]);
    let at = canonical(&xs, ctx)?;
    let mut off = xs.clone();
    let last = off.len() - 1;
    off[last] += c(0.37, 0.05);
    let reference = canonical(&off, ctx)?;
    Ok(WheelCheck { ratio: at.amplitudes.norm() / reference.amplitudes.norm(), kernel_dims: at.kernel_dims })
}

#[derive(Clone, Debug)]
pub struct RecurrenceCheck {
    /// Post-fit deviation of the independently solved Ψ_L.
    pub deviation: f64,
    /// Fitted scalar between canonical Ψ_L and the reduced product.
    pub constant: C,
    /// Largest |Ψ_α| / ‖Ψ‖ over components with equal spins at i, i+1.
    pub equal_spin_max: f64,
    /// Max deviation of the sign rule Ψ_{…↑↓…} = −Ψ_{…↓↑…}.
    pub sign_rule: f64,
}

/// Ψ_L(…, x, x+2η, …) with the pair at sites (i, i+1) against
/// Π_{j≠i,i+1} θ(x−2η−x_j) Ψ_{L−2}(rest) ⊗ s_{i,i+1}.
pub fn check_recurrence(rest: &[C], i: usize, x: C, ctx: &EllipticContext) -> Result<RecurrenceCheck> {
    let two_eta = re(2.0 * ctx.eta);
    let mut xs = rest[..i].to_vec();
    xs.push(x);
    xs.push(x + two_eta);
    xs.extend_from_slice(&rest[i..]);
    let l = xs.len();
    let big = canonical(&xs, ctx)?;
    let small = canonical(rest, ctx)?;
    let pref = rest.iter().fold(re(1.0), |acc, &xj| acc * ctx.th(1, x - two_eta - xj));
    let rhs = insert_singlet(&small.amplitudes, i, l - 2) * pref;
    let indep = solve(&xs, ctx)?;
    let lam = fit_scalar(&indep.amplitudes, &rhs);
    let deviation = (&indep.amplitudes - &rhs * lam).norm() / indep.amplitudes.norm();
    let constant = fit_scalar(&big.amplitudes, &rhs);
    let (si, sj) = (l - 1 - i, l - 2 - i);
    let norm = big.amplitudes.norm();
    let mut equal_spin_max: f64 = 0.0;
    let mut sign_rule: f64 = 0.0;
    for a in 0..(1usize << l) {
        let (bi, bj) = ((a >> si) & 1, (a >> sj) & 1);
        if bi == bj {
            equal_spin_max = equal_spin_max.max(big.amplitudes[a].norm() / norm);
        } else if bi == 0 {
            let b = a ^ (1 << si) ^ (1 << sj);
            sign_rule = sign_rule.max((big.amplitudes[a] + big.amplitudes[b]).norm() / norm);
        }
    }
    Ok(RecurrenceCheck { deviation, constant, equal_spin_max, sign_rule })
}

/// Singular values of the matrix of entries x_1 ↦ Ψ_α(x_1, …) sampled on a
/// grid, restricted to one π-periodicity class; the numerical rank is the
/// dimension of the space the entries live in.
pub fn entry_space_spectrum(xs: &[C], grid: &[C], ctx: &EllipticContext) -> Result<Vec<f64>> {
    let l = xs.len();
    let class: Vec<usize> = (0..1usize << l).filter(|&a| sigma_z_product_sign(a, l, Some(0)) > 0.0).collect();
    let mut m = CMat::zeros(class.len(), grid.len());
    for (k, &g) in grid.iter().enumerate() {
        let mut ys = xs.to_vec();
        ys[0] = g;
        let v = canonical(&ys, ctx)?;
        for (r, &a) in class.iter().enumerate() {
            m[(r, k)] = v.amplitudes[a];
        }
    }
    let mut sv = singular_values_ascending(&m);
    sv.reverse();
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::xyz_hamiltonian;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn draws(rng: &mut ChaCha8Rng, k: usize) -> Vec<C> {
        (0..k).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-0.2..0.2))).collect()
    }

    #[test]
    fn size_one_is_flat() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let g = canonical(&[c(0.3, 0.0)], &ctx).unwrap();
        assert_eq!(g.amplitudes[0], g.amplitudes[1]);
    }

    #[test]
    fn size_three_kernel_dims() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ctx = EllipticContext::real(0.2).unwrap();
        let g = solve(&draws(&mut rng, 3), &ctx).unwrap();
        assert_eq!(g.kernel_dims, (2, 1));
        assert!(g.residual < 1e-10);
    }

    #[test]
    fn canonical_is_an_eigenvector() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let ctx = EllipticContext::real(0.15).unwrap();
        let xs = draws(&mut rng, 5);
        let g = canonical(&xs, &ctx).unwrap();
        assert!(eigen_residual(&g.amplitudes, &xs, c(0.5, 0.1), &ctx).unwrap() < 1e-9);
        let fl = crate::lattice::flip_all(&g.amplitudes);
        assert!((fl - &g.amplitudes).norm() < 1e-9 * g.amplitudes.norm());
    }

    #[test]
    fn exchange_and_equal_arguments() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let ctx = EllipticContext::real(0.2).unwrap();
        let xs = draws(&mut rng, 3);
        assert!(check_exchange(&xs, 0, &ctx).unwrap() < 1e-8);
        let mut eq = xs.clone();
        eq[1] = eq[0];
        assert!(check_exchange(&eq, 0, &ctx).unwrap() < 1e-8);
    }

    #[test]
    fn flip_prefactor_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let ctx = EllipticContext::real(0.15).unwrap();
        let xs = draws(&mut rng, 3);
        let f = check_flip(&xs, 1, &ctx).unwrap();
        assert!(f.projective < 1e-7 && f.prefactor < 1e-7, "{f:?}");
    }

    #[test]
    fn wheel_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let ctx = EllipticContext::real(0.2).unwrap();
        let head = draws(&mut rng, 2);
        let w = check_wheel(&head, c(0.21, 0.07), false, &ctx).unwrap();
        assert!(w.ratio < 1e-8, "{w:?}");
        let w = check_wheel(&head, c(0.21, 0.07), true, &ctx).unwrap();
        assert!(w.ratio < 1e-8, "{w:?}");
    }

    #[test]
    fn homogeneous_point_is_hamiltonian_eigenvector() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let xs = vec![c(0.17, 0.0); 3];
        let g = solve(&xs, &ctx).unwrap();
        let (h, e) = xyz_hamiltonian(3, ctx.zeta.re);
        let r = (&h * &g.amplitudes - &g.amplitudes * re(e)).norm() / g.amplitudes.norm();
        assert!(r < 1e-9, "{r}");
    }

    #[test]
    fn size_three_entries_span_two_dimensions() {
        let ctx = EllipticContext::real(0.2).unwrap();
        let xs = vec![c(0.1, 0.02), c(-0.4, 0.1), c(0.7, -0.05)];
        let grid: Vec<C> = (0..6).map(|k| c(-0.9 + 0.3 * k as f64, 0.03 * k as f64)).collect();
        let sv = entry_space_spectrum(&xs, &grid, &ctx).unwrap();
        assert!(sv[2] < 1e-9 * sv[0] && sv[1] > 1e-4 * sv[0], "{sv:?}");
    }

    #[test]
    fn safe_order_moves_shifted_entries_first() {
        let eta = crate::theta::ETA;
        let xs = vec![c(0.1, 0.0), c(0.1 + eta, 0.0), c(-0.5, 0.0)];
        let ord = safe_order(&xs, eta);
        let p0 = ord.iter().position(|&k| k == 0).unwrap();
        let p1 = ord.iter().position(|&k| k == 1).unwrap();
        assert!(p1 < p0);
    }
}
