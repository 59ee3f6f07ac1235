//! Boltzmann weights, R-matrices, transfer matrix and local spin operators.
//!
//! Basis convention: site 1 is the most significant bit of the basis index,
//! spin up is 0 and spin down is 1.

use crate::linalg::{CMat, CVec};
use crate::theta::{re, EllipticContext, C};
use crate::{Error, Result};

pub const MAX_SITES: usize = 9;

/// A two-site operator in the basis |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
pub type Op4 = [[C; 4]; 4];

#[derive(Clone, Copy, Debug)]
pub struct Weights {
    pub x: C,
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

pub fn weights(x: C, ctx: &EllipticContext) -> Weights {
    let e2 = re(2.0 * ctx.eta);
    let t4e = ctx.th2(4, e2);
    let t1e = ctx.th2(1, e2);
    let (t1x, t4x) = (ctx.th2(1, x), ctx.th2(4, x));
    let (t1y, t4y) = (ctx.th2(1, x + e2), ctx.th2(4, x + e2));
    Weights {
        x,
        a: t4e * t4x * t1y,
        b: t4e * t1x * t4y,
        c: t1e * t4x * t4y,
        d: t1e * t1x * t1y,
    }
}

/// Eigenvalue factor r(x) = θ_4(0)θ_1(x+η)θ_4(x+η), nome p².
pub fn r_factor(x: C, ctx: &EllipticContext) -> C {
    let e = re(ctx.eta);
    ctx.th2(4, re(0.0)) * ctx.th2(1, x + e) * ctx.th2(4, x + e)
}

pub fn r_matrix(x: C, ctx: &EllipticContext) -> Op4 {
    let w = weights(x, ctx);
    let z = re(0.0);
    [[w.a, z, z, w.d], [z, w.b, w.c, z], [z, w.c, w.b, z], [w.d, z, z, w.a]]
}

/// Ř = 𝒫R.
pub fn r_check(x: C, ctx: &EllipticContext) -> Op4 {
    let r = r_matrix(x, ctx);
    [r[0], r[2], r[1], r[3]]
}

pub fn swap_op() -> Op4 {
    let (o, z) = (re(1.0), re(0.0));
    [[o, z, z, z], [z, z, o, z], [z, o, z, z], [z, z, z, o]]
}

pub fn op4_mul(a: &Op4, b: &Op4) -> Op4 {
    let mut out = [[re(0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn op4_norm(a: &Op4) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn bit(index: usize, site: usize, l: usize) -> usize {
    (index >> (l - 1 - site)) & 1
}

/// Apply a two-site operator on sites (i, i+1), 0-based.
pub fn apply_two_site(op: &Op4, v: &CVec, i: usize, l: usize) -> CVec {
    assert!(i + 1 < l);
    let dim = 1usize << l;
    let (si, sj) = (l - 1 - i, l - 2 - i);
    let mask = (1usize << si) | (1usize << sj);
    let mut out = CVec::zeros(dim);
    for a in 0..dim {
        let row = 2 * ((a >> si) & 1) + ((a >> sj) & 1);
        let base = a & !mask;
        let mut acc = re(0.0);
        for col in 0..4 {
            let coef = op[row][col];
            if coef.norm() == 0.0 {
                continue;
            }
            let b = base | ((col >> 1) << si) | ((col & 1) << sj);
            acc += coef * v[b];
        }
        out[a] = acc;
    }
    out
}

/// σ^x on one site.
pub fn flip_site(v: &CVec, i: usize, l: usize) -> CVec {
    let m = 1usize << (l - 1 - i);
    CVec::from_fn(v.len(), |a, _| v[a ^ m])
}

/// F_* = Π σ^x, reverses all spins.
pub fn flip_all(v: &CVec) -> CVec {
    let top = v.len() - 1;
    CVec::from_fn(v.len(), |a, _| v[a ^ top])
}

/// Product over sites j ≠ `skip` of σ^z_j, as a diagonal sign.
pub fn sigma_z_product_sign(a: usize, l: usize, skip: Option<usize>) -> f64 {
    let mut s = 1.0;
    for k in 0..l {
        if Some(k) == skip {
            continue;
        }
        if bit(a, k, l) == 1 {
            s = -s;
        }
    }
    s
}

pub fn flip_all_matrix(l: usize) -> CMat {
    let dim = 1usize << l;
    let mut m = CMat::zeros(dim, dim);
    for a in 0..dim {
        m[(a ^ (dim - 1), a)] = re(1.0);
    }
    m
}

/// Cyclic site rotation: site k of the output carries site k+1 of the input.
pub fn rotate_sites(v: &CVec, l: usize) -> CVec {
    let dim = 1usize << l;
    let mut out = CVec::zeros(dim);
    for a in 0..dim {
        // input index a; site 0 of a moves to site l-1
        let top = (a >> (l - 1)) & 1;
        let b = ((a << 1) & (dim - 1)) | top;
        out[b] = v[a];
    }
    out
}

#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub l: usize,
    pub u: C,
    pub xs: Vec<C>,
    pub m: CMat,
}

impl TransferMatrix {
    pub fn apply(&self, v: &CVec) -> CVec {
        &self.m * v
    }
}

/// Tr_0 R_{01}(x_1−u)…R_{0L}(x_L−u) by explicit auxiliary contraction.
pub fn transfer(u: C, xs: &[C], ctx: &EllipticContext) -> Result<TransferMatrix> {
    let l = xs.len();
    if l > MAX_SITES || l.is_multiple_of(2) {
        return Err(Error::SizeOverflow(l));
    }
    let rs: Vec<Op4> = xs.iter().map(|&x| r_matrix(x - u, ctx)).collect();
    let dim = 1usize << l;
    let mut m = CMat::zeros(dim, dim);
    for al in 0..dim {
        for be in 0..dim {
            // 2x2 auxiliary product
            let mut acc = [[re(1.0), re(0.0)], [re(0.0), re(1.0)]];
            for (i, r) in rs.iter().enumerate() {
                let (ai, bi) = (bit(al, i, l), bit(be, i, l));
                let blk = [[r[ai][bi], r[ai][2 + bi]], [r[2 + ai][bi], r[2 + ai][2 + bi]]];
                let mut nxt = [[re(0.0); 2]; 2];
                for p in 0..2 {
                    for q in 0..2 {
                        nxt[p][q] = acc[p][0] * blk[0][q] + acc[p][1] * blk[1][q];
                    }
                }
                acc = nxt;
            }
            m[(be, al)] = acc[0][0] + acc[1][1];
        }
    }
    Ok(TransferMatrix { l, u, xs: xs.to_vec(), m })
}

/// t_L(u) = Π r(x_i − u).
pub fn eigenvalue(u: C, xs: &[C], ctx: &EllipticContext) -> C {
    xs.iter().fold(re(1.0), |acc, &x| acc * r_factor(x - u, ctx))
}

/// Couplings (J_2, J_3, J_4) as a function of ζ.
pub fn couplings(zeta: f64) -> [f64; 3] {
    [-0.5, 1.0 / (1.0 + zeta), 1.0 / (1.0 - zeta)]
}

/// H_L = −½ Σ (J_4 σ^xσ^x + J_3 σ^yσ^y + J_2 σ^zσ^z), periodic; returns (H, E_L).
pub fn xyz_hamiltonian(l: usize, zeta: f64) -> (CMat, f64) {
    let [j2, j3, j4] = couplings(zeta);
    let dim = 1usize << l;
    let mut h = CMat::zeros(dim, dim);
    for i in 0..l {
        let k = (i + 1) % l;
        for a in 0..dim {
            let (si, sk) = (bit(a, i, l), bit(a, k, l));
            let zz = if si == sk { 1.0 } else { -1.0 };
            h[(a, a)] += re(-0.5 * j2 * zz);
            let b = a ^ (1 << (l - 1 - i)) ^ (1 << (l - 1 - k));
            // σ^yσ^y on |s_i s_k⟩ gives −(±1) with sign −1 for equal spins
            let yy = if si == sk { -1.0 } else { 1.0 };
            h[(b, a)] += re(-0.5 * (j4 + j3 * yy));
        }
    }
    (h, -(l as f64) / 2.0 * (j2 + j3 + j4))
}

/// Singlet |↑↓⟩ − |↓↑⟩ inserted at sites (j, j+1) of a vector over l−2 sites.
pub fn insert_singlet(v: &CVec, j: usize, l_small: usize) -> CVec {
    let l = l_small + 2;
    let mut out = CVec::zeros(1 << l);
    let low_bits = l_small - j;
    for a in 0..(1usize << l_small) {
        let hi = a >> low_bits;
        let lo = a & ((1usize << low_bits) - 1);
        for (pair, sign) in [(1usize, 1.0), (2usize, -1.0)] {
            let idx = (((hi << 2) | pair) << low_bits) | lo;
            out[idx] += v[a] * sign;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn draw(rng: &mut ChaCha8Rng) -> C {
        c(rng.random_range(-1.0..1.0), rng.random_range(-0.3..0.3))
    }

    fn kron_left(op: &Op4) -> [[C; 8]; 8] {
        let mut m = [[re(0.0); 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                if (a & 1) == (b & 1) {
                    m[a][b] = op[a >> 1][b >> 1];
                }
            }
        }
        m
    }
    fn kron_right(op: &Op4) -> [[C; 8]; 8] {
        let mut m = [[re(0.0); 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                if (a >> 2) == (b >> 2) {
                    m[a][b] = op[a & 3][b & 3];
                }
            }
        }
        m
    }
    fn mul8(a: &[[C; 8]; 8], b: &[[C; 8]; 8]) -> [[C; 8]; 8] {
        let mut m = [[re(0.0); 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    m[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        m
    }

    #[test]
    fn a_plus_b_is_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &p in &[0.1, 0.35] {
            let ctx = EllipticContext::real(p).unwrap();
            for _ in 0..20 {
                let x = draw(&mut rng);
                let w = weights(x, &ctx);
                assert!((w.a + w.b - r_factor(x, &ctx)).norm() < 1e-12);
            }
            let w0 = weights(re(0.0), &ctx);
            assert!(w0.b.norm() < 1e-15 && w0.d.norm() < 1e-15);
        }
        let ctx = EllipticContext::real(1e-5).unwrap();
        let w = weights(c(0.4, 0.1), &ctx);
        assert!(w.d.norm() < 1e-4 * w.a.norm());
    }

    #[test]
    fn unitarity_and_permutation_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ctx = EllipticContext::real(0.2).unwrap();
        for _ in 0..5 {
            let x = draw(&mut rng);
            let prod = op4_mul(&r_check(x, &ctx), &r_check(-x, &ctx));
            let s = r_factor(x, &ctx) * r_factor(-x, &ctx);
            let mut diff = prod;
            for i in 0..4 {
                diff[i][i] -= s;
            }
            assert!(op4_norm(&diff) < 1e-12 * s.norm());
        }
        let e2 = re(2.0 * ctx.eta);
        let lam = ctx.th2(4, e2) * ctx.th2(1, e2) * ctx.th2(4, re(0.0)) * 2.0;
        let rc = r_check(-e2, &ctx);
        let sw = swap_op();
        let mut diff = rc;
        for i in 0..4 {
            for j in 0..4 {
                let proj = ((if i == j { 1.0 } else { 0.0 }) - sw[i][j].re) / 2.0;
                diff[i][j] -= lam * proj;
            }
        }
        assert!(op4_norm(&diff) < 1e-12 * lam.norm());
    }

    #[test]
    fn yang_baxter() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &p in &[0.1, 0.25, 0.4] {
            let ctx = EllipticContext::real(p).unwrap();
            let (x, y) = (draw(&mut rng), draw(&mut rng));
            let lhs = mul8(
                &mul8(&kron_left(&r_check(x, &ctx)), &kron_right(&r_check(x + y, &ctx))),
                &kron_left(&r_check(y, &ctx)),
            );
            let rhs = mul8(
                &mul8(&kron_right(&r_check(y, &ctx)), &kron_left(&r_check(x + y, &ctx))),
                &kron_right(&r_check(x, &ctx)),
            );
            let mut n = 0.0;
            let mut d = 0.0;
            for i in 0..8 {
                for j in 0..8 {
                    n += (lhs[i][j] - rhs[i][j]).norm_sqr();
                    d += lhs[i][j].norm_sqr();
                }
            }
            assert!(n.sqrt() < 1e-12 * d.sqrt());
        }
    }

    #[test]
    fn shift_by_period_flips_aux_spin() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let ctx = EllipticContext::real(0.2).unwrap();
        for _ in 0..5 {
            let x = draw(&mut rng);
            let a = r_matrix(x + ctx.pi_tau(), &ctx);
            let b = r_matrix(x, &ctx);
            let z = ((x + ctx.eta) * c(0.0, -2.0)).exp();
            let f = -z / ctx.p;
            // F_1 R F_1: flip the first tensor factor on both sides
            for i in 0..4 {
                for j in 0..4 {
                    let v = f * b[i ^ 2][j ^ 2];
                    assert!((a[i][j] - v).norm() < 1e-10 * (1.0 + v.norm()));
                }
            }
        }
    }

    #[test]
    fn transfer_symmetries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ctx = EllipticContext::real(0.25).unwrap();
        let l = 3;
        let xs: Vec<C> = (0..l).map(|_| draw(&mut rng)).collect();
        let (u, u2) = (draw(&mut rng), draw(&mut rng));
        let t = transfer(u, &xs, &ctx).unwrap();
        let f = flip_all_matrix(l);
        let comm = &t.m * &f - &f * &t.m;
        assert!(comm.norm() < 1e-12 * t.m.norm());
        let t2 = transfer(u2, &xs, &ctx).unwrap();
        let comm = &t.m * &t2.m - &t2.m * &t.m;
        assert!(comm.norm() < 1e-11 * t.m.norm() * t2.m.norm());
        let mut rot = xs.clone();
        rot.rotate_left(1);
        let tr = transfer(u, &rot, &ctx).unwrap();
        let v = CVec::from_fn(8, |i, _| c(i as f64 + 0.5, (i * i) as f64 * 0.1));
        let lhs = rotate_sites(&t.apply(&v), l);
        let rhs = tr.apply(&rotate_sites(&v, l));
        assert!((lhs - rhs).norm() < 1e-12 * t.m.norm() * v.norm());
        assert!(matches!(transfer(u, &xs[..2], &ctx), Err(Error::SizeOverflow(2))));
    }

    #[test]
    fn hamiltonian_xxz_point_and_commutation() {
        let (h, e) = xyz_hamiltonian(3, 0.0);
        assert!((e - (-1.5 * 1.5)).abs() < 1e-15);
        assert!((h.clone() - h.adjoint()).norm() < 1e-15);
        let ctx = EllipticContext::real(0.3).unwrap();
        let (h, _) = xyz_hamiltonian(5, ctx.zeta.re);
        let xs = vec![c(0.2, 0.05); 5];
        let t = transfer(c(0.7, -0.1), &xs, &ctx).unwrap();
        let comm = &h * &t.m - &t.m * &h;
        assert!(comm.norm() < 1e-11 * t.m.norm() * h.norm());
    }
}
