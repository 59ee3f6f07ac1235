//! Determinants and Pfaffians over any [`Field`], plus the dense complex helpers
//! used by the eigenvector solver.

use crate::field::Field;
use crate::Error;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Square matrix as nested rows.
pub type Rows<F> = Vec<Vec<F>>;

/// Determinant by Gaussian elimination, pivot chosen by [`Field::pivot_weight`].
pub fn det<F: Field>(m: &Rows<F>) -> F {
    let n = m.len();
    if n == 0 {
        return F::one();
    }
    let mut a = m.clone();
    let mut acc = F::one();
    for k in 0..n {
        let mut best = k;
        let mut w = a[k][k].pivot_weight();
        for i in k + 1..n {
            let wi = a[i][k].pivot_weight();
            if wi > w {
                w = wi;
                best = i;
            }
        }
        if w == 0.0 {
            return F::zero();
        }
        if best != k {
            a.swap(best, k);
            acc = -acc;
        }
        let piv = a[k][k].clone();
        acc = acc * piv.clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / piv.clone();
            for j in k + 1..n {
                let t = f.clone() * a[k][j].clone();
                a[i][j] = a[i][j].clone() - t;
            }
        }
    }
    acc
}

/// Pfaffian of a skew-symmetric matrix by skew elimination with pivoting.
pub fn pfaffian<F: Field>(m: &Rows<F>) -> Result<F, Error> {
    let n = m.len();
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    for i in 0..n {
        if m[i].len() != n {
            return Err(Error::NotSkew);
        }
        for j in 0..n {
            if m[i][j] != -m[j][i].clone() {
                return Err(Error::NotSkew);
            }
        }
    }
    Ok(pfaffian_unchecked(m))
}

/// Pfaffian without the skew-symmetry audit (for floating entries).
pub fn pfaffian_unchecked<F: Field>(m: &Rows<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = F::one();
    let mut k = 0;
    while k + 1 < n {
        let mut best = k + 1;
        let mut w = a[k][k + 1].pivot_weight();
        for j in k + 2..n {
            let wj = a[k][j].pivot_weight();
            if wj > w {
                w = wj;
                best = j;
            }
        }
        if w == 0.0 {
            return F::zero();
        }
        if best != k + 1 {
            a.swap(k + 1, best);
            for row in a.iter_mut() {
                row.swap(k + 1, best);
            }
            acc = -acc;
        }
        let piv = a[k][k + 1].clone();
        acc = acc * piv.clone();
        for i in k + 2..n {
            for j in k + 2..n {
                let t = (a[k][i].clone() * a[k + 1][j].clone() - a[k + 1][i].clone() * a[k][j].clone())
                    / piv.clone();
                a[i][j] = a[i][j].clone() - t;
            }
        }
        k += 2;
    }
    acc
}

/// Kernel vector of a square complex matrix: right singular vector of the
/// smallest singular value; singular values returned ascending.
pub fn nullspace_vector(a: &CMat) -> (CVec, Vec<f64>) {
    let svd = a.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let sv = svd.singular_values;
    let mut idx: Vec<usize> = (0..sv.len()).collect();
    idx.sort_by(|&i, &j| sv[i].partial_cmp(&sv[j]).unwrap());
    let k = idx[0];
    let v = vt.row(k).transpose().map(|z| z.conj());
    (v, idx.iter().map(|&i| sv[i]).collect())
}

pub fn singular_values_ascending(a: &CMat) -> Vec<f64> {
    let sv = a.clone().singular_values();
    let mut v: Vec<f64> = sv.iter().cloned().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Projective distance between two vectors: ‖a − λb‖/‖a‖ with λ aligned on
/// the largest-magnitude entry of `a` (lowest index on ties).
pub fn projective_residual(a: &CVec, b: &CVec) -> f64 {
    let mut k = 0;
    let mut best = -1.0;
    for (i, z) in a.iter().enumerate() {
        if z.norm() > best * (1.0 + 1e-12) {
            best = z.norm();
            k = i;
        }
    }
    if b[k].norm() == 0.0 {
        return f64::INFINITY;
    }
    let lam = a[k] / b[k];
    (a - b * lam).norm() / a.norm()
}

/// Least-squares scalar λ minimising ‖a − λ b‖.
pub fn fit_scalar(a: &CVec, b: &CVec) -> Complex64 {
    b.dotc(a) / b.dotc(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};
    use proptest::prelude::*;

    #[test]
    fn pfaffian_small_cases() {
        let a = q(3, 2);
        let m2 = vec![vec![q(0, 1), a.clone()], vec![-a.clone(), q(0, 1)]];
        assert_eq!(pfaffian(&m2).unwrap(), a);
        let v = [q(1, 1), q(2, 1), q(3, 1), q(5, 1), q(7, 1), q(11, 1)];
        let mut m4 = vec![vec![q(0, 1); 4]; 4];
        let mut t = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                m4[i][j] = v[t].clone();
                m4[j][i] = -v[t].clone();
                t += 1;
            }
        }
        let expect = v[0].clone() * v[5].clone() - v[1].clone() * v[4].clone() + v[2].clone() * v[3].clone();
        assert_eq!(pfaffian(&m4).unwrap(), expect);
        assert!(matches!(pfaffian(&vec![vec![q(0, 1)]]), Err(Error::OddSize(1))));
    }

    proptest! {
        #[test]
        fn pfaffian_squared_is_determinant(vals in prop::collection::vec(-9i64..9, 15)) {
            let mut m = vec![vec![q(0, 1); 6]; 6];
            let mut t = 0;
            for i in 0..6 {
                for j in i + 1..6 {
                    m[i][j] = q(vals[t], 1);
                    m[j][i] = -q(vals[t], 1);
                    t += 1;
                }
            }
            let p: Q = pfaffian(&m).unwrap();
            prop_assert_eq!(p.clone() * p, det(&m));
        }
    }
}
