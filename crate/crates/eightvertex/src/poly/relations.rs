//! Linear relations among the derivatives of the two-cluster specialization
//! at u = v = 0, one coefficient matrix per recursive family.

use super::confluent::derivative_vector;
use super::families::Family;
use crate::field::{q, Q};
use crate::Result;

pub const DERIVATIVES: [&str; 7] = ["Huv", "Huu", "Haa", "Hua", "Hu", "Ha", "H"];

/// 7×4 matrix P with (Huv, Huu, Hαα, Huα, Hu, Hα, H)·P = 0.
pub fn coefficient_matrix(fam: Family, a: &Q, m: usize) -> [[Q; 4]; 7] {
    let m = q(m as i64, 1);
    let n = |k: i64| q(k, 1);
    let z = || q(0, 1);
    let a = a.clone();
    let e = (&a - n(1)) * (&a + n(8));
    let a4 = &a - n(4);
    match fam {
        Family::Empty => [
            [z(), z(), n(2) * (n(2) * &m + n(1)), n(2) * (n(4) * &m * &m + &m - n(2)) * &a],
            [z(), z(), n(4) * &m, n(-2) * &m * (n(4) * &m + n(1)) * &a],
            [z(), n(-2) * &m * &e, z(), z()],
            [z(), n(2) * (n(4) * &m + n(1)), n(-2) * &m * &e, z()],
            [
                n(2) * (n(4) * &m + n(1)),
                z(),
                &m * (&m * &m - &m + n(1)) * (&a + n(2)),
                &m * (n(2) * &m + n(1)) * &a4 * &a4,
            ],
            [
                n(-2) * &m * &e,
                &m * (&a * &m * &m + n(2) * &m * &m - &a * &m - n(2) * &m - n(4) * &a - n(14)),
                z(),
                z(),
            ],
            [
                (&m - n(1)) * &m * &m * (&a + n(2)),
                (&m - n(1)) * &m * &m,
                -(&m - n(1)) * &m * &m * &a4,
                -(&m - n(1)) * &m * &m * (n(2) * &m + n(1)) * &a4 * &a,
            ],
        ],
        Family::J2 => [
            [z(), z(), n(2) * (n(2) * &m + n(1)), n(2) * (n(4) * &m * &m - n(5) * &m - n(1)) * &a],
            [z(), z(), n(4) * &m, n(-2) * &m * (n(4) * &m - n(1)) * &a],
            [z(), n(-2) * (&m - n(1)) * &e, z(), z()],
            [z(), n(-2) * (n(1) - n(4) * &m), n(-2) * &m * &e, z()],
            [
                n(2) * (n(4) * &m - n(1)),
                z(),
                &m * (&a * &m * &m + n(2) * &m * &m - &a * &m - n(4) * &m + &a + n(4)),
                &m * (n(2) * &m * &a * &a - &a * &a - n(16) * &m * &a + n(32) * &m),
            ],
            [
                n(-2) * (&m - n(1)) * &e,
                (&m - n(1)) * (&a * &m * &m + n(2) * &m * &m - &a * &m - n(4) * &m - n(4) * &a - n(12)),
                z(),
                z(),
            ],
            [
                (&m - n(1)) * (&m - n(1)) * (&a * &m + n(2) * &m - n(2)),
                (&m - n(1)) * (&m - n(1)) * &m,
                -(&m - n(1)) * &m * (&a * &m - n(4) * &m + n(4)),
                -(&m - n(1)) * &m * &m * &a * (n(2) * &a * &m - n(8) * &m - &a + n(8)),
            ],
        ],
        Family::J3J4 => [
            [z(), z(), n(2) * (n(2) * &m + n(1)), n(2) * (n(4) * &m * &m - n(11) * &m + n(4)) * &a],
            [z(), z(), n(4) * &m, n(-2) * &m * (n(4) * &m - n(3)) * &a],
            [z(), n(-2) * (&m - n(2)) * &e, z(), z()],
            [z(), n(2) * (n(4) * &m - n(3)), n(-2) * &m * &e, z()],
            [
                n(2) * (n(4) * &m - n(3)),
                z(),
                &m * (&a * &m * &m + n(2) * &m * &m - &a * &m + &a + n(2)),
                &m * (n(2) * &m * &a * &a - &a * &a - n(16) * &m * &a + n(16) * &a + n(32) * &m - n(32)),
            ],
            [
                n(-2) * (&m - n(2)) * &e,
                (&m - n(2)) * (&a * &m * &m + n(2) * &m * &m - &a * &m - n(4) * &a - n(14)),
                z(),
                z(),
            ],
            [
                (&m - n(2)) * &m * (&a * &m + n(2) * &m - &a),
                (&m - n(2)) * (&m - n(1)) * &m,
                -(&m - n(2)) * &m * (&a * &m - n(4) * &m - &a),
                -(&m - n(2)) * (&m - n(1)) * &m * &a * (n(2) * &a * &m - n(8) * &m - &a),
            ],
        ],
        Family::J2J3J4 => [
            [z(), z(), n(2) * (n(2) * &m + n(1)), n(2) * (&m - n(1)) * (n(4) * &m - n(13)) * &a],
            [z(), z(), n(4) * &m, n(-2) * &m * (n(4) * &m - n(5)) * &a],
            [z(), n(-2) * (&m - n(3)) * &e, z(), z()],
            [z(), n(2) * (n(4) * &m - n(5)), n(-2) * &m * &e, z()],
            [
                n(2) * (n(4) * &m - n(5)),
                z(),
                &m * (&m * &m - &m + n(1)) * (&a + n(2)),
                &m * (n(2) * &m - n(3)) * &a4 * &a4,
            ],
            [
                n(-2) * (&m - n(3)) * &e,
                (&m - n(3)) * (&a * &m * &m + n(2) * &m * &m - &a * &m - n(2) * &m - n(4) * &a - n(14)),
                z(),
                z(),
            ],
            [
                (&m - n(3)) * (&m - n(1)) * &m * (&a + n(2)),
                (&m - n(3)) * (&m - n(1)) * &m,
                -(&m - n(3)) * &m * &m * &a4,
                -(&m - n(3)) * &m * &m * (n(2) * &m - n(3)) * &a4 * &a,
            ],
        ],
    }
}

/// The four residuals (derivative vector)·P at one ζ; None when m < |S|.
pub fn relation_residuals(fam: Family, zeta: &Q, m: usize) -> Result<Option<[Q; 4]>> {
    let spec = fam.spec();
    if m < spec.len() {
        return Ok(None);
    }
    let d = derivative_vector(zeta, m, &spec.0)?;
    let a = q(1, 1) - zeta * zeta;
    let p = coefficient_matrix(fam, &a, m);
    let mut out: [Q; 4] = std::array::from_fn(|_| q(0, 1));
    for (j, o) in out.iter_mut().enumerate() {
        for i in 0..7 {
            *o = &*o + &d[i] * &p[i][j];
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_small() {
        let z = q(2, 5);
        for fam in Family::RECURSIVE {
            for m in 1..=3 {
                if let Some(r) = relation_residuals(fam, &z, m).unwrap() {
                    for (j, x) in r.iter().enumerate() {
                        assert_eq!(x, &q(0, 1), "{fam:?} m={m} column {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn nonzero_vector() {
        let d = derivative_vector(&q(1, 3), 2, &[]).unwrap();
        assert_eq!(d[6], q(3, 1) + q(1, 9));
    }
}
