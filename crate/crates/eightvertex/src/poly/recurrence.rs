//! Bilinear differential recurrences C_0 H_{2(m+1)} H_{2(m−1)} = C_1 H H″ − C_2 H′² + C_3 H H′ + C_4 H²
//! in α = 1 − ζ², for the four families closed under the recurrence.

use super::families::{Family, Spec};
use super::PolyQ;
use crate::field::q;
use crate::poly::Poly;
use crate::{Error, Result};
use serde::Serialize;

/// Terms (coefficient, power of α, power of m) of C_0..C_4 as printed, C_1 and C_3 in the single normalization.
type Terms = [&'static [(i64, u32, u32)]; 5];

const EMPTY: [&[(i64, u32, u32)]; 5] = [
    &[(1024, 1, 4), (1024, 1, 3), (128, 1, 2), (-64, 1, 1), (-12, 1, 0)],
    &[(32, 5, 2), (16, 5, 1), (2, 5, 0), (448, 4, 2), (224, 4, 1), (28, 4, 0), (1056, 3, 2), (528, 3, 1), (66, 3, 0), (-3584, 2, 2), (-1792, 2, 1), (-224, 2, 0), (2048, 1, 2), (1024, 1, 1), (128, 1, 0)],
    &[(64, 5, 2), (32, 5, 1), (-12, 5, 0), (896, 4, 2), (448, 4, 1), (-168, 4, 0), (2112, 3, 2), (1056, 3, 1), (-396, 3, 0), (-7168, 2, 2), (-3584, 2, 1), (1344, 2, 0), (4096, 1, 2), (2048, 1, 1), (-768, 1, 0)],
    &[(24, 4, 2), (20, 4, 1), (1, 4, 0), (472, 3, 2), (348, 3, 1), (35, 3, 0), (1680, 2, 2), (1104, 2, 1), (156, 2, 0), (-4224, 1, 2), (-3008, 1, 1), (-448, 1, 0), (2048, 0, 2), (1536, 0, 1), (256, 0, 0)],
    &[(4, 3, 4), (-4, 3, 3), (1, 3, 2), (-1, 3, 1), (-1008, 2, 4), (-984, 2, 3), (-142, 2, 2), (28, 2, 1), (6, 2, 0), (3408, 1, 4), (4032, 1, 3), (1028, 1, 2), (-44, 1, 1), (-24, 1, 0), (512, 0, 4), (-128, 0, 3), (-320, 0, 2), (-64, 0, 1)],
];
const J2: [&[(i64, u32, u32)]; 5] = [
    &[(1024, 1, 4), (-1024, 1, 3), (128, 1, 2), (64, 1, 1), (-12, 1, 0)],
    &[(32, 5, 2), (-16, 5, 1), (2, 5, 0), (448, 4, 2), (-224, 4, 1), (28, 4, 0), (1056, 3, 2), (-528, 3, 1), (66, 3, 0), (-3584, 2, 2), (1792, 2, 1), (-224, 2, 0), (2048, 1, 2), (-1024, 1, 1), (128, 1, 0)],
    &[(64, 5, 2), (-32, 5, 1), (-12, 5, 0), (896, 4, 2), (-448, 4, 1), (-168, 4, 0), (2112, 3, 2), (-1056, 3, 1), (-396, 3, 0), (-7168, 2, 2), (3584, 2, 1), (1344, 2, 0), (4096, 1, 2), (-2048, 1, 1), (-768, 1, 0)],
    &[(24, 4, 2), (-4, 4, 1), (1, 4, 0), (472, 3, 2), (-124, 3, 1), (3, 3, 0), (1680, 2, 2), (-576, 2, 1), (-36, 2, 0), (-4224, 1, 2), (1216, 1, 1), (32, 1, 0), (2048, 0, 2), (-512, 0, 1)],
    &[(4, 3, 4), (-12, 3, 3), (9, 3, 2), (-1, 3, 1), (-1008, 2, 4), (1032, 2, 3), (-6, 2, 2), (-126, 2, 1), (18, 2, 0), (3408, 1, 4), (-2784, 1, 3), (-204, 1, 2), (336, 1, 1), (-36, 1, 0), (512, 0, 4), (-1152, 0, 3), (768, 0, 2), (-128, 0, 1)],
];
const J3J4: [&[(i64, u32, u32)]; 5] = [
    &[(1024, 1, 4), (-3072, 1, 3), (3200, 1, 2), (-1344, 1, 1), (180, 1, 0)],
    &[(32, 5, 2), (-48, 5, 1), (18, 5, 0), (448, 4, 2), (-672, 4, 1), (252, 4, 0), (1056, 3, 2), (-1584, 3, 1), (594, 3, 0), (-3584, 2, 2), (5376, 2, 1), (-2016, 2, 0), (2048, 1, 2), (-3072, 1, 1), (1152, 1, 0)],
    &[(64, 5, 2), (-96, 5, 1), (20, 5, 0), (896, 4, 2), (-1344, 4, 1), (280, 4, 0), (2112, 3, 2), (-3168, 3, 1), (660, 3, 0), (-7168, 2, 2), (10752, 2, 1), (-2240, 2, 0), (4096, 1, 2), (-6144, 1, 1), (1280, 1, 0)],
    &[(24, 4, 2), (-44, 4, 1), (21, 4, 0), (472, 3, 2), (-820, 3, 1), (351, 3, 0), (1680, 2, 2), (-2784, 2, 1), (1068, 2, 0), (-4224, 1, 2), (7232, 1, 1), (-2976, 1, 0), (2048, 0, 2), (-3584, 0, 1), (1536, 0, 0)],
    &[(4, 3, 4), (-4, 3, 3), (-3, 3, 2), (3, 3, 1), (-1008, 2, 4), (3000, 2, 3), (-2958, 2, 2), (1074, 2, 1), (-90, 2, 0), (3408, 1, 4), (-10848, 1, 3), (11892, 1, 2), (-5208, 1, 1), (720, 1, 0), (512, 0, 4), (-896, 0, 3), (384, 0, 2)],
];
const J2J3J4: [&[(i64, u32, u32)]; 5] = [
    &[(1024, 1, 4), (-5120, 1, 3), (9344, 1, 2), (-7360, 1, 1), (2100, 1, 0)],
    &[(32, 5, 2), (-80, 5, 1), (50, 5, 0), (448, 4, 2), (-1120, 4, 1), (700, 4, 0), (1056, 3, 2), (-2640, 3, 1), (1650, 3, 0), (-3584, 2, 2), (8960, 2, 1), (-5600, 2, 0), (2048, 1, 2), (-5120, 1, 1), (3200, 1, 0)],
    &[(-64, 5, 2), (160, 5, 1), (-84, 5, 0), (-896, 4, 2), (2240, 4, 1), (-1176, 4, 0), (-2112, 3, 2), (5280, 3, 1), (-2772, 3, 0), (7168, 2, 2), (-17920, 2, 1), (9408, 2, 0), (-4096, 1, 2), (10240, 1, 1), (-5376, 1, 0)],
    &[(24, 4, 2), (-68, 4, 1), (45, 4, 0), (472, 3, 2), (-1292, 3, 1), (855, 3, 0), (1680, 2, 2), (-4464, 2, 1), (2940, 2, 0), (-4224, 1, 2), (11456, 1, 1), (-7680, 1, 0), (2048, 0, 2), (-5632, 0, 1), (3840, 0, 0)],
    &[(4, 3, 4), (-12, 3, 3), (13, 3, 2), (-5, 3, 1), (-1008, 2, 4), (5016, 2, 3), (-9142, 2, 2), (7240, 2, 1), (-2100, 2, 0), (3408, 1, 4), (-17664, 1, 3), (33572, 1, 2), (-27740, 1, 1), (8400, 1, 0), (512, 0, 4), (-1920, 0, 3), (2368, 0, 2), (-960, 0, 1)],
];

/// Which printed normalization of C_1 and C_3 to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// C_1 = 4(…), C_3 = 2(…), as printed with the plain family.
    Doubled,
    /// C_1 = 2(…), C_3 = (…), as printed in the per-family tables.
    Single,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Doubled => "doubled (C1 = 4(...), C3 = 2(...))",
            Variant::Single => "single (C1 = 2(...), C3 = (...))",
        }
    }
}

/// Sign of C_2 for the three-coupling family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum C2Sign {
    Printed,
    Flipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoefficientSet {
    pub variant: Variant,
    pub c2_sign: C2Sign,
}

impl CoefficientSet {
    /// The set that divides exactly for every family.
    pub const VALIDATED: CoefficientSet = CoefficientSet { variant: Variant::Doubled, c2_sign: C2Sign::Flipped };
    pub const PRINTED: CoefficientSet = CoefficientSet { variant: Variant::Single, c2_sign: C2Sign::Printed };
}

fn terms(f: Family) -> &'static Terms {
    match f {
        Family::Empty => &EMPTY,
        Family::J2 => &J2,
        Family::J3J4 => &J3J4,
        Family::J2J3J4 => &J2J3J4,
    }
}

fn eval_terms(t: &[(i64, u32, u32)], m: i64) -> PolyQ {
    let mut c = vec![q(0, 1); 8];
    for &(k, ap, mp) in t {
        c[ap as usize] = c[ap as usize].clone() + q(k * m.pow(mp), 1);
    }
    Poly::new(c)
}

/// C_0..C_4 at size m as polynomials in α.
pub fn coefficients(f: Family, set: CoefficientSet, m: usize) -> [PolyQ; 5] {
    let t = terms(f);
    let m = m as i64;
    let mut c: [PolyQ; 5] = std::array::from_fn(|i| eval_terms(t[i], m));
    if set.variant == Variant::Doubled {
        let two = q(2, 1);
        c[1] = c[1].scale(&two);
        c[3] = c[3].scale(&two);
    }
    if f == Family::J2J3J4 && set.c2_sign == C2Sign::Flipped {
        c[2] = -c[2].clone();
    }
    c
}

/// H_{2(m+1)} from H_{2(m−1)} and H_{2m}, all polynomials in α.
pub fn step(f: Family, set: CoefficientSet, m: usize, prev: &PolyQ, cur: &PolyQ) -> Result<PolyQ> {
    let [c0, c1, c2, c3, c4] = coefficients(f, set, m);
    let d1 = cur.derivative();
    let d2 = d1.derivative();
    let num = c1 * cur.clone() * d2 - c2 * d1.clone() * d1.clone() + c3 * cur.clone() * d1 + c4 * cur.clone() * cur.clone();
    let den = c0 * prev.clone();
    num.exact_div(&den).ok_or(Error::NonExactDivision(m))
}

/// First size m0 at which stepping starts, with (H_{2(m0−1)}, H_{2m0}) in ζ.
pub fn base(f: Family) -> (usize, PolyQ, PolyQ) {
    match f {
        Family::Empty => (1, PolyQ::from_ints(&[1]), PolyQ::from_ints(&[1])),
        Family::J2 => (1, PolyQ::from_ints(&[1]), PolyQ::from_ints(&[1])),
        Family::J3J4 => (2, PolyQ::from_ints(&[1]), PolyQ::from_ints(&[1, 0, 1])),
        Family::J2J3J4 => (
            3,
            PolyQ::from_ints(&[3, 0, 1]).scale(&q(1, 2)),
            PolyQ::from_ints(&[21, 0, 39, 0, 3, 0, 1]).scale(&q(1, 4)),
        ),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub m: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct RecurrenceRun {
    pub family: Family,
    /// (m, H_2m in ζ), starting at the first base size.
    pub values: Vec<(usize, PolyQ)>,
    pub steps: Vec<StepRecord>,
    pub failed_at: Option<usize>,
}

/// Iterate the recurrence up to H_{2 m_max}; stops at the first inexact division.
pub fn run(f: Family, set: CoefficientSet, m_max: usize) -> RecurrenceRun {
    let (m0, h_prev, h_cur) = base(f);
    let mut values = vec![(m0 - 1, h_prev.clone()), (m0, h_cur.clone())];
    let mut steps = Vec::new();
    let mut prev = h_prev.zeta_even_to_alpha().expect("even base case");
    let mut cur = h_cur.zeta_even_to_alpha().expect("even base case");
    let mut failed_at = None;
    for m in m0..m_max {
        match step(f, set, m, &prev, &cur) {
            Ok(next) => {
                steps.push(StepRecord { m, exact: true });
                values.push((m + 1, next.alpha_to_zeta()));
                prev = std::mem::replace(&mut cur, next);
            }
            Err(_) => {
                steps.push(StepRecord { m, exact: false });
                failed_at = Some(m);
                break;
            }
        }
    }
    RecurrenceRun { family: f, values, steps, failed_at }
}

impl RecurrenceRun {
    pub fn get(&self, m: usize) -> Option<&PolyQ> {
        self.values.iter().find(|(k, _)| *k == m).map(|(_, p)| p)
    }
}

/// Recurrence-engine value of H_2m(spec) for any spec, via the ζ-transformations.
pub fn recurrence_h(spec: &Spec, m: usize, set: CoefficientSet) -> Result<PolyQ> {
    let (fam, chain) = spec.reduce_to_family();
    let r = run(fam, set, m.max(1));
    let got = r.get(m).cloned().ok_or(match r.failed_at {
        Some(k) => Error::NonExactDivision(k),
        None => Error::Interpolation(format!("size {m} below the base case of {fam:?}")),
    })?;
    Ok(super::families::apply_chain(&got, &chain, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_family_first_steps() {
        let r = run(Family::Empty, CoefficientSet::VALIDATED, 3);
        assert_eq!(r.get(2).unwrap(), &PolyQ::from_ints(&[3, 0, 1]));
        assert_eq!(r.get(3).unwrap(), &PolyQ::from_ints(&[26, 0, 29, 0, 8, 0, 1]));
    }

    #[test]
    fn single_normalization_fails() {
        let r = run(Family::Empty, CoefficientSet::PRINTED, 4);
        assert!(r.failed_at.is_some());
    }

    #[test]
    fn printed_c2_sign_fails_for_three_couplings() {
        let set = CoefficientSet { variant: Variant::Doubled, c2_sign: C2Sign::Printed };
        assert_eq!(run(Family::J2J3J4, set, 5).failed_at, Some(3));
    }

    #[test]
    fn exact_to_size_eight() {
        for f in Family::RECURSIVE {
            let r = run(f, CoefficientSet::VALIDATED, 8);
            assert!(r.failed_at.is_none(), "{f:?}");
            assert_eq!(r.get(8).unwrap().degree(), Some(56), "{f:?}");
        }
    }
}
