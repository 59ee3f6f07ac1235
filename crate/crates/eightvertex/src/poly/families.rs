//! Coupling subsets, the ζ-symmetries permuting them, and the reference table of
//! homogeneous values H_2m(S).

use super::{Poly, PolyQ};
use crate::closed_forms::rational::Coupling;
use crate::field::q;
use serde::Serialize;
use std::fmt;

/// Sorted subset of {J2, J3, J4} placed among the arguments of H_2m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spec(pub Vec<Coupling>);

impl Spec {
    pub fn new(mut v: Vec<Coupling>) -> Self {
        v.sort();
        v.dedup();
        Spec(v)
    }
    pub fn empty() -> Self {
        Spec(vec![])
    }
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("none") || s == "0" || s == "empty" {
            return Some(Spec::empty());
        }
        let parts: Option<Vec<Coupling>> = s.split([',', '+', ' ']).filter(|p| !p.is_empty()).map(Coupling::parse).collect();
        parts.map(Spec::new)
    }
    /// All eight subsets in table order.
    pub fn all() -> Vec<Spec> {
        use Coupling::*;
        [vec![], vec![J2], vec![J3], vec![J4], vec![J2, J3], vec![J2, J4], vec![J3, J4], vec![J2, J3, J4]]
            .into_iter()
            .map(Spec)
            .collect()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn contains(&self, c: Coupling) -> bool {
        self.0.contains(&c)
    }
    /// Smallest m with 2m ≥ |S| for which the table lists a value.
    pub fn min_m(&self) -> usize {
        match self.len() {
            0 => 0,
            3 => 2,
            _ => 1,
        }
    }
    /// Power-of-two convention of the reference table: 2^{m−1} when J2 is present.
    pub fn scaled(&self) -> bool {
        self.contains(Coupling::J2)
    }
    pub fn scale_label(&self) -> &'static str {
        if self.scaled() {
            "2^{m-1}"
        } else {
            "1"
        }
    }
    pub fn scale_factor(&self, m: usize) -> PolyQ {
        if self.scaled() && m >= 1 {
            PolyQ::constant(q(1i64 << (m - 1), 1))
        } else {
            PolyQ::constant(q(1, 1))
        }
    }

    /// Recurrence family together with the ζ-maps taking its polynomial to this spec's.
    pub fn reduce_to_family(&self) -> (Family, Vec<Transform>) {
        use Coupling::*;
        use Transform::*;
        match self.0.as_slice() {
            [] => (Family::Empty, vec![]),
            [J2] => (Family::J2, vec![]),
            [J4] => (Family::J2, vec![Mobius]),
            [J3] => (Family::J2, vec![Mobius, Negate]),
            [J3, J4] => (Family::J3J4, vec![]),
            [J2, J3] => (Family::J3J4, vec![Mobius]),
            [J2, J4] => (Family::J3J4, vec![Mobius, Negate]),
            _ => (Family::J2J3J4, vec![]),
        }
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "none");
        }
        let names: Vec<&str> = self.0.iter().map(|c| c.name()).collect();
        write!(f, "{}", names.join(","))
    }
}

/// The four subsets whose even polynomials obey a closed bilinear recurrence in α.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Empty,
    J2,
    J3J4,
    J2J3J4,
}

impl Family {
    pub const RECURSIVE: [Family; 4] = [Family::Empty, Family::J2, Family::J3J4, Family::J2J3J4];
    pub fn spec(self) -> Spec {
        use Coupling::*;
        Spec(match self {
            Family::Empty => vec![],
            Family::J2 => vec![J2],
            Family::J3J4 => vec![J3, J4],
            Family::J2J3J4 => vec![J2, J3, J4],
        })
    }
}

/// ζ-maps generating the permutations of the couplings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    /// ζ → −ζ (swaps J3 and J4).
    Negate,
    /// ζ → (ζ+3)/(ζ−1) with the factor ((ζ−1)/2)^{m(m−1)} (swaps J2 and J4).
    Mobius,
}

pub fn negate(p: &PolyQ) -> PolyQ {
    Poly::new(p.c.iter().enumerate().map(|(k, a)| if k % 2 == 1 { -a.clone() } else { a.clone() }).collect())
}

/// ((ζ−1)/2)^N p((ζ+3)/(ζ−1)); requires deg p ≤ N.
pub fn mobius(p: &PolyQ, n: usize) -> PolyQ {
    assert!(p.degree().is_none_or(|d| d <= n), "degree exceeds the homogenizing power");
    let num = PolyQ::from_ints(&[3, 1]);
    let den = PolyQ::from_ints(&[-1, 1]);
    let mut acc = PolyQ::zero();
    for (k, a) in p.c.iter().enumerate() {
        acc = acc + num.pow(k as u32) * den.pow((n - k) as u32).scale(a);
    }
    acc.scale(&q(1, 1i64 << n))
}

pub fn apply_chain(p: &PolyQ, chain: &[Transform], m: usize) -> PolyQ {
    let mut out = p.clone();
    for t in chain {
        out = match t {
            Transform::Negate => negate(&out),
            Transform::Mobius => mobius(&out, m * (m.max(1) - 1)),
        };
    }
    out
}

/// Reference values as printed: (m, 2^{m−1}-scaled H_2m(S) coefficients in ζ).
pub fn table_row(spec: &Spec) -> Vec<(usize, PolyQ)> {
    use Coupling::*;
    let p = PolyQ::from_ints;
    match spec.0.as_slice() {
        [] => vec![(0, p(&[1])), (1, p(&[1])), (2, p(&[3, 0, 1])), (3, p(&[26, 0, 29, 0, 8, 0, 1]))],
        [J2] => vec![(1, p(&[1])), (2, p(&[7, 0, 1])), (3, p(&[143, 0, 99, 0, 13, 0, 1]))],
        [J3] => vec![(1, p(&[1])), (2, p(&[2, 1, 1])), (3, p(&[11, 12, 21, 10, 7, 2, 1]))],
        [J4] => vec![(1, p(&[1])), (2, p(&[2, -1, 1])), (3, p(&[11, -12, 21, -10, 7, -2, 1]))],
        [J2, J3] => vec![(1, p(&[1])), (2, p(&[5, 2, 1])), (3, p(&[66, 63, 81, 30, 12, 3, 1]))],
        [J2, J4] => vec![(1, p(&[1])), (2, p(&[5, -2, 1])), (3, p(&[66, -63, 81, -30, 12, -3, 1]))],
        [J3, J4] => vec![(1, p(&[1])), (2, p(&[1, 0, 1])), (3, p(&[3, 0, 9, 0, 3, 0, 1]))],
        _ => vec![(2, p(&[3, 0, 1])), (3, p(&[21, 0, 39, 0, 3, 0, 1]))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(Spec::parse("none").unwrap(), Spec::empty());
        assert_eq!(Spec::parse("J4,J2").unwrap(), Spec(vec![Coupling::J2, Coupling::J4]));
        assert!(Spec::parse("J5").is_none());
        assert_eq!(Spec::parse("J2,J3").unwrap().to_string(), "J2,J3");
    }

    #[test]
    fn mobius_is_an_involution() {
        let p = PolyQ::from_ints(&[11, 12, 21, 10, 7, 2, 1]);
        assert_eq!(mobius(&mobius(&p, 6), 6), p);
    }

    #[test]
    fn table_rows_related_by_symmetries() {
        for spec in Spec::all() {
            let (fam, chain) = spec.reduce_to_family();
            let base = table_row(&fam.spec());
            let want = table_row(&spec);
            for (m, v) in want {
                let Some((_, b)) = base.iter().find(|(k, _)| *k == m) else { continue };
                // unscale, map, rescale
                let raw = b.scale(&(q(1, 1) / fam.spec().scale_factor(m).coeff(0)));
                let got = apply_chain(&raw, &chain, m) * spec.scale_factor(m);
                assert_eq!(got, v, "{spec} m={m}");
            }
        }
    }
}
