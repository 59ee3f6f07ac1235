//! The two degenerations: ζ → 0 (six-vertex, symmetric-function formulas) and
//! ζ → 1 (Ising point, constant determinants).

use crate::closed_forms::rational::{subsets_of_parity, Coupling, Rational};
use crate::field::{Cyclo, Field, Laurent, Q};
use crate::linalg::{det, Rows};
use crate::partition;
use crate::poly::families::Spec;
use crate::poly::recurrence::{recurrence_h, CoefficientSet};
use crate::theta::{c, EllipticContext, C};
use crate::{Error, Result};

/// Y_L = (⌊(L−i)/2⌋)_{i=1..L}
pub fn staircase(l: usize) -> Vec<usize> {
    (1..=l).map(|i| (l - i) / 2).collect()
}

/// Schur function as a ratio of alternants.
pub fn schur<F: Field>(lambda: &[usize], zs: &[F]) -> Result<F> {
    let n = zs.len();
    let part = |j: usize| lambda.get(j).copied().unwrap_or(0);
    let num: Rows<F> = zs.iter().map(|z| (0..n).map(|j| z.powi((part(j) + n - 1 - j) as u32)).collect()).collect();
    let den: Rows<F> = zs.iter().map(|z| (0..n).map(|j| z.powi((n - 1 - j) as u32)).collect()).collect();
    let d = det(&den);
    if d.is_zero() {
        return Err(Error::DivisionByZero("coincident variables"));
    }
    Ok(det(&num) / d)
}

/// s_λ(1,…,1) with n ones, by the hook-content product Π_{i<j}(λ_i − λ_j + j − i)/(j − i).
pub fn schur_at_ones(lambda: &[usize], n: usize) -> Q {
    let part = |j: usize| lambda.get(j).copied().unwrap_or(0) as i64;
    let mut acc = Q::one();
    for i in 0..n {
        for j in i + 1..n {
            let d = (j - i) as i64;
            acc *= Q::from_ratio(part(i) - part(j) + d, d);
        }
    }
    acc
}

/// Closed product 3^{n(n−1)/2} Π_{j≤n} (3j)!(j−1)!/((2j)!(2j−1)!), which equals s_{Y_L}(1,…,1)
/// for L = 2n + 1.
pub fn staircase_product(n: usize) -> Q {
    let fact = |k: usize| -> Q { (1..=k).fold(Q::one(), |a, i| a * Q::from_i64(i as i64)) };
    let mut acc = Q::from_i64(3).powi((n * n.saturating_sub(1) / 2) as u32);
    for j in 1..=n {
        acc = acc * fact(3 * j) * fact(j - 1) / (fact(2 * j) * fact(2 * j - 1));
    }
    acc
}

/// Symplectic character det(z^{λ_j+n−j+1} − z^{−λ_j−n+j−1}) / det(z^{n−j+1} − z^{−n+j−1}).
pub fn symplectic<F: Field>(lambda: &[usize], zs: &[F]) -> Result<F> {
    let n = zs.len();
    let part = |j: usize| lambda.get(j).copied().unwrap_or(0) as i64;
    let alt = |shift: &dyn Fn(usize) -> i64| -> F {
        let rows: Rows<F> = zs
            .iter()
            .map(|z| (0..n).map(|j| z.powz(shift(j) + (n - j) as i64) - z.powz(-shift(j) - (n - j) as i64)).collect())
            .collect();
        det(&rows)
    };
    let d = alt(&|_| 0);
    if d.is_zero() {
        return Err(Error::DivisionByZero("degenerate symplectic variables"));
    }
    Ok(alt(&|j| part(j)) / d)
}

/// Relative spread of Z_L / (3^{−n²} s_{Y_L}(z) s_{Y_L}(1/z)), z = e^{2ix}, over real draws,
/// at a small nome. Returns the fitted constant and the spread.
pub fn trig_partition(draws: &[Vec<f64>], p: f64) -> Result<(C, f64)> {
    let ctx = EllipticContext::real(p)?;
    let mut ratios = Vec::with_capacity(draws.len());
    for xs in draws {
        let l = xs.len();
        let n = (l as i32 - 1) / 2;
        let xc: Vec<C> = xs.iter().map(|&x| c(x, 0.0)).collect();
        let zl = partition::z(&xc, &ctx)?;
        let zz: Vec<C> = xs.iter().map(|&x| C::from_polar(1.0, 2.0 * x)).collect();
        let zi: Vec<C> = zz.iter().map(|z| 1.0 / z).collect();
        let y = staircase(l);
        let s = schur(&y, &zz)? * schur(&y, &zi)? / 3f64.powi(n * n);
        ratios.push(zl / s);
    }
    let r0 = ratios[0];
    Ok((r0, ratios.iter().map(|r| (r - r0).norm() / r0.norm()).fold(0.0, f64::max)))
}

fn cyc(x: &Q) -> Cyclo {
    Cyclo::rational(x.clone())
}

fn with_omega(zs: &[Q]) -> Vec<Cyclo> {
    let mut v: Vec<Cyclo> = zs.iter().map(cyc).collect();
    v.push(Cyclo::omega());
    v
}

fn one_plus(z: &Q) -> Q {
    Q::one() + z.clone() + Q::one() / z.clone()
}

/// s_{Y_L}(1, z_1, 1/z_1, …) − Π(1+z_i+1/z_i) χ_{Y_n}(z) χ_{Y_{n+1}}(z, ω), exactly in Q(ω).
pub fn half_specialized_schur(zs: &[Q]) -> Result<(Cyclo, Cyclo)> {
    let n = zs.len();
    let mut vars = vec![Cyclo::one()];
    for z in zs {
        vars.push(cyc(z));
        vars.push(cyc(&(Q::one() / z.clone())));
    }
    let lhs = schur(&staircase(2 * n + 1), &vars)?;
    let pre = zs.iter().fold(Q::one(), |a, z| a * one_plus(z));
    let zc: Vec<Cyclo> = zs.iter().map(cyc).collect();
    let rhs = cyc(&pre) * symplectic(&staircase(n), &zc)? * symplectic(&staircase(n + 1), &with_omega(zs))?;
    Ok((lhs, rhs))
}

/// w = (z−1)²/(1+z+z²)
pub fn trig_w(z: &Q) -> Q {
    let d = z.clone() - Q::one();
    d.clone() * d / (Q::one() + z.clone() + z.clone() * z.clone())
}

/// The six H ↔ χ correspondences at ζ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dictionary {
    Plain,
    J2,
    J3,
    J2J3,
    J3J4,
    J2J3J4,
}

impl Dictionary {
    pub const ALL: [Dictionary; 6] =
        [Dictionary::Plain, Dictionary::J2, Dictionary::J3, Dictionary::J2J3, Dictionary::J3J4, Dictionary::J2J3J4];

    pub fn spec(self) -> Vec<Coupling> {
        use Coupling::*;
        match self {
            Dictionary::Plain => vec![],
            Dictionary::J2 => vec![J2],
            Dictionary::J3 => vec![J3],
            Dictionary::J2J3 => vec![J2, J3],
            Dictionary::J3J4 => vec![J3, J4],
            Dictionary::J2J3J4 => vec![J2, J3, J4],
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            Dictionary::Plain => "H(w)",
            Dictionary::J2 => "H(w,J2)",
            Dictionary::J3 => "H(w,J3)",
            Dictionary::J2J3 => "H(w,J2,J3)",
            Dictionary::J3J4 => "H(w,J3,J4)",
            Dictionary::J2J3J4 => "H(w,J2,J3,J4)",
        }
    }
    /// Factor by which H differs from the displayed χ expression: lines with a J2 argument
    /// carry an extra power of 1/2.
    pub fn missing_factor(self, m: usize) -> Q {
        match self {
            Dictionary::J2 => Q::from_ratio(1, 1 << (m - 1)),
            Dictionary::J2J3J4 => Q::from_ratio(1, 1 << m),
            _ => Q::one(),
        }
    }
    /// Number of free variables for index m.
    pub fn free(self, m: usize) -> usize {
        match self {
            Dictionary::Plain | Dictionary::J2J3 | Dictionary::J3J4 => 2 * m,
            _ => 2 * m - 1,
        }
    }
}

/// H at ζ = 0, taken as the ζ → 0 limit so that coincident J3 = J4 = 1 is allowed.
pub fn h_at_zeta_zero(ws: &[Q], spec: &[Coupling]) -> Result<Q> {
    let r = Rational::new(Laurent::<Q>::epsilon());
    let wl: Vec<Laurent<Q>> = ws.iter().map(|w| Laurent::constant(w.clone())).collect();
    r.h_with(&wl, spec)?.limit().map_err(|_| Error::DivisionByZero("pole at zeta = 0"))
}

/// (H side, χ side) for one correspondence; z holds the free variables.
pub fn dictionary(line: Dictionary, zs: &[Q]) -> Result<(Cyclo, Cyclo)> {
    let ws: Vec<Q> = zs.iter().map(trig_w).collect();
    let h = h_at_zeta_zero(&ws, &line.spec())?;
    let k = zs.len();
    let three = Q::from_i64(3);
    let prod = |e: i64| zs.iter().fold(Q::one(), |a, z| a * one_plus(z).powz(e));
    let zc: Vec<Cyclo> = zs.iter().map(cyc).collect();
    let (pre, chi) = match line {
        Dictionary::Plain => {
            let m = (k / 2) as i64;
            (three.powz(m * (m - 1)) * prod(1 - m), symplectic(&staircase(2 * m as usize), &zc)?)
        }
        Dictionary::J2 => {
            let m = k.div_ceil(2) as i64;
            (three.powz(m * (m - 1)) * prod(1 - m), symplectic(&staircase(2 * m as usize), &with_omega(zs))?)
        }
        Dictionary::J3 => {
            let m = k.div_ceil(2) as i64;
            (three.powz(m * (m - 1)) * prod(1 - m), symplectic(&staircase(2 * m as usize - 1), &zc)?)
        }
        Dictionary::J2J3 => {
            let m = (k / 2) as i64;
            (
                three.powz(m * (m + 1)) / Q::from_i64(2).powz(m) * prod(-m),
                symplectic(&staircase(2 * m as usize + 1), &with_omega(zs))?,
            )
        }
        Dictionary::J3J4 => {
            let m = (k / 2) as i64;
            (three.powz(m * (m + 1)) * prod(-m), symplectic(&staircase(2 * m as usize), &zc)?)
        }
        Dictionary::J2J3J4 => {
            let m = k.div_ceil(2) as i64;
            (three.powz(m * (m + 1)) * prod(-m), symplectic(&staircase(2 * m as usize), &with_omega(zs))?)
        }
    };
    Ok((cyc(&h), cyc(&pre) * chi))
}

/// Unscaled homogeneous H_2m(S) from the recurrences and the ζ-symmetries.
pub fn homogeneous_h(spec: &Spec, m: usize) -> Result<crate::poly::PolyQ> {
    if m == 0 {
        return Ok(crate::poly::PolyQ::from_ints(&[1]));
    }
    recurrence_h(spec, m, CoefficientSet::VALIDATED)
}

/// Constant terms at ζ = 0 used for the enumeration sequences.
pub fn constant_term(spec: &Spec, m: usize) -> Result<Q> {
    Ok(homogeneous_h(spec, m)?.coeff(0))
}

/// Named ζ = 0 sequences built from our own polynomials.
pub fn zeta_zero_sequences(len: usize) -> Result<Vec<(&'static str, Vec<Q>)>> {
    use Coupling::*;
    let two = Q::from_i64(2);
    let seq = |spec: Vec<Coupling>, start: usize, scaled: bool| -> Result<Vec<Q>> {
        (start..start + len)
            .map(|m| {
                let v = constant_term(&Spec::new(spec.clone()), m)?;
                Ok(if scaled { v * two.powi(m as u32 - 1) } else { v })
            })
            .collect()
    };
    let ht: Vec<Q> = (0..len)
        .map(|n| {
            // A_HT(2n+1) = 2^n Π_{|S| ≡ n} H_{n+|S|}(S)
            let mut acc = two.powi(n as u32);
            for s in subsets_of_parity(n % 2) {
                acc *= constant_term(&Spec::new(s.clone()), (n + s.len()) / 2)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok(vec![
        ("half-turn symmetric ASM", ht),
        ("vertically symmetric ASM", seq(vec![], 0, false)?),
        ("cyclically symmetric TC plane partitions", seq(vec![J3], 1, false)?),
        ("U-turn factor", seq(vec![J2, J3], 1, true)?),
        ("ASM / VSASM", seq(vec![J2], 1, true)?),
    ])
}

fn ising_ring() -> Rational<Laurent<Q>> {
    // ζ = 1 − ε
    Rational::new(Laurent::constant(Q::one()) - Laurent::epsilon())
}

fn ising_limit(v: Laurent<Q>) -> Result<Q> {
    v.limit().map_err(|_| Error::DivisionByZero("pole at zeta = 1"))
}

/// H_2m(ws…, spec) at ζ = 1 (as a limit, since J4 has a pole there).
pub fn ising_h(ws: &[Q], spec: &[Coupling]) -> Result<Q> {
    let r = ising_ring();
    let wl: Vec<Laurent<Q>> = ws.iter().map(|w| Laurent::constant(w.clone())).collect();
    ising_limit(r.h_with(&wl, spec)?)
}

/// X_n at ζ = 1 through the product of determinants.
pub fn ising_x(ws: &[Q]) -> Result<Q> {
    let r = ising_ring();
    let wl: Vec<Laurent<Q>> = ws.iter().map(|w| Laurent::constant(w.clone())).collect();
    ising_limit(r.x_n_product(&wl)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn small_schur_values() {
        let ones = vec![q(1, 1); 3];
        assert_eq!(schur_at_ones(&staircase(3), 3), q(3, 1));
        assert_eq!(schur_at_ones(&staircase(5), 5), q(45, 1));
        assert_eq!(symplectic(&staircase(1), &[q(3, 7)]).unwrap(), q(1, 1));
        let zs = vec![q(2, 1), q(3, 1), q(5, 1)];
        assert_eq!(schur(&staircase(3), &zs).unwrap(), q(10, 1));
        assert!(schur(&staircase(3), &ones).is_err());
    }

    #[test]
    fn staircase_product_matches() {
        for n in 0..4 {
            assert_eq!(staircase_product(n), schur_at_ones(&staircase(2 * n + 1), 2 * n + 1), "n={n}");
        }
    }

    #[test]
    fn half_specialization() {
        for zs in [vec![q(2, 1)], vec![q(2, 1), q(-3, 5)], vec![q(3, 2), q(-2, 7), q(5, 3)]] {
            let (a, b) = half_specialized_schur(&zs).unwrap();
            assert_eq!(a, b, "{zs:?}");
        }
    }

    #[test]
    fn trig_partition_constant() {
        let draws = vec![vec![0.3, -0.4, 0.9], vec![0.2, 0.5, -0.7], vec![1.1, 0.15, -0.35]];
        let (_, spread) = trig_partition(&draws, 1e-4).unwrap();
        assert!(spread < 1e-6, "{spread}");
    }

    #[test]
    fn dictionary_lines() {
        let zs = [q(2, 1), q(-3, 5), q(7, 3), q(-1, 4), q(5, 2), q(4, 9)];
        for line in Dictionary::ALL {
            for m in 1..=3 {
                let (a, b) = dictionary(line, &zs[..line.free(m)]).unwrap();
                assert_eq!(a, b * cyc(&line.missing_factor(m)), "{} m={m}", line.name());
            }
        }
    }

    #[test]
    fn ising_values() {
        for m in 1..=3usize {
            let ws: Vec<Q> = (0..2 * m as i64).map(|k| q(k + 2, 3)).collect();
            assert_eq!(ising_h(&ws, &[]).unwrap(), q(1 << (m * (m - 1)), 1));
            assert_eq!(ising_h(&ws[1..], &[Coupling::J4]).unwrap(), q(1 << ((m - 1) * (m - 1)), 1));
            let xs = &ws[..m];
            assert_eq!(ising_x(xs).unwrap(), q(1 << (m * (m + 1) + 1), 1));
        }
    }

    #[test]
    fn sequences() {
        let got = zeta_zero_sequences(4).unwrap();
        let want: [[i64; 4]; 5] = [[1, 3, 25, 588], [1, 1, 3, 26], [1, 2, 11, 170], [1, 5, 66, 2431], [1, 7, 143, 8398]];
        for ((_, g), w) in got.iter().zip(want) {
            assert_eq!(g, &w.iter().map(|&k| q(k, 1)).collect::<Vec<_>>());
        }
    }
}
