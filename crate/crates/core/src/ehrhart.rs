//! Ehrhart polynomial, h*-vector, normalized volume, degree and codegree of a
//! single lattice polytope, all from exact lattice point counts of dilates.

use malachite::base::num::arithmetic::traits::{Abs, BinomialCoefficient, Factorial};
use malachite::base::num::basic::traits::{One, Zero};
use malachite::{Integer, Natural, Rational};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::lattice::integer_to_json;
use crate::polytope::LatticePolytope;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartData {
    /// `d = dim(P)`.
    pub dim: usize,
    /// `ehr_P(t) = Σ coeffs[i] t^i`, `d + 1` entries.
    pub ehr_coeffs: Vec<Rational>,
    /// `d + 1` entries, trailing zeros kept.
    pub h_star: Vec<Integer>,
    pub volume: Integer,
    pub degree: usize,
    pub codegree: usize,
}

impl EhrhartData {
    /// `ehr_P(t)` at any integer, negative ones included.
    pub fn evaluate(&self, t: &Integer) -> Rational {
        let t = Rational::from(t);
        let mut acc = Rational::ZERO;
        for c in self.ehr_coeffs.iter().rev() {
            acc = acc * &t + c;
        }
        acc
    }

    pub fn leading_coefficient(&self) -> &Rational {
        self.ehr_coeffs.last().expect("at least the constant term")
    }
}

impl Serialize for EhrhartData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EhrhartData", 6)?;
        st.serialize_field("dim", &self.dim)?;
        let coeffs: Vec<String> = self.ehr_coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("ehr_coeffs", &coeffs)?;
        let h: Vec<serde_json::Number> = self.h_star.iter().map(integer_to_json).collect();
        st.serialize_field("h_star", &h)?;
        st.serialize_field("volume", &integer_to_json(&self.volume))?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("codegree", &self.codegree)?;
        st.end()
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> Integer {
    Integer::from(Natural::binomial_coefficient(Natural::from(n), Natural::from(k)))
}

fn sign(k: usize) -> Integer {
    if k.is_multiple_of(2) {
        Integer::ONE
    } else {
        Integer::from(-1)
    }
}

/// `|tP ∩ Z^n|` for `t = 0..=d`.
fn counts(p: &LatticePolytope, d: usize) -> Vec<Integer> {
    (0..=d as u64).map(|t| Integer::from(p.count_dilate(t))).collect()
}

/// Coefficients of the unique polynomial of degree `≤ d` through
/// `(t, values[t])`, `t = 0..=d`, via Newton's forward-difference form.
pub(crate) fn interpolate(values: &[Integer]) -> Vec<Rational> {
    let d = values.len() - 1;
    let mut coeffs = vec![Rational::ZERO; d + 1];
    // basis[k] holds the coefficients of t (t-1) ⋯ (t-k+1).
    let mut basis: Vec<Integer> = vec![Integer::ONE];
    for k in 0..=d {
        let diff: Integer = (0..=k).map(|i| sign(k - i) * binomial(k as u64, i as u64) * &values[i]).sum();
        let scale = Rational::from_integers(diff, Integer::from(Natural::factorial(k as u64)));
        for (j, b) in basis.iter().enumerate() {
            coeffs[j] += &scale * Rational::from(b);
        }
        let mut next = vec![Integer::ZERO; basis.len() + 1];
        let shift = Integer::from(k as u64);
        for (j, b) in basis.iter().enumerate() {
            next[j + 1] += b;
            next[j] -= &shift * b;
        }
        basis = next;
    }
    coeffs
}

/// `h*_j = Σ_{i ≤ j} (-1)^{j-i} C(d+1, j-i) |iP ∩ Z^n|`.
pub(crate) fn h_star_from_counts(values: &[Integer]) -> Vec<Integer> {
    let d = values.len() - 1;
    (0..=d).map(|j| (0..=j).map(|i| sign(j - i) * binomial(d as u64 + 1, (j - i) as u64) * &values[i]).sum()).collect()
}

/// Smallest `k ≥ 1` with an interior lattice point in `kP`, scanning
/// `k = 1..=d+1`.
pub fn codegree_by_scan(p: &LatticePolytope) -> Result<usize> {
    let d = p.dimension();
    (1..=d + 1)
        .find(|&k| p.has_interior_point_dilate(k as u64))
        .ok_or_else(|| Error::CrossCheck(format!("no interior point in (d+1)P for {p:?}")))
}

pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<EhrhartData> {
    let d = p.dimension();
    let values = counts(p, d);
    let ehr_coeffs = interpolate(&values);
    let h_star = h_star_from_counts(&values);
    let scaled = ehr_coeffs[d].clone() * Rational::from(Natural::factorial(d as u64));
    let volume =
        Integer::try_from(&scaled).map_err(|_| Error::CrossCheck(format!("non-integral volume {scaled} for {p:?}")))?;
    let degree = h_star.iter().rposition(|h| *h != Integer::ZERO).unwrap_or(0);
    let codegree = codegree_by_scan(p)?;
    if degree + codegree != d + 1 {
        return Err(Error::CrossCheck(format!(
            "h*-degree {degree} and dilate codegree {codegree} disagree in dimension {d} for {p:?}"
        )));
    }
    Ok(EhrhartData { dim: d, ehr_coeffs, h_star, volume, degree, codegree })
}

/// `Vol(P)`: the `d`-th forward difference of the dilate counts, which is
/// `d!` times the leading Ehrhart coefficient. A point has volume one.
pub fn normalized_volume(p: &LatticePolytope) -> Integer {
    let d = p.dimension();
    if p.num_vertices() == d + 1 {
        return p.simplex_volume().abs();
    }
    let values = counts(p, d);
    (0..=d).map(|i| sign(d - i) * binomial(d as u64, i as u64) * &values[i]).sum()
}

/// Normalized `n`-volume of a polytope in `R^n`: zero unless full-dimensional.
pub fn ambient_volume(p: &LatticePolytope) -> Integer {
    if p.is_full_dimensional() {
        normalized_volume(p)
    } else {
        Integer::ZERO
    }
}

/// `ehr_P(-t) - (-1)^{dim P} |intr_Z(tP)|`, zero by reciprocity.
pub fn reciprocity_residual(p: &LatticePolytope, t: u64) -> Result<Integer> {
    if t == 0 {
        return Err(Error::Precondition("reciprocity needs a positive dilation".into()));
    }
    let data = ehrhart_polynomial(p)?;
    let value = data.evaluate(&-Integer::from(t));
    let value =
        Integer::try_from(&value).map_err(|_| Error::CrossCheck(format!("ehr(-{t}) = {value} is not an integer")))?;
    Ok(value - sign(data.dim) * Integer::from(p.count_interior_dilate(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| Integer::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_integers(Integer::from(n), Integer::from(d))
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        // (t+1)^2
        assert_eq!(interpolate(&ints(&[1, 4, 9])), vec![rat(1, 1), rat(2, 1), rat(1, 1)]);
        // (t+1)(t+2)/2
        assert_eq!(interpolate(&ints(&[1, 3, 6])), vec![rat(1, 1), rat(3, 2), rat(1, 2)]);
        assert_eq!(interpolate(&ints(&[1])), vec![rat(1, 1)]);
    }

    #[test]
    fn standard_simplices() {
        for n in 0..=5 {
            let e = ehrhart_polynomial(&LatticePolytope::standard_simplex(n)).unwrap();
            assert_eq!(e.volume, Integer::ONE, "n = {n}");
            assert_eq!(e.degree, 0);
            assert_eq!(e.codegree, n + 1);
            assert_eq!(e.h_star[0], Integer::ONE);
            assert!(e.h_star[1..].iter().all(|h| *h == Integer::ZERO));
        }
    }

    #[test]
    fn unit_square() {
        let e = ehrhart_polynomial(&LatticePolytope::unit_cube(2)).unwrap();
        assert_eq!(e.ehr_coeffs, vec![rat(1, 1), rat(2, 1), rat(1, 1)]);
        assert_eq!(e.h_star, ints(&[1, 1, 0]));
        assert_eq!((e.degree, e.codegree), (1, 2));
        assert_eq!(e.volume, Integer::from(2));
    }

    #[test]
    fn segments_and_points() {
        let seg = LatticePolytope::from_i64_points(&[&[0, 0], &[3, 3]]).unwrap();
        let e = ehrhart_polynomial(&seg).unwrap();
        assert_eq!(e.volume, Integer::from(3));
        assert_eq!(normalized_volume(&seg), Integer::from(3));
        let diag = LatticePolytope::from_i64_points(&[&[0, 0], &[2, 2]]).unwrap();
        assert_eq!(normalized_volume(&diag), Integer::from(2));
        let pt = LatticePolytope::from_i64_points(&[&[4, 1]]).unwrap();
        let e = ehrhart_polynomial(&pt).unwrap();
        assert_eq!((e.dim, e.degree, e.codegree), (0, 0, 1));
        assert_eq!(e.h_star, ints(&[1]));
        assert_eq!(normalized_volume(&pt), Integer::ONE);
        assert_eq!(reciprocity_residual(&pt, 1).unwrap(), Integer::ZERO);
    }

    #[test]
    fn volumes() {
        let tri = LatticePolytope::standard_simplex(2);
        assert_eq!(normalized_volume(&tri), Integer::ONE);
        assert_eq!(normalized_volume(&tri.dilate(2)), Integer::from(4));
        assert_eq!(ehrhart_polynomial(&tri.dilate(2)).unwrap().volume, Integer::from(4));
        assert_eq!(normalized_volume(&LatticePolytope::unit_cube(3)), Integer::from(6));
        assert_eq!(ambient_volume(&LatticePolytope::standard_simplex(1).dilate(2)), Integer::from(2));
    }

    #[test]
    fn reciprocity_examples() {
        let tri = LatticePolytope::standard_simplex(2);
        let e = ehrhart_polynomial(&tri).unwrap();
        assert_eq!(e.evaluate(&Integer::from(-1)), Rational::ZERO);
        assert_eq!(e.evaluate(&Integer::from(-3)), Rational::ONE);
        for t in 1..=4 {
            assert_eq!(reciprocity_residual(&tri, t).unwrap(), Integer::ZERO);
        }
        assert!(reciprocity_residual(&tri, 0).is_err());
    }

    #[test]
    fn out_of_sample_counts() {
        let p =
            LatticePolytope::from_i64_points(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 0], &[1, 1, 2], &[2, 2, 2]]).unwrap();
        let e = ehrhart_polynomial(&p).unwrap();
        for t in 4..=6u64 {
            assert_eq!(e.evaluate(&Integer::from(t)), Rational::from(p.count_dilate(t)));
        }
        assert_eq!(e.h_star.iter().sum::<Integer>(), e.volume);
    }
}
