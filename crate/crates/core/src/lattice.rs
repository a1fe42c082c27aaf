//! Exact integer-lattice linear algebra.
//!
//! Everything here works over arbitrary-precision integers. The central tool
//! is a row-style Hermite normal form that also tracks the inverse of its
//! unimodular transform; saturated sublattices, lattice coordinates and
//! quotient maps are all read off from such decompositions.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use malachite::base::num::arithmetic::traits::{Abs, DivRound, Gcd, UnsignedAbs};
use malachite::base::num::basic::traits::{One, Zero};
use malachite::base::rounding_modes::RoundingMode;
use malachite::{Integer, Natural};
use serde::de::{Deserializer, Error as _};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// A point (or direction) of `Z^d`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<Integer>);

impl IntVector {
    pub fn new(entries: Vec<Integer>) -> Self {
        Self(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&x| Integer::from(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Integer::ZERO; dim])
    }

    /// The standard basis vector `e_{index+1}` of `Z^dim`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = Integer::ONE;
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn entries(&self) -> &[Integer] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Integer> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Integer> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == Integer::ZERO)
    }

    pub fn dot(&self, other: &IntVector) -> Integer {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, k: &Integer) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &IntVector) -> IntVector {
        let mut entries = self.0.clone();
        entries.extend(other.0.iter().cloned());
        IntVector(entries)
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }
}

pub(crate) fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    let mut acc = Integer::ZERO;
    for (x, y) in a.iter().zip(b) {
        if *x != Integer::ZERO && *y != Integer::ZERO {
            acc += x * y;
        }
    }
    acc
}

impl FromIterator<Integer> for IntVector {
    fn from_iter<T: IntoIterator<Item = Integer>>(iter: T) -> Self {
        IntVector(iter.into_iter().collect())
    }
}

impl Index<usize> for IntVector {
    type Output = Integer;
    fn index(&self, index: usize) -> &Integer {
        &self.0[index]
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Serializes an integer as a plain JSON number, whatever its size.
pub fn integer_to_json(x: &Integer) -> serde_json::Number {
    match i64::try_from(x) {
        Ok(small) => serde_json::Number::from(small),
        Err(_) => serde_json::Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"),
    }
}

/// `serialize_with` helpers for integer fields.
pub(crate) mod integer_serde {
    use malachite::Integer;
    use serde::{Serialize, Serializer};

    pub fn one<S: Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
        super::integer_to_json(x).serialize(s)
    }

    pub fn opt<S: Serializer>(x: &Option<Integer>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(super::integer_to_json).serialize(s)
    }
}

pub fn integer_from_json(n: &serde_json::Number) -> Option<Integer> {
    Integer::from_str(&n.to_string()).ok()
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&integer_to_json(x))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<serde_json::Number>::deserialize(deserializer)?;
        raw.iter()
            .map(|n| integer_from_json(n).ok_or_else(|| D::Error::custom(format!("not an integer: {n}"))))
            .collect()
    }
}

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Integer>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Integer>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entries length must be rows * cols");
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Integer::ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Integer::ONE;
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors (all of length `cols`).
    pub fn from_rows(rows: &[IntVector], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols, "ragged rows");
            entries.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(&vecs, cols)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Integer) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> IntVector {
        IntVector(self.row(i).to_vec())
    }

    pub fn column_vector(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if *a == Integer::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if *b != Integer::ZERO {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `M · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim(), "incompatible matrix-vector product");
        (0..self.rows).map(|i| dot(self.row(i), v.entries())).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Integer {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        determinant_of_rows(self.row_vectors().into_iter().map(IntVector::into_entries).collect())
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && (&self.determinant()).abs() == Integer::ONE
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", self.row_vector(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(serializer)
    }
}

/// Bareiss elimination on a square matrix given as rows.
pub(crate) fn determinant_of_rows(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    if n == 0 {
        return Integer::ONE;
    }
    let mut sign_flip = false;
    let mut prev = Integer::ONE;
    for k in 0..n - 1 {
        if a[k][k] == Integer::ZERO {
            match (k + 1..n).find(|&i| a[i][k] != Integer::ZERO) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Integer::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

pub(crate) fn floor_div(a: &Integer, b: &Integer) -> Integer {
    a.div_round(b, RoundingMode::Floor).0
}

pub(crate) fn ceil_div(a: &Integer, b: &Integer) -> Integer {
    a.div_round(b, RoundingMode::Ceiling).0
}

/// Non-negative gcd of a list of integers (0 for an all-zero list).
pub(crate) fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Integer>) -> Integer {
    let mut g = Natural::ZERO;
    for x in xs {
        g = g.gcd(x.unsigned_abs());
        if g == Natural::ONE {
            break;
        }
    }
    Integer::from(g)
}

/// Divides a nonzero vector by the gcd of its entries.
pub(crate) fn primitive(v: &[Integer]) -> Vec<Integer> {
    let g = gcd_all(v);
    if g == Integer::ZERO || g == Integer::ONE {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Full output of [`hermite_decomposition`].
#[derive(Clone, Debug)]
pub struct HermiteDecomposition {
    /// Row-style Hermite normal form of the input.
    pub h: IntMatrix,
    /// Unimodular transform with `u · m = h`.
    pub u: IntMatrix,
    /// Inverse of `u`.
    pub u_inv: IntMatrix,
    /// Pivot column of each nonzero row of `h`; its length is the rank.
    pub pivots: Vec<usize>,
}

impl HermiteDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct RowReducer {
    h: Vec<Vec<Integer>>,
    u: Vec<Vec<Integer>>,
    // Stored transposed: u_inv_t[j] is column j of u^{-1}.
    u_inv_t: Vec<Vec<Integer>>,
}

impl RowReducer {
    fn swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.h.swap(i, j);
            self.u.swap(i, j);
            self.u_inv_t.swap(i, j);
        }
    }

    fn negate(&mut self, i: usize) {
        for x in self.h[i].iter_mut().chain(self.u[i].iter_mut()).chain(self.u_inv_t[i].iter_mut()) {
            *x = -&*x;
        }
    }

    /// `row_i += k · row_j`.
    fn add_multiple(&mut self, i: usize, j: usize, k: &Integer) {
        if *k == Integer::ZERO {
            return;
        }
        for (rows, sign_flip) in [(&mut self.h, false), (&mut self.u, false), (&mut self.u_inv_t, true)] {
            if sign_flip {
                // Column j of u^{-1} loses k times column i.
                let (dst, src) = split_pair(rows, j, i);
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if *s != Integer::ZERO {
                        *d -= k * s;
                    }
                }
            } else {
                let (dst, src) = split_pair(rows, i, j);
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if *s != Integer::ZERO {
                        *d += k * s;
                    }
                }
            }
        }
    }
}

/// Mutable reference to row `a` and shared reference to row `b` (`a != b`).
fn split_pair(rows: &mut [Vec<Integer>], a: usize, b: usize) -> (&mut Vec<Integer>, &Vec<Integer>) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = rows.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// Row-style Hermite normal form with the transform and its inverse.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, zero rows
/// come last, and the pivot column is always the leftmost available one.
pub fn hermite_decomposition(m: &IntMatrix) -> HermiteDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let identity = |n: usize| -> Vec<Vec<Integer>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { Integer::ONE } else { Integer::ZERO }).collect()).collect()
    };
    let mut red = RowReducer {
        h: m.row_vectors().into_iter().map(IntVector::into_entries).collect(),
        u: identity(rows),
        u_inv_t: identity(rows),
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| red.h[i][c] != Integer::ZERO)
                .min_by(|&a, &b| (&red.h[a][c]).abs().cmp(&(&red.h[b][c]).abs()));
            let Some(best) = best else { break };
            red.swap(r, best);
            let mut cleared = true;
            for i in r + 1..rows {
                if red.h[i][c] != Integer::ZERO {
                    let q = &red.h[i][c] / &red.h[r][c];
                    red.add_multiple(i, r, &-q);
                    if red.h[i][c] != Integer::ZERO {
                        cleared = false;
                    }
                }
            }
            if cleared {
                break;
            }
        }
        if red.h[r][c] == Integer::ZERO {
            continue;
        }
        if red.h[r][c] < Integer::ZERO {
            red.negate(r);
        }
        for i in 0..r {
            if red.h[i][c] != Integer::ZERO {
                let q = floor_div(&red.h[i][c], &red.h[r][c]);
                red.add_multiple(i, r, &-q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let flatten =
        |rows: Vec<Vec<Integer>>, n: usize, k: usize| IntMatrix::new(n, k, rows.into_iter().flatten().collect());
    HermiteDecomposition {
        h: flatten(red.h, rows, cols),
        u: flatten(red.u, rows, rows),
        u_inv: flatten(red.u_inv_t, rows, rows).transpose(),
        pivots,
    }
}

/// Returns `(H, U)` with `U` unimodular and `U · M = H` in Hermite normal form.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let d = hermite_decomposition(m);
    (d.h, d.u)
}

/// A basis of the integer kernel `{x ∈ Z^cols : M x = 0}`; it is saturated.
pub fn kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let d = hermite_decomposition(&m.transpose());
    (d.rank()..m.cols()).map(|i| d.u.row_vector(i)).collect()
}

/// Linearly independent integer vectors that span a saturated sublattice.
pub fn is_primitive_system(vectors: &[IntVector], dim: usize) -> bool {
    complete_to_basis(vectors, dim).is_some()
}

/// Extends a primitive system to a basis of `Z^dim`; the given vectors come first.
pub fn complete_to_basis(vectors: &[IntVector], dim: usize) -> Option<Vec<IntVector>> {
    if vectors.is_empty() {
        return Some((0..dim).map(|i| IntVector::unit(dim, i)).collect());
    }
    let d = hermite_decomposition(&IntMatrix::from_rows(vectors, dim).transpose());
    let r = vectors.len();
    if d.rank() != r || (0..r).any(|i| *d.h.get(i, i) != Integer::ONE) {
        return None;
    }
    // u · S^T = [I; 0], so the first r columns of u^{-1} are the given vectors.
    Some((0..dim).map(|j| d.u_inv.column_vector(j)).collect())
}

/// The affine lattice `Z^n ∩ aff(points)`, with a coordinate system on it.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AffineLatticeBasis {
    base_point: IntVector,
    directions: Vec<IntVector>,
    /// Unimodular `n × n` map; rows `0..rank` give lattice coordinates,
    /// rows `rank..n` vanish exactly on the direction lattice.
    #[serde(skip)]
    coordinate_map: IntMatrix,
}

impl AffineLatticeBasis {
    pub fn base_point(&self) -> &IntVector {
        &self.base_point
    }

    /// A basis of the saturated direction lattice; in Hermite normal form
    /// unless supplied through [`affine_lattice_with_basis`].
    pub fn directions(&self) -> &[IntVector] {
        &self.directions
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.directions.len()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.base_point.dim()
    }

    /// Full coordinate vector `U (p - base)` in the completed basis.
    fn full_coordinates(&self, p: &IntVector) -> IntVector {
        self.coordinate_map.mul_vec(&(p - &self.base_point))
    }

    /// Integer coordinates of `p` with respect to the directions, if `p` lies
    /// in the affine lattice.
    pub fn lattice_coordinates(&self, p: &IntVector) -> Option<IntVector> {
        assert_eq!(p.dim(), self.ambient_dim(), "ambient dimension mismatch");
        let full = self.full_coordinates(p).into_entries();
        let r = self.rank();
        if full[r..].iter().any(|x| *x != Integer::ZERO) {
            return None;
        }
        Some(IntVector::new(full[..r].to_vec()))
    }

    /// Coordinates of a direction vector with respect to [`Self::directions`],
    /// if it lies in the direction lattice.
    pub fn linear_coordinates(&self, v: &IntVector) -> Option<IntVector> {
        assert_eq!(v.dim(), self.ambient_dim(), "ambient dimension mismatch");
        let full = self.coordinate_map.mul_vec(v).into_entries();
        let r = self.rank();
        if full[r..].iter().any(|x| *x != Integer::ZERO) {
            return None;
        }
        Some(IntVector::new(full[..r].to_vec()))
    }

    /// Inverse of [`Self::lattice_coordinates`].
    pub fn point_from_coordinates(&self, c: &IntVector) -> IntVector {
        assert_eq!(c.dim(), self.rank(), "coordinate dimension mismatch");
        let mut p = self.base_point.clone().into_entries();
        for (ci, dir) in c.iter().zip(&self.directions) {
            if *ci == Integer::ZERO {
                continue;
            }
            for (pj, dj) in p.iter_mut().zip(dir.iter()) {
                *pj += ci * dj;
            }
        }
        IntVector::new(p)
    }

    pub fn contains(&self, p: &IntVector) -> bool {
        self.lattice_coordinates(p).is_some()
    }

    /// Matrix of the surjection `Z^n → Z^n / Γ` (rows `rank..n` of the
    /// coordinate map); its integer kernel is exactly the direction lattice.
    pub fn quotient_matrix(&self) -> IntMatrix {
        let n = self.ambient_dim();
        let r = self.rank();
        let rows: Vec<IntVector> = (r..n).map(|i| self.coordinate_map.row_vector(i)).collect();
        IntMatrix::from_rows(&rows, n)
    }
}

impl fmt::Debug for AffineLatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineLatticeBasis")
            .field("base_point", &self.base_point)
            .field("directions", &self.directions)
            .finish()
    }
}

/// Basis of the saturation of the lattice spanned by `vectors` in `Z^dim`,
/// in Hermite normal form.
pub fn saturated_span(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    let nonzero: Vec<IntVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    // u · D^T = H: the differences are integer combinations of the first
    // `rank` columns of u^{-1}, which form a primitive system.
    let d = hermite_decomposition(&IntMatrix::from_rows(&nonzero, dim).transpose());
    let raw: Vec<IntVector> = (0..d.rank()).map(|j| d.u_inv.column_vector(j)).collect();
    let canon = hermite_decomposition(&IntMatrix::from_rows(&raw, dim));
    (0..canon.rank()).map(|i| canon.h.row_vector(i)).collect()
}

/// The affine lattice `Z^n ∩ aff(points)`.
///
/// The base point is the lexicographically smallest input point and the
/// directions are the Hermite basis of the saturated difference lattice, so the
/// result depends only on the affine hull and the lexicographic minimum.
pub fn saturated_affine_lattice(points: &[IntVector]) -> AffineLatticeBasis {
    assert!(!points.is_empty(), "saturated_affine_lattice needs at least one point");
    let n = points[0].dim();
    assert!(points.iter().all(|p| p.dim() == n), "points of unequal dimension");
    let base_point = points.iter().min().expect("non-empty").clone();
    let differences: Vec<IntVector> = points.iter().map(|p| p - &base_point).collect();
    let directions = saturated_span(&differences, n);
    affine_lattice_from_directions(base_point, directions)
}

/// The affine lattice `base_point + span_Z(directions)`, keeping the given
/// basis; `None` unless the directions form a primitive system.
pub fn affine_lattice_with_basis(base_point: IntVector, directions: Vec<IntVector>) -> Option<AffineLatticeBasis> {
    let n = base_point.dim();
    if directions.iter().any(|d| d.dim() != n) || !is_primitive_system(&directions, n) {
        return None;
    }
    Some(affine_lattice_from_directions(base_point, directions))
}

/// Builds the coordinate system for a primitive system of directions.
pub(crate) fn affine_lattice_from_directions(base_point: IntVector, directions: Vec<IntVector>) -> AffineLatticeBasis {
    let n = base_point.dim();
    let coordinate_map = if directions.is_empty() {
        IntMatrix::identity(n)
    } else {
        let d = hermite_decomposition(&IntMatrix::from_rows(&directions, n).transpose());
        debug_assert!((0..directions.len()).all(|i| *d.h.get(i, i) == Integer::ONE));
        d.u
    };
    AffineLatticeBasis { base_point, directions, coordinate_map }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    #[test]
    fn hnf_identity() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_rank_one() {
        let (h, u) = hermite_normal_form(&m(&[&[2, 4], &[4, 8]]));
        assert_eq!(h, m(&[&[2, 4], &[0, 0]]));
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_swap() {
        let (h, u) = hermite_normal_form(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, m(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let input = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let d = hermite_decomposition(&input);
        assert_eq!(d.u.mul(&input), d.h);
        assert_eq!(d.u.mul(&d.u_inv), IntMatrix::identity(3));
        for (row, &c) in d.pivots.iter().enumerate() {
            let p = d.h.get(row, c);
            assert!(*p > Integer::ZERO);
            for above in 0..row {
                let x = d.h.get(above, c);
                assert!(*x >= Integer::ZERO && x < p);
            }
        }
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), Integer::from(-2));
        assert_eq!(m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).determinant(), Integer::from(-1));
        assert_eq!(m(&[&[2, 0, 0], &[0, 3, 0], &[1, 1, 0]]).determinant(), Integer::ZERO);
        assert_eq!(m(&[&[0, 2, 1], &[1, 0, 3], &[4, 1, 0]]).determinant(), Integer::from(25));
    }

    #[test]
    fn kernel_of_row() {
        let k = kernel_basis(&m(&[&[2, 4, 6]]));
        assert_eq!(k.len(), 2);
        for w in &k {
            assert_eq!(dot(&[2, 4, 6].map(Integer::from), w.entries()), Integer::ZERO);
        }
        assert!(is_primitive_system(&k, 3));
    }

    #[test]
    fn single_point_lattice() {
        let b = saturated_affine_lattice(&[v(&[0, 0])]);
        assert_eq!(b.base_point(), &v(&[0, 0]));
        assert_eq!(b.rank(), 0);
    }

    #[test]
    fn saturation_divides_out_factor() {
        let b = saturated_affine_lattice(&[v(&[0, 0]), v(&[2, 0])]);
        assert_eq!(b.rank(), 1);
        assert_eq!(b.directions(), &[v(&[1, 0])]);
        let diag = saturated_affine_lattice(&[v(&[0, 0]), v(&[2, 2])]);
        assert_eq!(diag.directions(), &[v(&[1, 1])]);
    }

    #[test]
    fn full_lattice_from_triangle() {
        let b = saturated_affine_lattice(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(b.rank(), 2);
        assert!(is_primitive_system(b.directions(), 2));
        assert_eq!(IntMatrix::from_rows(b.directions(), 2).determinant().abs(), Integer::ONE);
    }

    #[test]
    fn coordinates_on_axis() {
        let b = saturated_affine_lattice(&[v(&[0, 0]), v(&[1, 0])]);
        assert_eq!(b.lattice_coordinates(&v(&[3, 0])), Some(v(&[3])));
        assert_eq!(b.lattice_coordinates(&v(&[3, 1])), None);
        let pt = saturated_affine_lattice(&[v(&[5, 5])]);
        assert_eq!(pt.lattice_coordinates(&v(&[5, 5])), Some(v(&[])));
        assert_eq!(pt.lattice_coordinates(&v(&[5, 4])), None);
    }

    #[test]
    fn quotient_kills_directions() {
        let b = saturated_affine_lattice(&[v(&[1, 0, 2]), v(&[3, 2, 2]), v(&[1, 0, 5])]);
        let q = b.quotient_matrix();
        assert_eq!(q.rows(), 1);
        for d in b.directions() {
            assert!(q.mul_vec(d).is_zero());
        }
        assert!(is_primitive_system(&q.row_vectors(), 3));
    }

    #[test]
    fn completion_extends_primitive_vectors() {
        let basis = complete_to_basis(&[v(&[1, 1, 0]), v(&[0, 1, 1])], 3).expect("primitive");
        assert_eq!(basis[0], v(&[1, 1, 0]));
        assert_eq!(basis[1], v(&[0, 1, 1]));
        assert!(IntMatrix::from_rows(&basis, 3).is_unimodular());
        assert!(complete_to_basis(&[v(&[2, 0])], 2).is_none());
        assert!(complete_to_basis(&[v(&[1, 1]), v(&[1, -1])], 2).is_none());
    }
}
