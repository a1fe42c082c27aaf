//! Lattice polytopes in vertex representation.
//!
//! A [`LatticePolytope`] stores its extreme points in lexicographic order.
//! Geometry that needs the affine hull (facets, point location, lattice
//! point scans) works in the lattice coordinates of
//! `Z^n ∩ aff(P)`, where `P` is full-dimensional.

mod count;
pub(crate) mod hull;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use malachite::base::num::arithmetic::traits::Abs;
use malachite::base::num::basic::traits::One;
use malachite::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{dot, integer_to_json, saturated_affine_lattice, AffineLatticeBasis, IntMatrix, IntVector};
use count::Region;
pub(crate) use hull::for_each_combination;

/// Where a point sits relative to a polytope (relative to its affine hull).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointLocation {
    Outside,
    Boundary,
    RelativeInterior,
}

/// A facet inequality `normal · x ≤ offset` in lattice coordinates of the
/// affine hull. The normal is a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: IntVector,
    pub offset: Integer,
}

impl HalfSpace {
    /// `normal · x - offset` (non-positive inside).
    pub fn slack(&self, x: &IntVector) -> Integer {
        self.normal.dot(x) - &self.offset
    }
}

impl Serialize for HalfSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("HalfSpace", 2)?;
        s.serialize_field("normal", &self.normal)?;
        s.serialize_field("offset", &integer_to_json(&self.offset))?;
        s.end()
    }
}

#[derive(Debug)]
struct Geometry {
    basis: AffineLatticeBasis,
    reduced_vertices: Vec<Vec<Integer>>,
    facets: Vec<HalfSpace>,
    normals: Vec<Vec<Integer>>,
}

struct Inner {
    ambient_dim: usize,
    vertices: Vec<IntVector>,
    geometry: OnceLock<Geometry>,
}

/// A convex lattice polytope. Cloning is cheap; derived geometry is cached.
#[derive(Clone)]
pub struct LatticePolytope(Arc<Inner>);

impl LatticePolytope {
    /// Convex hull of a non-empty set of lattice points.
    pub fn from_points(points: &[IntVector]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput("polytope needs at least one point"))?;
        let n = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let basis = saturated_affine_lattice(&pts);
        let reduced: Vec<Vec<Integer>> = pts
            .iter()
            .map(|p| basis.lattice_coordinates(p).expect("point lies in its own affine hull").into_entries())
            .collect();
        let (vertex_idx, raw_facets) = hull::convex_hull(basis.rank(), &reduced);
        let vertices: Vec<IntVector> = vertex_idx.iter().map(|&i| pts[i].clone()).collect();
        let reduced_vertices: Vec<Vec<Integer>> = vertex_idx.iter().map(|&i| reduced[i].clone()).collect();
        let normals: Vec<Vec<Integer>> = raw_facets.iter().map(|f| f.normal.clone()).collect();
        let facets =
            raw_facets.into_iter().map(|f| HalfSpace { normal: IntVector::new(f.normal), offset: f.offset }).collect();
        let geometry = OnceLock::new();
        let _ = geometry.set(Geometry { basis, reduced_vertices, facets, normals });
        Ok(Self(Arc::new(Inner { ambient_dim: n, vertices, geometry })))
    }

    pub fn from_i64_points(points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<IntVector> = points.iter().map(|p| IntVector::from_i64s(p)).collect();
        Self::from_points(&pts)
    }

    /// The single point `p`.
    pub fn point(p: IntVector) -> Self {
        Self::from_points(&[p]).expect("a single point is a valid polytope")
    }

    /// `Δ_n = conv(0, e_1, …, e_n)`.
    pub fn standard_simplex(n: usize) -> Self {
        let mut pts = vec![IntVector::zeros(n)];
        pts.extend((0..n).map(|i| IntVector::unit(n, i)));
        Self::from_points(&pts).expect("standard simplex")
    }

    /// `[0,1]^n`.
    pub fn unit_cube(n: usize) -> Self {
        let pts: Vec<IntVector> =
            (0..1u64 << n).map(|mask| (0..n).map(|i| Integer::from((mask >> i) & 1)).collect()).collect();
        Self::from_points(&pts).expect("unit cube")
    }

    fn geometry(&self) -> &Geometry {
        self.0.geometry.get_or_init(|| {
            let fresh = Self::from_points(&self.0.vertices).expect("stored vertices are valid");
            let g = fresh.geometry();
            Geometry {
                basis: g.basis.clone(),
                reduced_vertices: g.reduced_vertices.clone(),
                facets: g.facets.clone(),
                normals: g.normals.clone(),
            }
        })
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.0.ambient_dim
    }

    /// Extreme points in lexicographic order.
    #[inline]
    pub fn vertices(&self) -> &[IntVector] {
        &self.0.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.0.vertices.len()
    }

    /// Affine dimension.
    pub fn dimension(&self) -> usize {
        self.geometry().basis.rank()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == self.ambient_dim()
    }

    pub fn is_point(&self) -> bool {
        self.num_vertices() == 1
    }

    /// The lattice `Z^n ∩ aff(P)` with its coordinate system.
    pub fn affine_basis(&self) -> &AffineLatticeBasis {
        &self.geometry().basis
    }

    /// Irredundant facet inequalities in lattice coordinates of the affine hull.
    pub fn facets(&self) -> &[HalfSpace] {
        &self.geometry().facets
    }

    /// Vertices in lattice coordinates of the affine hull (same order as
    /// [`Self::vertices`]).
    pub fn reduced_vertices(&self) -> Vec<IntVector> {
        self.geometry().reduced_vertices.iter().cloned().map(IntVector::new).collect()
    }

    pub fn locate(&self, p: &IntVector) -> PointLocation {
        assert_eq!(p.dim(), self.ambient_dim(), "ambient dimension mismatch");
        let g = self.geometry();
        let Some(c) = g.basis.lattice_coordinates(p) else {
            return PointLocation::Outside;
        };
        let mut on_boundary = false;
        for f in &g.facets {
            match dot(f.normal.entries(), c.entries()).cmp(&f.offset) {
                Ordering::Greater => return PointLocation::Outside,
                Ordering::Equal => on_boundary = true,
                Ordering::Less => {}
            }
        }
        if on_boundary {
            PointLocation::Boundary
        } else {
            PointLocation::RelativeInterior
        }
    }

    pub fn contains(&self, p: &IntVector) -> bool {
        self.locate(p) != PointLocation::Outside
    }

    pub fn contains_polytope(&self, other: &LatticePolytope) -> bool {
        other.vertices().iter().all(|v| self.contains(v))
    }

    /// Lattice points of `t·P` (`t ≥ 1`), or only its relative interior, in
    /// lattice coordinates of `aff(P)` scaled by `t`. `None` for a point.
    fn dilate_region(&self, t: u64, interior: bool) -> Option<Region<'_>> {
        let g = self.geometry();
        let d = g.basis.rank();
        if d == 0 {
            return None;
        }
        let t = Integer::from(t);
        let lo = (0..d).map(|j| g.reduced_vertices.iter().map(|v| &v[j]).min().expect("vertex") * &t).collect();
        let hi = (0..d).map(|j| g.reduced_vertices.iter().map(|v| &v[j]).max().expect("vertex") * &t).collect();
        let rhs =
            g.facets.iter().map(|f| if interior { &f.offset * &t - Integer::ONE } else { &f.offset * &t }).collect();
        Some(Region { normals: &g.normals, rhs, lo, hi })
    }

    /// `|tP ∩ Z^n|` for `t ≥ 1`; `t = 0` gives 1.
    pub fn count_dilate(&self, t: u64) -> u64 {
        if t == 0 {
            return 1;
        }
        self.dilate_region(t, false).map_or(1, |r| r.count())
    }

    /// `|intr_Z(tP)|` for `t ≥ 1`. The interior of a point is the point.
    pub fn count_interior_dilate(&self, t: u64) -> u64 {
        assert!(t >= 1, "interior counts need a positive dilation");
        self.dilate_region(t, true).map_or(1, |r| r.count())
    }

    pub fn has_interior_point_dilate(&self, t: u64) -> bool {
        assert!(t >= 1, "interior counts need a positive dilation");
        self.dilate_region(t, true).is_none_or(|r| r.any())
    }

    pub fn count_lattice_points(&self) -> u64 {
        self.count_dilate(1)
    }

    pub fn count_interior_points(&self) -> u64 {
        self.count_interior_dilate(1)
    }

    /// `intr_Z(P) = ∅`.
    pub fn is_hollow(&self) -> bool {
        !self.has_interior_point_dilate(1)
    }

    fn collect_points(&self, interior: bool) -> Vec<IntVector> {
        let g = self.geometry();
        let mut out: Vec<IntVector> = match self.dilate_region(1, interior) {
            None => vec![self.vertices()[0].clone()],
            Some(r) => r.points().into_iter().map(|c| g.basis.point_from_coordinates(&IntVector::new(c))).collect(),
        };
        out.sort();
        out
    }

    /// `P ∩ Z^n` in lexicographic order.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        self.collect_points(false)
    }

    /// `intr(P) ∩ Z^n` in lexicographic order.
    pub fn interior_lattice_points(&self) -> Vec<IntVector> {
        self.collect_points(true)
    }

    /// `k·(U v) + t` applied to every vertex.
    pub fn transform(&self, u: &IntMatrix, t: &IntVector, k: u64) -> Result<LatticePolytope> {
        let n = self.ambient_dim();
        if u.rows() != n || u.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: u.rows().max(u.cols()) });
        }
        if t.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.dim() });
        }
        if !u.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        if k == 0 {
            return Err(Error::Precondition("dilation factor must be positive".into()));
        }
        let k = Integer::from(k);
        let pts: Vec<IntVector> = self.vertices().iter().map(|v| &u.mul_vec(v).scale(&k) + t).collect();
        LatticePolytope::from_points(&pts)
    }

    pub fn translate(&self, t: &IntVector) -> LatticePolytope {
        let pts: Vec<IntVector> = self.vertices().iter().map(|v| v + t).collect();
        LatticePolytope::from_points(&pts).expect("translation keeps the vertex set valid")
    }

    /// `kP`.
    pub fn dilate(&self, k: u64) -> LatticePolytope {
        let k = Integer::from(k);
        let pts: Vec<IntVector> = self.vertices().iter().map(|v| v.scale(&k)).collect();
        LatticePolytope::from_points(&pts).expect("dilation keeps the vertex set valid")
    }

    /// Coordinate-wise minimum of the vertices.
    pub fn min_corner(&self) -> IntVector {
        (0..self.ambient_dim()).map(|j| self.vertices().iter().map(|v| &v[j]).min().expect("vertex").clone()).collect()
    }

    /// The translate whose minimum corner is the origin.
    pub fn translation_normal_form(&self) -> LatticePolytope {
        let corner = self.min_corner();
        if corner.is_zero() {
            return self.clone();
        }
        self.translate(&-&corner)
    }

    /// The same polytope in lattice coordinates of its affine hull, together
    /// with the basis that maps those coordinates back.
    pub fn reduce_to_full_dim(&self) -> (LatticePolytope, AffineLatticeBasis) {
        let basis = self.affine_basis().clone();
        if basis.rank() == self.ambient_dim() && basis.base_point().is_zero() && is_standard(&basis) {
            return (self.clone(), basis);
        }
        let reduced = LatticePolytope::from_points(&self.reduced_vertices()).expect("reduced vertices are valid");
        (reduced, basis)
    }

    /// `dim(P) + 1` vertices and normalized volume one.
    pub fn is_unimodular_simplex(&self) -> bool {
        let d = self.dimension();
        if self.num_vertices() != d + 1 {
            return false;
        }
        (&self.simplex_volume()).abs() == Integer::ONE
    }

    /// Signed determinant of the edge matrix of a simplex in reduced
    /// coordinates (1 for a point).
    pub(crate) fn simplex_volume(&self) -> Integer {
        let g = self.geometry();
        let d = g.basis.rank();
        debug_assert_eq!(g.reduced_vertices.len(), d + 1);
        let v0 = &g.reduced_vertices[0];
        let rows: Vec<Vec<Integer>> =
            g.reduced_vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
        crate::lattice::determinant_of_rows(rows)
    }
}

fn is_standard(basis: &AffineLatticeBasis) -> bool {
    let n = basis.ambient_dim();
    basis.directions().iter().enumerate().all(|(i, d)| *d == IntVector::unit(n, i))
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.ambient_dim() == other.ambient_dim() && self.vertices() == other.vertices())
    }
}

impl Eq for LatticePolytope {}

impl Hash for LatticePolytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_dim().hash(state);
        self.vertices().hash(state);
    }
}

impl PartialOrd for LatticePolytope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatticePolytope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim(), self.vertices()).cmp(&(other.ambient_dim(), other.vertices()))
    }
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use malachite::base::num::basic::traits::Zero;

    fn poly(points: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64_points(points).unwrap()
    }

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    fn box_scan(p: &LatticePolytope, lo: i64, hi: i64) -> (usize, usize) {
        // Independent count over an explicit square box.
        let mut all = 0;
        let mut interior = 0;
        for x in lo..=hi {
            for y in lo..=hi {
                match p.locate(&v(&[x, y])) {
                    PointLocation::Outside => {}
                    PointLocation::Boundary => all += 1,
                    PointLocation::RelativeInterior => {
                        all += 1;
                        interior += 1;
                    }
                }
            }
        }
        (all, interior)
    }

    #[test]
    fn hull_drops_midpoint() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 0]]);
        assert_eq!(p.vertices(), &[v(&[0, 0]), v(&[2, 0])]);
        assert_eq!(poly(&[&[0, 0]]).num_vertices(), 1);
        assert_eq!(poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).num_vertices(), 4);
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(
            LatticePolytope::from_points(&[]).unwrap_err(),
            Error::EmptyInput("polytope needs at least one point")
        );
        assert!(matches!(LatticePolytope::from_points(&[v(&[0, 0]), v(&[1])]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dimensions() {
        assert_eq!(poly(&[&[3, 4]]).dimension(), 0);
        assert_eq!(poly(&[&[0, 0], &[2, 0]]).dimension(), 1);
        assert_eq!(LatticePolytope::standard_simplex(2).dimension(), 2);
    }

    #[test]
    fn facets_of_small_polytopes() {
        let simplex = LatticePolytope::standard_simplex(2);
        let expected = vec![
            HalfSpace { normal: v(&[-1, 0]), offset: Integer::ZERO },
            HalfSpace { normal: v(&[0, -1]), offset: Integer::ZERO },
            HalfSpace { normal: v(&[1, 1]), offset: Integer::ONE },
        ];
        let mut got = simplex.facets().to_vec();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
        assert_eq!(LatticePolytope::unit_cube(2).facets().len(), 4);
        let segment = poly(&[&[0, 0], &[3, 0]]);
        assert_eq!(segment.affine_basis().rank(), 1);
        assert_eq!(segment.facets().len(), 2);
        assert!(poly(&[&[1, 1]]).facets().is_empty());
    }

    #[test]
    fn locate_examples() {
        let simplex = LatticePolytope::standard_simplex(2);
        assert_eq!(simplex.locate(&v(&[0, 0])), PointLocation::Boundary);
        assert_eq!(simplex.dilate(3).locate(&v(&[1, 1])), PointLocation::RelativeInterior);
        assert_eq!(poly(&[&[5, 5]]).locate(&v(&[5, 5])), PointLocation::RelativeInterior);
        assert_eq!(poly(&[&[5, 5]]).locate(&v(&[5, 6])), PointLocation::Outside);
        assert_eq!(poly(&[&[0, 0], &[2, 2]]).locate(&v(&[1, 1])), PointLocation::RelativeInterior);
        assert_eq!(poly(&[&[0, 0], &[2, 2]]).locate(&v(&[1, 0])), PointLocation::Outside);
    }

    #[test]
    fn lattice_point_counts() {
        let simplex = LatticePolytope::standard_simplex(2);
        assert_eq!(simplex.lattice_points().len(), 3);
        assert_eq!(LatticePolytope::unit_cube(2).lattice_points().len(), 4);
        assert_eq!(simplex.dilate(2).count_lattice_points(), 6);
        assert_eq!(box_scan(&simplex.dilate(2), -1, 3), (6, 0));
        assert!(simplex.is_hollow());
        assert_eq!(simplex.dilate(3).interior_lattice_points(), vec![v(&[1, 1])]);
        assert_eq!(box_scan(&simplex.dilate(3), -1, 4), (10, 1));
        let segment = poly(&[&[0, 0], &[3, 0]]);
        assert_eq!(segment.interior_lattice_points(), vec![v(&[1, 0]), v(&[2, 0])]);
        assert_eq!(poly(&[&[4, 4]]).interior_lattice_points(), vec![v(&[4, 4])]);
    }

    #[test]
    fn dilate_counts_match_explicit_polytopes() {
        let p = poly(&[&[0, 0], &[2, 1], &[1, 3], &[0, 2]]);
        for t in 1..4 {
            let q = p.dilate(t);
            assert_eq!(p.count_dilate(t), q.count_lattice_points());
            assert_eq!(p.count_interior_dilate(t), q.count_interior_points());
            let (all, interior) = box_scan(&q, -1, 10);
            assert_eq!((all as u64, interior as u64), (q.count_lattice_points(), q.count_interior_points()));
        }
    }

    #[test]
    fn transform_examples() {
        let square = LatticePolytope::unit_cube(2);
        let id = IntMatrix::identity(2);
        assert_eq!(square.transform(&id, &IntVector::zeros(2), 1).unwrap(), square);
        let moved = square.transform(&id, &v(&[7, 7]), 1).unwrap();
        assert_eq!(moved.count_lattice_points(), 4);
        assert_eq!(moved.vertices()[0], v(&[7, 7]));
        let tripled = LatticePolytope::standard_simplex(2).transform(&id, &IntVector::zeros(2), 3).unwrap();
        assert_eq!(tripled.interior_lattice_points(), vec![v(&[1, 1])]);
        let shear = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(square.transform(&shear, &IntVector::zeros(2), 1).unwrap_err(), Error::NotUnimodular);
    }

    #[test]
    fn reduction_examples() {
        let square = LatticePolytope::unit_cube(2);
        let (same, _) = square.reduce_to_full_dim();
        assert_eq!(same, square);
        let diagonal = poly(&[&[0, 0], &[2, 2]]);
        let (reduced, basis) = diagonal.reduce_to_full_dim();
        assert_eq!(reduced, poly(&[&[0], &[2]]));
        assert_eq!(basis.directions(), &[v(&[1, 1])]);
        let (point, _) = poly(&[&[3, 1]]).reduce_to_full_dim();
        assert_eq!(point.ambient_dim(), 0);
        assert_eq!(point.dimension(), 0);
    }

    #[test]
    fn unimodular_simplex_recognition() {
        assert!(LatticePolytope::standard_simplex(2).is_unimodular_simplex());
        assert!(!LatticePolytope::unit_cube(2).is_unimodular_simplex());
        assert!(!poly(&[&[0, 0], &[1, 0], &[1, 2]]).is_unimodular_simplex());
        assert!(poly(&[&[0, 0], &[2, 1], &[1, 1]]).is_unimodular_simplex());
        assert!(!poly(&[&[0, 0], &[2, 2], &[1, 2]]).is_unimodular_simplex());
        assert!(poly(&[&[0, 0, 1], &[1, 1, 1]]).is_unimodular_simplex());
        assert!(!poly(&[&[0, 0, 1], &[2, 2, 1]]).is_unimodular_simplex());
    }

    #[test]
    fn higher_dimensional_counts() {
        let cube = LatticePolytope::unit_cube(3).dilate(2);
        assert_eq!(cube.count_lattice_points(), 27);
        assert_eq!(cube.count_interior_points(), 1);
        let simplex = LatticePolytope::standard_simplex(4);
        assert_eq!(simplex.dilate(5).count_interior_points(), 1);
        assert_eq!(simplex.dilate(4).count_interior_points(), 0);
        // Triangle embedded in a plane of R^3.
        let tri = poly(&[&[0, 0, 0], &[3, 0, 3], &[0, 3, 3]]);
        assert_eq!(tri.dimension(), 2);
        assert_eq!(tri.count_lattice_points(), 10);
        assert_eq!(tri.count_interior_points(), 1);
    }
}
