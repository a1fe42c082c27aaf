//! Families of lattice polytopes: subset Minkowski sums, Cayley polytopes and
//! lattice projections along the span of a subfamily.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use malachite::base::num::basic::traits::{One, Zero};
use malachite::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::lattice::{hermite_decomposition, IntMatrix, IntVector};
use crate::polytope::LatticePolytope;
use crate::{Error, Result};

/// Largest supported family; subset tables have `2^m` entries.
pub const MAX_MEMBERS: usize = 20;

/// A subset of the member indices `0..m`, stored as a bitmask.
///
/// Ordered by cardinality first and then lexicographically on the sorted
/// index lists, which is the order in which subset scans visit subsets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetIndex(u64);

impl SubsetIndex {
    pub const EMPTY: SubsetIndex = SubsetIndex(0);

    #[inline]
    pub fn from_bits(bits: u64) -> Self {
        SubsetIndex(bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    /// `[m] = {0, …, m-1}`.
    pub fn full(m: usize) -> Self {
        assert!(m < 64, "subset index supports at most 63 members");
        SubsetIndex((1u64 << m) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < 64, "member index out of range");
        SubsetIndex(1u64 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, i: usize) -> Self {
        SubsetIndex(self.0 | Self::singleton(i).0)
    }

    pub fn without(self, i: usize) -> Self {
        SubsetIndex(self.0 & !Self::singleton(i).0)
    }

    pub fn union(self, other: Self) -> Self {
        SubsetIndex(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetIndex(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetIndex(self.0 & !other.0)
    }

    pub fn complement(self, m: usize) -> Self {
        Self::full(m).difference(self)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Smallest member index.
    pub fn first(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    /// All subsets of `self`, the empty set and `self` included, by
    /// decreasing bitmask.
    pub fn subsets(self) -> impl Iterator<Item = SubsetIndex> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(SubsetIndex(cur))
        })
    }

    /// Non-empty subsets of `[m]` in scan order.
    pub fn ordered(m: usize) -> Vec<SubsetIndex> {
        let mut all: Vec<SubsetIndex> = Self::full(m).subsets().filter(|s| !s.is_empty()).collect();
        all.sort();
        all
    }

    /// Subsets of `[m]` of cardinality `k`, lexicographically.
    pub fn of_size(m: usize, k: usize) -> Vec<SubsetIndex> {
        let mut out = Vec::new();
        crate::polytope::for_each_combination(m, k, |c| out.push(Self::from_indices(c.iter().copied())));
        out
    }
}

impl Ord for SubsetIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for SubsetIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shown with one-based member numbers, `{1,3}`.
impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as the list of one-based member numbers.
impl Serialize for SubsetIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.indices().map(|i| i + 1))
    }
}

/// An ordered list of lattice polytopes sharing one ambient space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolytopeFamily {
    ambient_dim: usize,
    members: Vec<LatticePolytope>,
}

impl PolytopeFamily {
    pub fn new(members: Vec<LatticePolytope>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        let n = first.ambient_dim();
        if let Some(bad) = members.iter().find(|p| p.ambient_dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.ambient_dim() });
        }
        if members.len() > MAX_MEMBERS {
            return Err(Error::TooLarge(format!("families are limited to {MAX_MEMBERS} members")));
        }
        Ok(Self { ambient_dim: n, members })
    }

    /// Each member given by a list of integer points.
    pub fn from_i64(members: &[&[&[i64]]]) -> Result<Self> {
        let polys = members.iter().map(|pts| LatticePolytope::from_i64_points(pts)).collect::<Result<Vec<_>>>()?;
        Self::new(polys)
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of members `m`.
    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false; kept for the usual collection API.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[LatticePolytope] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &LatticePolytope {
        &self.members[i]
    }

    pub fn all(&self) -> SubsetIndex {
        SubsetIndex::full(self.len())
    }

    /// Members indexed by a non-empty `I`, in order.
    pub fn subfamily(&self, subset: SubsetIndex) -> Option<PolytopeFamily> {
        if subset.is_empty() || !subset.is_subset_of(self.all()) {
            return None;
        }
        let members = subset.indices().map(|i| self.members[i].clone()).collect();
        Some(Self { ambient_dim: self.ambient_dim, members })
    }

    pub fn total_sum(&self) -> LatticePolytope {
        subfamily_sum(self, self.all())
    }

    /// All members positive-dimensional and `P_[m]` full-dimensional.
    pub fn is_proper(&self) -> bool {
        self.members.iter().all(|p| p.dimension() >= 1) && self.total_sum().is_full_dimensional()
    }

    pub fn all_full_dimensional(&self) -> bool {
        self.members.iter().all(LatticePolytope::is_full_dimensional)
    }

    /// Members moved to their translation normal forms and sorted; equal
    /// exactly for families that agree up to translations and permutation.
    pub fn normal_form(&self) -> PolytopeFamily {
        let mut members: Vec<LatticePolytope> =
            self.members.iter().map(LatticePolytope::translation_normal_form).collect();
        members.sort();
        Self { ambient_dim: self.ambient_dim, members }
    }
}

impl fmt::Debug for PolytopeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.members).finish()
    }
}

impl Serialize for PolytopeFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PolytopeFamily", 2)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        st.serialize_field("polytopes", &self.members)?;
        st.end()
    }
}

/// `P + Q`.
pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    assert_eq!(p.ambient_dim(), q.ambient_dim(), "ambient dimension mismatch");
    if p.is_point() {
        return q.translate(&p.vertices()[0]);
    }
    if q.is_point() {
        return p.translate(&q.vertices()[0]);
    }
    let mut pts = Vec::with_capacity(p.num_vertices() * q.num_vertices());
    for a in p.vertices() {
        for b in q.vertices() {
            pts.push(a + b);
        }
    }
    LatticePolytope::from_points(&pts).expect("non-empty sum")
}

/// `P_I`, with `P_∅ = {0}`.
pub fn subfamily_sum(family: &PolytopeFamily, subset: SubsetIndex) -> LatticePolytope {
    let mut acc = LatticePolytope::point(IntVector::zeros(family.ambient_dim()));
    for i in subset.indices() {
        acc = minkowski_sum(&acc, family.member(i));
    }
    acc
}

/// Lazily computed table of every subset sum of a family, with cached
/// lattice point counts.
pub struct SubsetSums<'a> {
    family: &'a PolytopeFamily,
    sums: Vec<OnceLock<LatticePolytope>>,
    counts: Vec<OnceLock<u64>>,
    interior: Vec<OnceLock<u64>>,
    hollow: Vec<OnceLock<bool>>,
}

impl<'a> SubsetSums<'a> {
    pub fn new(family: &'a PolytopeFamily) -> Self {
        fn cells<T>(size: usize) -> Vec<OnceLock<T>> {
            (0..size).map(|_| OnceLock::new()).collect()
        }
        let size = 1usize << family.len();
        Self { family, sums: cells(size), counts: cells(size), interior: cells(size), hollow: cells(size) }
    }

    pub fn family(&self) -> &'a PolytopeFamily {
        self.family
    }

    /// `P_I`; each entry is built from the entry without its largest index.
    pub fn get(&self, subset: SubsetIndex) -> &LatticePolytope {
        let bits = subset.bits() as usize;
        if let Some(p) = self.sums[bits].get() {
            return p;
        }
        let value = if bits == 0 {
            LatticePolytope::point(IntVector::zeros(self.family.ambient_dim()))
        } else {
            let top = 63 - subset.bits().leading_zeros() as usize;
            let rest = self.get(subset.without(top));
            minkowski_sum(rest, self.family.member(top))
        };
        self.sums[bits].get_or_init(|| value)
    }

    pub fn dimension(&self, subset: SubsetIndex) -> usize {
        self.get(subset).dimension()
    }

    /// `|P_I ∩ Z^n|`.
    pub fn lattice_count(&self, subset: SubsetIndex) -> u64 {
        *self.counts[subset.bits() as usize].get_or_init(|| self.get(subset).count_lattice_points())
    }

    /// `|intr_Z(P_I)|`.
    pub fn interior_count(&self, subset: SubsetIndex) -> u64 {
        *self.interior[subset.bits() as usize].get_or_init(|| self.get(subset).count_interior_points())
    }

    /// `intr_Z(P_I) = ∅`, answered from the interior count when known.
    pub fn is_hollow(&self, subset: SubsetIndex) -> bool {
        let bits = subset.bits() as usize;
        if let Some(&c) = self.interior[bits].get() {
            return c == 0;
        }
        *self.hollow[bits].get_or_init(|| self.get(subset).is_hollow())
    }
}

/// `P_1 ∗ ⋯ ∗ P_m = conv(P_1 × {e_1}, …, P_m × {e_m}) ⊂ R^{n+m}`.
pub fn cayley(family: &PolytopeFamily) -> LatticePolytope {
    let m = family.len();
    let mut pts = Vec::new();
    for (i, p) in family.members().iter().enumerate() {
        let lift = IntVector::unit(m, i);
        pts.extend(p.vertices().iter().map(|v| v.concat(&lift)));
    }
    LatticePolytope::from_points(&pts).expect("non-empty family")
}

/// A lattice surjection `Z^n → Z^{n-r}` whose kernel is a saturated rank-`r`
/// sublattice `Γ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectionMap {
    source_dim: usize,
    target_dim: usize,
    matrix: IntMatrix,
}

impl ProjectionMap {
    /// Wraps a `(n - r) × n` matrix, checking that it is a surjection onto
    /// `Z^{n-r}` (its rows extend to a unimodular matrix).
    pub fn from_matrix(matrix: IntMatrix) -> Result<Self> {
        if !is_lattice_surjection(&matrix) {
            return Err(Error::Precondition("projection matrix is not a lattice surjection".into()));
        }
        Ok(Self { source_dim: matrix.cols(), target_dim: matrix.rows(), matrix })
    }

    /// Projection along the direction lattice of `aff(P)`.
    pub fn along(p: &LatticePolytope) -> Self {
        let matrix = p.affine_basis().quotient_matrix();
        Self { source_dim: p.ambient_dim(), target_dim: matrix.rows(), matrix }
    }

    #[inline]
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    #[inline]
    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        self.matrix.mul_vec(v)
    }

    pub fn apply_polytope(&self, p: &LatticePolytope) -> LatticePolytope {
        let pts: Vec<IntVector> = p.vertices().iter().map(|v| self.apply(v)).collect();
        LatticePolytope::from_points(&pts).expect("image of a non-empty polytope")
    }

    /// Whether every vector lies in the kernel.
    pub fn annihilates(&self, vectors: &[IntVector]) -> bool {
        vectors.iter().all(|v| self.apply(v).is_zero())
    }
}

impl fmt::Debug for ProjectionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectionMap({} -> {}, {:?})", self.source_dim, self.target_dim, self.matrix)
    }
}

impl Serialize for ProjectionMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProjectionMap", 3)?;
        st.serialize_field("source_dim", &self.source_dim)?;
        st.serialize_field("target_dim", &self.target_dim)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.end()
    }
}

/// A `k × n` matrix maps `Z^n` onto `Z^k` iff the Hermite form of its
/// transpose starts with the identity.
pub(crate) fn is_lattice_surjection(matrix: &IntMatrix) -> bool {
    let k = matrix.rows();
    if k == 0 {
        return true;
    }
    let d = hermite_decomposition(&matrix.transpose());
    d.rank() == k && (0..k).all(|i| (0..k).all(|j| *d.h.get(i, j) == if i == j { Integer::ONE } else { Integer::ZERO }))
}

/// `π_I` together with the images of the members outside `I`. The image list
/// is empty when `I = [m]`.
pub fn project_family(family: &PolytopeFamily, subset: SubsetIndex) -> Result<(ProjectionMap, Vec<LatticePolytope>)> {
    if subset.is_empty() {
        return Err(Error::Precondition("projection needs a non-empty subset".into()));
    }
    if !subset.is_subset_of(family.all()) {
        return Err(Error::Precondition(format!("subset {subset} is not contained in [{}]", family.len())));
    }
    let map = ProjectionMap::along(&subfamily_sum(family, subset));
    let images = subset.complement(family.len()).indices().map(|j| map.apply_polytope(family.member(j))).collect();
    Ok((map, images))
}

/// The members of `I` (whose sum spans the lattice `L ∩ Z^n`) written in
/// coordinates of that lattice, each member translated to start at its first
/// vertex. `None` if some member leaves the span of `P_I`.
pub fn reduce_subfamily(family: &PolytopeFamily, subset: SubsetIndex) -> Option<(Vec<IntVector>, PolytopeFamily)> {
    let sum = subfamily_sum(family, subset);
    let basis = sum.affine_basis();
    let members = subset.indices().map(|i| reduce_member(family.member(i), basis)).collect::<Option<Vec<_>>>()?;
    Some((basis.directions().to_vec(), PolytopeFamily::new(members).ok()?))
}

pub(crate) fn reduce_member(
    p: &LatticePolytope,
    basis: &crate::lattice::AffineLatticeBasis,
) -> Option<LatticePolytope> {
    let v0 = &p.vertices()[0];
    let pts = p.vertices().iter().map(|v| basis.linear_coordinates(&(v - v0))).collect::<Option<Vec<_>>>()?;
    LatticePolytope::from_points(&pts).ok()
}
