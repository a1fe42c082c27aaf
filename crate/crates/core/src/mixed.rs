//! Mixed invariants of a family: mixed volume, mixed codegree and degree,
//! the genus tables `g` and `g̃`, and the checks built on them.

use std::collections::BTreeMap;

use malachite::base::num::arithmetic::traits::{Factorial, Pow};
use malachite::base::num::basic::traits::{One, Zero};
use malachite::{Integer, Natural};
use serde::Serialize;

use crate::ehrhart::{ambient_volume, binomial, ehrhart_polynomial};
use crate::lattice::{integer_serde, IntVector};
use crate::minkowski::{cayley, project_family, reduce_member, PolytopeFamily, SubsetIndex, SubsetSums};
use crate::polytope::LatticePolytope;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedInvariants {
    pub m: usize,
    pub n: usize,
    /// Mixed codegree, in `1..=m+1`.
    pub mcd: usize,
    /// `dim(P_[m]) + 1 - mcd`.
    pub md: i64,
    pub dim_total: usize,
    pub proper: bool,
    /// Every proper subset sum hollow and the total sum not.
    pub irreducible: bool,
    /// Present iff `m = n`.
    #[serde(serialize_with = "integer_serde::opt")]
    pub mv: Option<Integer>,
    /// First subset in scan order with an interior lattice point.
    pub witness_subset: Option<SubsetIndex>,
}

fn sign(k: usize) -> Integer {
    if k.is_multiple_of(2) {
        Integer::ONE
    } else {
        Integer::from(-1)
    }
}

/// `(mcd, witness)` by scanning non-empty subsets in order.
pub fn mixed_codegree_in(sums: &SubsetSums<'_>) -> (usize, Option<SubsetIndex>) {
    let m = sums.family().len();
    for subset in SubsetIndex::ordered(m) {
        if !sums.is_hollow(subset) {
            return (subset.len(), Some(subset));
        }
    }
    (m + 1, None)
}

pub fn mixed_invariants(family: &PolytopeFamily) -> Result<MixedInvariants> {
    mixed_invariants_in(&SubsetSums::new(family))
}

pub fn mixed_invariants_in(sums: &SubsetSums<'_>) -> Result<MixedInvariants> {
    let family = sums.family();
    let (m, n) = (family.len(), family.ambient_dim());
    let (mcd, witness_subset) = mixed_codegree_in(sums);
    let dim_total = sums.dimension(family.all());
    let proper = dim_total == n && family.members().iter().all(|p| p.dimension() >= 1);
    let mv = if m == n { Some(mixed_volume_in(sums)?) } else { None };
    Ok(MixedInvariants {
        m,
        n,
        mcd,
        md: dim_total as i64 + 1 - mcd as i64,
        dim_total,
        proper,
        irreducible: mcd == m,
        mv,
        witness_subset,
    })
}

/// The two lattice-point formulas for the mixed volume: inclusion-exclusion
/// over `|P_I ∩ Z^n|`, and `1 + Σ (-1)^{dim P_I - |I|} |intr_Z(P_I)|`.
pub fn mixed_volume_formulas_in(sums: &SubsetSums<'_>) -> Result<(Integer, Integer)> {
    let family = sums.family();
    let (m, n) = (family.len(), family.ambient_dim());
    if m != n {
        return Err(Error::Precondition(format!("mixed volume needs m = n, got m = {m}, n = {n}")));
    }
    let mut by_points = Integer::ZERO;
    let mut by_interior = Integer::ONE;
    for subset in family.all().subsets() {
        by_points += sign(n - subset.len()) * Integer::from(sums.lattice_count(subset));
        if !subset.is_empty() {
            let d = sums.dimension(subset);
            let c = sums.interior_count(subset);
            if c > 0 {
                by_interior += sign(d + subset.len()) * Integer::from(c);
            }
        }
    }
    Ok((by_points, by_interior))
}

pub fn mixed_volume_in(sums: &SubsetSums<'_>) -> Result<Integer> {
    let (a, b) = mixed_volume_formulas_in(sums)?;
    if a != b {
        return Err(Error::CrossCheck(format!("mixed volume formulas disagree ({a} vs {b}) for {:?}", sums.family())));
    }
    Ok(a)
}

/// Normalized mixed volume of `n` polytopes in `R^n`.
pub fn mixed_volume(family: &PolytopeFamily) -> Result<Integer> {
    mixed_volume_in(&SubsetSums::new(family))
}

/// Mixed volume of a possibly empty member list; the empty family in
/// dimension zero has mixed volume one.
pub fn mixed_volume_of(ambient_dim: usize, members: &[LatticePolytope]) -> Result<Integer> {
    if members.is_empty() {
        return if ambient_dim == 0 {
            Ok(Integer::ONE)
        } else {
            Err(Error::Precondition(format!("mixed volume needs m = n, got m = 0, n = {ambient_dim}")))
        };
    }
    let family = PolytopeFamily::new(members.to_vec())?;
    if family.ambient_dim() != ambient_dim {
        return Err(Error::DimensionMismatch { expected: ambient_dim, found: family.ambient_dim() });
    }
    mixed_volume(&family)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusEntry {
    pub subset: SubsetIndex,
    pub interior_count: u64,
    #[serde(serialize_with = "integer_serde::one")]
    pub g: Integer,
    #[serde(serialize_with = "integer_serde::one")]
    pub g_tilde: Integer,
}

/// `|intr_Z(P_I)|`, `g(I)` and `g̃(I)` for every non-empty `I`, in scan order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusTable {
    pub entries: Vec<GenusEntry>,
}

impl GenusTable {
    pub fn get(&self, subset: SubsetIndex) -> Option<&GenusEntry> {
        self.entries.iter().find(|e| e.subset == subset)
    }

    /// `g([m])`.
    pub fn total(&self) -> &Integer {
        &self.entries.last().expect("non-empty family").g
    }

    /// Subsets where `|intr_Z(P_I)| ≠ Σ_{∅≠J⊆I} g(J)`.
    pub fn mobius_failures(&self) -> Vec<SubsetIndex> {
        let g: BTreeMap<u64, &Integer> = self.entries.iter().map(|e| (e.subset.bits(), &e.g)).collect();
        self.entries
            .iter()
            .filter(|e| {
                let s: Integer = e.subset.subsets().filter(|j| !j.is_empty()).map(|j| g[&j.bits()].clone()).sum();
                s != e.interior_count
            })
            .map(|e| e.subset)
            .collect()
    }

    /// Subsets where `g̃(I) ≠ Σ_{∅≠J⊊I} g(J)`.
    pub fn proper_subset_failures(&self) -> Vec<SubsetIndex> {
        let g: BTreeMap<u64, &Integer> = self.entries.iter().map(|e| (e.subset.bits(), &e.g)).collect();
        self.entries
            .iter()
            .filter(|e| {
                let s: Integer =
                    e.subset.subsets().filter(|j| !j.is_empty() && *j != e.subset).map(|j| g[&j.bits()].clone()).sum();
                s != e.g_tilde
            })
            .map(|e| e.subset)
            .collect()
    }
}

pub fn genus_table(family: &PolytopeFamily) -> Result<GenusTable> {
    genus_table_in(&SubsetSums::new(family))
}

/// Builds the table from the defining alternating sums and rejects it unless
/// the Möbius and `g̃` identities hold on every subset.
pub fn genus_table_in(sums: &SubsetSums<'_>) -> Result<GenusTable> {
    let m = sums.family().len();
    let entries: Vec<GenusEntry> = SubsetIndex::ordered(m)
        .into_iter()
        .map(|subset| {
            let mut g = Integer::ZERO;
            let mut g_tilde = Integer::ZERO;
            for j in subset.subsets().filter(|j| !j.is_empty()) {
                let c = Integer::from(sums.interior_count(j));
                g += sign(subset.len() - j.len()) * &c;
                if j != subset {
                    g_tilde += sign(subset.len() - 1 - j.len()) * &c;
                }
            }
            GenusEntry { subset, interior_count: sums.interior_count(subset), g, g_tilde }
        })
        .collect();
    let table = GenusTable { entries };
    if let Some(e) = table.entries.iter().find(|e| e.g_tilde != Integer::from(e.interior_count) - &e.g) {
        return Err(Error::CrossCheck(format!("g̃ ≠ |intr| - g on {}", e.subset)));
    }
    if let Some(s) = table.mobius_failures().first() {
        return Err(Error::CrossCheck(format!("Möbius identity fails on {s}")));
    }
    if let Some(s) = table.proper_subset_failures().first() {
        return Err(Error::CrossCheck(format!("g̃ identity fails on {s}")));
    }
    Ok(table)
}

fn require_square(family: &PolytopeFamily) -> Result<()> {
    if family.len() != family.ambient_dim() {
        return Err(Error::Precondition(format!(
            "needs m = n, got m = {}, n = {}",
            family.len(),
            family.ambient_dim()
        )));
    }
    Ok(())
}

fn require_full_dimensional(family: &PolytopeFamily) -> Result<()> {
    require_square(family)?;
    if let Some(i) = family.members().iter().position(|p| !p.is_full_dimensional()) {
        return Err(Error::Precondition(format!("member {} is not full-dimensional", i + 1)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InteriorBoundCheck {
    #[serde(serialize_with = "integer_serde::one")]
    pub mv: Integer,
    pub interior_total: u64,
    /// `|intr_Z(P_[n])| - MV + 1`.
    #[serde(serialize_with = "integer_serde::one")]
    pub gap: Integer,
    pub md: i64,
    /// Whether `gap = 0 ⇔ md ≤ 1` held.
    pub equality_iff_md_le_1: bool,
}

/// Interior-point lower bound for `n` full-dimensional polytopes.
pub fn interior_bound_check(family: &PolytopeFamily) -> Result<InteriorBoundCheck> {
    require_full_dimensional(family)?;
    let sums = SubsetSums::new(family);
    let inv = mixed_invariants_in(&sums)?;
    let mv = inv.mv.clone().expect("m = n");
    let interior_total = sums.interior_count(family.all());
    let gap = Integer::from(interior_total) - &mv + Integer::ONE;
    let equality_iff_md_le_1 = (gap == Integer::ZERO) == (inv.md <= 1);
    Ok(InteriorBoundCheck { mv, interior_total, gap, md: inv.md, equality_iff_md_le_1 })
}

/// `dim(P_I) ≥ |I|` for every non-empty `I`; must agree with `MV ≥ 1`.
pub fn bernstein_positive(family: &PolytopeFamily) -> Result<bool> {
    require_square(family)?;
    let sums = SubsetSums::new(family);
    let condition = SubsetIndex::ordered(family.len()).into_iter().all(|s| sums.dimension(s) >= s.len());
    let mv = mixed_volume_in(&sums)?;
    if condition != (mv >= Integer::ONE) {
        return Err(Error::CrossCheck(format!("dimension criterion gives {condition} but MV = {mv}")));
    }
    Ok(condition)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    #[serde(serialize_with = "integer_serde::one")]
    pub mv: Integer,
    /// Mixed volume of the members of `I` inside the span of `P_I`.
    #[serde(serialize_with = "integer_serde::one")]
    pub left: Integer,
    /// Mixed volume of the projections of the other members.
    #[serde(serialize_with = "integer_serde::one")]
    pub right: Integer,
    pub holds: bool,
}

/// `MV(P_1..P_n) = MV(P_I) · MV(π_I(P_j) : j ∉ I)` when the members of `I`
/// span an `|I|`-dimensional subspace.
pub fn projection_product_check(family: &PolytopeFamily, subset: SubsetIndex) -> Result<ProductCheck> {
    require_square(family)?;
    if subset.is_empty() || !subset.is_subset_of(family.all()) {
        return Err(Error::Precondition(format!("invalid subset {subset}")));
    }
    let sum = crate::minkowski::subfamily_sum(family, subset);
    if sum.dimension() != subset.len() {
        return Err(Error::Precondition(format!(
            "P_{subset} has dimension {} instead of {}",
            sum.dimension(),
            subset.len()
        )));
    }
    let basis = sum.affine_basis();
    let reduced: Vec<LatticePolytope> = subset
        .indices()
        .map(|i| reduce_member(family.member(i), basis).expect("members lie in the span of their sum"))
        .collect();
    let left = mixed_volume_of(subset.len(), &reduced)?;
    let (map, images) = project_family(family, subset)?;
    let right = mixed_volume_of(map.target_dim(), &images)?;
    let mv = mixed_volume(family)?;
    let holds = mv == &left * &right;
    Ok(ProductCheck { mv, left, right, holds })
}

/// The seven conditions characterizing mixed degree zero for `n`
/// full-dimensional polytopes in `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Md0Characterization {
    pub md_zero: bool,
    pub hollow_sum: bool,
    pub mv_one: bool,
    pub common_unimodular_simplex: bool,
    pub sum_volume_minimal: bool,
    pub cayley_volume_minimal: bool,
    pub cayley_degree_minimal: bool,
    /// All seven agree.
    pub consistent: bool,
    /// `deg(P_1 ∗ ⋯ ∗ P_n) ∈ {n-1, n}`.
    pub cayley_degree_in_range: bool,
    #[serde(serialize_with = "integer_serde::one")]
    pub sum_volume: Integer,
    #[serde(serialize_with = "integer_serde::one")]
    pub cayley_volume: Integer,
    pub cayley_degree: usize,
}

impl Md0Characterization {
    pub fn conditions(&self) -> [bool; 7] {
        [
            self.md_zero,
            self.hollow_sum,
            self.mv_one,
            self.common_unimodular_simplex,
            self.sum_volume_minimal,
            self.cayley_volume_minimal,
            self.cayley_degree_minimal,
        ]
    }
}

/// Members all translates of one unimodular `n`-simplex.
pub fn translates_of_one_unimodular_simplex(family: &PolytopeFamily) -> bool {
    let first = family.member(0).translation_normal_form();
    first.is_full_dimensional()
        && first.is_unimodular_simplex()
        && family.members().iter().all(|p| p.translation_normal_form() == first)
}

pub fn md0_characterization(family: &PolytopeFamily) -> Result<Md0Characterization> {
    require_full_dimensional(family)?;
    let n = family.len();
    let sums = SubsetSums::new(family);
    let inv = mixed_invariants_in(&sums)?;
    let mv = inv.mv.clone().expect("m = n");
    let sum_volume = ambient_volume(sums.get(family.all()));
    let cayley_data = ehrhart_polynomial(&cayley(family))?;
    let cayley_volume = cayley_data.volume.clone();
    let cayley_degree = cayley_data.degree;
    let conditions = [
        inv.md == 0,
        sums.is_hollow(family.all()),
        mv == Integer::ONE,
        translates_of_one_unimodular_simplex(family),
        sum_volume == Integer::from(n as u64).pow(n as u64),
        cayley_volume == binomial(2 * n as u64 - 1, n as u64),
        cayley_degree == n - 1,
    ];
    Ok(Md0Characterization {
        md_zero: conditions[0],
        hollow_sum: conditions[1],
        mv_one: conditions[2],
        common_unimodular_simplex: conditions[3],
        sum_volume_minimal: conditions[4],
        cayley_volume_minimal: conditions[5],
        cayley_degree_minimal: conditions[6],
        consistent: conditions.iter().all(|&c| c == conditions[0]),
        cayley_degree_in_range: cayley_degree + 1 == n || cayley_degree == n,
        sum_volume,
        cayley_volume,
        cayley_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxiliaryIdentities {
    /// `Vol(P_1 + ⋯ + P_n)`, zero if the sum is not full-dimensional.
    #[serde(serialize_with = "integer_serde::one")]
    pub sum_volume: Integer,
    /// `Σ_{k_1+⋯+k_n=n} (n; k_1,…,k_n) MV(P_1^{(k_1)}, …, P_n^{(k_n)})`.
    #[serde(serialize_with = "integer_serde::one")]
    pub multinomial_sum: Integer,
    /// `Vol(P_1 ∗ ⋯ ∗ P_n)`, zero if the Cayley polytope is not
    /// `(2n-1)`-dimensional.
    #[serde(serialize_with = "integer_serde::one")]
    pub cayley_volume: Integer,
    /// Sum of `MV(P_{i_1}, …, P_{i_n})` over multisets of size `n`.
    #[serde(serialize_with = "integer_serde::one")]
    pub cayley_sum: Integer,
    pub multinomial_ok: bool,
    pub cayley_sum_ok: bool,
}

/// Multisets of size `k` from `0..m` as non-decreasing index lists.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Both volume expansions in terms of mixed volumes of repeated members,
/// checked against directly computed volumes.
pub fn auxiliary_volume_identities(family: &PolytopeFamily) -> Result<AuxiliaryIdentities> {
    require_square(family)?;
    let n = family.len();
    let n_fact = Integer::from(Natural::factorial(n as u64));
    let mut multinomial_sum = Integer::ZERO;
    let mut cayley_sum = Integer::ZERO;
    for ms in multisets(n, n) {
        let members: Vec<LatticePolytope> = ms.iter().map(|&i| family.member(i).clone()).collect();
        let mv = mixed_volume(&PolytopeFamily::new(members)?)?;
        let mut denom = Integer::ONE;
        for i in 0..n {
            let k = ms.iter().filter(|&&x| x == i).count() as u64;
            denom *= Integer::from(Natural::factorial(k));
        }
        multinomial_sum += (&n_fact / denom) * &mv;
        cayley_sum += mv;
    }
    let sum_volume = ambient_volume(&family.total_sum());
    let c = cayley(family);
    let cayley_volume = if c.dimension() == 2 * n - 1 { crate::ehrhart::normalized_volume(&c) } else { Integer::ZERO };
    Ok(AuxiliaryIdentities {
        multinomial_ok: sum_volume == multinomial_sum,
        cayley_sum_ok: cayley_volume == cayley_sum,
        sum_volume,
        multinomial_sum,
        cayley_volume,
        cayley_sum,
    })
}

/// For faces of `Δ_n` with `dim(P_I) ≥ |I|` on every subset, whether every
/// subset sum is hollow.
pub fn simplex_faces_hollow(n: usize, faces: &[LatticePolytope]) -> Result<bool> {
    let family = PolytopeFamily::new(faces.to_vec())?;
    if family.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: family.ambient_dim() });
    }
    let simplex_vertices: Vec<IntVector> = LatticePolytope::standard_simplex(n).vertices().to_vec();
    if let Some(i) = faces.iter().position(|f| !f.vertices().iter().all(|v| simplex_vertices.contains(v))) {
        return Err(Error::Precondition(format!("member {} is not a face of the standard simplex", i + 1)));
    }
    let sums = SubsetSums::new(&family);
    let subsets = SubsetIndex::ordered(family.len());
    if let Some(s) = subsets.iter().find(|s| sums.dimension(**s) < s.len()) {
        return Err(Error::Precondition(format!("dim(P_{s}) < |{s}|")));
    }
    Ok(subsets.iter().all(|&s| sums.is_hollow(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(points: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64_points(points).unwrap()
    }

    fn fam(members: &[LatticePolytope]) -> PolytopeFamily {
        PolytopeFamily::new(members.to_vec()).unwrap()
    }

    fn example13() -> PolytopeFamily {
        fam(&[poly(&[&[0, 0], &[1, 0]]), poly(&[&[0, 0], &[0, 1]]), LatticePolytope::unit_cube(2)])
    }

    fn tri() -> LatticePolytope {
        LatticePolytope::standard_simplex(2)
    }

    #[test]
    fn example13_invariants() {
        let inv = mixed_invariants(&example13()).unwrap();
        assert_eq!((inv.mcd, inv.md), (3, 0));
        assert!(inv.proper && inv.irreducible);
        assert_eq!(inv.witness_subset, Some(SubsetIndex::full(3)));
        assert_eq!(inv.mv, None);
    }

    #[test]
    fn simple_invariants() {
        let inv = mixed_invariants(&fam(&[tri(), tri()])).unwrap();
        assert_eq!((inv.mcd, inv.md), (3, 0));
        assert_eq!(inv.mv, Some(Integer::ONE));
        let point = mixed_invariants(&fam(&[poly(&[&[1, 2]])])).unwrap();
        assert_eq!((point.mcd, point.md, point.dim_total), (1, 0, 0));
        assert!(!point.proper);
    }

    #[test]
    fn mixed_volume_examples() {
        let e1 = poly(&[&[0, 0], &[1, 0]]);
        let e2 = poly(&[&[0, 0], &[0, 1]]);
        assert_eq!(mixed_volume(&fam(&[e1.clone(), e2.clone()])).unwrap(), Integer::ONE);
        for k in 1..6 {
            let seg = poly(&[&[0, 0], &[k, 0]]);
            assert_eq!(mixed_volume(&fam(&[tri(), seg])).unwrap(), Integer::from(k));
        }
        let sq = LatticePolytope::unit_cube(2);
        assert_eq!(mixed_volume(&fam(&[sq.clone(), sq])).unwrap(), Integer::from(2));
        assert!(mixed_volume(&example13()).is_err());
        assert_eq!(mixed_volume_of(0, &[]).unwrap(), Integer::ONE);
    }

    #[test]
    fn genus_examples() {
        let seg = poly(&[&[0, 0], &[3, 0]]);
        let table = genus_table(&fam(&[tri(), seg])).unwrap();
        assert_eq!(*table.total(), Integer::from(-2));
        let table = genus_table(&fam(&[tri(), tri()])).unwrap();
        assert!(table.entries.iter().all(|e| e.g == Integer::ZERO));
        let big = genus_table(&fam(&[tri().dilate(3), LatticePolytope::unit_cube(2).dilate(2)])).unwrap();
        assert!(*big.total() >= Integer::ZERO);
        assert!(big.mobius_failures().is_empty() && big.proper_subset_failures().is_empty());
    }

    #[test]
    fn interior_bound_examples() {
        let gaps: Vec<(i64, i64)> = [1u64, 2, 3]
            .iter()
            .map(|&k| {
                let p = tri().dilate(k);
                let s = interior_bound_check(&fam(&[p.clone(), p])).unwrap();
                assert!(s.equality_iff_md_le_1);
                (i64::try_from(&s.gap).unwrap(), s.md)
            })
            .collect();
        assert_eq!(gaps, vec![(0, 0), (0, 1), (2, 2)]);
        let s = interior_bound_check(&fam(&[tri().dilate(3), tri().dilate(3)])).unwrap();
        assert_eq!((s.mv, s.interior_total), (Integer::from(9), 10));
        assert!(interior_bound_check(&fam(&[tri(), poly(&[&[0, 0], &[1, 0]])])).is_err());
    }

    #[test]
    fn bernstein_examples() {
        let e1 = poly(&[&[0, 0], &[1, 0]]);
        let e2 = poly(&[&[0, 0], &[0, 1]]);
        assert!(!bernstein_positive(&fam(&[e1.clone(), e1.clone()])).unwrap());
        assert!(bernstein_positive(&fam(&[e1.clone(), e2.clone()])).unwrap());
        assert!(bernstein_positive(&fam(&[e1, e2])).unwrap());
    }

    #[test]
    fn projection_products() {
        let e1 = poly(&[&[0, 0], &[1, 0]]);
        let sq = LatticePolytope::unit_cube(2);
        let c = projection_product_check(&fam(&[e1.clone(), sq.clone()]), SubsetIndex::singleton(0)).unwrap();
        assert!(c.holds);
        assert_eq!((c.left.clone(), c.right.clone()), (Integer::ONE, Integer::ONE));
        let tall = poly(&[&[0, 0], &[1, 0], &[0, 5]]);
        let seg = poly(&[&[0, 0], &[3, 0]]);
        let c = projection_product_check(&fam(&[seg, tall]), SubsetIndex::singleton(0)).unwrap();
        assert_eq!(
            (c.left.clone(), c.right.clone(), c.mv.clone()),
            (Integer::from(3), Integer::from(5), Integer::from(15))
        );
        assert!(c.holds);
        let c = projection_product_check(&fam(&[tri(), sq.clone()]), SubsetIndex::full(2)).unwrap();
        assert_eq!(c.right, Integer::ONE);
        assert!(c.holds);
        assert!(projection_product_check(&fam(&[tri(), sq]), SubsetIndex::singleton(0)).is_err());
    }

    #[test]
    fn md0_examples() {
        let c = md0_characterization(&fam(&[tri(), tri()])).unwrap();
        assert!(c.conditions().iter().all(|&x| x) && c.consistent);
        assert_eq!(
            (c.sum_volume.clone(), c.cayley_volume.clone(), c.cayley_degree),
            (Integer::from(4), Integer::from(3), 1)
        );
        let c = md0_characterization(&fam(&[tri().dilate(2), tri().dilate(2)])).unwrap();
        assert!(c.conditions().iter().all(|&x| !x) && c.consistent);
        assert_eq!(c.cayley_degree, 2);
        let sq = LatticePolytope::unit_cube(2);
        let c = md0_characterization(&fam(&[sq.clone(), sq])).unwrap();
        assert!(c.conditions().iter().all(|&x| !x) && c.consistent && c.cayley_degree_in_range);
    }

    #[test]
    fn auxiliary_identities() {
        let a = auxiliary_volume_identities(&fam(&[tri(), tri()])).unwrap();
        assert_eq!((a.sum_volume.clone(), a.cayley_volume.clone()), (Integer::from(4), Integer::from(3)));
        assert!(a.multinomial_ok && a.cayley_sum_ok);
        let a = auxiliary_volume_identities(&fam(&[LatticePolytope::unit_cube(2), tri()])).unwrap();
        assert!(a.multinomial_ok && a.cayley_sum_ok);
        let e1 = poly(&[&[0, 0], &[1, 0]]);
        let e2 = poly(&[&[0, 0], &[0, 1]]);
        let a = auxiliary_volume_identities(&fam(&[e1.clone(), e2])).unwrap();
        assert_eq!(a.sum_volume, Integer::from(2));
        assert!(a.multinomial_ok && a.cayley_sum_ok);
        let a = auxiliary_volume_identities(&fam(&[e1.clone(), e1])).unwrap();
        assert_eq!((a.sum_volume.clone(), a.cayley_volume.clone()), (Integer::ZERO, Integer::ZERO));
        assert!(a.multinomial_ok && a.cayley_sum_ok);
    }

    #[test]
    fn simplex_faces_hollow_examples() {
        let e1 = poly(&[&[0, 0], &[1, 0]]);
        let e2 = poly(&[&[0, 0], &[0, 1]]);
        assert!(simplex_faces_hollow(2, &[e1.clone(), e2]).unwrap());
        let faces = [
            poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]),
            poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 1]]),
            poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ];
        assert!(simplex_faces_hollow(3, &faces).unwrap());
        assert!(simplex_faces_hollow(3, &[LatticePolytope::standard_simplex(3)]).unwrap());
        assert!(simplex_faces_hollow(2, &[e1.clone(), e1.clone()]).is_err());
        assert!(simplex_faces_hollow(2, &[LatticePolytope::unit_cube(2)]).is_err());
    }
}
