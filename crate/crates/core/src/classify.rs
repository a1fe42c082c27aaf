//! Mixed degree zero: containment in a common unimodular simplex, recursive
//! decomposition certificates, unimodular normal forms in the plane, and the
//! enumeration harnesses built on them.

use std::collections::{BTreeMap, BTreeSet};

use malachite::base::num::arithmetic::traits::{ExtendedGcd, Pow};
use malachite::base::num::basic::traits::{One, Zero};
use malachite::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::ehrhart::binomial;
use crate::lattice::{
    affine_lattice_with_basis, complete_to_basis, integer_serde, is_primitive_system, primitive, IntMatrix, IntVector,
};
use crate::minkowski::{
    is_lattice_surjection, minkowski_sum, project_family, reduce_member, reduce_subfamily, PolytopeFamily,
    ProjectionMap, SubsetIndex, SubsetSums,
};
use crate::mixed::mixed_invariants_in;
use crate::polytope::LatticePolytope;
use crate::{Error, Result};

/// Witness that a proper family of `n` polytopes in `R^n` has mixed degree zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionCertificate {
    /// `P_i + translations[i] ⊆ simplex` for every member.
    Leaf { simplex: LatticePolytope, translations: Vec<IntVector> },
    /// The members of `subset` span the `k`-dimensional lattice with basis
    /// `subspace`; `sub_certificate` covers them in those coordinates and
    /// `quotient_certificate` covers the images of the others under
    /// `projection`.
    Split {
        k: usize,
        subset: SubsetIndex,
        subspace: Vec<IntVector>,
        sub_certificate: Box<DecompositionCertificate>,
        projection: ProjectionMap,
        quotient_certificate: Box<DecompositionCertificate>,
    },
}

impl DecompositionCertificate {
    pub fn depth(&self) -> usize {
        match self {
            Self::Leaf { .. } => 1,
            Self::Split { sub_certificate, quotient_certificate, .. } => {
                1 + sub_certificate.depth().max(quotient_certificate.depth())
            }
        }
    }
}

/// Union-find over the simplex labels `0..=n` with offset vectors:
/// `q_l = q_{root(l)} + offset[l]`.
#[derive(Clone)]
struct LabelSystem {
    n: usize,
    root: Vec<usize>,
    offset: Vec<IntVector>,
    /// `q_{r'} - q_r` for every merge of two components.
    edges: Vec<IntVector>,
}

impl LabelSystem {
    fn new(n: usize) -> Self {
        Self { n, root: (0..=n).collect(), offset: vec![IntVector::zeros(n); n + 1], edges: Vec::new() }
    }

    /// Imposes `q_b - q_a = delta`; false if inconsistent or if the merge
    /// edges stop extending to a lattice basis.
    fn link(&mut self, a: usize, b: usize, delta: &IntVector) -> bool {
        let (ra, rb) = (self.root[a], self.root[b]);
        if ra == rb {
            return &self.offset[b] - &self.offset[a] == *delta;
        }
        let e = &(delta + &self.offset[a]) - &self.offset[b];
        for l in 0..=self.n {
            if self.root[l] == rb {
                self.root[l] = ra;
                self.offset[l] = &self.offset[l] + &e;
            }
        }
        self.edges.push(e);
        is_primitive_system(&self.edges, self.n)
    }
}

struct SimplexSearch<'a> {
    n: usize,
    reps: &'a [LatticePolytope],
    order: &'a [usize],
}

impl SimplexSearch<'_> {
    fn search(&self, pos: usize, state: &LabelSystem, labels: &mut [Vec<usize>]) -> Option<LabelSystem> {
        if pos == self.order.len() {
            return Some(state.clone());
        }
        let mut arrangement = Vec::new();
        let mut used = vec![false; self.n + 1];
        self.arrange(pos, state, labels, &mut arrangement, &mut used)
    }

    fn arrange(
        &self,
        pos: usize,
        state: &LabelSystem,
        labels: &mut [Vec<usize>],
        arrangement: &mut Vec<usize>,
        used: &mut [bool],
    ) -> Option<LabelSystem> {
        let class = self.order[pos];
        let verts = self.reps[class].vertices();
        if arrangement.len() == verts.len() {
            let mut next = state.clone();
            for i in 1..verts.len() {
                if !next.link(arrangement[0], arrangement[i], &(&verts[i] - &verts[0])) {
                    return None;
                }
            }
            labels[class] = arrangement.clone();
            return self.search(pos + 1, &next, labels);
        }
        // Relabelling the simplex is a symmetry, so the first class gets
        // labels in vertex order.
        let choices: Vec<usize> = if pos == 0 { vec![arrangement.len()] } else { (0..=self.n).collect() };
        for l in choices {
            if used[l] {
                continue;
            }
            used[l] = true;
            arrangement.push(l);
            if let Some(found) = self.arrange(pos, state, labels, arrangement, used) {
                return Some(found);
            }
            arrangement.pop();
            used[l] = false;
        }
        None
    }
}

/// A unimodular `n`-simplex containing a translate of every member, with the
/// translations, or `None` if there is none. Requires `dim(P_[m]) = n`.
///
/// Lattice polytopes inside a unimodular simplex are its faces, so the search
/// labels the vertices of each member by simplex vertices and solves for the
/// simplex; it is exhaustive in every dimension.
pub fn common_unimodular_simplex(family: &PolytopeFamily) -> Result<Option<(LatticePolytope, Vec<IntVector>)>> {
    let n = family.ambient_dim();
    if family.total_sum().dimension() != n {
        return Err(Error::Precondition("common simplex search needs a full-dimensional total sum".into()));
    }
    let mut reps: Vec<LatticePolytope> = Vec::new();
    let mut class_of = Vec::with_capacity(family.len());
    for p in family.members() {
        if p.is_point() {
            class_of.push(None);
            continue;
        }
        if p.num_vertices() != p.dimension() + 1 {
            return Ok(None);
        }
        let nf = p.translation_normal_form();
        let idx = reps.iter().position(|r| *r == nf).unwrap_or_else(|| {
            reps.push(nf);
            reps.len() - 1
        });
        class_of.push(Some(idx));
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| reps[b].dimension().cmp(&reps[a].dimension()).then_with(|| reps[a].cmp(&reps[b])));
    let mut labels = vec![Vec::new(); reps.len()];
    let search = SimplexSearch { n, reps: &reps, order: &order };
    let Some(state) = search.search(0, &LabelSystem::new(n), &mut labels) else {
        return Ok(None);
    };

    let basis = complete_to_basis(&state.edges, n).expect("merge edges form a primitive system");
    let extras = &basis[state.edges.len()..];
    let target = order.first().map_or_else(|| IntVector::zeros(n), |&c| reps[c].vertices()[0].clone());
    let anchor = state.root[0];
    let mut root_pos: BTreeMap<usize, IntVector> = BTreeMap::new();
    root_pos.insert(anchor, &target - &state.offset[0]);
    let others: BTreeSet<usize> = state.root.iter().copied().filter(|&r| r != anchor).collect();
    for (r, extra) in others.into_iter().zip(extras) {
        let pos = &root_pos[&anchor] + extra;
        root_pos.insert(r, pos);
    }
    let q: Vec<IntVector> = (0..=n).map(|l| &root_pos[&state.root[l]] + &state.offset[l]).collect();
    let simplex = LatticePolytope::from_points(&q)?;
    if !(simplex.is_full_dimensional() && simplex.is_unimodular_simplex()) {
        return Err(Error::CrossCheck(format!("constructed simplex {simplex:?} is not unimodular")));
    }
    let translations = family
        .members()
        .iter()
        .zip(&class_of)
        .map(|(p, class)| match class {
            None => &q[0] - &p.vertices()[0],
            Some(c) => &q[labels[*c][0]] - &p.vertices()[0],
        })
        .collect();
    Ok(Some((simplex, translations)))
}

/// Faces of `simplex` of dimension `j < n` occupied by more than `j`
/// translated members, with their multiplicities.
pub fn face_multiplicity_violations(
    simplex: &LatticePolytope,
    family: &PolytopeFamily,
    translations: &[IntVector],
) -> Vec<(LatticePolytope, usize)> {
    let n = simplex.dimension();
    let mut counts: BTreeMap<LatticePolytope, usize> = BTreeMap::new();
    for (p, t) in family.members().iter().zip(translations) {
        if !p.is_point() {
            *counts.entry(p.translate(t)).or_default() += 1;
        }
    }
    counts.into_iter().filter(|(face, c)| face.dimension() < n && *c > face.dimension()).collect()
}

fn require_proper_square(family: &PolytopeFamily) -> Result<()> {
    if family.len() != family.ambient_dim() {
        return Err(Error::Precondition(format!(
            "needs m = n, got m = {}, n = {}",
            family.len(),
            family.ambient_dim()
        )));
    }
    if !family.is_proper() {
        return Err(Error::Precondition("family is not proper".into()));
    }
    Ok(())
}

/// A certificate of mixed degree zero for a proper family with `m = n`, or
/// `None` when the mixed degree is positive.
///
/// Tries a common unimodular simplex first, then splits off `k` members
/// (`k = 1..n-1`, subsets in lexicographic order) whose sum is
/// `k`-dimensional, recursing on them and on the projected remainder.
pub fn decompose_md0(family: &PolytopeFamily) -> Result<Option<DecompositionCertificate>> {
    require_proper_square(family)?;
    let sums = SubsetSums::new(family);
    if mixed_invariants_in(&sums)?.md != 0 {
        return Ok(None);
    }
    if let Some((simplex, translations)) = common_unimodular_simplex(family)? {
        return Ok(Some(DecompositionCertificate::Leaf { simplex, translations }));
    }
    let n = family.len();
    for k in 1..n {
        for subset in SubsetIndex::of_size(n, k) {
            if sums.dimension(subset) != k {
                continue;
            }
            let Some((subspace, reduced)) = reduce_subfamily(family, subset) else {
                continue;
            };
            if !reduced.is_proper() {
                continue;
            }
            let Some(sub) = decompose_md0(&reduced)? else {
                continue;
            };
            let (projection, images) = project_family(family, subset)?;
            let quotient = PolytopeFamily::new(images)?;
            if !quotient.is_proper() {
                continue;
            }
            let Some(quo) = decompose_md0(&quotient)? else {
                continue;
            };
            return Ok(Some(DecompositionCertificate::Split {
                k,
                subset,
                subspace,
                sub_certificate: Box::new(sub),
                projection,
                quotient_certificate: Box::new(quo),
            }));
        }
    }
    Ok(None)
}

/// Re-checks a certificate from scratch: containment and unimodularity at
/// leaves; subset size, span, dimension and projection at splits; and mixed
/// degree zero at every node.
pub fn validate_certificate(family: &PolytopeFamily, cert: &DecompositionCertificate) -> bool {
    validate_node(family, cert).unwrap_or(false)
}

fn validate_node(family: &PolytopeFamily, cert: &DecompositionCertificate) -> Result<bool> {
    let n = family.ambient_dim();
    if family.len() != n || !family.is_proper() {
        return Ok(false);
    }
    let sums = SubsetSums::new(family);
    if mixed_invariants_in(&sums)?.md != 0 {
        return Ok(false);
    }
    match cert {
        DecompositionCertificate::Leaf { simplex, translations } => Ok(simplex.ambient_dim() == n
            && simplex.is_full_dimensional()
            && simplex.is_unimodular_simplex()
            && translations.len() == family.len()
            && translations.iter().all(|t| t.dim() == n)
            && family.members().iter().zip(translations).all(|(p, t)| simplex.contains_polytope(&p.translate(t)))),
        DecompositionCertificate::Split { k, subset, subspace, sub_certificate, projection, quotient_certificate } => {
            let k = *k;
            if k == 0 || k >= n || subset.len() != k || !subset.is_subset_of(family.all()) || subspace.len() != k {
                return Ok(false);
            }
            if sums.dimension(*subset) != k {
                return Ok(false);
            }
            let Some(basis) = affine_lattice_with_basis(IntVector::zeros(n), subspace.clone()) else {
                return Ok(false);
            };
            let Some(reduced) =
                subset.indices().map(|i| reduce_member(family.member(i), &basis)).collect::<Option<Vec<_>>>()
            else {
                return Ok(false);
            };
            if projection.source_dim() != n
                || projection.target_dim() != n - k
                || projection.matrix().rows() != n - k
                || projection.matrix().cols() != n
                || !is_lattice_surjection(projection.matrix())
                || !projection.annihilates(subspace)
            {
                return Ok(false);
            }
            let images: Vec<LatticePolytope> = subset
                .complement(family.len())
                .indices()
                .map(|j| projection.apply_polytope(family.member(j)))
                .collect();
            Ok(validate_node(&PolytopeFamily::new(reduced)?, sub_certificate)?
                && validate_node(&PolytopeFamily::new(images)?, quotient_certificate)?)
        }
    }
}

/// `U` with `U d = e_1` for a primitive `d ∈ Z^2`.
fn to_first_axis(d: &IntVector) -> IntMatrix {
    let (p, q) = (d[0].clone(), d[1].clone());
    let (g, x, y) = p.clone().extended_gcd(q.clone());
    debug_assert_eq!(Integer::from(g), Integer::ONE);
    IntMatrix::new(2, 2, vec![x, y, -q, p])
}

/// Maps sending the cone at a vertex of a polygon to the normal position
/// `d_1 ↦ e_1`, `d_2 ↦ (a, b)` with `0 ≤ a < b`. The set of such maps over
/// all (vertex, edge) pairs is equivariant under `GL_2(Z)`.
fn planar_frames(total: &LatticePolytope) -> Vec<IntMatrix> {
    match total.dimension() {
        0 => vec![IntMatrix::identity(2)],
        1 => {
            let v = total.vertices();
            let d = IntVector::new(primitive((&v[1] - &v[0]).entries()));
            let u = to_first_axis(&d);
            let neg = IntMatrix::from_i64_rows(&[&[-1, 0], &[0, -1]]).mul(&u);
            vec![u, neg]
        }
        _ => {
            let verts = total.vertices();
            let reduced = total.reduced_vertices();
            let tight: Vec<Vec<usize>> = total
                .facets()
                .iter()
                .map(|f| (0..verts.len()).filter(|&i| f.slack(&reduced[i]) == Integer::ZERO).collect())
                .collect();
            let mut frames = Vec::new();
            for (i, v) in verts.iter().enumerate() {
                let nbrs: Vec<IntVector> = tight
                    .iter()
                    .filter(|edge| edge.contains(&i))
                    .map(|edge| {
                        let j = *edge.iter().find(|&&j| j != i).expect("edges have two vertices");
                        IntVector::new(primitive((&verts[j] - v).entries()))
                    })
                    .collect();
                for (d1, d2) in [(&nbrs[0], &nbrs[1]), (&nbrs[1], &nbrs[0])] {
                    let mut u = to_first_axis(d1);
                    let w = u.mul_vec(d2);
                    if w[1] < Integer::ZERO {
                        u = IntMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]).mul(&u);
                    }
                    let w = u.mul_vec(d2);
                    let shift = crate::lattice::floor_div(&w[0], &w[1]);
                    let shear = IntMatrix::new(2, 2, vec![Integer::ONE, -shift, Integer::ZERO, Integer::ONE]);
                    frames.push(shear.mul(&u));
                }
            }
            frames
        }
    }
}

fn image_key(family: &PolytopeFamily, u: &IntMatrix) -> Vec<LatticePolytope> {
    let zero = IntVector::zeros(family.ambient_dim());
    let mut key: Vec<LatticePolytope> = family
        .members()
        .iter()
        .map(|p| p.transform(u, &zero, 1).expect("unimodular frame").translation_normal_form())
        .collect();
    key.sort();
    key
}

/// Canonical representative of a family in dimension one or two under a
/// common unimodular map, independent translations of the members, and
/// permutations.
pub fn unimodular_normal_form(family: &PolytopeFamily) -> Result<PolytopeFamily> {
    let frames = match family.ambient_dim() {
        1 => vec![IntMatrix::identity(1), IntMatrix::from_i64_rows(&[&[-1]])],
        2 => planar_frames(&family.total_sum()),
        n => return Err(Error::Precondition(format!("unimodular normal form is implemented for n ≤ 2, got {n}"))),
    };
    let best = frames.iter().map(|u| image_key(family, u)).min().expect("at least one frame");
    PolytopeFamily::new(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DedupMode {
    /// Translation of each member and permutation of the members.
    TranslationPermutation,
    /// Additionally a common unimodular map (dimension at most two).
    Unimodular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationConfig {
    pub ambient_dim: usize,
    pub family_size: usize,
    pub box_bound: u64,
    /// Keep only proper families.
    pub proper_only: bool,
    pub dedup: DedupMode,
}

/// Largest number of box points whose subsets are enumerated.
pub const MAX_BOX_POINTS: usize = 20;

fn box_points(n: usize, bound: u64) -> Vec<IntVector> {
    let side = bound + 1;
    let total = side.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut entries = vec![Integer::ZERO; n];
            for e in entries.iter_mut().rev() {
                *e = Integer::from(code % side);
                code /= side;
            }
            IntVector::new(entries)
        })
        .collect()
}

/// Every lattice polytope with vertices in `[0,B]^n`, up to translation,
/// as translation normal forms in increasing order.
pub fn translation_classes(n: usize, bound: u64) -> Result<Vec<LatticePolytope>> {
    if n == 0 || bound == 0 {
        return Err(Error::Precondition("enumeration needs n ≥ 1 and B ≥ 1".into()));
    }
    let pts = box_points(n, bound);
    if pts.len() > MAX_BOX_POINTS {
        return Err(Error::TooLarge(format!(
            "[0,{bound}]^{n} has {} lattice points; at most {MAX_BOX_POINTS} are supported",
            pts.len()
        )));
    }
    let mut classes = BTreeSet::new();
    let mut subset = Vec::with_capacity(pts.len());
    for mask in 1u64..1 << pts.len() {
        subset.clear();
        subset.extend((0..pts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pts[i].clone()));
        let p = LatticePolytope::from_points(&subset)?;
        // Every class in the box has exactly one representative touching both
        // coordinate lower bounds.
        if p.min_corner().is_zero() {
            classes.insert(p);
        }
    }
    Ok(classes.into_iter().collect())
}

pub(crate) fn for_each_multiset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), &mut f);
}

/// All families of `m` polytopes with vertices in the box, deduplicated per
/// the configuration, in a fixed order.
pub fn enumerate_families(cfg: &EnumerationConfig) -> Result<Vec<PolytopeFamily>> {
    if cfg.family_size == 0 {
        return Err(Error::Precondition("family size must be positive".into()));
    }
    if cfg.dedup == DedupMode::Unimodular && cfg.ambient_dim > 2 {
        return Err(Error::Precondition("unimodular deduplication is implemented for n ≤ 2".into()));
    }
    let mut classes = translation_classes(cfg.ambient_dim, cfg.box_bound)?;
    if cfg.proper_only {
        classes.retain(|p| p.dimension() >= 1);
    }
    let mut out = Vec::new();
    let mut err = None;
    for_each_multiset(classes.len(), cfg.family_size, |idx| {
        if err.is_some() {
            return;
        }
        let members: Vec<LatticePolytope> = idx.iter().map(|&i| classes[i].clone()).collect();
        match PolytopeFamily::new(members) {
            Ok(f) if !cfg.proper_only || f.is_proper() => out.push(f),
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    if cfg.dedup == DedupMode::Unimodular {
        let mut seen = BTreeSet::new();
        for f in out {
            seen.insert(unimodular_normal_form(&f)?);
        }
        return Ok(seen.into_iter().collect());
    }
    Ok(out)
}

/// `Σ_{i=1}^{n-1} i C(n+1, i+1)` and `(2^n - 1)(n - 1)`.
pub fn binomial_identity(n: u64) -> (Integer, Integer) {
    let lhs = (1..n).map(|i| Integer::from(i) * binomial(n + 1, i + 1)).sum();
    let rhs = (Integer::from(2u32).pow(n) - Integer::ONE) * Integer::from(n.saturating_sub(1));
    (lhs, rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialCheck {
    pub n: u64,
    #[serde(serialize_with = "integer_serde::one")]
    pub lhs: Integer,
    #[serde(serialize_with = "integer_serde::one")]
    pub rhs: Integer,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionScan {
    pub ambient_dim: usize,
    pub box_bound: u64,
    /// Positive-dimensional hollow translation classes in the box.
    pub hollow_classes: usize,
    /// Proper `(n+1)`-families of mixed degree zero, up to translation and
    /// permutation.
    pub md0_families: usize,
    pub simplex_contained: usize,
    /// Simplex-contained families where some face occurs too often.
    pub face_violations: Vec<PolytopeFamily>,
    /// Exceptional families: up to a common unimodular map in the plane,
    /// up to translation and permutation otherwise.
    pub exceptional: Vec<PolytopeFamily>,
    pub binomial_identity: Vec<BinomialCheck>,
}

/// Depth-first search over multisets of hollow classes whose proper
/// subfamily sums all stay hollow; `sums[mask]` is the sum over the chosen
/// positions in `mask`.
struct HollowSearch<'a> {
    classes: &'a [LatticePolytope],
    hollow_pair: Vec<Vec<bool>>,
    target: usize,
}

impl HollowSearch<'_> {
    fn run(
        &self,
        start: usize,
        chosen: &mut Vec<usize>,
        sums: &mut Vec<LatticePolytope>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        for c in start..self.classes.len() {
            if !chosen.iter().all(|&i| self.hollow_pair[i][c]) {
                continue;
            }
            let last = chosen.len() + 1 == self.target;
            let old = sums.len();
            let mut ok = true;
            for mask in 0..old {
                let s = minkowski_sum(&sums[mask], &self.classes[c]);
                let full = last && mask == old - 1;
                let good = if full { s.is_full_dimensional() && !s.is_hollow() } else { s.is_hollow() };
                if !good {
                    ok = false;
                    break;
                }
                sums.push(s);
            }
            if ok {
                chosen.push(c);
                if last {
                    visit(chosen);
                } else {
                    self.run(c, chosen, sums, visit);
                }
                chosen.pop();
            }
            sums.truncate(old);
        }
    }
}

/// Proper families of `n + 1` polytopes in `[0,B]^n` with mixed degree zero,
/// split into those inside a common unimodular simplex and the exceptional
/// ones. Implemented for `n ∈ {2, 3}`.
pub fn exception_scan(n: usize, bound: u64) -> Result<ExceptionScan> {
    if !(2..=3).contains(&n) {
        return Err(Error::Precondition(format!("the exception scan supports n = 2 or 3, got {n}")));
    }
    if bound < 1 || (n == 2 && bound < 2) {
        return Err(Error::Precondition("the exception scan needs B ≥ 2 in the plane and B ≥ 1 otherwise".into()));
    }
    let classes: Vec<LatticePolytope> =
        translation_classes(n, bound)?.into_iter().filter(|p| p.dimension() >= 1 && p.is_hollow()).collect();
    let h = classes.len();
    let mut hollow_pair = vec![vec![false; h]; h];
    for i in 0..h {
        for j in i..h {
            let ok = minkowski_sum(&classes[i], &classes[j]).is_hollow();
            hollow_pair[i][j] = ok;
            hollow_pair[j][i] = ok;
        }
    }
    let search = HollowSearch { classes: &classes, hollow_pair, target: n + 1 };
    // Branches by first class run in parallel and are concatenated in order.
    let found: Vec<Vec<usize>> = (0..h)
        .into_par_iter()
        .map(|first| {
            let mut local = Vec::new();
            let mut sums = vec![LatticePolytope::point(IntVector::zeros(n)), classes[first].clone()];
            search.run(first, &mut vec![first], &mut sums, &mut |idx| local.push(idx.to_vec()));
            local
        })
        .flatten()
        .collect();

    let mut simplex_contained = 0;
    let mut face_violations = Vec::new();
    let mut exceptional = BTreeSet::new();
    for idx in &found {
        let family = PolytopeFamily::new(idx.iter().map(|&i| classes[i].clone()).collect())?;
        let inv = mixed_invariants_in(&SubsetSums::new(&family))?;
        if !(inv.proper && inv.md == 0) {
            return Err(Error::CrossCheck(format!("hollow-subset scan and invariants disagree on {family:?}")));
        }
        match common_unimodular_simplex(&family)? {
            Some((simplex, translations)) => {
                simplex_contained += 1;
                if !face_multiplicity_violations(&simplex, &family, &translations).is_empty() {
                    face_violations.push(family);
                }
            }
            None if n == 2 => {
                exceptional.insert(unimodular_normal_form(&family)?);
            }
            None => {
                exceptional.insert(family.normal_form());
            }
        }
    }
    let binomial_identity = (2..=10)
        .map(|n| {
            let (lhs, rhs) = binomial_identity(n);
            BinomialCheck { n, holds: lhs == rhs, lhs, rhs }
        })
        .collect();
    Ok(ExceptionScan {
        ambient_dim: n,
        box_bound: bound,
        hollow_classes: h,
        md0_families: found.len(),
        simplex_contained,
        face_violations,
        exceptional: exceptional.into_iter().collect(),
        binomial_identity,
    })
}

pub fn exception_scan_dim2(bound: u64) -> Result<ExceptionScan> {
    exception_scan(2, bound)
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

    fn e1() -> LatticePolytope {
        poly(&[&[0, 0], &[1, 0]])
    }

    fn e2() -> LatticePolytope {
        poly(&[&[0, 0], &[0, 1]])
    }

    fn example13() -> PolytopeFamily {
        fam(&[e1(), e2(), LatticePolytope::unit_cube(2)])
    }

    #[test]
    fn common_simplex_examples() {
        let tri = LatticePolytope::standard_simplex(2);
        let (q, t) = common_unimodular_simplex(&fam(&[e1(), e2(), tri.clone()])).unwrap().unwrap();
        assert_eq!(q, tri);
        assert!(t.iter().all(IntVector::is_zero));
        assert!(common_unimodular_simplex(&example13()).unwrap().is_none());
        assert!(common_unimodular_simplex(&fam(&[tri.dilate(2)])).unwrap().is_none());
        let diag = poly(&[&[3, 3], &[4, 4]]);
        let (q, t) = common_unimodular_simplex(&fam(&[e1(), e2(), diag.clone()])).unwrap().unwrap();
        assert!(q.is_unimodular_simplex());
        for (p, t) in [e1(), e2(), diag].iter().zip(&t) {
            assert!(q.contains_polytope(&p.translate(t)));
        }
    }

    #[test]
    fn disconnected_labels_in_three_dimensions() {
        let a = poly(&[&[0, 0, 0], &[1, 0, 0]]);
        let b = poly(&[&[5, 5, 5], &[5, 6, 5]]);
        let c = poly(&[&[0, 0, 0], &[0, 0, 1]]);
        let (q, t) = common_unimodular_simplex(&fam(&[a.clone(), b.clone(), c.clone()])).unwrap().unwrap();
        assert!(q.is_full_dimensional() && q.is_unimodular_simplex());
        for (p, t) in [a, b, c].iter().zip(&t) {
            assert!(q.contains_polytope(&p.translate(t)));
        }
        let fat = poly(&[&[0, 0, 0], &[2, 0, 0]]);
        assert!(common_unimodular_simplex(&fam(&[fat, LatticePolytope::standard_simplex(3)])).unwrap().is_none());
    }

    #[test]
    fn decompositions() {
        let f = fam(&[e1(), e2()]);
        let cert = decompose_md0(&f).unwrap().unwrap();
        match &cert {
            DecompositionCertificate::Leaf { simplex, .. } => {
                assert_eq!(*simplex, LatticePolytope::standard_simplex(2))
            }
            other => panic!("expected a leaf, got {other:?}"),
        }
        assert!(validate_certificate(&f, &cert));

        let g = fam(&[e1(), LatticePolytope::unit_cube(2)]);
        let cert = decompose_md0(&g).unwrap().unwrap();
        match &cert {
            DecompositionCertificate::Split { k, subset, .. } => {
                assert_eq!((*k, *subset), (1, SubsetIndex::singleton(0)));
            }
            other => panic!("expected a split, got {other:?}"),
        }
        assert!(validate_certificate(&g, &cert));
        assert!(!validate_certificate(&fam(&[e1(), e1().translate(&IntVector::from_i64s(&[0, 1]))]), &cert));

        let big = LatticePolytope::standard_simplex(2).dilate(2);
        assert!(decompose_md0(&fam(&[big.clone(), big])).unwrap().is_none());
        assert!(decompose_md0(&fam(&[e1(), e1()])).is_err());
    }

    #[test]
    fn broken_certificates_fail() {
        let f = fam(&[e1(), e2()]);
        let bad_leaf = DecompositionCertificate::Leaf {
            simplex: poly(&[&[0, 0], &[1, 0], &[0, 2]]),
            translations: vec![IntVector::zeros(2), IntVector::zeros(2)],
        };
        assert!(!validate_certificate(&f, &bad_leaf));
        let g = fam(&[e1(), LatticePolytope::unit_cube(2)]);
        let DecompositionCertificate::Split { sub_certificate, projection, quotient_certificate, subspace, .. } =
            decompose_md0(&g).unwrap().unwrap()
        else {
            panic!("expected a split");
        };
        let wrong = DecompositionCertificate::Split {
            k: 1,
            subset: SubsetIndex::singleton(1),
            subspace,
            sub_certificate,
            projection,
            quotient_certificate,
        };
        assert!(!validate_certificate(&g, &wrong));
    }

    #[test]
    fn normal_forms() {
        let f = example13();
        let u = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let moved = fam(&[
            LatticePolytope::unit_cube(2).transform(&u, &IntVector::from_i64s(&[4, -1]), 1).unwrap(),
            e2().transform(&u, &IntVector::from_i64s(&[1, 1]), 1).unwrap(),
            e1().transform(&u, &IntVector::zeros(2), 1).unwrap(),
        ]);
        assert_eq!(unimodular_normal_form(&f).unwrap(), unimodular_normal_form(&moved).unwrap());
        let other = fam(&[e1(), e2(), LatticePolytope::standard_simplex(2)]);
        assert_ne!(unimodular_normal_form(&f).unwrap(), unimodular_normal_form(&other).unwrap());
        let line = fam(&[poly(&[&[0, 0], &[2, 2]]), poly(&[&[0, 0], &[1, 1]])]);
        let flipped = fam(&[poly(&[&[0, 0], &[-2, 0]]), poly(&[&[0, 0], &[1, 0]])]);
        assert_eq!(unimodular_normal_form(&line).unwrap(), unimodular_normal_form(&flipped).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let cfg = |n, m, b, proper| EnumerationConfig {
            ambient_dim: n,
            family_size: m,
            box_bound: b,
            proper_only: proper,
            dedup: DedupMode::TranslationPermutation,
        };
        assert_eq!(enumerate_families(&cfg(1, 1, 1, false)).unwrap().len(), 2);
        assert_eq!(enumerate_families(&cfg(1, 1, 2, false)).unwrap().len(), 3);
        assert_eq!(enumerate_families(&cfg(2, 1, 1, false)).unwrap().len(), 10);
        assert_eq!(enumerate_families(&cfg(2, 1, 1, true)).unwrap().len(), 5);
        let pairs = enumerate_families(&cfg(2, 2, 1, false)).unwrap();
        assert_eq!(pairs.len(), 55);
        let uni =
            enumerate_families(&EnumerationConfig { dedup: DedupMode::Unimodular, ..cfg(2, 1, 1, false) }).unwrap();
        // point, primitive segment, unimodular triangle, square
        assert_eq!(uni.len(), 4);
        assert!(translation_classes(3, 2).is_err());
    }

    #[test]
    fn binomial_identity_small() {
        assert_eq!(binomial_identity(2), (Integer::from(3), Integer::from(3)));
        for n in 2..=10 {
            let (a, b) = binomial_identity(n);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn planar_exceptions_in_small_box() {
        let scan = exception_scan_dim2(2).unwrap();
        assert_eq!(scan.exceptional, vec![unimodular_normal_form(&example13()).unwrap()]);
        assert!(scan.face_violations.is_empty());
        assert!(scan.md0_families > scan.simplex_contained);
        assert!(scan.binomial_identity.iter().all(|c| c.holds));
    }
}
