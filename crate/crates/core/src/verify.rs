//! Verification suites: exhaustive and sampled property checks over
//! desk-scale corpora of lattice polytopes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use malachite::base::num::basic::traits::{One, Zero};
use malachite::{Integer, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    decompose_md0, exception_scan, for_each_multiset, translation_classes, unimodular_normal_form, validate_certificate,
};
use crate::ehrhart::{ehrhart_polynomial, normalized_volume};
use crate::lattice::IntVector;
use crate::minkowski::{PolytopeFamily, SubsetIndex, SubsetSums};
use crate::mixed::{
    auxiliary_volume_identities, bernstein_positive, genus_table_in, interior_bound_check, md0_characterization,
    mixed_invariants_in, mixed_volume_formulas_in, projection_product_check, simplex_faces_hollow,
    translates_of_one_unimodular_simplex,
};
use crate::polytope::LatticePolytope;
use crate::{Error, Result};

/// Failure descriptions kept per check.
pub const MAX_REPORTED_FAILURES: usize = 10;

/// Default seed for the sampled parts of the suites.
pub const DEFAULT_SEED: u64 = 0x6d69_7864_6567;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Nonneg,
    Md0Equiv,
    InteriorBound,
    Genus,
    VolumeIdentities,
    Reciprocity,
    ExceptionsDim2,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Nonneg,
        Suite::Md0Equiv,
        Suite::InteriorBound,
        Suite::Genus,
        Suite::VolumeIdentities,
        Suite::Reciprocity,
        Suite::ExceptionsDim2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Nonneg => "nonneg",
            Suite::Md0Equiv => "md0-equiv",
            Suite::InteriorBound => "soprunov",
            Suite::Genus => "genus",
            Suite::VolumeIdentities => "volume-identities",
            Suite::Reciprocity => "reciprocity",
            Suite::ExceptionsDim2 => "exceptions-dim2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    /// Coordinate bound of the planar corpus.
    pub box_bound: u64,
    /// Largest family size in the exhaustive family corpora.
    pub max_members: usize,
    /// Ambient dimension of the exception scan.
    pub dim: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { box_bound: 2, max_members: 3, dim: 2, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub evaluated: u64,
    pub failure_count: u64,
    /// The first few failures, in corpus order.
    pub failures: Vec<String>,
    /// At least one case evaluated and none failed.
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        Self { name: name.to_owned(), evaluated: 0, failure_count: 0, failures: Vec::new(), passed: false }
    }

    pub fn single(name: &str, ok: bool, failure: impl FnOnce() -> String) -> Self {
        let mut c = Self::new(name);
        c.record(if ok { Verdict::Pass } else { Verdict::Fail(failure()) }, String::new);
        c.finish()
    }

    fn record(&mut self, v: Verdict, describe: impl FnOnce() -> String) {
        match v {
            Verdict::Skip => {}
            Verdict::Pass => self.evaluated += 1,
            Verdict::Fail(msg) => {
                self.evaluated += 1;
                self.failure_count += 1;
                if self.failures.len() < MAX_REPORTED_FAILURES {
                    let subject = describe();
                    self.failures.push(if subject.is_empty() { msg } else { format!("{subject}: {msg}") });
                }
            }
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.evaluated > 0 && self.failure_count == 0;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Verdict {
    Skip,
    Pass,
    Fail(String),
}

impl Verdict {
    fn check(ok: bool, failure: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(failure())
        }
    }

    fn when(cond: bool, v: impl FnOnce() -> Verdict) -> Self {
        if cond {
            v()
        } else {
            Verdict::Skip
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub options: VerifyOptions,
    pub checks: Vec<CheckResult>,
    /// Suite-specific data such as witnesses and scan summaries.
    pub details: BTreeMap<String, serde_json::Value>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates `names.len()` checks per item in parallel and aggregates them
/// in item order. An error fails every check for that item.
fn tally<T, F, D>(names: &[&str], items: &[T], describe: D, eval: F) -> Vec<CheckResult>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Verdict>> + Sync,
    D: Fn(&T) -> String,
{
    let verdicts: Vec<Result<Vec<Verdict>>> = items.par_iter().map(&eval).collect();
    let mut out: Vec<CheckResult> = names.iter().map(|n| CheckResult::new(n)).collect();
    for (item, v) in items.iter().zip(verdicts) {
        match v {
            Ok(vs) => {
                assert_eq!(vs.len(), names.len(), "one verdict per check");
                for (c, v) in out.iter_mut().zip(vs) {
                    c.record(v, || describe(item));
                }
            }
            Err(e) => {
                for c in out.iter_mut() {
                    c.record(Verdict::Fail(e.to_string()), || describe(item));
                }
            }
        }
    }
    out.into_iter().map(CheckResult::finish).collect()
}

fn describe_family(f: &PolytopeFamily) -> String {
    serde_json::to_string(f).expect("families serialize")
}

fn describe_polytope(p: &LatticePolytope) -> String {
    serde_json::to_string(p).expect("polytopes serialize")
}

/// All multisets of `1..=max_members` classes, smaller families first.
pub fn families_over(classes: &[LatticePolytope], max_members: usize) -> Result<Vec<PolytopeFamily>> {
    let mut out = Vec::new();
    for m in 1..=max_members {
        let mut err = None;
        for_each_multiset(classes.len(), m, |idx| {
            if err.is_none() {
                match PolytopeFamily::new(idx.iter().map(|&i| classes[i].clone()).collect()) {
                    Ok(f) => out.push(f),
                    Err(e) => err = Some(e),
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(out)
}

/// Every pair of positive-dimensional classes whose sum is full-dimensional.
pub fn proper_pairs(n: usize, bound: u64) -> Result<Vec<PolytopeFamily>> {
    let classes: Vec<LatticePolytope> =
        translation_classes(n, bound)?.into_iter().filter(|p| p.dimension() >= 1).collect();
    Ok(families_over(&classes, 2)?.into_iter().filter(|f| f.len() == 2 && f.is_proper()).collect())
}

fn full_dimensional_classes(n: usize, bound: u64) -> Result<Vec<LatticePolytope>> {
    Ok(translation_classes(n, bound)?.into_iter().filter(LatticePolytope::is_full_dimensional).collect())
}

/// Convex hull of `n+1..=n+3` uniform points of `[0,B]^n`, resampled until
/// full-dimensional when requested.
pub fn random_polytope(rng: &mut impl Rng, n: usize, bound: u64, full_dimensional: bool) -> LatticePolytope {
    loop {
        let k = rng.gen_range(n + 1..=n + 3);
        let pts: Vec<IntVector> =
            (0..k).map(|_| IntVector::new((0..n).map(|_| Integer::from(rng.gen_range(0..=bound))).collect())).collect();
        let p = LatticePolytope::from_points(&pts).expect("points share a dimension");
        if !full_dimensional || p.is_full_dimensional() {
            return p;
        }
    }
}

/// `count` families of `m` random full-dimensional polytopes in `[0,B]^n`.
pub fn random_full_dimensional_families(
    seed: u64,
    n: usize,
    m: usize,
    bound: u64,
    count: usize,
) -> Vec<PolytopeFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let members = (0..m).map(|_| random_polytope(&mut rng, n, bound, true)).collect();
            PolytopeFamily::new(members).expect("non-empty family in a common dimension")
        })
        .collect()
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    if opts.box_bound == 0 || opts.max_members == 0 {
        return Err(Error::Precondition("verification needs B ≥ 1 and at least one member".into()));
    }
    let mut details = BTreeMap::new();
    let checks = match suite {
        Suite::Nonneg => nonneg(opts, &mut details)?,
        Suite::Md0Equiv => md0_equiv(opts, &mut details)?,
        Suite::InteriorBound => interior_bound(opts)?,
        Suite::Genus => genus(opts)?,
        Suite::VolumeIdentities => volume_identities(opts)?,
        Suite::Reciprocity => reciprocity(opts, &mut details)?,
        Suite::ExceptionsDim2 => exceptions(opts, &mut details)?,
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport { suite, options: opts.clone(), checks, details, passed })
}

fn nonneg(opts: &VerifyOptions, details: &mut BTreeMap<String, serde_json::Value>) -> Result<Vec<CheckResult>> {
    let classes = translation_classes(2, opts.box_bound)?;
    let families = families_over(&classes, opts.max_members)?;
    details.insert("families".into(), families.len().into());
    let n = 2i64;
    let mut checks = tally(
        &["md-nonnegative", "proper-bounds", "hollow-families-bounded", "mv-formulas"],
        &families,
        describe_family,
        |f| {
            let sums = SubsetSums::new(f);
            let inv = mixed_invariants_in(&sums)?;
            let m = f.len() as i64;
            let mv = if f.len() == f.ambient_dim() {
                let (a, b) = mixed_volume_formulas_in(&sums)?;
                Verdict::check(a == b, || format!("MV formulas give {a} and {b}"))
            } else {
                Verdict::Skip
            };
            Ok(vec![
                Verdict::check(inv.md >= 0, || format!("md = {}", inv.md)),
                Verdict::when(inv.proper, || {
                    Verdict::check(n - m <= inv.md && inv.md <= n, || {
                        format!("md = {} outside [{}, {n}]", inv.md, n - m)
                    })
                }),
                Verdict::when(inv.mcd == f.len() + 1, || {
                    Verdict::check(f.len() <= inv.dim_total, || {
                        format!("{} members span dimension {}", f.len(), inv.dim_total)
                    })
                }),
                mv,
            ])
        },
    );
    // The mixed codegree of one polytope differs from its codegree in general.
    let witness = classes.iter().find_map(|p| {
        let fam = PolytopeFamily::new(vec![p.clone()]).ok()?;
        let inv = mixed_invariants_in(&SubsetSums::new(&fam)).ok()?;
        let codeg = ehrhart_polynomial(p).ok()?.codegree;
        (inv.mcd != codeg).then(|| (p.clone(), inv.mcd, codeg))
    });
    if let Some((p, mcd, codeg)) = &witness {
        details
            .insert("mcd_codegree_witness".into(), serde_json::json!({ "polytope": p, "mcd": mcd, "codegree": codeg }));
    }
    checks.push(CheckResult::single("mcd-codegree-witness", witness.is_some(), || {
        "every polytope in the corpus has mcd = codeg".into()
    }));
    Ok(checks)
}

fn md0_equiv(opts: &VerifyOptions, details: &mut BTreeMap<String, serde_json::Value>) -> Result<Vec<CheckResult>> {
    let pairs = proper_pairs(2, opts.box_bound)?;
    details.insert("proper_pairs".into(), pairs.len().into());
    let mut checks =
        tally(&["md0-iff-mv1", "certificate-iff-md0", "certificate-valid"], &pairs, describe_family, |f| {
            let sums = SubsetSums::new(f);
            let inv = mixed_invariants_in(&sums)?;
            let mv = inv.mv.clone().expect("m = n");
            let cert = decompose_md0(f)?;
            Ok(vec![
                Verdict::check((inv.md == 0) == (mv == Integer::ONE), || format!("md = {}, MV = {mv}", inv.md)),
                Verdict::check(cert.is_some() == (inv.md == 0), || {
                    format!("md = {} but certificate present: {}", inv.md, cert.is_some())
                }),
                Verdict::when(cert.is_some(), || {
                    Verdict::check(validate_certificate(f, cert.as_ref().expect("present")), || {
                        "certificate fails validation".into()
                    })
                }),
            ])
        });
    let md0 = pairs.par_iter().filter(|f| mixed_invariants_in(&SubsetSums::new(f)).is_ok_and(|i| i.md == 0)).count();
    details.insert("md0_pairs".into(), md0.into());

    let full = full_dimensional_classes(2, opts.box_bound)?;
    let full_families = families_over(&full, opts.max_members)?;
    checks.extend(tally(&["md0-iff-common-unimodular-simplex"], &full_families, describe_family, |f| {
        let inv = mixed_invariants_in(&SubsetSums::new(f))?;
        let simplex = f.len() >= f.ambient_dim() && translates_of_one_unimodular_simplex(f);
        Ok(vec![Verdict::check((inv.md == 0) == simplex, || {
            format!("md = {}, translates of one unimodular simplex: {simplex}", inv.md)
        })])
    }));

    let full_pairs: Vec<PolytopeFamily> = full_families.into_iter().filter(|f| f.len() == 2).collect();
    let seven = |f: &PolytopeFamily| -> Result<Vec<Verdict>> {
        let c = md0_characterization(f)?;
        Ok(vec![
            Verdict::check(c.consistent, || format!("conditions disagree: {:?}", c.conditions())),
            Verdict::check(c.cayley_degree_in_range, || format!("Cayley degree {}", c.cayley_degree)),
        ])
    };
    checks.extend(tally(&["seven-conditions-dim2", "cayley-degree-dim2"], &full_pairs, describe_family, seven));
    let triples = random_full_dimensional_families(opts.seed, 3, 3, 2, 100);
    checks.extend(tally(&["seven-conditions-dim3", "cayley-degree-dim3"], &triples, describe_family, seven));

    // Subfamilies of faces of the standard simplex obeying the dimension
    // condition have hollow subset sums.
    let mut face_families = Vec::new();
    for n in 1..=3 {
        let simplex = LatticePolytope::standard_simplex(n);
        let faces: Vec<LatticePolytope> = SubsetIndex::ordered(n + 1)
            .into_iter()
            .filter(|s| s.len() >= 2)
            .map(|s| {
                LatticePolytope::from_points(&s.indices().map(|i| simplex.vertices()[i].clone()).collect::<Vec<_>>())
            })
            .collect::<Result<_>>()?;
        for m in 1..=n {
            for_each_multiset(faces.len(), m, |idx| {
                if let Ok(f) = PolytopeFamily::new(idx.iter().map(|&i| faces[i].clone()).collect()) {
                    let sums = SubsetSums::new(&f);
                    if SubsetIndex::ordered(m).into_iter().all(|s| sums.dimension(s) >= s.len()) {
                        face_families.push((n, f));
                    }
                }
            });
        }
    }
    checks.extend(tally(
        &["faces-of-simplex-hollow"],
        &face_families,
        |(_, f)| describe_family(f),
        |(n, f)| {
            Ok(vec![Verdict::check(simplex_faces_hollow(*n, f.members())?, || {
                "some subset sum has interior points".into()
            })])
        },
    ));
    Ok(checks)
}

fn interior_bound(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let full = full_dimensional_classes(2, opts.box_bound)?;
    let pairs: Vec<PolytopeFamily> = families_over(&full, 2)?.into_iter().filter(|f| f.len() == 2).collect();
    let mut checks = tally(&["gap-nonnegative", "gap-zero-iff-md-le-1"], &pairs, describe_family, |f| {
        let s = interior_bound_check(f)?;
        Ok(vec![
            Verdict::check(s.gap >= Integer::ZERO, || format!("gap = {}", s.gap)),
            Verdict::check(s.equality_iff_md_le_1, || format!("gap = {}, md = {}", s.gap, s.md)),
        ])
    });
    let tri = LatticePolytope::standard_simplex(2);
    let mut worked = CheckResult::new("worked-gaps");
    for (k, expected) in [(1u64, 0i64), (2, 0), (3, 2)] {
        let p = tri.dilate(k);
        let f = PolytopeFamily::new(vec![p.clone(), p])?;
        let gap = interior_bound_check(&f)?.gap;
        worked
            .record(Verdict::check(gap == expected, || format!("{k}Δ_2: gap {gap}, expected {expected}")), String::new);
    }
    checks.push(worked.finish());
    Ok(checks)
}

fn genus(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let classes = translation_classes(2, opts.box_bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sampled: Vec<PolytopeFamily> = (0..1000)
        .map(|_| {
            let m = rng.gen_range(1..=opts.max_members);
            let members = (0..m).map(|_| classes[rng.gen_range(0..classes.len())].clone()).collect();
            PolytopeFamily::new(members)
        })
        .collect::<Result<_>>()?;
    let mut checks = tally(&["mobius-identity", "proper-subset-identity"], &sampled, describe_family, |f| {
        let t = genus_table_in(&SubsetSums::new(f))?;
        let mob = t.mobius_failures();
        let fl = t.proper_subset_failures();
        Ok(vec![
            Verdict::check(mob.is_empty(), || format!("fails on {mob:?}")),
            Verdict::check(fl.is_empty(), || format!("fails on {fl:?}")),
        ])
    });
    let full = full_dimensional_classes(2, opts.box_bound)?;
    let full_families = families_over(&full, opts.max_members)?;
    checks.extend(tally(&["genus-nonnegative"], &full_families, describe_family, |f| {
        let t = genus_table_in(&SubsetSums::new(f))?;
        Ok(vec![Verdict::check(*t.total() >= Integer::ZERO, || format!("g([m]) = {}", t.total()))])
    }));
    // A triangle next to a segment with four lattice points: the genus of
    // the pair is minus the interior count of the segment.
    let seg = LatticePolytope::from_i64_points(&[&[0, 0], &[3, 0]])?;
    let f = PolytopeFamily::new(vec![LatticePolytope::standard_simplex(2), seg])?;
    let g = genus_table_in(&SubsetSums::new(&f))?.total().clone();
    checks.push(CheckResult::single("lower-dimensional-genus-negative", g == -2, || {
        format!("g([2]) = {g}, expected -2")
    }));
    Ok(checks)
}

fn volume_identities(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let classes = translation_classes(2, opts.box_bound)?;
    let pairs: Vec<PolytopeFamily> = families_over(&classes, 2)?.into_iter().filter(|f| f.len() == 2).collect();
    Ok(tally(
        &["mv-formulas", "multinomial-identity", "cayley-identity", "bernstein-criterion", "projection-product"],
        &pairs,
        describe_family,
        |f| {
            let sums = SubsetSums::new(f);
            let (a, b) = mixed_volume_formulas_in(&sums)?;
            let aux = auxiliary_volume_identities(f)?;
            let bern = bernstein_positive(f)?;
            let product = if sums.dimension(SubsetIndex::singleton(0)) == 1 {
                let pc = projection_product_check(f, SubsetIndex::singleton(0))?;
                Verdict::check(pc.holds, || format!("MV {} vs {} · {}", pc.mv, pc.left, pc.right))
            } else {
                Verdict::Skip
            };
            Ok(vec![
                Verdict::check(a == b, || format!("MV formulas give {a} and {b}")),
                Verdict::check(aux.multinomial_ok, || {
                    format!("Vol(P_1+P_2) = {} but the expansion gives {}", aux.sum_volume, aux.multinomial_sum)
                }),
                Verdict::check(aux.cayley_sum_ok, || {
                    format!("Vol(Cayley) = {} but the expansion gives {}", aux.cayley_volume, aux.cayley_sum)
                }),
                Verdict::check(bern == (a > Integer::ZERO), || format!("MV = {a}, criterion {bern}")),
                product,
            ])
        },
    ))
}

/// Polytopes for the single-polytope checks: all classes in `[0,B]^n` for
/// `(n, B) ∈ {(1,3), (2,3), (3,1)}` and 200 sampled ones in `[0,3]^3`.
pub fn ehrhart_corpus(seed: u64) -> Result<Vec<LatticePolytope>> {
    let mut out = Vec::new();
    for (n, b) in [(1, 3), (2, 3), (3, 1)] {
        out.extend(translation_classes(n, b)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..200).map(|_| random_polytope(&mut rng, 3, 3, false)));
    Ok(out)
}

fn reciprocity(opts: &VerifyOptions, details: &mut BTreeMap<String, serde_json::Value>) -> Result<Vec<CheckResult>> {
    let corpus = ehrhart_corpus(opts.seed)?;
    details.insert("polytopes".into(), corpus.len().into());
    let mut checks = tally(
        &[
            "out-of-sample-counts",
            "reciprocity",
            "h-star-sum-is-volume",
            "h-star-nonnegative",
            "degree-zero-iff-volume-one",
        ],
        &corpus,
        describe_polytope,
        |p| {
            let e = ehrhart_polynomial(p)?;
            let d = e.dim as u64;
            let mut bad_counts = Vec::new();
            for t in [d + 1, d + 2] {
                let predicted = e.evaluate(&Integer::from(t));
                let counted = Rational::from(p.count_dilate(t));
                if predicted != counted {
                    bad_counts.push(format!("t = {t}: {predicted} vs {counted}"));
                }
            }
            let sign = if d.is_multiple_of(2) { Integer::ONE } else { Integer::from(-1) };
            let mut bad_rec = Vec::new();
            for t in 1..=d + 2 {
                let at = e.evaluate(&-Integer::from(t));
                let expected = Rational::from(sign.clone() * Integer::from(p.count_interior_dilate(t)));
                if at != expected {
                    bad_rec.push(format!("t = {t}: ehr(-t) = {at}, expected {expected}"));
                }
            }
            let hsum: Integer = e.h_star.iter().sum();
            let vol = normalized_volume(p);
            Ok(vec![
                Verdict::check(bad_counts.is_empty(), || bad_counts.join("; ")),
                Verdict::check(bad_rec.is_empty(), || bad_rec.join("; ")),
                Verdict::check(hsum == e.volume && e.volume == vol, || {
                    format!("Σh* = {hsum}, Vol = {}, direct {vol}", e.volume)
                }),
                Verdict::check(e.h_star[0] == Integer::ONE && e.h_star.iter().all(|h| *h >= Integer::ZERO), || {
                    format!("h* = {:?}", e.h_star)
                }),
                Verdict::check((e.degree == 0) == (e.volume == Integer::ONE), || {
                    format!("degree {}, volume {}", e.degree, e.volume)
                }),
            ])
        },
    );
    let simplices: Vec<usize> = (0..=5).collect();
    checks.extend(tally(
        &["simplex-codegree"],
        &simplices,
        |n| format!("Δ_{n}"),
        |&n| {
            let e = ehrhart_polynomial(&LatticePolytope::standard_simplex(n))?;
            Ok(vec![Verdict::check(e.codegree == n + 1 && e.volume == Integer::ONE, || {
                format!("codegree {}, volume {}", e.codegree, e.volume)
            })])
        },
    ));
    Ok(checks)
}

/// The planar family of two unit segments and the unit square.
pub fn two_segments_and_square() -> PolytopeFamily {
    PolytopeFamily::new(vec![
        LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0]]).expect("segment"),
        LatticePolytope::from_i64_points(&[&[0, 0], &[0, 1]]).expect("segment"),
        LatticePolytope::unit_cube(2),
    ])
    .expect("three planar polytopes")
}

fn exceptions(opts: &VerifyOptions, details: &mut BTreeMap<String, serde_json::Value>) -> Result<Vec<CheckResult>> {
    let bound = if opts.dim == 2 { opts.box_bound.max(2) } else { opts.box_bound };
    let scan = exception_scan(opts.dim, bound)?;
    details.insert("scan".into(), serde_json::to_value(&scan).expect("scan serializes"));
    let mut checks = Vec::new();
    if opts.dim == 2 {
        let expected = unimodular_normal_form(&two_segments_and_square())?;
        checks.push(CheckResult::single("single-exceptional-class", scan.exceptional == [expected], || {
            format!("found {} exceptional classes", scan.exceptional.len())
        }));
    }
    checks.push(CheckResult::single("face-multiplicity", scan.face_violations.is_empty(), || {
        format!("{} simplex-contained families repeat a face", scan.face_violations.len())
    }));
    let mut binom = CheckResult::new("binomial-identity");
    for c in &scan.binomial_identity {
        binom.record(Verdict::check(c.holds, || format!("n = {}: {} vs {}", c.n, c.lhs, c.rhs)), String::new);
    }
    checks.push(binom.finish());
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn tally_records_failures_in_order() {
        let items = [1, 2, 3, 4];
        let checks = tally(
            &["even", "small"],
            &items,
            |x| x.to_string(),
            |&x| {
                if x == 4 {
                    return Err(Error::Precondition("four".into()));
                }
                Ok(vec![Verdict::when(x % 2 == 0, || Verdict::Pass), Verdict::check(x < 3, || "big".into())])
            },
        );
        assert_eq!((checks[0].evaluated, checks[0].failure_count), (2, 1));
        assert_eq!(checks[1].failures, vec!["3: big".to_owned(), "4: precondition violated: four".to_owned()]);
        assert!(!checks[1].passed);
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions { box_bound: 1, max_members: 2, ..VerifyOptions::default() };
        for suite in [Suite::Nonneg, Suite::InteriorBound, Suite::Genus, Suite::VolumeIdentities] {
            let r = run_suite(suite, &opts).unwrap();
            assert!(r.passed, "{suite}: {:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        }
    }

    #[test]
    fn random_families_are_reproducible() {
        let a = random_full_dimensional_families(7, 3, 3, 2, 5);
        assert_eq!(a, random_full_dimensional_families(7, 3, 3, 2, 5));
        assert!(a.iter().all(PolytopeFamily::all_full_dimensional));
    }
}
