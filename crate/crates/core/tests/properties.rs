use malachite::base::num::basic::traits::{One, Zero};
use mixed_degree::ehrhart::{ehrhart_polynomial, normalized_volume};
use mixed_degree::lattice::{IntMatrix, IntVector};
use mixed_degree::minkowski::{cayley, minkowski_sum, project_family, subfamily_sum, PolytopeFamily, SubsetIndex};
use mixed_degree::mixed::{mixed_invariants, mixed_volume};
use mixed_degree::polytope::LatticePolytope;
use mixed_degree::Integer;
use proptest::prelude::*;

fn polytope(points: &[Vec<i64>]) -> LatticePolytope {
    let pts: Vec<IntVector> = points.iter().map(|p| IntVector::from_i64s(p)).collect();
    LatticePolytope::from_points(&pts).unwrap()
}

fn points(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-1i64..=2, n), 1..=max)
}

fn poly_strategy(n: usize) -> impl Strategy<Value = LatticePolytope> {
    points(n, 4).prop_map(|p| polytope(&p))
}

fn vector(n: usize) -> impl Strategy<Value = IntVector> {
    prop::collection::vec(-5i64..=5, n).prop_map(|v| IntVector::from_i64s(&v))
}

/// Products of elementary shears and coordinate sign flips.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..6).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, k, flip) in ops {
            let mut e = IntMatrix::identity(n);
            if i != j {
                e.set(i, j, Integer::from(k));
            } else if flip {
                e.set(i, i, Integer::from(-1));
            }
            u = e.mul(&u);
        }
        u
    })
}

fn family(members: Vec<LatticePolytope>) -> PolytopeFamily {
    PolytopeFamily::new(members).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn hull_keeps_inputs(pts in points(3, 6)) {
        let p = polytope(&pts);
        for q in &pts {
            prop_assert!(p.contains(&IntVector::from_i64s(q)));
        }
        for v in p.vertices() {
            prop_assert!(pts.iter().any(|q| IntVector::from_i64s(q) == *v));
        }
    }

    #[test]
    fn invariants_are_unimodular_invariant(p in poly_strategy(2), q in poly_strategy(2), u in unimodular(2), t in vector(2)) {
        let f = family(vec![p.clone(), q.clone()]);
        let g = family(vec![p.transform(&u, &t, 1).unwrap(), q.transform(&u, &IntVector::zeros(2), 1).unwrap()]);
        let (a, b) = (mixed_invariants(&f).unwrap(), mixed_invariants(&g).unwrap());
        prop_assert_eq!(a.mv, b.mv);
        prop_assert_eq!((a.mcd, a.md, a.proper), (b.mcd, b.md, b.proper));
        prop_assert_eq!(ehrhart_polynomial(&p).unwrap().h_star, ehrhart_polynomial(&p.transform(&u, &t, 1).unwrap()).unwrap().h_star);
    }

    #[test]
    fn invariants_ignore_order_and_translation(ps in prop::collection::vec(poly_strategy(3), 3), ts in prop::collection::vec(vector(3), 3)) {
        let f = family(ps.clone());
        let g = family(vec![ps[2].translate(&ts[0]), ps[0].translate(&ts[1]), ps[1].translate(&ts[2])]);
        let (a, b) = (mixed_invariants(&f).unwrap(), mixed_invariants(&g).unwrap());
        prop_assert_eq!(a.mv, b.mv);
        prop_assert_eq!((a.mcd, a.md, a.dim_total), (b.mcd, b.md, b.dim_total));
        prop_assert!(a.md >= 0);
    }

    #[test]
    fn mixed_volume_is_symmetric_and_multilinear(p in poly_strategy(2), q in poly_strategy(2), r in poly_strategy(2)) {
        let mv = |a: &LatticePolytope, b: &LatticePolytope| mixed_volume(&family(vec![a.clone(), b.clone()])).unwrap();
        prop_assert_eq!(mv(&p, &q), mv(&q, &p));
        prop_assert_eq!(mv(&p, &minkowski_sum(&q, &r)), mv(&p, &q) + mv(&p, &r));
        let full = if p.is_full_dimensional() { normalized_volume(&p) } else { Integer::ZERO };
        prop_assert_eq!(mv(&p, &p), full);
    }

    #[test]
    fn mixed_volume_is_monotone(p in points(2, 4), extra in prop::collection::vec(-1i64..=2, 2), q in poly_strategy(2)) {
        let small = polytope(&p);
        let mut bigger = p.clone();
        bigger.push(extra);
        let big = polytope(&bigger);
        let mv = |a: &LatticePolytope| mixed_volume(&family(vec![a.clone(), q.clone()])).unwrap();
        prop_assert!(mv(&small) <= mv(&big));
        prop_assert!(mv(&small) >= Integer::ZERO);
    }

    #[test]
    fn cayley_dimension(n in 1usize..=3, seeds in prop::collection::vec(points(3, 3), 1..=3)) {
        let members: Vec<LatticePolytope> = seeds
            .iter()
            .map(|pts| polytope(&pts.iter().map(|v| v[..n].to_vec()).collect::<Vec<_>>()))
            .collect();
        let f = family(members);
        let c = cayley(&f);
        prop_assert_eq!(c.ambient_dim(), n + f.len());
        prop_assert_eq!(c.dimension(), f.total_sum().dimension() + f.len() - 1);
    }

    #[test]
    fn minkowski_sums_compose(ps in prop::collection::vec(poly_strategy(2), 3)) {
        let f = family(ps.clone());
        let i = SubsetIndex::from_indices([0]);
        let j = SubsetIndex::from_indices([1, 2]);
        prop_assert_eq!(subfamily_sum(&f, i.union(j)), minkowski_sum(&subfamily_sum(&f, i), &subfamily_sum(&f, j)));
        let bound: usize = ps.iter().map(LatticePolytope::num_vertices).product();
        prop_assert!(f.total_sum().num_vertices() <= bound);
    }

    #[test]
    fn projection_commutes_with_sums(ps in prop::collection::vec(poly_strategy(3), 3)) {
        let f = family(ps);
        let (map, images) = project_family(&f, SubsetIndex::singleton(0)).unwrap();
        let rest = SubsetIndex::from_indices([1, 2]);
        let projected_sum = map.apply_polytope(&subfamily_sum(&f, rest));
        let sum_of_images = minkowski_sum(&images[0], &images[1]);
        prop_assert_eq!(projected_sum.translation_normal_form(), sum_of_images.translation_normal_form());
        prop_assert!(map.annihilates(&f.member(0).vertices().iter().map(|v| v - &f.member(0).vertices()[0]).collect::<Vec<_>>()));
    }

    #[test]
    fn ehrhart_constant_term_is_one(p in poly_strategy(3)) {
        let e = ehrhart_polynomial(&p).unwrap();
        prop_assert_eq!(&e.ehr_coeffs[0], &mixed_degree::Rational::ONE);
        prop_assert_eq!(e.h_star.iter().sum::<Integer>(), e.volume);
    }
}
