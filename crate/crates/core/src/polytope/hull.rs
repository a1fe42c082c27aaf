//! Vertex and facet extraction for full-dimensional integer point sets.
//!
//! Input points are distinct and affinely span `R^d`. Dimensions up to two
//! use dedicated routines; higher dimensions grow a set of certified
//! vertices until its brute-force facet list contains every input point.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use malachite::base::num::basic::traits::Zero;
use malachite::Integer;

use crate::lattice::{determinant_of_rows, dot, gcd_all, kernel_basis, IntMatrix, IntVector};

/// `normal · x ≤ offset`, with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct RawFacet {
    pub normal: Vec<Integer>,
    pub offset: Integer,
}

impl RawFacet {
    fn normalized(normal: Vec<Integer>, offset: Integer) -> Self {
        let g = gcd_all(&normal);
        debug_assert!(g != Integer::ZERO);
        if g == 1 {
            return Self { normal, offset };
        }
        Self { normal: normal.iter().map(|x| x / &g).collect(), offset: offset / &g }
    }
}

/// Returns the indices of the extreme points (ascending) and the facets.
pub(crate) fn convex_hull(d: usize, pts: &[Vec<Integer>]) -> (Vec<usize>, Vec<RawFacet>) {
    let (mut vertices, mut facets) = match d {
        0 => (vec![0], Vec::new()),
        1 => hull_1d(pts),
        2 => hull_2d(pts),
        _ => hull_general(d, pts),
    };
    vertices.sort_unstable();
    facets.sort();
    (vertices, facets)
}

fn hull_1d(pts: &[Vec<Integer>]) -> (Vec<usize>, Vec<RawFacet>) {
    let lo = (0..pts.len()).min_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).expect("non-empty");
    let hi = (0..pts.len()).max_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).expect("non-empty");
    let facets = vec![
        RawFacet { normal: vec![Integer::from(-1)], offset: -&pts[lo][0] },
        RawFacet { normal: vec![Integer::from(1)], offset: pts[hi][0].clone() },
    ];
    (vec![lo, hi], facets)
}

fn cross(o: &[Integer], a: &[Integer], b: &[Integer]) -> Integer {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Andrew's monotone chain; collinear points are dropped.
fn hull_2d(pts: &[Vec<Integer>]) -> (Vec<usize>, Vec<RawFacet>) {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    let mut chain: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in 0..2 {
        let start = chain.len();
        let seq: Box<dyn Iterator<Item = &usize>> =
            if pass == 0 { Box::new(order.iter()) } else { Box::new(order.iter().rev()) };
        for &i in seq {
            while chain.len() >= start + 2 {
                let k = chain.len();
                if cross(&pts[chain[k - 2]], &pts[chain[k - 1]], &pts[i]) <= Integer::ZERO {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(i);
        }
        chain.pop();
    }
    // `chain` is now the counter-clockwise vertex cycle.
    let k = chain.len();
    let facets = (0..k)
        .map(|i| {
            let p = &pts[chain[i]];
            let q = &pts[chain[(i + 1) % k]];
            let normal = vec![&q[1] - &p[1], &p[0] - &q[0]];
            let offset = dot(&normal, p);
            RawFacet::normalized(normal, offset)
        })
        .collect();
    (chain, facets)
}

fn lex_cmp(pts: &[Vec<Integer>], a: usize, b: usize) -> Ordering {
    pts[a].cmp(&pts[b])
}

/// Index maximizing `w · x`, ties broken towards the lexicographically largest
/// point; such a point is always a vertex of the hull.
fn extreme_index(pts: &[Vec<Integer>], w: &[Integer]) -> (usize, Integer) {
    let mut best = 0;
    let mut best_val = dot(w, &pts[0]);
    for i in 1..pts.len() {
        let val = dot(w, &pts[i]);
        match val.cmp(&best_val) {
            Ordering::Greater => {
                best = i;
                best_val = val;
            }
            Ordering::Equal if lex_cmp(pts, i, best) == Ordering::Greater => best = i,
            _ => {}
        }
    }
    (best, best_val)
}

fn seed_simplex(d: usize, pts: &[Vec<Integer>]) -> Vec<usize> {
    let v0 = (0..pts.len()).min_by(|&a, &b| lex_cmp(pts, a, b)).expect("non-empty");
    let mut chosen = vec![v0];
    for _ in 0..d {
        let diffs: Vec<IntVector> = chosen[1..]
            .iter()
            .map(|&c| IntVector::new(pts[c].iter().zip(&pts[v0]).map(|(a, b)| a - b).collect()))
            .collect();
        let kernel = if diffs.is_empty() {
            (0..d).map(|i| IntVector::unit(d, i)).collect()
        } else {
            kernel_basis(&IntMatrix::from_rows(&diffs, d))
        };
        let base_of = |w: &[Integer]| dot(w, &pts[v0]);
        let mut next = None;
        for w in &kernel {
            let w = w.entries();
            let base = base_of(w);
            let (hi, hi_val) = extreme_index(pts, w);
            if hi_val > base {
                next = Some(hi);
                break;
            }
            let neg: Vec<Integer> = w.iter().map(|x| -x).collect();
            let (lo, lo_val) = extreme_index(pts, &neg);
            if lo_val > -base {
                next = Some(lo);
                break;
            }
        }
        chosen.push(next.expect("input points must be full-dimensional"));
    }
    chosen
}

fn hull_general(d: usize, pts: &[Vec<Integer>]) -> (Vec<usize>, Vec<RawFacet>) {
    let mut vertices = seed_simplex(d, pts);
    loop {
        let facets = facets_of_vertices(d, pts, &vertices);
        let mut fresh = BTreeSet::new();
        for f in &facets {
            let (i, val) = extreme_index(pts, &f.normal);
            if val > f.offset {
                fresh.insert(i);
            }
        }
        if fresh.is_empty() {
            return (vertices, facets);
        }
        vertices.extend(fresh);
    }
}

pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Normal of the hyperplane through `d` points of `R^d` (zero if degenerate).
fn hyperplane_normal(d: usize, points: &[&Vec<Integer>]) -> Vec<Integer> {
    let rows: Vec<Vec<Integer>> =
        points[1..].iter().map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect()).collect();
    (0..d)
        .map(|skip| {
            let minor: Vec<Vec<Integer>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = determinant_of_rows(minor);
            if skip % 2 == 1 {
                -det
            } else {
                det
            }
        })
        .collect()
}

/// Brute-force facets of `conv(pts[vertices])`: every `d`-subset spanning a
/// supporting hyperplane, deduplicated by incidence.
fn facets_of_vertices(d: usize, pts: &[Vec<Integer>], vertices: &[usize]) -> Vec<RawFacet> {
    let k = vertices.len();
    let mut found: Vec<(RawFacet, Vec<bool>)> = Vec::new();
    for_each_combination(k, d, |combo| {
        if found.iter().any(|(_, inc)| combo.iter().all(|&c| inc[c])) {
            return;
        }
        let chosen: Vec<&Vec<Integer>> = combo.iter().map(|&c| &pts[vertices[c]]).collect();
        let normal = hyperplane_normal(d, &chosen);
        if normal.iter().all(|x| *x == Integer::ZERO) {
            return;
        }
        let offset = dot(&normal, chosen[0]);
        let mut above = false;
        let mut below = false;
        let slack: Vec<Integer> = vertices.iter().map(|&v| dot(&normal, &pts[v]) - &offset).collect();
        for s in &slack {
            match s.cmp(&Integer::ZERO) {
                Ordering::Greater => above = true,
                Ordering::Less => below = true,
                Ordering::Equal => {}
            }
            if above && below {
                return;
            }
        }
        let facet = if above {
            RawFacet::normalized(normal.iter().map(|x| -x).collect(), -offset)
        } else {
            RawFacet::normalized(normal, offset)
        };
        let incidence = slack.iter().map(|s| *s == Integer::ZERO).collect();
        found.push((facet, incidence));
    });
    found.into_iter().map(|(f, _)| f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Integer>> {
        raw.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect()
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        for_each_combination(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn square_with_midpoints() {
        let p = pts(&[&[0, 0], &[1, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1], &[0, 1]]);
        let (v, f) = convex_hull(2, &p);
        assert_eq!(v, vec![0, 2, 3, 4]);
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn cube_in_three_dimensions() {
        let mut raw = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    raw.push(vec![Integer::from(x), Integer::from(y), Integer::from(z)]);
                }
            }
        }
        let (v, f) = convex_hull(3, &raw);
        assert_eq!(v.len(), 8);
        assert_eq!(f.len(), 6);
        let (v2, f2) = hull_general(3, &raw);
        assert_eq!(v2.len(), 8);
        assert_eq!(f2.len(), 6);
    }

    #[test]
    fn general_routine_agrees_in_the_plane() {
        let p = pts(&[&[0, 0], &[3, 1], &[1, 3], &[1, 1], &[2, 2], &[0, 1], &[3, 0]]);
        let (mut a, mut fa) = hull_2d(&p);
        let (mut b, mut fb) = hull_general(2, &p);
        a.sort();
        b.sort();
        fa.sort();
        fb.sort();
        assert_eq!(a, b);
        assert_eq!(fa, fb);
    }
}
