//! Lattice point scans over `{x : A x ≤ b}` inside an integer box.
//!
//! All coordinates but the last are scanned; the last one is an interval
//! read off from the inequalities, so counting costs one pass over the box of
//! the first `d - 1` coordinates.

use std::ops::ControlFlow;

use malachite::base::num::basic::traits::{One, Zero};
use malachite::Integer;

use crate::lattice::{ceil_div, floor_div};

pub(crate) struct Region<'a> {
    pub normals: &'a [Vec<Integer>],
    pub rhs: Vec<Integer>,
    pub lo: Vec<Integer>,
    pub hi: Vec<Integer>,
}

impl Region<'_> {
    /// Calls `f(prefix, first, last)` for every non-empty run of points sharing
    /// the first `d - 1` coordinates. Requires `d ≥ 1`.
    pub fn for_each_run(&self, mut f: impl FnMut(&[Integer], &Integer, &Integer) -> ControlFlow<()>) {
        let d = self.lo.len();
        assert!(d >= 1, "scan needs at least one coordinate");
        // Constraints whose coefficients vanish past a level can be checked
        // as soon as that level is fixed.
        let last_level: Vec<usize> =
            self.normals.iter().map(|a| a.iter().rposition(|x| *x != Integer::ZERO).unwrap_or(0)).collect();
        let mut prefix = Vec::with_capacity(d);
        let _ = self.descend(0, &self.rhs, &last_level, &mut prefix, &mut f);
    }

    fn descend(
        &self,
        level: usize,
        residual: &[Integer],
        last_level: &[usize],
        prefix: &mut Vec<Integer>,
        f: &mut impl FnMut(&[Integer], &Integer, &Integer) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let d = self.lo.len();
        if level + 1 == d {
            let mut first = self.lo[level].clone();
            let mut last = self.hi[level].clone();
            for (a, r) in self.normals.iter().zip(residual) {
                let c = &a[level];
                if *c == Integer::ZERO {
                    if *r < Integer::ZERO {
                        return ControlFlow::Continue(());
                    }
                } else if *c > Integer::ZERO {
                    let ub = floor_div(r, c);
                    if ub < last {
                        last = ub;
                    }
                } else {
                    let lb = ceil_div(r, c);
                    if lb > first {
                        first = lb;
                    }
                }
            }
            if first <= last {
                return f(prefix, &first, &last);
            }
            return ControlFlow::Continue(());
        }
        let mut x = self.lo[level].clone();
        'outer: while x <= self.hi[level] {
            let mut next = Vec::with_capacity(residual.len());
            for ((a, r), &ll) in self.normals.iter().zip(residual).zip(last_level) {
                let c = &a[level];
                let value = if *c == Integer::ZERO { r.clone() } else { r - c * &x };
                if ll <= level && value < Integer::ZERO {
                    x += Integer::ONE;
                    continue 'outer;
                }
                next.push(value);
            }
            prefix.push(x.clone());
            self.descend(level + 1, &next, last_level, prefix, f)?;
            prefix.pop();
            x += Integer::ONE;
        }
        ControlFlow::Continue(())
    }

    pub fn count(&self) -> u64 {
        let mut total = 0u64;
        self.for_each_run(|_, first, last| {
            let len = u64::try_from(&(last - first)).expect("run length fits in u64");
            total += len + 1;
            ControlFlow::Continue(())
        });
        total
    }

    pub fn any(&self) -> bool {
        let mut found = false;
        self.for_each_run(|_, _, _| {
            found = true;
            ControlFlow::Break(())
        });
        found
    }

    pub fn points(&self) -> Vec<Vec<Integer>> {
        let mut out = Vec::new();
        self.for_each_run(|prefix, first, last| {
            let mut x = first.clone();
            while x <= *last {
                let mut p = prefix.to_vec();
                p.push(x.clone());
                out.push(p);
                x += Integer::ONE;
            }
            ControlFlow::Continue(())
        });
        out
    }
}
