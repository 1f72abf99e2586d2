use alloc::vec::Vec;

use crate::num::max_integer_within;
use crate::{int, ExtReal, Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeMetric {
    L1,
    LInf,
}

/// `Z^d` with the l1 or l-infinity metric, basepoint at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub dim: usize,
    pub metric: LatticeMetric,
}

impl Lattice {
    pub fn new(dim: usize, metric: LatticeMetric) -> Self {
        Lattice { dim, metric }
    }

    pub fn norm(&self, v: &[i64]) -> i64 {
        norm(self.metric, v)
    }

    pub fn dist(&self, p: &Point, q: &Point) -> ExtReal {
        let gaps = p.coords().iter().zip(q.coords()).map(|(a, b)| (a - b).abs());
        let n = match self.metric {
            LatticeMetric::L1 => gaps.sum(),
            LatticeMetric::LInf => gaps.max().unwrap_or(0),
        };
        ExtReal::Finite(int(n))
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim
    }

    /// All integer vectors of norm at most `bound`, ordered by (norm, vector).
    pub fn offsets(&self, bound: i64) -> Vec<(Point, i64)> {
        let mut out: Vec<(Point, i64)> = self
            .box_points(bound)
            .into_iter()
            .filter_map(|p| {
                let n = self.norm(p.coords());
                (n <= bound).then_some((p, n))
            })
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn enumerate(&self, radius: &Rational) -> Vec<Point> {
        let Some(b) = max_integer_within(radius, true) else {
            return Vec::new();
        };
        let mut pts: Vec<Point> = self.box_points(b).into_iter().filter(|p| self.norm(p.coords()) <= b).collect();
        pts.sort();
        pts
    }

    fn box_points(&self, b: i64) -> Vec<Point> {
        let mut out = Vec::new();
        let mut cur = alloc::vec![0i64; self.dim];
        fill(self.metric, &mut cur, 0, b, &mut out);
        out
    }
}

fn fill(metric: LatticeMetric, cur: &mut Vec<i64>, axis: usize, budget: i64, out: &mut Vec<Point>) {
    if axis == cur.len() {
        out.push(Point::new(cur));
        return;
    }
    for c in -budget..=budget {
        cur[axis] = c;
        let rest = match metric {
            LatticeMetric::L1 => budget - c.abs(),
            LatticeMetric::LInf => budget,
        };
        fill(metric, cur, axis + 1, rest, out);
    }
    cur[axis] = 0;
}

pub(crate) fn norm(metric: LatticeMetric, v: &[i64]) -> i64 {
    match metric {
        LatticeMetric::L1 => v.iter().map(|c| c.abs()).sum(),
        LatticeMetric::LInf => v.iter().map(|c| c.abs()).max().unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_sizes_match_closed_forms() {
        let l1 = Lattice::new(2, LatticeMetric::L1);
        let linf = Lattice::new(2, LatticeMetric::LInf);
        for b in 0..6i64 {
            assert_eq!(l1.enumerate(&int(b)).len() as i64, 2 * b * b + 2 * b + 1);
            assert_eq!(linf.enumerate(&int(b)).len() as i64, (2 * b + 1) * (2 * b + 1));
        }
        assert!(l1.enumerate(&int(-1)).is_empty());
    }

    #[test]
    fn offsets_sorted_by_norm() {
        let l1 = Lattice::new(2, LatticeMetric::L1);
        let offs = l1.offsets(2);
        assert_eq!(offs.len(), 13);
        assert!(offs.windows(2).all(|w| w[0].1 <= w[1].1));
        assert_eq!(offs[0], (Point::from([0, 0]), 0));
    }
}
