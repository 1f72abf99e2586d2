use alloc::vec::Vec;

use crate::spaces::{dist_to_points, Space};
use crate::{int, Error, ExtReal, Point, Rational, Result};

/// Indices (1-based, into the given streams) of subsequences `x_k`, `y_k`
/// whose displacement outruns every fixed scale.
///
/// The streams are first reindexed so that the `n`-th kept pair has
/// `d(x, y) > n`. On the reindexed streams `k_1 = 1` and `k_{i+1}` is the
/// least index such that no later pair meets the open `k_i`-ball around
/// `{x_{k_i}, y_{k_i}}`, checked up to the stream horizon. Fails with
/// `BoundedDisplacement` when no pair is displaced by more than `cap`, and
/// with `BudgetExhausted` when the horizon is too short for `count` indices.
pub fn lemma_witness(space: &Space, xs: &[Point], ys: &[Point], count: usize, cap: &Rational) -> Result<Vec<usize>> {
    let ks = greedy(space, xs, ys, cap)?;
    if ks.len() < count {
        return Err(Error::BudgetExhausted { nodes: xs.len().min(ys.len()) as u64 });
    }
    Ok(ks[..count].to_vec())
}

/// As many greedy indices as the horizon allows.
pub(crate) fn greedy(space: &Space, xs: &[Point], ys: &[Point], cap: &Rational) -> Result<Vec<usize>> {
    let horizon = xs.len().min(ys.len());
    let displacement: Vec<ExtReal> = (0..horizon).map(|i| space.dist(&xs[i], &ys[i])).collect();
    let max_observed = displacement.iter().copied().max().unwrap_or(ExtReal::ZERO);
    if max_observed.le(cap) {
        return Err(Error::BoundedDisplacement { max_observed });
    }

    // kept[n-1] is the original (0-based) position of the n-th pair with d > n
    let mut kept: Vec<usize> = Vec::new();
    for (i, d) in displacement.iter().enumerate() {
        if d.gt(&int(kept.len() as i64 + 1)) {
            kept.push(i);
        }
    }
    let m = kept.len();
    let mut ks: Vec<usize> = Vec::new();
    if m == 0 {
        return Ok(ks);
    }
    let mut k = 1usize;
    loop {
        ks.push(k);
        let centre = [xs[kept[k - 1]].clone(), ys[kept[k - 1]].clone()];
        let radius = int(k as i64);
        let mut last_hit = 0usize;
        for n in 1..=m {
            let j = kept[n - 1];
            let hit = [&xs[j], &ys[j]].iter().any(|p| dist_to_points(space, p, &centre).lt(&radius));
            if hit {
                last_hit = n;
            }
        }
        let next = last_hit + 1;
        if next > m {
            break;
        }
        k = next;
    }
    Ok(ks.iter().map(|k| kept[k - 1] + 1).collect())
}

/// Whether the subsequences at `indices` fail mutual `r`-containment: some
/// chosen `x` has no chosen `y` within distance `< r`, or the reverse.
pub fn defeats_scale(space: &Space, xs: &[Point], ys: &[Point], indices: &[usize], r: &Rational) -> bool {
    let a: Vec<Point> = indices.iter().map(|i| xs[i - 1].clone()).collect();
    let b: Vec<Point> = indices.iter().map(|i| ys[i - 1].clone()).collect();
    a.iter().any(|p| !dist_to_points(space, p, &b).lt(r)) || b.iter().any(|q| !dist_to_points(space, q, &a).lt(r))
}
