use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::asr::ProbeBudget;
use crate::coarse::Pair;
use crate::spaces::{SetExpr, Space};
use crate::{floor_int, int, Error, ExtReal, Point, Rational, Result};

/// Largest number of point pairs compared on one window.
pub const PAIR_BUDGET: u64 = 1 << 26;

/// `g(r) = d(A \ B̄(x0,r), B \ B̄(x0,r))` at the integers `0..=R/2` of the
/// largest probe window `R`; `inf` once a truncated side is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceProfile {
    pub entries: Vec<(Rational, ExtReal)>,
}

impl DivergenceProfile {
    pub fn at(&self, r: &Rational) -> Option<ExtReal> {
        self.entries.iter().find(|(s, _)| s == r).map(|(_, g)| *g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DisjointVerdict {
    /// `g(r) >= slope * r` at every tail checkpoint.
    Divergent {
        profile: DivergenceProfile,
    },
    /// `g` is constant `k` over the tail checkpoints; `pairs` holds, for each
    /// truncation depth where the distance `k` is attained, one pair at that
    /// distance, giving alike candidate streams inside `A` and `B`.
    Bounded {
        profile: DivergenceProfile,
        k: Rational,
        pairs: Vec<Pair>,
    },
    Inconclusive {
        profile: DivergenceProfile,
    },
}

impl DisjointVerdict {
    pub fn profile(&self) -> &DivergenceProfile {
        match self {
            DisjointVerdict::Divergent { profile }
            | DisjointVerdict::Bounded { profile, .. }
            | DisjointVerdict::Inconclusive { profile } => profile,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, DisjointVerdict::Divergent { .. })
    }
}

/// [`disjoint_check_with`] at slope 1.
pub fn disjoint_check(space: &Space, a: &SetExpr, b: &SetExpr, probe: &ProbeBudget) -> Result<DisjointVerdict> {
    disjoint_check_with(space, a, b, probe, &int(1))
}

/// Profiles the distance between the parts of `A` and `B` outside growing
/// balls around the basepoint.
///
/// Both sets are enumerated on the largest probe window `R` and `g(r)` is
/// recorded for integer `r <= R/2`, so every entry has half the window as a
/// margin. A point survives truncation at `r` when its depth exceeds `r`.
/// The checkpoints are `⌊R_i/2⌋` for the tail radii `R_i` of the probe.
pub fn disjoint_check_with(
    space: &Space,
    a: &SetExpr,
    b: &SetExpr,
    probe: &ProbeBudget,
    slope: &Rational,
) -> Result<DisjointVerdict> {
    probe.validate()?;
    let big = probe.max_radius();
    let pa = a.window_points(space, &big)?;
    let pb = b.window_points(space, &big)?;
    if (pa.len() as u64) * (pb.len() as u64) > PAIR_BUDGET {
        return Err(Error::BudgetExhausted { nodes: PAIR_BUDGET });
    }
    let depth = |p: &Point| space.depth(p).finite().unwrap_or(big);

    // closest pair per truncation depth min(depth a, depth b)
    let mut best: BTreeMap<Rational, (ExtReal, Pair)> = BTreeMap::new();
    let db: Vec<Rational> = pb.iter().map(depth).collect();
    for x in &pa {
        let dx = depth(x);
        for (y, dy) in pb.iter().zip(&db) {
            let m = dx.min(*dy);
            let d = space.dist(x, y);
            match best.get(&m) {
                Some((e, _)) if *e <= d => {}
                _ => {
                    best.insert(m, (d, (x.clone(), y.clone())));
                }
            }
        }
    }

    let top = floor_int(&(big / int(2))).max(0);
    let mut entries = Vec::with_capacity(top as usize + 1);
    let mut running = ExtReal::Infinite;
    let mut levels = best.iter().rev().peekable();
    for r in (0..=top).rev() {
        let r = int(r);
        while let Some((m, (d, _))) = levels.peek() {
            if **m <= r {
                break;
            }
            running = running.min(*d);
            levels.next();
        }
        entries.push((r, running));
    }
    entries.reverse();
    let profile = DivergenceProfile { entries };

    let marks: Vec<usize> =
        probe.tail().iter().map(|radius| floor_int(&(*radius / int(2))).clamp(0, top) as usize).collect();
    let checkpoints: Vec<ExtReal> = marks.iter().map(|&r| profile.entries[r].1).collect();
    if checkpoints.iter().zip(&marks).all(|(g, &r)| !g.lt(&(*slope * int(r as i64)))) {
        return Ok(DisjointVerdict::Divergent { profile });
    }
    if let ExtReal::Finite(k) = checkpoints[0] {
        if checkpoints.iter().all(|g| *g == checkpoints[0]) {
            let pairs = best.values().filter(|(d, _)| *d == checkpoints[0]).map(|(_, p)| p.clone()).collect();
            return Ok(DisjointVerdict::Bounded { profile, k, pairs });
        }
    }
    Ok(DisjointVerdict::Inconclusive { profile })
}
