use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::asr::{alike, AsrModel, ScaleVerdict};
use crate::maps::greedy;
use crate::spaces::SetExpr;
use crate::{Error, ExtReal, Result};

use super::{projections, Entourage, Pair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaximalLimits {
    /// Largest explicit entourage scanned subset by subset.
    pub cap: usize,
    /// Scan subsets even when the model is metric.
    pub exhaustive: bool,
}

impl Default for MaximalLimits {
    fn default() -> Self {
        MaximalLimits { cap: 12, exhaustive: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MaximalVerdict {
    /// Every subset `F` has `π₁(F) λ π₂(F)`; on metric models the observed
    /// displacement bound is attached.
    Member {
        displacement: Option<ExtReal>,
    },
    /// A subset whose projections are not alike.
    NonMember {
        witness: BTreeSet<Pair>,
        verdict: ScaleVerdict,
    },
    Inconclusive {
        reason: &'static str,
    },
}

/// Membership of `e` in the largest coarse structure inducing the model's
/// resemblance.
///
/// Metric models use the displacement criterion: a uniformly bounded
/// displacement makes every subset alike, and an unbounded one yields a
/// refuting subset by the greedy subsequence construction. Otherwise (or
/// when forced) every subset of an explicit `e` is checked.
pub fn in_maximal(model: &AsrModel, e: &Entourage, limits: &MaximalLimits) -> Result<MaximalVerdict> {
    if let (Some((space, probe)), false) = (model.windowed(), limits.exhaustive) {
        if let Entourage::Displacement { bound, .. } = e {
            return Ok(MaximalVerdict::Member { displacement: Some(ExtReal::Finite(*bound)) });
        }
        probe.validate()?;
        let big = probe.max_radius();
        let mut pairs: Vec<(ExtReal, Pair)> = e
            .sample(space, &big)?
            .into_iter()
            .filter(|(_, y)| space.contains(y) && space.depth(y).le(&big))
            .map(|(x, y)| (space.depth(&x).max(space.depth(&y)), (x, y)))
            .collect();
        pairs.sort();
        let per_window: Vec<ExtReal> = probe
            .radii
            .iter()
            .map(|r| {
                pairs.iter().filter(|(d, _)| d.le(r)).map(|(_, (x, y))| space.dist(x, y)).max().unwrap_or(ExtReal::ZERO)
            })
            .collect();
        let tail = &per_window[per_window.len() - probe.tail().len()..];
        let top = *per_window.last().unwrap();
        if top.is_finite() && tail.windows(2).all(|w| w[0] == w[1]) {
            return Ok(MaximalVerdict::Member { displacement: Some(top) });
        }
        let xs: Vec<_> = pairs.iter().map(|(_, (x, _))| x.clone()).collect();
        let ys: Vec<_> = pairs.iter().map(|(_, (_, y))| y.clone()).collect();
        let ks = match greedy(space, &xs, &ys, &probe.max_scale()) {
            Ok(ks) => ks,
            Err(Error::BoundedDisplacement { .. }) => {
                return Ok(MaximalVerdict::Inconclusive {
                    reason: "displacement grows but stays within the probed scales",
                })
            }
            Err(err) => return Err(err),
        };
        let witness: BTreeSet<Pair> = ks.iter().map(|k| pairs[k - 1].1.clone()).collect();
        let (p1, p2) = projections(&witness);
        let verdict = alike(model, &SetExpr::Explicit(p1), &SetExpr::Explicit(p2))?;
        if verdict.is_refuted() {
            return Ok(MaximalVerdict::NonMember { witness, verdict });
        }
        return Ok(MaximalVerdict::Inconclusive { reason: "the greedy subsequence is not refuted on the probe" });
    }

    let pairs: Vec<Pair> = super::require_explicit(e)?.iter().cloned().collect();
    if pairs.len() > limits.cap {
        return Err(Error::CapExceeded { size: pairs.len(), cap: limits.cap });
    }
    let mut inconclusive = false;
    for mask in 0u32..1 << pairs.len() {
        let f: BTreeSet<Pair> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
        let (p1, p2) = projections(&f);
        let verdict = alike(model, &SetExpr::Explicit(p1), &SetExpr::Explicit(p2))?;
        match verdict {
            ScaleVerdict::RefutedUpTo { .. } => return Ok(MaximalVerdict::NonMember { witness: f, verdict }),
            ScaleVerdict::Inconclusive { .. } => inconclusive = true,
            ScaleVerdict::AlikeWithin(_) => {}
        }
    }
    if inconclusive {
        return Ok(MaximalVerdict::Inconclusive { reason: "some subset was inconclusive" });
    }
    let displacement = match model.windowed() {
        Some((space, _)) => Some(e.displacement_sup(space)?),
        None => None,
    };
    Ok(MaximalVerdict::Member { displacement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asr::ProbeBudget;
    use crate::{Point, Space};

    fn p(n: i64) -> Point {
        Point::scalar(n)
    }

    fn metric() -> AsrModel {
        AsrModel::metric(Space::integers(), ProbeBudget::default())
    }

    #[test]
    fn bounded_shift_is_a_member() {
        let e = Entourage::explicit((-200..=197).map(|n| (p(n), p(n + 3))));
        assert_eq!(
            in_maximal(&metric(), &e, &MaximalLimits::default()).unwrap(),
            MaximalVerdict::Member { displacement: Some(ExtReal::from_int(3)) }
        );
        // spot check every subset of an eight-pair sample
        let sample = Entourage::explicit((0..8).map(|n| (p(10 * n), p(10 * n + 3))));
        let forced = MaximalLimits { exhaustive: true, ..MaximalLimits::default() };
        assert!(matches!(in_maximal(&metric(), &sample, &forced).unwrap(), MaximalVerdict::Member { .. }));
    }

    #[test]
    fn doubling_is_not_a_member() {
        let e = Entourage::explicit((-100..=100).map(|n| (p(n), p(2 * n))));
        match in_maximal(&metric(), &e, &MaximalLimits::default()).unwrap() {
            MaximalVerdict::NonMember { witness, verdict } => {
                assert!(witness.len() >= 3);
                assert!(witness.iter().all(|(x, y)| y.as_scalar() == x.as_scalar().map(|n| 2 * n)));
                assert!(verdict.is_refuted());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_is_a_member_everywhere() {
        let delta = Entourage::diagonal((0..6).map(p));
        for m in [metric(), AsrModel::FiniteInfiniteOnN, AsrModel::RayOnR] {
            let forced = MaximalLimits { exhaustive: true, ..MaximalLimits::default() };
            assert!(matches!(in_maximal(&m, &delta, &forced).unwrap(), MaximalVerdict::Member { .. }));
        }
    }

    #[test]
    fn cap_applies() {
        let e = Entourage::explicit((0..13).map(|n| (p(n), p(n))));
        let forced = MaximalLimits { exhaustive: true, ..MaximalLimits::default() };
        assert_eq!(in_maximal(&metric(), &e, &forced), Err(Error::CapExceeded { size: 13, cap: 12 }));
    }
}
