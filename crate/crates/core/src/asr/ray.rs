//! The resemblance on subsets of the real line where every set bounded
//! below is alike to every other, and the unbounded-below sets form the
//! only other nonempty class.

use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::error::unsupported;
use crate::spaces::{Bound, Interval, SetExpr};
use crate::{int, Point, Rational, Result};

use super::{Reason, ScaleVerdict};

/// A subset of the reals as a union of nonempty intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaySummary {
    pub pieces: Vec<Interval>,
}

impl RaySummary {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `None` when unbounded below; the empty set has no infimum either, so
    /// callers check emptiness first.
    pub fn infimum(&self) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for i in &self.pieces {
            let lo = i.lo.value()?;
            best = Some(best.map_or(lo, |b| b.min(lo)));
        }
        best
    }

    /// Whether the closures meet.
    pub fn closures_meet(&self, other: &RaySummary) -> bool {
        self.pieces.iter().any(|x| {
            other.pieces.iter().any(|y| {
                let lo = match (x.lo.value(), y.lo.value()) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (a, b) => a.or(b),
                };
                let hi = match (x.hi.value(), y.hi.value()) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                match (lo, hi) {
                    (Some(a), Some(b)) => a <= b,
                    _ => true,
                }
            })
        })
    }

    pub fn intersect(&self, other: &RaySummary) -> RaySummary {
        let mut pieces = Vec::new();
        for x in &self.pieces {
            for y in &other.pieces {
                let i = Interval::new(tighter(&x.lo, &y.lo, true), tighter(&x.hi, &y.hi, false));
                if !i.is_empty() {
                    pieces.push(i);
                }
            }
        }
        RaySummary { pieces }
    }

    /// Some member of the set.
    pub fn sample(&self) -> Option<Rational> {
        self.pieces.first().map(sample_of)
    }
}

fn tighter(a: &Bound, b: &Bound, lower: bool) -> Bound {
    match (a, b) {
        (Bound::Unbounded, x) | (x, Bound::Unbounded) => x.clone(),
        _ => {
            let (va, vb) = (a.value().unwrap(), b.value().unwrap());
            if va == vb {
                if matches!(a, Bound::Open(_)) {
                    a.clone()
                } else {
                    b.clone()
                }
            } else if (va > vb) == lower {
                a.clone()
            } else {
                b.clone()
            }
        }
    }
}

fn sample_of(i: &Interval) -> Rational {
    match (&i.lo, &i.hi) {
        (Bound::Closed(a), _) => *a,
        (_, Bound::Closed(b)) => *b,
        (Bound::Open(a), Bound::Open(b)) => (*a + *b) / int(2),
        (Bound::Open(a), Bound::Unbounded) => *a + Rational::one(),
        (Bound::Unbounded, Bound::Open(b)) => *b - Rational::one(),
        (Bound::Unbounded, Bound::Unbounded) => int(0),
    }
}

/// Reads a set expression as a subset of the reals. Supported: the empty
/// set, the whole line, interval unions, explicit one-dimensional points,
/// and unions and intersections of those.
pub fn summarize(e: &SetExpr) -> Result<RaySummary> {
    Ok(match e {
        SetExpr::Empty => RaySummary { pieces: Vec::new() },
        SetExpr::Whole => RaySummary { pieces: alloc::vec![Interval::new(Bound::Unbounded, Bound::Unbounded)] },
        SetExpr::Intervals(parts) => RaySummary { pieces: parts.iter().filter(|i| !i.is_empty()).cloned().collect() },
        SetExpr::Explicit(pts) => {
            let mut pieces = Vec::new();
            for p in pts {
                let n = p.as_scalar().ok_or_else(|| unsupported("ray model points are one-dimensional"))?;
                pieces.push(Interval::closed(int(n), int(n)));
            }
            RaySummary { pieces }
        }
        SetExpr::Union(parts) => {
            let mut pieces = Vec::new();
            for s in parts {
                pieces.extend(summarize(s)?.pieces);
            }
            RaySummary { pieces }
        }
        SetExpr::Intersection(parts) => {
            let mut acc = summarize(&SetExpr::Whole)?;
            for s in parts {
                acc = acc.intersect(&summarize(s)?);
            }
            acc
        }
        _ => return Err(unsupported("ray model works with interval unions and explicit reals")),
    })
}

fn example(s: &RaySummary) -> Option<Point> {
    s.sample().map(|v| Point::scalar(v.floor().to_integer()))
}

/// `A λ B` iff both empty, both unbounded below, or both nonempty and
/// bounded below. The returned scale `|inf A - inf B| + 1` witnesses the
/// containments `A ⊆ ⋃_{b∈B} (b-r, inf)` and vice versa.
pub fn alike(a: &SetExpr, b: &SetExpr) -> Result<ScaleVerdict> {
    let (x, y) = (summarize(a)?, summarize(b)?);
    Ok(decide(&x, &y))
}

pub(crate) fn decide(x: &RaySummary, y: &RaySummary) -> ScaleVerdict {
    match (x.is_empty(), y.is_empty()) {
        (true, true) => return ScaleVerdict::AlikeWithin(int(0)),
        (true, false) => return ScaleVerdict::symbolic(Reason::EmptyVersusNonempty, example(y)),
        (false, true) => return ScaleVerdict::symbolic(Reason::EmptyVersusNonempty, example(x)),
        _ => {}
    }
    match (x.infimum(), y.infimum()) {
        (None, None) => ScaleVerdict::AlikeWithin(int(1)),
        (Some(p), Some(q)) => ScaleVerdict::AlikeWithin((p - q).abs() + Rational::one()),
        (None, Some(_)) => ScaleVerdict::symbolic(Reason::UnboundedVersusBounded, example(x)),
        (Some(_), None) => ScaleVerdict::symbolic(Reason::UnboundedVersusBounded, example(y)),
    }
}

pub fn bounded(a: &SetExpr) -> Result<ScaleVerdict> {
    let x = summarize(a)?;
    if x.is_empty() {
        return Ok(ScaleVerdict::AlikeWithin(int(0)));
    }
    Ok(match x.infimum() {
        Some(_) => ScaleVerdict::AlikeWithin(int(1)),
        None => ScaleVerdict::symbolic(Reason::UnboundedVersusBounded, example(&x)),
    })
}

/// Given `A λ B` and a nonempty `A1 ⊆ A`, a nonempty `B1 ⊆ B` with `A1 λ B1`.
pub fn partner(a: &SetExpr, b: &SetExpr, a1: &SetExpr) -> Result<SetExpr> {
    let (x, y, x1) = (summarize(a)?, summarize(b)?, summarize(a1)?);
    if !decide(&x, &y).is_alike() || x1.is_empty() {
        return Err(crate::Error::PreconditionFailed {
            reason: alloc::string::String::from("partner needs alike sets and a nonempty subset"),
            witness: None,
        });
    }
    if x1.infimum().is_none() || y.infimum().is_some() {
        return Ok(b.clone());
    }
    // B is unbounded below but A1 is not: keep a tail of B bounded below
    let start = y.sample().expect("nonempty");
    let cut = SetExpr::intervals(alloc::vec![Interval::new(Bound::Closed(start), Bound::Unbounded)]);
    Ok(SetExpr::intersect(b.clone(), cut))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn below(q: i64) -> SetExpr {
        SetExpr::intervals(alloc::vec![Interval::new(Bound::Unbounded, Bound::Open(int(q)))])
    }

    #[test]
    fn three_classes() {
        assert!(alike(&below(0), &below(5)).unwrap().is_alike());
        let d = SetExpr::intervals(alloc::vec![Interval::new(Bound::Open(int(3)), Bound::Unbounded)]);
        assert_eq!(alike(&d, &SetExpr::scalars([-10])).unwrap(), ScaleVerdict::AlikeWithin(int(14)));
        assert!(alike(&below(0), &d).unwrap().is_refuted());
        assert!(alike(&SetExpr::Empty, &d).unwrap().is_refuted());
        assert!(alike(&SetExpr::Empty, &SetExpr::Intervals(alloc::vec![Interval::open(int(1), int(1))]))
            .unwrap()
            .is_alike());
        assert!(bounded(&d).unwrap().is_alike());
        assert!(bounded(&below(2)).unwrap().is_refuted());
    }

    #[test]
    fn partner_is_bounded_below_when_needed() {
        let a = below(0);
        let b = SetExpr::union(alloc::vec![below(-5), SetExpr::scalars([7])]);
        let a1 = SetExpr::intervals(alloc::vec![Interval::closed(int(-3), int(-1))]);
        let b1 = partner(&a, &b, &a1).unwrap();
        let s = summarize(&b1).unwrap();
        assert!(!s.is_empty());
        assert_eq!(s.infimum(), Some(int(-6)));
        assert!(decide(&summarize(&a1).unwrap(), &s).is_alike());
    }
}
