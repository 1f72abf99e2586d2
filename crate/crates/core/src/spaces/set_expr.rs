use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::unsupported;
use crate::maps::PointMap;
use crate::{Error, Point, Rational, Result, Space};

/// One end of an interval of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Unbounded,
    Closed(Rational),
    Open(Rational),
}

impl Bound {
    pub fn value(&self) -> Option<Rational> {
        match self {
            Bound::Unbounded => None,
            Bound::Closed(q) | Bound::Open(q) => Some(*q),
        }
    }
}

/// An interval of the real line with rational or infinite ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        Interval { lo, hi }
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        Interval::new(Bound::Open(a), Bound::Open(b))
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        Interval::new(Bound::Closed(a), Bound::Closed(b))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let lo_ok = match &self.lo {
            Bound::Unbounded => true,
            Bound::Closed(a) => a <= x,
            Bound::Open(a) => a < x,
        };
        let hi_ok = match &self.hi {
            Bound::Unbounded => true,
            Bound::Closed(b) => x <= b,
            Bound::Open(b) => x < b,
        };
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Bound::Closed(a), Bound::Closed(b)) => a > b,
            (lo, hi) => match (lo.value(), hi.value()) {
                (Some(a), Some(b)) => a >= b,
                _ => false,
            },
        }
    }
}

/// An axis-aligned box of lattice points; `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntBox {
    pub axes: Vec<(Option<i64>, Option<i64>)>,
}

impl IntBox {
    pub fn new(axes: Vec<(Option<i64>, Option<i64>)>) -> Self {
        IntBox { axes }
    }

    pub fn finite(axes: &[(i64, i64)]) -> Self {
        IntBox { axes: axes.iter().map(|&(a, b)| (Some(a), Some(b))).collect() }
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.axes.len()
            && self
                .axes
                .iter()
                .zip(p.coords())
                .all(|(&(lo, hi), &c)| lo.is_none_or(|l| l <= c) && hi.is_none_or(|h| c <= h))
    }

    pub fn is_empty(&self) -> bool {
        self.axes.iter().any(|&(lo, hi)| matches!((lo, hi), (Some(a), Some(b)) if a > b))
    }

    pub fn is_bounded(&self) -> bool {
        self.axes.iter().all(|(lo, hi)| lo.is_some() && hi.is_some())
    }
}

/// Integers congruent to one of `residues` modulo `modulus`, optionally
/// clipped to `[min, max]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Progression {
    pub modulus: i64,
    pub residues: BTreeSet<i64>,
    pub min: Option<i64>,
    pub max: Option<i64>,
}

impl Progression {
    pub fn contains(&self, n: i64) -> bool {
        self.min.is_none_or(|m| m <= n)
            && self.max.is_none_or(|m| n <= m)
            && self.residues.contains(&n.mod_floor(&self.modulus))
    }
}

/// A symbolic subset with exact membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Empty,
    /// Every point of the ambient space.
    Whole,
    Explicit(BTreeSet<Point>),
    /// A union of intervals of the real line; only meaningful for the ray model.
    Intervals(Vec<Interval>),
    /// All naturals except the listed ones.
    Cofinite(BTreeSet<i64>),
    Boxes(Vec<IntBox>),
    Progression(Progression),
    /// `{ p(n) : n >= 0 }` for a polynomial with nonnegative coefficients,
    /// lowest degree first.
    PolynomialValues(Vec<i64>),
    Union(Vec<SetExpr>),
    Intersection(Vec<SetExpr>),
    Difference(Box<SetExpr>, Box<SetExpr>),
    /// `f(S)`; membership needs point preimages of `f`.
    Image(PointMap, Box<SetExpr>),
    /// `f^-1(S)`.
    Preimage(PointMap, Box<SetExpr>),
}

impl SetExpr {
    pub fn explicit<I: IntoIterator<Item = Point>>(pts: I) -> Self {
        SetExpr::Explicit(pts.into_iter().collect())
    }

    pub fn scalars<I: IntoIterator<Item = i64>>(ns: I) -> Self {
        SetExpr::explicit(ns.into_iter().map(Point::scalar))
    }

    pub fn singleton(p: Point) -> Self {
        SetExpr::explicit([p])
    }

    pub fn range(lo: Option<i64>, hi: Option<i64>) -> Self {
        SetExpr::Boxes(alloc::vec![IntBox::new(alloc::vec![(lo, hi)])])
    }

    pub fn naturals() -> Self {
        SetExpr::range(Some(0), None)
    }

    pub fn residues(modulus: i64, residues: &[i64]) -> Self {
        SetExpr::Progression(Progression {
            modulus,
            residues: residues.iter().map(|r| r.mod_floor(&modulus)).collect(),
            min: None,
            max: None,
        })
    }

    pub fn evens() -> Self {
        SetExpr::residues(2, &[0])
    }

    pub fn odds() -> Self {
        SetExpr::residues(2, &[1])
    }

    pub fn squares() -> Self {
        SetExpr::PolynomialValues(alloc::vec![0, 0, 1])
    }

    pub fn intervals(parts: Vec<Interval>) -> Self {
        SetExpr::Intervals(parts)
    }

    pub fn union(parts: Vec<SetExpr>) -> Self {
        SetExpr::Union(parts)
    }

    pub fn intersect(a: SetExpr, b: SetExpr) -> Self {
        SetExpr::Intersection(alloc::vec![a, b])
    }

    pub fn minus(a: SetExpr, b: SetExpr) -> Self {
        SetExpr::Difference(Box::new(a), Box::new(b))
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        Ok(match self {
            SetExpr::Empty => false,
            SetExpr::Whole => true,
            SetExpr::Explicit(s) => s.contains(p),
            SetExpr::Intervals(parts) => match p.as_scalar() {
                Some(n) => {
                    let x = Rational::from_integer(n);
                    parts.iter().any(|i| i.contains(&x))
                }
                None => false,
            },
            SetExpr::Cofinite(excluded) => matches!(p.as_scalar(), Some(n) if n >= 0 && !excluded.contains(&n)),
            SetExpr::Boxes(boxes) => boxes.iter().any(|b| b.contains(p)),
            SetExpr::Progression(prog) => matches!(p.as_scalar(), Some(n) if prog.contains(n)),
            SetExpr::PolynomialValues(coeffs) => match p.as_scalar() {
                Some(m) => polynomial_hits(coeffs, m),
                None => false,
            },
            SetExpr::Union(parts) => {
                for s in parts {
                    if s.contains(p)? {
                        return Ok(true);
                    }
                }
                false
            }
            SetExpr::Intersection(parts) => {
                for s in parts {
                    if !s.contains(p)? {
                        return Ok(false);
                    }
                }
                true
            }
            SetExpr::Difference(a, b) => a.contains(p)? && !b.contains(p)?,
            SetExpr::Image(f, s) => {
                for q in f.preimage(p)? {
                    if s.contains(&q)? {
                        return Ok(true);
                    }
                }
                false
            }
            SetExpr::Preimage(f, s) => match f.apply(p) {
                Ok(q) => s.contains(&q)?,
                Err(Error::InvalidPoint(_)) => false,
                Err(e) => return Err(e),
            },
        })
    }

    /// Whether membership can be answered for every point without error.
    pub fn membership_is_total(&self) -> bool {
        match self {
            SetExpr::Union(parts) | SetExpr::Intersection(parts) => parts.iter().all(|s| s.membership_is_total()),
            SetExpr::Difference(a, b) => a.membership_is_total() && b.membership_is_total(),
            SetExpr::Image(f, s) => f.has_preimage() && s.membership_is_total(),
            SetExpr::Preimage(_, s) => s.membership_is_total(),
            _ => true,
        }
    }

    /// Syntactic emptiness: true only when the expression is visibly empty.
    pub fn is_plainly_empty(&self) -> bool {
        match self {
            SetExpr::Empty => true,
            SetExpr::Explicit(s) => s.is_empty(),
            SetExpr::Intervals(parts) => parts.iter().all(Interval::is_empty),
            SetExpr::Boxes(boxes) => boxes.iter().all(IntBox::is_empty),
            SetExpr::Progression(p) => p.residues.is_empty() || matches!((p.min, p.max), (Some(a), Some(b)) if a > b),
            SetExpr::Union(parts) => parts.iter().all(SetExpr::is_plainly_empty),
            SetExpr::Intersection(parts) => parts.iter().any(SetExpr::is_plainly_empty),
            SetExpr::Difference(a, _) => a.is_plainly_empty(),
            SetExpr::Image(_, s) => s.is_plainly_empty(),
            _ => false,
        }
    }

    pub fn is_intervals(&self) -> bool {
        match self {
            SetExpr::Intervals(_) => true,
            SetExpr::Union(parts) | SetExpr::Intersection(parts) => parts.iter().any(SetExpr::is_intervals),
            SetExpr::Difference(a, b) => a.is_intervals() || b.is_intervals(),
            SetExpr::Image(_, s) | SetExpr::Preimage(_, s) => s.is_intervals(),
            _ => false,
        }
    }

    /// The members inside the closed window of radius `radius`, sorted.
    pub fn window_points(&self, space: &Space, radius: &Rational) -> Result<Vec<Point>> {
        if self.is_intervals() {
            return Err(unsupported("interval unions over the reals have no window enumeration"));
        }
        match self {
            SetExpr::Empty => Ok(Vec::new()),
            SetExpr::Explicit(s) => {
                Ok(s.iter().filter(|p| space.contains(p) && space.depth(p).le(radius)).cloned().collect())
            }
            _ => {
                let mut out = Vec::new();
                for p in space.enumerate(radius) {
                    if self.contains(&p)? {
                        out.push(p);
                    }
                }
                Ok(out)
            }
        }
    }
}

fn poly_eval(coeffs: &[i64], n: i64) -> Option<i64> {
    let mut acc: i64 = 0;
    for c in coeffs.iter().rev() {
        acc = acc.checked_mul(n)?.checked_add(*c)?;
    }
    Some(acc)
}

/// Whether `m = p(n)` for some natural `n`; `p` has nonnegative coefficients
/// so it is nondecreasing on the naturals.
fn polynomial_hits(coeffs: &[i64], m: i64) -> bool {
    let Some(p0) = poly_eval(coeffs, 0) else { return false };
    if m < p0 {
        return false;
    }
    if coeffs.iter().skip(1).all(|c| *c == 0) {
        return m == p0;
    }
    let (mut lo, mut hi) = (0i64, 1i64);
    while poly_eval(coeffs, hi).is_some_and(|v| v < m) {
        lo = hi;
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match poly_eval(coeffs, mid) {
            Some(v) if v < m => lo = mid + 1,
            _ => hi = mid,
        }
    }
    poly_eval(coeffs, lo) == Some(m)
}
