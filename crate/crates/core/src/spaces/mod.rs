//! Window-enumerable spaces, symbolic subsets, balls, diameters and
//! Hausdorff distance.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{invalid, unsupported};
use crate::maps::PointMap;
use crate::num::max_integer_within;
use crate::{int, ExtReal, Point, Rational, Result};

mod finite;
mod lattice;
mod set_expr;
mod word;

pub use finite::FiniteSpace;
pub use lattice::{Lattice, LatticeMetric};
pub use set_expr::{Bound, IntBox, Interval, Progression, SetExpr};
pub use word::{AbelianWord, WordMetric};

/// A proper extended-metric space presented by a basepoint, a window
/// enumerator and an exact distance.
#[derive(Clone, Debug, PartialEq)]
pub enum Space {
    Lattice(Lattice),
    Word(WordMetric),
    Finite(FiniteSpace),
    /// Two components at infinite distance; points carry a `0`/`1` tag first.
    DisjointUnion(Box<Space>, Box<Space>),
    /// A subset with the restricted metric.
    Subspace(Box<Subspace>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub parent: Space,
    pub subset: SetExpr,
    basepoint: Point,
    offset: Rational,
}

impl Space {
    pub fn lattice(dim: usize, metric: LatticeMetric) -> Self {
        Space::Lattice(Lattice::new(dim, metric))
    }

    pub fn integers() -> Self {
        Space::lattice(1, LatticeMetric::L1)
    }

    pub fn free_group(rank: usize) -> Self {
        Space::Word(WordMetric::free(rank))
    }

    pub fn disjoint_union(a: Space, b: Space) -> Self {
        Space::DisjointUnion(Box::new(a), Box::new(b))
    }

    /// The subset `subset` of `parent`. The basepoint is the parent's when it
    /// belongs to the subset, otherwise the nearest member found.
    pub fn subspace(parent: Space, subset: SetExpr) -> Result<Self> {
        if !subset.membership_is_total() || subset.is_intervals() {
            return Err(unsupported("subspace needs a subset with total lattice membership"));
        }
        let base = parent.basepoint();
        let basepoint = if subset.contains(&base)? {
            base
        } else {
            let mut found = None;
            let mut r = 1i64;
            while found.is_none() && r <= 1 << 12 {
                let mut best: Option<(ExtReal, Point)> = None;
                for p in parent.enumerate(&int(r)) {
                    if subset.contains(&p)? {
                        let key = (parent.depth(&p), p);
                        if best.as_ref().is_none_or(|b| key < *b) {
                            best = Some(key);
                        }
                    }
                }
                found = best.map(|(_, p)| p);
                r *= 2;
            }
            found.ok_or_else(|| invalid("subspace subset has no point near the basepoint"))?
        };
        let offset = parent.depth(&basepoint).finite().unwrap_or_else(|| int(0));
        Ok(Space::Subspace(Box::new(Subspace { parent, subset, basepoint, offset })))
    }

    /// The naturals inside the integers.
    pub fn naturals() -> Self {
        Space::subspace(Space::integers(), SetExpr::naturals()).expect("naturals contain 0")
    }

    pub fn basepoint(&self) -> Point {
        match self {
            Space::Lattice(l) => Point::from(alloc::vec![0i64; l.dim]),
            Space::Word(w) => w.identity(),
            Space::Finite(f) => f.basepoint(),
            Space::DisjointUnion(a, _) => Point::tagged(0, &a.basepoint()),
            Space::Subspace(s) => s.basepoint.clone(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Space::Lattice(l) => l.contains(p),
            Space::Word(w) => w.contains(p),
            Space::Finite(f) => f.contains(p),
            Space::DisjointUnion(a, b) => match p.untag() {
                Some((0, rest)) => a.contains(&rest),
                Some((1, rest)) => b.contains(&rest),
                _ => false,
            },
            Space::Subspace(s) => s.parent.contains(p) && s.subset.contains(p).unwrap_or(false),
        }
    }

    pub fn dist(&self, p: &Point, q: &Point) -> ExtReal {
        match self {
            Space::Lattice(l) => l.dist(p, q),
            Space::Word(w) => w.dist(p, q),
            Space::Finite(f) => f.dist(p, q),
            Space::DisjointUnion(a, b) => match (p.untag(), q.untag()) {
                (Some((0, x)), Some((0, y))) => a.dist(&x, &y),
                (Some((1, x)), Some((1, y))) => b.dist(&x, &y),
                _ => ExtReal::Infinite,
            },
            Space::Subspace(s) => s.parent.dist(p, q),
        }
    }

    /// Distance to the window anchor. For a disjoint union each component
    /// is anchored at its own basepoint, so both components appear in every
    /// window.
    pub fn depth(&self, p: &Point) -> ExtReal {
        match self {
            Space::DisjointUnion(a, b) => match p.untag() {
                Some((0, x)) => a.depth(&x),
                Some((1, x)) => b.depth(&x),
                _ => ExtReal::Infinite,
            },
            _ => self.dist(&self.basepoint(), p),
        }
    }

    /// Every point of depth at most `radius`, sorted.
    pub fn enumerate(&self, radius: &Rational) -> Vec<Point> {
        match self {
            Space::Lattice(l) => l.enumerate(radius),
            Space::Word(w) => w.enumerate(radius),
            Space::Finite(f) => f.enumerate(radius),
            Space::DisjointUnion(a, b) => {
                let mut out: Vec<Point> = a.enumerate(radius).iter().map(|p| Point::tagged(0, p)).collect();
                out.extend(b.enumerate(radius).iter().map(|p| Point::tagged(1, p)));
                out
            }
            Space::Subspace(s) => s
                .parent
                .enumerate(&(*radius + s.offset))
                .into_iter()
                .filter(|p| s.subset.contains(p).unwrap_or(false) && self.depth(p).le(radius))
                .collect(),
        }
    }

    pub fn as_lattice(&self) -> Option<&Lattice> {
        match self {
            Space::Lattice(l) => Some(l),
            _ => None,
        }
    }

    /// A reusable search pattern for points within `cap` of a center.
    pub fn neighborhood(&self, cap: &Rational, closed: bool) -> Neighborhood {
        let kind = match self {
            Space::Lattice(l) => match max_integer_within(cap, closed) {
                Some(b) => Kind::Translate(l.offsets(b).into_iter().map(|(o, n)| (o, int(n))).collect()),
                None => Kind::Translate(Vec::new()),
            },
            Space::Word(w) => {
                let words = match max_integer_within(cap, closed) {
                    Some(b) => {
                        let mut ws: Vec<(Point, Rational)> =
                            w.ball_words(b).into_iter().map(|(o, n)| (o, int(n))).collect();
                        ws.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
                        ws
                    }
                    None => Vec::new(),
                };
                match w {
                    WordMetric::Free { .. } => Kind::Multiply(words),
                    WordMetric::Abelian(_) => Kind::Translate(words),
                }
            }
            Space::Finite(_) => Kind::Scan,
            Space::DisjointUnion(a, b) => {
                Kind::Union(Box::new(a.neighborhood(cap, closed)), Box::new(b.neighborhood(cap, closed)))
            }
            Space::Subspace(s) => Kind::Filter(Box::new(s.parent.neighborhood(cap, closed))),
        };
        Neighborhood { kind, cap: *cap, closed }
    }
}

/// Points near a center, produced in order of increasing distance.
#[derive(Clone, Debug)]
pub struct Neighborhood {
    kind: Kind,
    cap: Rational,
    closed: bool,
}

#[derive(Clone, Debug)]
enum Kind {
    Translate(Vec<(Point, Rational)>),
    Multiply(Vec<(Point, Rational)>),
    Scan,
    Union(Box<Neighborhood>, Box<Neighborhood>),
    Filter(Box<Neighborhood>),
}

impl Neighborhood {
    pub fn cap(&self) -> Rational {
        self.cap
    }

    /// Points `q` with `d(p,q) < cap` (or `<=` when closed), sorted by
    /// distance. Ties keep a fixed deterministic order.
    pub fn around(&self, space: &Space, p: &Point) -> Vec<(Point, Rational)> {
        match (&self.kind, space) {
            (Kind::Translate(offs), _) => offs
                .iter()
                .map(|(o, n)| {
                    let q: Vec<i64> = p.coords().iter().zip(o.coords()).map(|(a, b)| a + b).collect();
                    (Point::from(q), *n)
                })
                .collect(),
            (Kind::Multiply(words), Space::Word(w)) => words.iter().map(|(o, n)| (w.multiply(p, o), *n)).collect(),
            (Kind::Scan, Space::Finite(f)) => {
                let mut out: Vec<(Point, Rational)> = f
                    .points()
                    .into_iter()
                    .filter_map(|q| {
                        let d = f.dist(p, &q);
                        d.within(&self.cap, self.closed).then(|| (q, d.finite().unwrap()))
                    })
                    .collect();
                out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
                out
            }
            (Kind::Union(na, nb), Space::DisjointUnion(a, b)) => match p.untag() {
                Some((0, x)) => na.around(a, &x).into_iter().map(|(q, n)| (Point::tagged(0, &q), n)).collect(),
                Some((1, x)) => nb.around(b, &x).into_iter().map(|(q, n)| (Point::tagged(1, &q), n)).collect(),
                _ => Vec::new(),
            },
            (Kind::Filter(inner), Space::Subspace(s)) => {
                inner.around(&s.parent, p).into_iter().filter(|(q, _)| s.subset.contains(q).unwrap_or(false)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// The nearest member of `target` within the cap, if any.
    pub fn nearest(&self, space: &Space, p: &Point, target: &SetExpr) -> Result<Option<(Point, Rational)>> {
        for (q, d) in self.around(space, p) {
            if target.contains(&q)? {
                return Ok(Some((q, d)));
            }
        }
        Ok(None)
    }
}

/// Brute-force distance from `p` to a finite point list; `inf` when empty.
pub fn dist_to_points(space: &Space, p: &Point, pts: &[Point]) -> ExtReal {
    pts.iter().map(|q| space.dist(p, q)).min().unwrap_or(ExtReal::Infinite)
}

/// The open `r`-ball around `A`, clipped to the `R`-window:
/// `{ p in window(R) : exists a in A ∩ window(R+r), d(a,p) < r }`.
pub fn ball(space: &Space, a: &SetExpr, r: &Rational, radius: &Rational) -> Result<BTreeSet<Point>> {
    clipped_ball(space, a, r, radius, false)
}

/// Closed variant of [`ball`] (`d(a,p) <= r`).
pub fn closed_ball(space: &Space, a: &SetExpr, r: &Rational, radius: &Rational) -> Result<BTreeSet<Point>> {
    clipped_ball(space, a, r, radius, true)
}

fn clipped_ball(space: &Space, a: &SetExpr, r: &Rational, radius: &Rational, closed: bool) -> Result<BTreeSet<Point>> {
    if *r < int(0) || *radius < int(0) {
        return Err(invalid("ball radii must be nonnegative"));
    }
    let centers = a.window_points(space, &(*radius + *r))?;
    let nb = space.neighborhood(r, closed);
    let mut out = BTreeSet::new();
    for c in &centers {
        for (q, _) in nb.around(space, c) {
            if space.depth(&q).le(radius) {
                out.insert(q);
            }
        }
    }
    Ok(out)
}

/// Hausdorff distance of two finite sets, with `d_H(∅,∅)=0` and
/// `d_H(∅,A)=inf` for nonempty `A`.
pub fn hausdorff(space: &Space, a: &[Point], b: &[Point]) -> ExtReal {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return ExtReal::ZERO,
        (true, false) | (false, true) => return ExtReal::Infinite,
        _ => {}
    }
    let one_sided =
        |xs: &[Point], ys: &[Point]| xs.iter().map(|x| dist_to_points(space, x, ys)).max().unwrap_or(ExtReal::ZERO);
    one_sided(a, b).max(one_sided(b, a))
}

/// Supremum of pairwise distances; `0` for singletons and the empty set.
pub fn diameter(space: &Space, a: &SetExpr) -> Result<ExtReal> {
    if a.is_intervals() {
        return Err(unsupported("interval unions have no ambient window metric"));
    }
    if a.is_plainly_empty() {
        return Ok(ExtReal::ZERO);
    }
    match a {
        SetExpr::Explicit(s) => {
            let pts: Vec<Point> = s.iter().cloned().collect();
            Ok(pairwise_max(space, &pts))
        }
        SetExpr::Boxes(boxes) if space.as_lattice().is_some() => {
            let live: Vec<_> = boxes.iter().filter(|b| !b.is_empty()).collect();
            if live.iter().any(|b| !b.is_bounded()) {
                return Ok(ExtReal::Infinite);
            }
            // the max of a convex norm over a union of boxes sits at corners
            let mut corners = Vec::new();
            for b in live {
                corners.extend(box_corners(b));
            }
            Ok(pairwise_max(space, &corners))
        }
        _ => match hull(a) {
            Some(axes) if axes.iter().all(|(lo, hi)| lo.is_some() && hi.is_some()) => {
                let b = IntBox::new(axes);
                let mut pts = Vec::new();
                for p in box_points(&b) {
                    if space.contains(&p) && a.contains(&p)? {
                        pts.push(p);
                    }
                }
                Ok(pairwise_max(space, &pts))
            }
            _ => Ok(ExtReal::Infinite),
        },
    }
}

fn pairwise_max(space: &Space, pts: &[Point]) -> ExtReal {
    let mut best = ExtReal::ZERO;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            best = best.max(space.dist(p, q));
        }
    }
    best
}

fn box_corners(b: &IntBox) -> Vec<Point> {
    let mut out = alloc::vec![Vec::new()];
    for &(lo, hi) in &b.axes {
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        let mut next = Vec::new();
        for prefix in &out {
            for c in if lo == hi { alloc::vec![lo] } else { alloc::vec![lo, hi] } {
                let mut v: Vec<i64> = Vec::clone(prefix);
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Point::from).collect()
}

pub(crate) fn box_points(b: &IntBox) -> Vec<Point> {
    let mut out = alloc::vec![Vec::new()];
    for &(lo, hi) in &b.axes {
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        let mut next = Vec::new();
        for prefix in &out {
            for c in lo..=hi {
                let mut v: Vec<i64> = Vec::clone(prefix);
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Point::from).collect()
}

type Axes = Vec<(Option<i64>, Option<i64>)>;

/// Per-axis bounding box of a lattice set, `None` when the shape is unknown.
fn hull(a: &SetExpr) -> Option<Axes> {
    match a {
        SetExpr::Explicit(s) => {
            let dim = s.iter().next()?.dim();
            let mut axes = alloc::vec![(None, None); dim];
            for p in s {
                if p.dim() != dim {
                    return None;
                }
                for (ax, &c) in axes.iter_mut().zip(p.coords()) {
                    ax.0 = Some(ax.0.map_or(c, |m: i64| m.min(c)));
                    ax.1 = Some(ax.1.map_or(c, |m: i64| m.max(c)));
                }
            }
            Some(axes)
        }
        SetExpr::Boxes(boxes) => {
            let mut it = boxes.iter().filter(|b| !b.is_empty());
            let mut axes = it.next()?.axes.clone();
            for b in it {
                axes = join_axes(&axes, &b.axes)?;
            }
            Some(axes)
        }
        SetExpr::Cofinite(_) => Some(alloc::vec![(Some(0), None)]),
        SetExpr::Progression(p) => Some(alloc::vec![(p.min, p.max)]),
        SetExpr::PolynomialValues(c) => {
            let p0 = *c.first().unwrap_or(&0);
            let constant = c.iter().skip(1).all(|x| *x == 0);
            Some(alloc::vec![(Some(p0), constant.then_some(p0))])
        }
        SetExpr::Union(parts) => {
            let mut acc: Option<Axes> = None;
            for s in parts {
                if s.is_plainly_empty() {
                    continue;
                }
                let h = hull(s)?;
                acc = Some(match acc {
                    None => h,
                    Some(prev) => join_axes(&prev, &h)?,
                });
            }
            acc
        }
        SetExpr::Intersection(parts) => {
            let mut acc: Option<Axes> = None;
            for s in parts {
                if let Some(h) = hull(s) {
                    acc = Some(match acc {
                        None => h,
                        Some(prev) => meet_axes(&prev, &h)?,
                    });
                }
            }
            acc
        }
        SetExpr::Difference(a, _) => hull(a),
        SetExpr::Image(f, s) => image_axes(f, hull(s)?),
        _ => None,
    }
}

/// The hull of `f(B)` for a box `B`, when `f` moves boxes predictably.
fn image_axes(f: &PointMap, axes: Axes) -> Option<Axes> {
    // a monotone coordinate map sends [lo, hi] to [g(lo), g(hi)], swapped if decreasing
    let each = |g: &dyn Fn(i64, usize) -> Option<i64>, increasing: bool| -> Option<Axes> {
        let end = |b: Option<i64>, i| b.map(|c| g(c, i)).map_or(Some(None), |v| v.map(Some));
        (axes.iter().enumerate())
            .map(|(i, &(lo, hi))| {
                let (lo, hi) = (end(lo, i)?, end(hi, i)?);
                Some(if increasing { (lo, hi) } else { (hi, lo) })
            })
            .collect()
    };
    match f {
        PointMap::Identity => Some(axes),
        PointMap::Scale(0) => Some(alloc::vec![(Some(0), Some(0)); axes.len()]),
        PointMap::Scale(k) => each(&|c, _| c.checked_mul(*k), *k >= 0),
        PointMap::Translate(v) if v.len() == axes.len() => each(&|c, i| c.checked_add(v[i]), true),
        PointMap::FloorDiv(k) if *k > 0 => each(&|c, _| Some(c.div_euclid(*k)), true),
        PointMap::Project(i) => axes.get(*i).map(|a| alloc::vec![*a]),
        PointMap::Constant(c) => Some(c.coords().iter().map(|&x| (Some(x), Some(x))).collect()),
        PointMap::Compose(maps) => maps.iter().try_fold(axes, |acc, m| image_axes(m, acc)),
        _ => None,
    }
}

fn join_axes(a: &Axes, b: &Axes) -> Option<Axes> {
    (a.len() == b.len()).then(|| {
        a.iter()
            .zip(b)
            .map(|(&(l1, h1), &(l2, h2))| {
                let lo = match (l1, l2) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    _ => None,
                };
                let hi = match (h1, h2) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    _ => None,
                };
                (lo, hi)
            })
            .collect()
    })
}

fn meet_axes(a: &Axes, b: &Axes) -> Option<Axes> {
    (a.len() == b.len()).then(|| {
        a.iter()
            .zip(b)
            .map(|(&(l1, h1), &(l2, h2))| {
                let lo = match (l1, l2) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (x, y) => x.or(y),
                };
                let hi = match (h1, h2) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                (lo, hi)
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(ns: &[i64]) -> Vec<Point> {
        ns.iter().map(|n| Point::scalar(*n)).collect()
    }

    #[test]
    fn images_of_bounded_sets_have_finite_diameter() {
        let z = Space::integers();
        let img = |f: PointMap, s: SetExpr| SetExpr::Image(f, Box::new(s));
        let doubled = img(PointMap::Scale(2), SetExpr::range(Some(3), Some(7)));
        assert_eq!(diameter(&z, &doubled).unwrap(), ExtReal::Finite(int(8)));
        let flipped = img(
            PointMap::Compose(alloc::vec![PointMap::Scale(-3), PointMap::Translate(alloc::vec![1])]),
            SetExpr::range(Some(0), Some(2)),
        );
        assert_eq!(diameter(&z, &flipped).unwrap(), ExtReal::Finite(int(6)));
        assert_eq!(diameter(&z, &img(PointMap::Scale(2), SetExpr::range(Some(0), None))).unwrap(), ExtReal::Infinite);
    }

    #[test]
    fn open_ball_in_the_integers() {
        let z = Space::integers();
        let b = ball(&z, &SetExpr::scalars([0]), &int(2), &int(10)).unwrap();
        assert_eq!(b.into_iter().collect::<Vec<_>>(), pts(&[-1, 0, 1]));
        assert!(ball(&z, &SetExpr::Empty, &int(5), &int(10)).unwrap().is_empty());
    }

    #[test]
    fn open_ball_in_the_l1_plane() {
        let z2 = Space::lattice(2, LatticeMetric::L1);
        let b = ball(&z2, &SetExpr::singleton(Point::from([0, 0])), &int(2), &int(5)).unwrap();
        let expected: BTreeSet<Point> =
            [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1]].into_iter().map(Point::from).collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn ball_rejects_real_intervals() {
        let z = Space::integers();
        let a = SetExpr::intervals(alloc::vec![Interval::closed(int(0), int(1))]);
        assert!(matches!(ball(&z, &a, &int(1), &int(5)), Err(crate::Error::UnsupportedModel(_))));
    }

    #[test]
    fn hausdorff_conventions() {
        let z = Space::integers();
        assert_eq!(hausdorff(&z, &[], &[]), ExtReal::ZERO);
        assert_eq!(hausdorff(&z, &[], &pts(&[3])), ExtReal::Infinite);
        let evens: Vec<i64> = (0..=20).filter(|n| n % 2 == 0).collect();
        let odds: Vec<i64> = (0..=20).filter(|n| n % 2 == 1).collect();
        assert_eq!(hausdorff(&z, &pts(&evens), &pts(&odds)), ExtReal::from_int(1));
    }

    #[test]
    fn diameters() {
        let z = Space::integers();
        let z2 = Space::lattice(2, LatticeMetric::L1);
        assert_eq!(diameter(&z, &SetExpr::scalars([5])).unwrap(), ExtReal::ZERO);
        assert_eq!(diameter(&z, &SetExpr::Empty).unwrap(), ExtReal::ZERO);
        let sq = SetExpr::Boxes(alloc::vec![IntBox::finite(&[(0, 3), (0, 3)])]);
        assert_eq!(diameter(&z2, &sq).unwrap(), ExtReal::from_int(6));
        let ray = SetExpr::range(Some(0), None);
        assert_eq!(diameter(&z, &ray).unwrap(), ExtReal::Infinite);
        let clipped = SetExpr::intersect(SetExpr::evens(), SetExpr::range(Some(-3), Some(8)));
        assert_eq!(diameter(&z, &clipped).unwrap(), ExtReal::from_int(10));
    }

    #[test]
    fn disjoint_union_windows_cover_both_components() {
        let u = Space::disjoint_union(Space::integers(), Space::integers());
        let w = u.enumerate(&int(1));
        assert_eq!(w.len(), 6);
        assert_eq!(u.dist(&Point::from([0, 0]), &Point::from([1, 0])), ExtReal::Infinite);
        assert_eq!(u.depth(&Point::from([1, -1])), ExtReal::from_int(1));
    }

    #[test]
    fn subspace_of_even_integers() {
        let two_z = Space::subspace(Space::integers(), SetExpr::evens()).unwrap();
        assert_eq!(two_z.enumerate(&int(4)), pts(&[-4, -2, 0, 2, 4]));
        let nb = two_z.neighborhood(&int(3), false);
        let near: Vec<Point> = nb.around(&two_z, &Point::scalar(2)).into_iter().map(|(p, _)| p).collect();
        assert_eq!(near, pts(&[2, 0, 4]));
        let shifted = Space::subspace(Space::integers(), SetExpr::range(Some(5), None)).unwrap();
        assert_eq!(shifted.basepoint(), Point::scalar(5));
        assert_eq!(shifted.enumerate(&int(2)), pts(&[5, 6, 7]));
    }
}
