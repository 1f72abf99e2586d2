use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::asr::ProbeBudget;
use crate::coarse::Side;
use crate::error::{invalid, unsupported};
use crate::spaces::{Lattice, LatticeMetric, Neighborhood, SetExpr, Space};
use crate::{ceil_int, floor_int, int, Error, Point, Rational, Result};

use super::{disjoint_check, DisjointVerdict};

/// Brute-force the distance field from a member list up to this size.
const LIST_LIMIT: usize = 4096;

/// One window point with its distance bands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub point: Point,
    pub dist_a: Rational,
    pub dist_b: Rational,
    /// `⌊d(x,A)⌋`.
    pub i: i64,
    /// `⌊d(x,B)⌋`.
    pub j: i64,
    /// `A` when the point is placed in `A_i` (`i <= j`), `B` when in `B_j`.
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityCertificate {
    pub radius: Rational,
    /// `⋃ B_k` on the window.
    pub x1: SetExpr,
    /// `⋃ A_k` on the window.
    pub x2: SetExpr,
    pub strips: Vec<Strip>,
    /// First window point in neither union, if any.
    pub uncovered: Option<Point>,
    pub a_vs_x1: DisjointVerdict,
    pub b_vs_x2: DisjointVerdict,
}

impl NormalityCertificate {
    pub fn covers(&self) -> bool {
        self.uncovered.is_none()
    }
}

/// The bands `A_k = {d(x,A) <= k+1} ∩ {d(x,B) >= k}` and
/// `B_k = {d(x,B) <= k+1} ∩ {d(x,A) >= k}` on the window of radius `radius`,
/// with `X1 = ⋃ B_k` and `X2 = ⋃ A_k`.
///
/// Each point is also placed by its integer bands `i = ⌊d(x,A)⌋`,
/// `j = ⌊d(x,B)⌋`: in `A_i` when `i <= j`, otherwise in `B_j`. Distances
/// are exact: the nearest member is searched far enough to be certain.
/// The two disjointness profiles are taken on the same window with
/// checkpoints at a quarter, half and the whole radius.
pub fn normality_partition(
    space: &Space,
    a: &SetExpr,
    b: &SetExpr,
    radius: &Rational,
    stability: usize,
) -> Result<NormalityCertificate> {
    if *radius <= Rational::zero() {
        return Err(invalid("the window radius must be positive"));
    }
    let pts = space.enumerate(radius);
    let da = DistanceField::new(space, a, radius)?.measure(space, a, &pts)?;
    let db = DistanceField::new(space, b, radius)?.measure(space, b, &pts)?;

    let mut strips = Vec::with_capacity(pts.len());
    let mut x1 = BTreeSet::new();
    let mut x2 = BTreeSet::new();
    let mut uncovered = None;
    for ((p, dist_a), dist_b) in pts.into_iter().zip(da).zip(db) {
        let (i, j) = (floor_int(&dist_a), floor_int(&dist_b));
        let side = if i <= j { Side::A } else { Side::B };
        let in_x2 = band_hit(&dist_a, &dist_b);
        let in_x1 = band_hit(&dist_b, &dist_a);
        let placed = match side {
            Side::A => in_x2,
            Side::B => in_x1,
        };
        if !placed {
            return Err(Error::CertificateFailed {
                scale: *radius,
                check: String::from("a point is not in the band its indices name"),
            });
        }
        if in_x1 {
            x1.insert(p.clone());
        }
        if in_x2 {
            x2.insert(p.clone());
        }
        if !in_x1 && !in_x2 && uncovered.is_none() {
            uncovered = Some(p.clone());
        }
        strips.push(Strip { point: p, dist_a, dist_b, i, j, side });
    }

    let x1 = SetExpr::Explicit(x1);
    let x2 = SetExpr::Explicit(x2);
    let mut radii: Vec<Rational> = [*radius / int(4), *radius / int(2), *radius].into_iter().collect();
    radii.dedup();
    let probe = ProbeBudget::new(radii, alloc::vec![int(1)], stability)?;
    let a_vs_x1 = disjoint_check(space, a, &x1, &probe)?;
    let b_vs_x2 = disjoint_check(space, b, &x2, &probe)?;
    Ok(NormalityCertificate { radius: *radius, x1, x2, strips, uncovered, a_vs_x1, b_vs_x2 })
}

/// Whether some integer `k >= 0` has `d_own <= k + 1` and `d_other >= k`.
fn band_hit(d_own: &Rational, d_other: &Rational) -> bool {
    let lo = ceil_int(&(*d_own - int(1))).max(0);
    let hi = floor_int(d_other);
    lo <= hi
}

/// Largest box searched breadth-first on a lattice.
const GRID_LIMIT: usize = 1 << 22;

/// Exact `d(x, S)` for points of a window of radius `R`.
struct DistanceField {
    source: Source,
    /// A member closest to the basepoint.
    anchor: Point,
    rings: Vec<Neighborhood>,
}

enum Source {
    /// Members of `S` near enough to contain every nearest point.
    List(Vec<Point>),
    /// Unit-step distances on the box `[-half, half]^d`, row-major.
    Grid {
        half: i64,
        dist: Vec<u32>,
    },
    Rings,
}

impl DistanceField {
    fn new(space: &Space, s: &SetExpr, radius: &Rational) -> Result<Self> {
        // members farther out than this are not looked for
        let limit = (*radius * int(4)).max(int(64));
        let mut reach = int(1);
        let anchor = loop {
            let found = if s.is_plainly_empty() { Vec::new() } else { s.window_points(space, &reach)? };
            if let Some(p) = found.into_iter().min_by_key(|p| space.depth(p)) {
                break p;
            }
            if reach >= limit {
                return Err(Error::PreconditionFailed {
                    reason: String::from("the set has no member near the window"),
                    witness: None,
                });
            }
            reach = (reach * int(2)).min(limit);
        };
        let anchor_depth = space.depth(&anchor).finite().ok_or_else(|| unsupported("infinite depth"))?;
        // a nearest member of S to x lies within depth(x) + d(x, anchor) <= 2R + depth(anchor)
        let far = *radius * int(2) + anchor_depth;
        if let Space::Lattice(l) = space {
            let half = ceil_int(&far);
            let side = (2 * half + 1) as usize;
            if side.checked_pow(l.dim as u32).is_some_and(|n| n <= GRID_LIMIT) {
                let dist = grid_distances(l, s, half)?;
                return Ok(DistanceField { source: Source::Grid { half, dist }, anchor, rings: Vec::new() });
            }
        }
        let members = s.window_points(space, &far)?;
        let source = if members.len() <= LIST_LIMIT { Source::List(members) } else { Source::Rings };
        Ok(DistanceField { source, anchor, rings: Vec::new() })
    }

    fn measure(&mut self, space: &Space, s: &SetExpr, pts: &[Point]) -> Result<Vec<Rational>> {
        let mut out = Vec::with_capacity(pts.len());
        for x in pts {
            let bound =
                space.dist(x, &self.anchor).finite().ok_or_else(|| unsupported("points at infinite distance"))?;
            let d = match &self.source {
                Source::List(list) => list.iter().filter_map(|q| space.dist(x, q).finite()).min().unwrap(),
                Source::Grid { half, dist } => int(dist[grid_index(x.coords(), *half)] as i64),
                Source::Rings => self.nearest(space, s, x, &bound)?,
            };
            out.push(d);
        }
        Ok(out)
    }

    /// Searches closed balls of doubling radius until a member turns up;
    /// the anchor guarantees one within `bound`.
    fn nearest(&mut self, space: &Space, s: &SetExpr, x: &Point, bound: &Rational) -> Result<Rational> {
        if s.contains(x)? {
            return Ok(int(0));
        }
        let mut k = 0;
        loop {
            if k == self.rings.len() {
                let cap = if k == 0 { int(1) } else { self.rings[k - 1].cap() * int(2) };
                self.rings.push(space.neighborhood(&cap, true));
            }
            let ring = &self.rings[k];
            if let Some((_, d)) = ring.nearest(space, x, s)? {
                return Ok(d);
            }
            if ring.cap() >= *bound {
                return Err(invalid("the anchor member was not found within its own distance"));
            }
            k += 1;
        }
    }
}

fn grid_index(coords: &[i64], half: i64) -> usize {
    let side = 2 * half + 1;
    coords.iter().fold(0i64, |acc, c| acc * side + (c + half)) as usize
}

/// Multi-source breadth-first search from the members of `s` inside the
/// box. Unit steps are the axis moves for l1 and the king moves for
/// l-infinity; a geodesic between two box points can be chosen inside their
/// bounding box, so the search is exact for points whose nearest member
/// lies in the box.
fn grid_distances(l: &Lattice, s: &SetExpr, half: i64) -> Result<Vec<u32>> {
    let side = 2 * half + 1;
    let total = (side as usize).pow(l.dim as u32);
    let decode = |mut i: usize| -> Vec<i64> {
        let mut c = alloc::vec![0i64; l.dim];
        for k in (0..l.dim).rev() {
            c[k] = (i % side as usize) as i64 - half;
            i /= side as usize;
        }
        c
    };
    let steps: Vec<Vec<i64>> = match l.metric {
        LatticeMetric::L1 => (0..l.dim)
            .flat_map(|k| {
                [-1, 1].into_iter().map(move |e| {
                    let mut v = alloc::vec![0i64; l.dim];
                    v[k] = e;
                    v
                })
            })
            .collect(),
        LatticeMetric::LInf => {
            let mut out: Vec<Vec<i64>> = alloc::vec![Vec::new()];
            for _ in 0..l.dim {
                out = out
                    .into_iter()
                    .flat_map(|v| [-1, 0, 1].into_iter().map(move |e| [v.clone(), alloc::vec![e]].concat()))
                    .collect();
            }
            out.into_iter().filter(|v| v.iter().any(|e| *e != 0)).collect()
        }
    };
    let mut dist = alloc::vec![u32::MAX; total];
    let mut queue = VecDeque::new();
    for (i, d) in dist.iter_mut().enumerate() {
        if s.contains(&Point::from(decode(i)))? {
            *d = 0;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let c = decode(i);
        for step in &steps {
            let n: Vec<i64> = c.iter().zip(step).map(|(a, b)| a + b).collect();
            if n.iter().any(|x| x.abs() > half) {
                continue;
            }
            let j = grid_index(&n, half);
            if dist[j] == u32::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{IntBox, LatticeMetric};
    use crate::ExtReal;

    fn axis(dim: usize) -> SetExpr {
        let mut axes = alloc::vec![(Some(0), Some(0)); 2];
        axes[dim] = (Some(0), None);
        SetExpr::Boxes(alloc::vec![IntBox::new(axes)])
    }

    /// Members of `a` and `b` in a large window, for [`classify`].
    fn scan(space: &Space, a: &SetExpr, b: &SetExpr, radius: i64) -> (Vec<Point>, Vec<Point>) {
        let pts = space.enumerate(&int(radius));
        let keep = |s: &SetExpr| pts.iter().filter(|q| s.contains(q).unwrap()).cloned().collect();
        (keep(a), keep(b))
    }

    /// Classifies a point straight from the band definitions, with the
    /// distances found by scanning member lists.
    fn classify(space: &Space, lists: &(Vec<Point>, Vec<Point>), p: &Point) -> (Rational, Rational, bool, bool) {
        let dist = |l: &[Point]| l.iter().map(|q| space.dist(p, q)).min().and_then(|d| d.finite()).unwrap();
        let (da, db) = (dist(&lists.0), dist(&lists.1));
        let in_a = |k: i64| da <= int(k + 1) && db >= int(k);
        let in_b = |k: i64| db <= int(k + 1) && da >= int(k);
        let top = floor_int(&(da + db)) + 2;
        (da, db, (0..top).any(in_b), (0..top).any(in_a))
    }

    #[test]
    fn half_lines_split_at_the_midpoint() {
        let z = Space::integers();
        let a = SetExpr::range(Some(0), None);
        let b = SetExpr::range(None, Some(-10));
        let cert = normality_partition(&z, &a, &b, &int(50), 2).unwrap();
        let lists = scan(&z, &a, &b, 120);
        assert!(cert.covers());
        for s in &cert.strips {
            let n = s.point.as_scalar().unwrap();
            assert_eq!(s.side, if n >= -5 { Side::A } else { Side::B }, "n={n}");
            let (da, db, x1, x2) = classify(&z, &lists, &s.point);
            assert_eq!((s.dist_a, s.dist_b), (da, db));
            assert_eq!(cert.x1.contains(&s.point).unwrap(), x1);
            assert_eq!(cert.x2.contains(&s.point).unwrap(), x2);
        }
        // the bands overlap only at the tie
        let both: Vec<i64> = cert
            .strips
            .iter()
            .filter(|s| cert.x1.contains(&s.point).unwrap() && cert.x2.contains(&s.point).unwrap())
            .map(|s| s.point.as_scalar().unwrap())
            .collect();
        assert_eq!(both, alloc::vec![-5]);
        assert!(cert.a_vs_x1.is_divergent());
        assert!(cert.b_vs_x2.is_divergent());
    }

    #[test]
    fn axes_split_along_the_diagonal() {
        let plane = Space::lattice(2, LatticeMetric::L1);
        let cert = normality_partition(&plane, &axis(0), &axis(1), &int(60), 2).unwrap();
        let lists = scan(&plane, &axis(0), &axis(1), 130);
        assert!(cert.covers());
        assert!(cert.a_vs_x1.is_divergent(), "{:?}", cert.a_vs_x1.profile());
        assert!(cert.b_vs_x2.is_divergent(), "{:?}", cert.b_vs_x2.profile());
        for s in cert.strips.iter().step_by(37) {
            let (da, db, x1, x2) = classify(&plane, &lists, &s.point);
            assert_eq!((s.dist_a, s.dist_b), (da, db));
            assert_eq!(cert.x1.contains(&s.point).unwrap(), x1);
            assert_eq!(cert.x2.contains(&s.point).unwrap(), x2);
            let expected = if floor_int(&da) <= floor_int(&db) { Side::A } else { Side::B };
            assert_eq!(s.side, expected);
        }
    }

    #[test]
    fn whole_space_goes_to_the_first_family() {
        let z = Space::integers();
        let cert = normality_partition(&z, &SetExpr::Whole, &SetExpr::Whole, &int(20), 2).unwrap();
        assert!(cert.covers());
        assert!(cert.strips.iter().all(|s| s.side == Side::A && s.i == 0 && s.j == 0));
        assert_eq!(cert.x2, SetExpr::explicit(z.enumerate(&int(20))));
        assert_eq!(cert.a_vs_x1.profile().at(&int(3)), Some(ExtReal::ZERO));
    }

    #[test]
    fn half_planes_use_the_grid_search() {
        let plane = Space::lattice(2, LatticeMetric::L1);
        let half = SetExpr::Boxes(alloc::vec![IntBox::new(alloc::vec![(Some(3), None), (None, None)])]);
        let other = SetExpr::Boxes(alloc::vec![IntBox::new(alloc::vec![(None, Some(-3)), (None, None)])]);
        let cert = normality_partition(&plane, &half, &other, &int(40), 2).unwrap();
        for s in cert.strips.iter().step_by(53) {
            let x = s.point.coords()[0];
            assert_eq!(s.dist_a, int((3 - x).max(0)));
            assert_eq!(s.dist_b, int((x + 3).max(0)));
        }
        assert!(cert.covers());
    }

    #[test]
    fn word_metric_uses_the_ring_search() {
        // the free group window is too large for the member list
        let f2 = Space::free_group(2);
        let e = f2.basepoint();
        let rest = SetExpr::minus(SetExpr::Whole, SetExpr::singleton(e.clone()));
        let cert = normality_partition(&f2, &rest, &SetExpr::singleton(e.clone()), &int(4), 2).unwrap();
        assert!(cert.covers());
        for s in &cert.strips {
            let at_e = s.point == e;
            assert_eq!(s.dist_a, int(at_e as i64));
            assert_eq!(s.dist_b, f2.depth(&s.point).finite().unwrap());
        }
    }

    #[test]
    fn empty_side_is_rejected() {
        let z = Space::integers();
        let r = normality_partition(&z, &SetExpr::Empty, &SetExpr::Whole, &int(10), 2);
        assert!(matches!(r, Err(Error::PreconditionFailed { .. })));
    }
}
