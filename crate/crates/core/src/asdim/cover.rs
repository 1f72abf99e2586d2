use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::asr::{self, AsrModel, ScaleVerdict};
use crate::error::unsupported;
use crate::maps::{image_set, MapDescriptor};
use crate::spaces::{box_points, diameter, LatticeMetric, SetExpr, Space};
use crate::{int, Error, ExtReal, Point, Rational, Result};

/// A family of subsets, examined on the window of radius `window`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cover {
    pub members: Vec<SetExpr>,
    pub window: Rational,
}

impl Cover {
    pub fn new(members: Vec<SetExpr>, window: Rational) -> Self {
        Cover { members, window }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The members of `s` inside the window, sorted. Bounded lattice boxes are
/// listed directly instead of scanning the window.
pub fn member_points(space: &Space, s: &SetExpr, radius: &Rational) -> Result<Vec<Point>> {
    if let Some(pts) = listed(space, s, radius)? {
        return Ok(pts);
    }
    if let SetExpr::Intersection(parts) = s {
        for (i, part) in parts.iter().enumerate() {
            if let Some(pts) = listed(space, part, radius)? {
                let mut out = Vec::new();
                'points: for p in pts {
                    for (j, other) in parts.iter().enumerate() {
                        if i != j && !other.contains(&p)? {
                            continue 'points;
                        }
                    }
                    out.push(p);
                }
                return Ok(out);
            }
        }
    }
    s.window_points(space, radius)
}

fn listed(space: &Space, s: &SetExpr, radius: &Rational) -> Result<Option<Vec<Point>>> {
    match s {
        SetExpr::Boxes(boxes) if space.as_lattice().is_some() && boxes.iter().all(|b| b.is_bounded()) => {
            let mut set = BTreeSet::new();
            for b in boxes.iter().filter(|b| !b.is_empty()) {
                set.extend(box_points(b).into_iter().filter(|p| space.contains(p) && space.depth(p).le(radius)));
            }
            Ok(Some(set.into_iter().collect()))
        }
        SetExpr::Explicit(_) | SetExpr::Empty => s.window_points(space, radius).map(Some),
        _ => Ok(None),
    }
}

/// Point to the indices of the members containing it, on the window.
pub(crate) fn membership(space: &Space, cover: &Cover) -> Result<BTreeMap<Point, Vec<usize>>> {
    let mut index: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for (i, m) in cover.members.iter().enumerate() {
        for p in member_points(space, m, &cover.window)? {
            index.entry(p).or_default().push(i);
        }
    }
    Ok(index)
}

/// Largest number of members through one window point.
pub fn multiplicity(space: &Space, cover: &Cover) -> Result<usize> {
    Ok(multiplicity_witness(space, cover)?.map_or(0, |(_, k)| k))
}

/// The first window point of largest multiplicity, with that multiplicity.
pub fn multiplicity_witness(space: &Space, cover: &Cover) -> Result<Option<(Point, usize)>> {
    let index = membership(space, cover)?;
    let mut best: Option<(Point, usize)> = None;
    for (p, ms) in index {
        if best.as_ref().is_none_or(|(_, k)| ms.len() > *k) {
            best = Some((p, ms.len()));
        }
    }
    Ok(best)
}

/// A window point lying in no member.
pub fn uncovered(space: &Space, cover: &Cover) -> Result<Option<Point>> {
    let index = membership(space, cover)?;
    Ok(space.enumerate(&cover.window).into_iter().find(|p| !index.contains_key(p)))
}

/// Whether every member of `u` lies inside some member of `v`, on the
/// window of `u`.
pub fn refines(space: &Space, u: &Cover, v: &Cover) -> Result<bool> {
    Ok(unrefined_member(space, u, v)?.is_none())
}

/// The first member of `u` contained in no member of `v`.
pub fn unrefined_member(space: &Space, u: &Cover, v: &Cover) -> Result<Option<usize>> {
    let index = membership(space, &Cover::new(v.members.clone(), u.window))?;
    for (i, m) in u.members.iter().enumerate() {
        let pts = member_points(space, m, &u.window)?;
        if !inside_one(&index, &pts) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn inside_one(index: &BTreeMap<Point, Vec<usize>>, pts: &[Point]) -> bool {
    let Some(first) = pts.first() else { return true };
    let Some(candidates) = index.get(first) else { return false };
    candidates.iter().any(|j| pts.iter().all(|p| index.get(p).is_some_and(|ms| ms.contains(j))))
}

/// Checks that every closed `r`-ball centred at a window point of depth at
/// most `window - r` lies inside one member of `v`; returns the first
/// failing centre.
pub fn balls_refine(space: &Space, r: i64, v: &Cover) -> Result<Option<Point>> {
    let index = membership(space, v)?;
    let core = v.window - int(r);
    let lattice = space.as_lattice();
    let nb = space.neighborhood(&int(r), true);
    for c in space.enumerate(&core) {
        let Some(candidates) = index.get(&c) else { return Ok(Some(c)) };
        let ok = match lattice {
            // a lattice ball sits in a box iff its axis extremes do
            Some(l) => candidates.iter().any(|&j| match &v.members[j] {
                SetExpr::Boxes(bs) if bs.len() == 1 && bs[0].is_bounded() => (0..l.dim).all(|axis| {
                    [-r, r].iter().all(|s| {
                        let mut q: Vec<i64> = c.coords().to_vec();
                        q[axis] += s;
                        bs[0].contains(&Point::from(q))
                    })
                }),
                _ => {
                    let ball: Vec<Point> = nb.around(space, &c).into_iter().map(|(q, _)| q).collect();
                    ball.iter().all(|q| index.get(q).is_some_and(|ms| ms.contains(&j)))
                }
            }),
            None => {
                let ball: Vec<Point> = nb.around(space, &c).into_iter().map(|(q, _)| q).collect();
                inside_one(&index, &ball)
            }
        };
        if !ok {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `S_U(A)`, the union of the members meeting `A`, on the window: returns
/// the indices of those members and the points of their union.
pub fn s_neighborhood(space: &Space, cover: &Cover, a: &SetExpr) -> Result<(Vec<usize>, BTreeSet<Point>)> {
    let inside: BTreeSet<Point> = member_points(space, a, &cover.window)?.into_iter().collect();
    let mut hit = Vec::new();
    let mut union = BTreeSet::new();
    for (i, m) in cover.members.iter().enumerate() {
        let pts = member_points(space, m, &cover.window)?;
        if pts.iter().any(|p| inside.contains(p)) {
            hit.push(i);
            union.extend(pts);
        }
    }
    Ok((hit, union))
}

/// `A ~_U B`: `A ⊆ S_U(B)` and `B ⊆ S_U(A)` on the window.
pub fn s_relation(space: &Space, cover: &Cover, a: &SetExpr, b: &SetExpr) -> Result<bool> {
    let (_, around_a) = s_neighborhood(space, cover, a)?;
    let (_, around_b) = s_neighborhood(space, cover, b)?;
    let within = |s: &SetExpr, around: &BTreeSet<Point>| -> Result<bool> {
        Ok(member_points(space, s, &cover.window)?.iter().all(|p| around.contains(p)))
    };
    Ok(within(a, &around_b)? && within(b, &around_a)?)
}

/// The cover `{U ∩ Y}` of `Y`, dropping members with no point on the
/// window.
pub fn restrict_cover(space: &Space, cover: &Cover, y: &SetExpr) -> Result<Cover> {
    let mut members = Vec::new();
    for m in &cover.members {
        let cut = SetExpr::intersect(m.clone(), y.clone());
        if !member_points(space, &cut, &cover.window)?.is_empty() {
            members.push(cut);
        }
    }
    Ok(Cover::new(members, cover.window))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Image,
    Preimage,
}

/// Pushes a family forward along `f` or pulls it back. Pulling back needs
/// the map's preimage.
pub fn transport_family(
    f: &MapDescriptor,
    family: &[SetExpr],
    direction: Direction,
    window: &Rational,
) -> Result<Vec<SetExpr>> {
    match direction {
        Direction::Image => family.iter().map(|s| image_set(f, s, window)).collect(),
        Direction::Preimage => {
            if !f.map.has_preimage() {
                return Err(Error::MissingPreimage);
            }
            Ok(family.iter().map(|s| SetExpr::Preimage(f.map.clone(), alloc::boxed::Box::new(s.clone()))).collect())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum UBWitness {
    /// A member that is not bounded.
    UnboundedMember { index: usize, verdict: Option<ScaleVerdict> },
    /// Largest diameter of the members settled inside each probe window.
    Growth { profile: Vec<(Rational, ExtReal)> },
    /// A member not alike to the union of the members it meets.
    Pair { index: usize, verdict: ScaleVerdict },
}

#[derive(Clone, Debug, PartialEq)]
pub enum UBVerdict {
    /// Every member has diameter below `k`; exact models give no `k`.
    UniformlyBounded {
        k: Option<Rational>,
    },
    NotUB {
        witness: UBWitness,
    },
    Inconclusive {
        profile: Vec<(Rational, ExtReal)>,
    },
}

impl UBVerdict {
    pub fn is_ub(&self) -> bool {
        matches!(self, UBVerdict::UniformlyBounded { .. })
    }
}

/// Uniform boundedness of a family.
///
/// On a metric model a member is settled at window `R` once all of its
/// points seen on the largest window already lie within `R`. `D(R)` is the
/// largest diameter of a settled member; a stable `D` over the tail gives
/// `k = D + 1`, growth of `D` refutes. A member whose symbolic diameter is
/// infinite and whose windowed diameter keeps growing is reported directly.
///
/// On exact models every member must be bounded and alike to the union of
/// the members it meets.
pub fn uniformly_bounded_check(model: &AsrModel, family: &[SetExpr], probe: &crate::ProbeBudget) -> Result<UBVerdict> {
    probe.validate()?;
    let Some((space, _)) = model.windowed() else {
        return exact_ub(model, family);
    };
    let radii = &probe.radii;
    let big = probe.max_radius();
    let tail_from = radii.len() - probe.tail().len();
    let mut profile: Vec<(Rational, ExtReal)> = radii.iter().map(|r| (*r, ExtReal::ZERO)).collect();
    for (index, m) in family.iter().enumerate() {
        let full = member_points(space, m, &big)?;
        let mut per: Vec<(usize, ExtReal)> = Vec::with_capacity(radii.len());
        for r in radii {
            let pts: Vec<Point> = full.iter().filter(|p| space.depth(p).le(r)).cloned().collect();
            per.push((pts.len(), point_diameter(space, &pts)));
        }
        if per.iter().any(|(_, d)| !d.is_finite()) {
            return Ok(UBVerdict::NotUB { witness: UBWitness::UnboundedMember { index, verdict: None } });
        }
        let grows = per[tail_from..].windows(2).any(|w| w[0].1 < w[1].1);
        if grows && diameter(space, m).is_ok_and(|d| !d.is_finite()) {
            return Ok(UBVerdict::NotUB { witness: UBWitness::UnboundedMember { index, verdict: None } });
        }
        for (slot, (count, d)) in profile.iter_mut().zip(&per) {
            if *count == full.len() && *count > 0 {
                slot.1 = slot.1.max(*d);
            }
        }
    }
    let tail = &profile[tail_from..];
    if tail.windows(2).all(|w| w[0].1 == w[1].1) {
        if let ExtReal::Finite(d) = tail[0].1 {
            return Ok(UBVerdict::UniformlyBounded { k: Some(d + int(1)) });
        }
    }
    if tail.windows(2).all(|w| w[0].1 <= w[1].1) && tail.first().map(|t| t.1) < tail.last().map(|t| t.1) {
        return Ok(UBVerdict::NotUB { witness: UBWitness::Growth { profile } });
    }
    Ok(UBVerdict::Inconclusive { profile })
}

fn exact_ub(model: &AsrModel, family: &[SetExpr]) -> Result<UBVerdict> {
    for (index, m) in family.iter().enumerate() {
        let v = asr::bounded(model, m)?;
        if !v.is_alike() {
            return Ok(UBVerdict::NotUB { witness: UBWitness::UnboundedMember { index, verdict: Some(v) } });
        }
    }
    for (index, m) in family.iter().enumerate() {
        let mut hit = Vec::new();
        for other in family {
            if exact_meets(model, m, other)? {
                hit.push(other.clone());
            }
        }
        let v = asr::alike(model, m, &SetExpr::union(hit))?;
        if !v.is_alike() {
            return Ok(UBVerdict::NotUB { witness: UBWitness::Pair { index, verdict: v } });
        }
    }
    Ok(UBVerdict::UniformlyBounded { k: None })
}

fn exact_meets(model: &AsrModel, a: &SetExpr, b: &SetExpr) -> Result<bool> {
    match model {
        AsrModel::RayOnR => Ok(!asr::ray::summarize(&SetExpr::intersect(a.clone(), b.clone()))?.is_empty()),
        AsrModel::Discrete(_) | AsrModel::FiniteInfiniteOnN => crate::separation::meets(a, b),
        AsrModel::Subspace { parent, subset } => exact_meets(parent, &SetExpr::intersect(a.clone(), subset.clone()), b),
        _ => Err(unsupported("meeting is only decided on exact models")),
    }
}

/// Diameter of a finite point list; lattices use coordinate ranges instead
/// of all pairs.
pub fn point_diameter(space: &Space, pts: &[Point]) -> ExtReal {
    if pts.len() < 2 {
        return ExtReal::ZERO;
    }
    let Some(l) = space.as_lattice() else {
        return diameter(space, &SetExpr::explicit(pts.iter().cloned())).unwrap_or(ExtReal::Infinite);
    };
    let range = |f: &dyn Fn(&Point) -> i64| {
        let (lo, hi) = pts.iter().map(f).fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi - lo
    };
    let d = match l.metric {
        LatticeMetric::LInf => (0..l.dim).map(|i| range(&|p: &Point| p.coords()[i])).max().unwrap_or(0),
        // l1 diameter is the widest spread along a sign vector
        LatticeMetric::L1 => (0..1u32 << l.dim.saturating_sub(1))
            .map(|signs| {
                range(&|p: &Point| {
                    p.coords()
                        .iter()
                        .enumerate()
                        .map(|(i, x)| if i > 0 && signs >> (i - 1) & 1 == 1 { -x } else { *x })
                        .sum()
                })
            })
            .max()
            .unwrap_or(0),
    };
    ExtReal::Finite(int(d))
}
