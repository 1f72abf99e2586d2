use alloc::vec::Vec;

use crate::spaces::{dist_to_points, SetExpr, Space};
use crate::{ExtReal, Point, Rational, Result};

use super::{ProbeBudget, ScaleVerdict, Witness};

/// A window point with its depth and its distance to the other set when
/// that distance is at most the largest probed scale.
struct Probe {
    point: Point,
    depth: Rational,
    near: Option<Rational>,
}

fn probe_side(space: &Space, pts: &[Point], other: &SetExpr, probe: &ProbeBudget) -> Result<Vec<Probe>> {
    let r_max = probe.max_scale();
    let big = probe.max_radius();
    let r_min = probe.scales[0];
    let nb = space.neighborhood(&r_max, true);
    let mut out = Vec::new();
    for p in pts {
        let depth = space.depth(p).finite().expect("window points have finite depth");
        if depth > big - r_min {
            continue;
        }
        let near = nb.nearest(space, p, other)?.map(|(_, d)| d);
        out.push(Probe { point: p.clone(), depth, near });
    }
    Ok(out)
}

fn certifies(side: &[Probe], radius: &Rational, r: &Rational) -> bool {
    side.iter().filter(|p| p.depth <= *radius - *r).all(|p| p.near.is_some_and(|d| d < *r))
}

/// Windowed semi-decision of finite Hausdorff distance with the
/// boundary-shrink rule.
pub(super) fn alike(space: &Space, a: &SetExpr, b: &SetExpr, probe: &ProbeBudget) -> Result<ScaleVerdict> {
    probe.validate()?;
    let big = probe.max_radius();
    let a_pts = a.window_points(space, &big)?;
    let b_pts = b.window_points(space, &big)?;
    let sides = [probe_side(space, &a_pts, b, probe)?, probe_side(space, &b_pts, a, probe)?];

    for r in &probe.scales {
        if probe.radii.iter().all(|radius| sides.iter().all(|s| certifies(s, radius, r))) {
            return Ok(ScaleVerdict::AlikeWithin(*r));
        }
    }

    let r_max = probe.max_scale();
    for radius in &probe.radii {
        for (side, other_pts) in sides.iter().zip([&b_pts, &a_pts]) {
            let best = side
                .iter()
                .filter(|p| p.depth <= *radius - r_max && p.near.is_none())
                .min_by(|x, y| (x.depth, &x.point).cmp(&(y.depth, &y.point)));
            if let Some(p) = best {
                let witness = exact_or_lower(space, &p.point, &p.depth, other_pts, &big);
                return Ok(ScaleVerdict::RefutedUpTo { radius: Some(*radius), witness });
            }
        }
    }
    Ok(ScaleVerdict::Inconclusive { max_radius: big, max_scale: r_max })
}

/// Distance from `p` to the other set: exact when the nearest window point
/// is closer than anything outside the window could be.
fn exact_or_lower(space: &Space, p: &Point, depth: &Rational, other: &[Point], big: &Rational) -> Witness {
    let slack = *big - *depth;
    let d = dist_to_points(space, p, other);
    if d.le(&slack) {
        Witness::Point { point: p.clone(), distance: d, exact: true }
    } else {
        Witness::Point { point: p.clone(), distance: ExtReal::Finite(slack), exact: false }
    }
}

/// Windowed boundedness: `A ⊆ B(x, r)` on every probed window for an anchor
/// `x` (the basepoint, or a component basepoint of a disjoint union).
pub(super) fn bounded(space: &Space, a: &SetExpr, probe: &ProbeBudget) -> Result<ScaleVerdict> {
    probe.validate()?;
    let big = probe.max_radius();
    let pts = a.window_points(space, &big)?;
    let anchors = anchors(space);
    let mut refutation = None;
    for x in &anchors {
        let side: Vec<(Rational, Point, ExtReal)> =
            pts.iter().map(|p| (space.depth(p).finite().unwrap(), p.clone(), space.dist(x, p))).collect();
        for r in &probe.scales {
            let ok = probe
                .radii
                .iter()
                .all(|radius| side.iter().filter(|(depth, _, _)| *depth <= *radius - *r).all(|(_, _, d)| d.lt(r)));
            if ok {
                return Ok(ScaleVerdict::AlikeWithin(*r));
            }
        }
        if refutation.is_none() {
            let r_max = probe.max_scale();
            'windows: for radius in &probe.radii {
                let mut best: Option<&(Rational, Point, ExtReal)> = None;
                for s in side.iter().filter(|(depth, _, d)| *depth <= *radius - r_max && d.gt(&r_max)) {
                    if best.is_none_or(|b| (s.0, &s.1) < (b.0, &b.1)) {
                        best = Some(s);
                    }
                }
                if let Some((_, p, d)) = best {
                    refutation = Some(ScaleVerdict::RefutedUpTo {
                        radius: Some(*radius),
                        witness: Witness::Point { point: p.clone(), distance: *d, exact: true },
                    });
                    break 'windows;
                }
            }
        }
    }
    Ok(refutation.unwrap_or(ScaleVerdict::Inconclusive { max_radius: big, max_scale: probe.max_scale() }))
}

fn anchors(space: &Space) -> Vec<Point> {
    match space {
        Space::DisjointUnion(a, b) => alloc::vec![Point::tagged(0, &a.basepoint()), Point::tagged(1, &b.basepoint())],
        _ => alloc::vec![space.basepoint()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, spaces::LatticeMetric};

    fn probe(radii: &[i64], scales: &[i64]) -> ProbeBudget {
        ProbeBudget::new(radii.iter().map(|r| int(*r)).collect(), scales.iter().map(|r| int(*r)).collect(), 3).unwrap()
    }

    #[test]
    fn naturals_versus_squares() {
        let z = Space::integers();
        let v = alike(&z, &SetExpr::naturals(), &SetExpr::squares(), &probe(&[200], &[1, 2, 4, 8, 10])).unwrap();
        assert_eq!(
            v,
            ScaleVerdict::RefutedUpTo {
                radius: Some(int(200)),
                witness: Witness::Point { point: Point::scalar(132), distance: ExtReal::from_int(11), exact: true },
            }
        );
    }

    #[test]
    fn evens_and_odds_are_alike_at_scale_two() {
        let z = Space::integers();
        let v = alike(&z, &SetExpr::evens(), &SetExpr::odds(), &ProbeBudget::default()).unwrap();
        assert_eq!(v, ScaleVerdict::AlikeWithin(int(2)));
        assert_eq!(
            alike(&z, &SetExpr::evens(), &SetExpr::evens(), &ProbeBudget::default()).unwrap(),
            ScaleVerdict::AlikeWithin(int(1))
        );
    }

    #[test]
    fn boundary_shrink_avoids_edge_artifacts() {
        // the multiples of 10 against the multiples of 10 shifted by 3: d_H = 3
        let z = Space::integers();
        let a = SetExpr::residues(10, &[0]);
        let b = SetExpr::residues(10, &[3]);
        let v = alike(&z, &a, &b, &probe(&[25, 50, 100], &[1, 2, 4, 8])).unwrap();
        assert_eq!(v, ScaleVerdict::AlikeWithin(int(4)));
    }

    #[test]
    fn half_planes_in_the_plane() {
        let z2 = Space::lattice(2, LatticeMetric::L1);
        let upper = SetExpr::Boxes(alloc::vec![crate::spaces::IntBox::new(alloc::vec![(None, None), (Some(0), None)])]);
        let shifted =
            SetExpr::Boxes(alloc::vec![crate::spaces::IntBox::new(alloc::vec![(None, None), (Some(3), None)])]);
        let v = alike(&z2, &upper, &shifted, &probe(&[10, 15, 20], &[1, 2, 4, 8])).unwrap();
        assert_eq!(v, ScaleVerdict::AlikeWithin(int(4)));
    }

    #[test]
    fn evens_are_unbounded() {
        let z = Space::integers();
        let v = bounded(&z, &SetExpr::evens(), &ProbeBudget::default()).unwrap();
        match v {
            ScaleVerdict::RefutedUpTo { radius, witness: Witness::Point { point, distance, .. } } => {
                assert_eq!(radius, Some(int(50)));
                assert_eq!(point, Point::scalar(-18));
                assert_eq!(distance, ExtReal::from_int(18));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            bounded(&z, &SetExpr::scalars([-3, 5]), &ProbeBudget::default()).unwrap(),
            ScaleVerdict::AlikeWithin(int(8))
        );
    }

    #[test]
    fn bounded_in_the_far_component() {
        let u = Space::disjoint_union(Space::integers(), Space::integers());
        let far = SetExpr::explicit([Point::from([1, 0]), Point::from([1, 2])]);
        assert!(bounded(&u, &far, &ProbeBudget::default()).unwrap().is_alike());
        let both = SetExpr::explicit([Point::from([0, 0]), Point::from([1, 0])]);
        assert!(bounded(&u, &both, &ProbeBudget::default()).unwrap().is_refuted());
    }
}
