use alloc::vec::Vec;

use crate::asr::{alike, bounded, AsrModel, ProbeBudget, ScaleVerdict, Witness};
use crate::error::unsupported;
use crate::spaces::SetExpr;
use crate::{int, Error, ExtReal, Point, Rational, Result};

use super::{MapDescriptor, PointMap};

/// Observed expansion `s(r) = sup{ d'(f x, f x') : d(x,x') < r }` per
/// window radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusProfile {
    pub windows: Vec<(Rational, Vec<(Rational, ExtReal)>)>,
}

impl ModulusProfile {
    /// `s(r)` at the largest window.
    pub fn at(&self, r: &Rational) -> Option<ExtReal> {
        self.windows.last()?.1.iter().find(|(s, _)| s == r).map(|(_, v)| *v)
    }
}

/// Deepest preimage of the codomain ball `B(y0, rho)` per window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Properness {
    pub rho: Rational,
    pub reach: Vec<(Rational, Option<Rational>)>,
    pub proper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoarseVerdict {
    Coarse {
        profile: ModulusProfile,
        properness: Properness,
    },
    /// `d(x, y) < r` while `d'(f x, f y)` exceeds the expansion seen in
    /// every smaller window.
    NotCoarse {
        x: Point,
        y: Point,
        r: Rational,
        image_distance: ExtReal,
        profile: ModulusProfile,
    },
    /// Preimages of a bounded set reach the edge of every window.
    NotProper {
        witness: Point,
        properness: Properness,
        profile: ModulusProfile,
    },
    Inconclusive {
        profile: ModulusProfile,
    },
}

impl CoarseVerdict {
    pub fn is_coarse(&self) -> bool {
        matches!(self, CoarseVerdict::Coarse { .. })
    }

    pub fn profile(&self) -> &ModulusProfile {
        match self {
            CoarseVerdict::Coarse { profile, .. }
            | CoarseVerdict::NotCoarse { profile, .. }
            | CoarseVerdict::NotProper { profile, .. }
            | CoarseVerdict::Inconclusive { profile } => profile,
        }
    }
}

fn image(f: &MapDescriptor, x: &Point) -> Result<Point> {
    let y = f.map.apply(x)?;
    if !f.codomain.contains(&y) {
        return Err(Error::InvalidPoint(y));
    }
    Ok(y)
}

fn constant_on(values: &[ExtReal]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// Probes the expansion modulus and properness of `f` on the domain
/// windows of `probe`.
pub fn coarse_check(f: &MapDescriptor, probe: &ProbeBudget) -> Result<CoarseVerdict> {
    probe.validate()?;
    let dom = &f.domain;
    let big = probe.max_radius();
    let r_max = probe.max_scale();
    let pts = dom.enumerate(&big);
    let nb = dom.neighborhood(&r_max, false);

    // (outer depth, d, d', x, y) for every close pair in the largest window
    let mut pairs: Vec<(Rational, Rational, ExtReal, Point, Point)> = Vec::new();
    for x in &pts {
        let fx = image(f, x)?;
        let dx = dom.depth(x).finite().unwrap();
        for (y, d) in nb.around(dom, x) {
            let dy = match dom.depth(&y) {
                ExtReal::Finite(v) if v <= big => v,
                _ => continue,
            };
            let fy = image(f, &y)?;
            pairs.push((dx.max(dy), d, f.codomain.dist(&fx, &fy), x.clone(), y));
        }
    }

    let mut windows = Vec::new();
    for radius in &probe.radii {
        let row = probe
            .scales
            .iter()
            .map(|r| {
                let s = pairs.iter().filter(|p| p.0 <= *radius && p.1 < *r).map(|p| p.2).max().unwrap_or(ExtReal::ZERO);
                (*r, s)
            })
            .collect();
        windows.push((*radius, row));
    }
    let profile = ModulusProfile { windows };

    let tail = probe.tail().len();
    let first_tail = profile.windows.len() - tail;
    for (k, r) in probe.scales.iter().enumerate() {
        let series: Vec<ExtReal> = profile.windows[first_tail..].iter().map(|(_, row)| row[k].1).collect();
        if constant_on(&series) {
            continue;
        }
        let top = *series.last().unwrap();
        if !top.gt(&r_max) {
            return Ok(CoarseVerdict::Inconclusive { profile });
        }
        // first pair in scan order realising the expansion at the largest window
        let p = pairs.iter().find(|p| p.1 < *r && p.2 == top).unwrap();
        return Ok(CoarseVerdict::NotCoarse { x: p.3.clone(), y: p.4.clone(), r: *r, image_distance: top, profile });
    }

    let properness = properness(f, probe, &pts)?;
    if !properness.proper {
        let deepest = properness.reach.last().and_then(|(_, d)| *d).unwrap();
        let witness = first_reaching(f, &pts, &properness.rho, &deepest)?;
        return Ok(CoarseVerdict::NotProper { witness, properness, profile });
    }
    Ok(CoarseVerdict::Coarse { profile, properness })
}

fn properness(f: &MapDescriptor, probe: &ProbeBudget, pts: &[Point]) -> Result<Properness> {
    let rho = probe.max_scale();
    let y0 = f.codomain.basepoint();
    let mut hits: Vec<Rational> = Vec::new();
    for x in pts {
        if f.codomain.dist(&y0, &image(f, x)?).lt(&rho) {
            hits.push(f.domain.depth(x).finite().unwrap());
        }
    }
    let reach: Vec<(Rational, Option<Rational>)> =
        probe.radii.iter().map(|radius| (*radius, hits.iter().filter(|d| *d <= radius).max().copied())).collect();
    let tail = &reach[reach.len() - probe.tail().len()..];
    let proper = tail.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(Properness { rho, reach, proper })
}

fn first_reaching(f: &MapDescriptor, pts: &[Point], rho: &Rational, depth: &Rational) -> Result<Point> {
    let y0 = f.codomain.basepoint();
    for x in pts {
        if f.domain.depth(x).finite().as_ref() == Some(depth) && f.codomain.dist(&y0, &image(f, x)?).lt(rho) {
            return Ok(x.clone());
        }
    }
    Err(unsupported("no preimage point at the recorded depth"))
}

/// Whether `sup_x d(f x, g x)` is finite, probed on the domain windows.
pub fn close_check(f: &MapDescriptor, g: &MapDescriptor, probe: &ProbeBudget) -> Result<ScaleVerdict> {
    probe.validate()?;
    if f.domain != g.domain || f.codomain != g.codomain {
        return Err(unsupported("closeness needs a shared domain and codomain"));
    }
    let big = probe.max_radius();
    let pts = f.domain.enumerate(&big);
    let mut gaps: Vec<(Rational, ExtReal, Point)> = Vec::new();
    for x in &pts {
        let d = f.codomain.dist(&image(f, x)?, &image(g, x)?);
        gaps.push((f.domain.depth(x).finite().unwrap(), d, x.clone()));
    }
    let per_window: Vec<ExtReal> = probe
        .radii
        .iter()
        .map(|radius| gaps.iter().filter(|g| g.0 <= *radius).map(|g| g.1).max().unwrap_or(ExtReal::ZERO))
        .collect();
    let tail = &per_window[per_window.len() - probe.tail().len()..];
    let top = *per_window.last().unwrap();
    if constant_on(tail) {
        if let ExtReal::Finite(k) = top {
            return Ok(ScaleVerdict::AlikeWithin(k + int(1)));
        }
    }
    if top.gt(&probe.max_scale()) {
        // ties go to the larger point
        let (_, d, x) = gaps.iter().filter(|g| g.1 == top).max_by(|a, b| a.2.cmp(&b.2)).unwrap();
        return Ok(ScaleVerdict::RefutedUpTo {
            radius: Some(big),
            witness: Witness::Point { point: x.clone(), distance: *d, exact: true },
        });
    }
    Ok(ScaleVerdict::Inconclusive { max_radius: big, max_scale: probe.max_scale() })
}

/// `f(S)` as a set expression: symbolic when point preimages exist,
/// otherwise the explicit image of the window part of `S`.
pub fn image_set(f: &MapDescriptor, s: &SetExpr, radius: &Rational) -> Result<SetExpr> {
    if f.map.has_preimage() && s.membership_is_total() {
        return Ok(SetExpr::Image(f.map.clone(), alloc::boxed::Box::new(s.clone())));
    }
    let mut out = Vec::new();
    for x in s.window_points(&f.domain, radius)? {
        out.push(image(f, &x)?);
    }
    Ok(SetExpr::explicit(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub source: ScaleVerdict,
    /// Only computed when the source pair is certified alike.
    pub image: Option<ScaleVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCheckReport {
    pub pairs: Vec<PairCheck>,
    /// `bounded(f⁻¹(S))` for each supplied bounded `S`.
    pub properness: Vec<ScaleVerdict>,
}

impl MapCheckReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.image.as_ref().is_none_or(ScaleVerdict::is_alike))
            && self.properness.iter().all(ScaleVerdict::is_alike)
    }
}

/// Checks that `f` carries alike pairs to alike pairs and pulls the given
/// bounded sets back to bounded sets.
pub fn asr_map_check(
    f: &MapDescriptor,
    model_x: &AsrModel,
    model_y: &AsrModel,
    pairs: &[(SetExpr, SetExpr)],
    bounded_sets: &[SetExpr],
) -> Result<MapCheckReport> {
    let radius = model_x.windowed().map(|(_, p)| p.max_radius()).unwrap_or_else(|| int(0));
    let mut out = Vec::new();
    for (a, b) in pairs {
        let source = alike(model_x, a, b)?;
        let image = if source.is_alike() {
            Some(alike(model_y, &image_set(f, a, &radius)?, &image_set(f, b, &radius)?)?)
        } else {
            None
        };
        out.push(PairCheck { source, image });
    }
    let mut prop = Vec::new();
    for s in bounded_sets {
        prop.push(bounded(model_x, &SetExpr::Preimage(f.map.clone(), alloc::boxed::Box::new(s.clone())))?);
    }
    Ok(MapCheckReport { pairs: out, properness: prop })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub f: CoarseVerdict,
    pub g: CoarseVerdict,
    /// `g∘f` against the identity of the domain of `f`.
    pub gf: ScaleVerdict,
    /// `f∘g` against the identity of the domain of `g`.
    pub fg: ScaleVerdict,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.f.is_coarse() && self.g.is_coarse() && self.gf.is_alike() && self.fg.is_alike()
    }
}

/// `g ∘ f`, evaluated pointwise.
pub fn then(f: &MapDescriptor, g: &MapDescriptor) -> MapDescriptor {
    MapDescriptor {
        map: PointMap::Compose(alloc::vec![f.map.clone(), g.map.clone()]),
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
    }
}

pub fn identity(space: &crate::Space) -> MapDescriptor {
    MapDescriptor { map: PointMap::Identity, domain: space.clone(), codomain: space.clone() }
}

/// Whether `f: X → Y` and `g: Y → X` are mutually inverse up to closeness,
/// with both maps coarse.
pub fn equivalence_check(f: &MapDescriptor, g: &MapDescriptor, probe: &ProbeBudget) -> Result<EquivalenceReport> {
    if f.codomain != g.domain || g.codomain != f.domain {
        return Err(unsupported("equivalence needs f: X → Y and g: Y → X"));
    }
    Ok(EquivalenceReport {
        f: coarse_check(f, probe)?,
        g: coarse_check(g, probe)?,
        gf: close_check(&then(f, g), &identity(&f.domain), probe)?,
        fg: close_check(&then(g, f), &identity(&g.domain), probe)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Space;

    fn on_z(map: PointMap) -> MapDescriptor {
        MapDescriptor { map, domain: Space::integers(), codomain: Space::integers() }
    }

    fn evens() -> Space {
        Space::subspace(Space::integers(), SetExpr::evens()).unwrap()
    }

    #[test]
    fn doubling_is_coarse() {
        let v = coarse_check(&on_z(PointMap::Scale(2)), &ProbeBudget::default()).unwrap();
        assert!(v.is_coarse());
        for r in [1, 2, 4, 8, 16] {
            // pairs at distance < r are at most r-1 apart
            assert_eq!(v.profile().at(&int(r)), Some(ExtReal::from_int(2 * (r - 1))));
        }
    }

    #[test]
    fn identity_profile() {
        let v = coarse_check(&on_z(PointMap::Identity), &ProbeBudget::default()).unwrap();
        assert!(v.is_coarse());
        assert_eq!(v.profile().at(&int(4)), Some(ExtReal::from_int(3)));
    }

    #[test]
    fn squaring_is_not_coarse() {
        match coarse_check(&on_z(PointMap::Square), &ProbeBudget::default()).unwrap() {
            CoarseVerdict::NotCoarse { x, y, r, image_distance, .. } => {
                assert_eq!(r, int(2));
                let (a, b) = (x.as_scalar().unwrap(), y.as_scalar().unwrap());
                assert_eq!((a - b).abs(), 1);
                assert_eq!(image_distance, ExtReal::from_int((a * a - b * b).abs()));
                assert_eq!(image_distance, ExtReal::from_int(399));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constant_map_is_not_proper() {
        match coarse_check(&on_z(PointMap::Constant(Point::scalar(0))), &ProbeBudget::default()).unwrap() {
            CoarseVerdict::NotProper { witness, .. } => assert_eq!(witness, Point::scalar(-200)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn closeness() {
        let p = ProbeBudget::default();
        let id = on_z(PointMap::Identity);
        assert_eq!(
            close_check(&id, &on_z(PointMap::Translate(alloc::vec![5])), &p).unwrap(),
            ScaleVerdict::AlikeWithin(int(6))
        );
        assert_eq!(close_check(&id, &id, &p).unwrap(), ScaleVerdict::AlikeWithin(int(1)));
        assert_eq!(
            close_check(&id, &on_z(PointMap::Scale(2)), &p).unwrap(),
            ScaleVerdict::RefutedUpTo {
                radius: Some(int(200)),
                witness: Witness::Point { point: Point::scalar(200), distance: ExtReal::from_int(200), exact: true }
            }
        );
    }

    #[test]
    fn integers_and_even_integers() {
        let p = ProbeBudget::default();
        let f = MapDescriptor { map: PointMap::Scale(2), domain: Space::integers(), codomain: evens() };
        let g = MapDescriptor { map: PointMap::FloorDiv(2), domain: evens(), codomain: Space::integers() };
        let rep = equivalence_check(&f, &g, &p).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.gf, ScaleVerdict::AlikeWithin(int(1)));
        assert_eq!(rep.fg, ScaleVerdict::AlikeWithin(int(1)));
        let swapped = equivalence_check(&g, &f, &p).unwrap();
        assert_eq!((swapped.gf, swapped.fg), (rep.fg, rep.gf));
    }

    #[test]
    fn halving_with_floor() {
        let p = ProbeBudget::default();
        let rep = equivalence_check(&on_z(PointMap::Scale(2)), &on_z(PointMap::FloorDiv(2)), &p).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.gf, ScaleVerdict::AlikeWithin(int(1)));
        assert_eq!(rep.fg, ScaleVerdict::AlikeWithin(int(2)));
        let bad = equivalence_check(&on_z(PointMap::Square), &on_z(PointMap::IntSqrt), &p).unwrap();
        assert!(!bad.passed());
        assert!(matches!(bad.f, CoarseVerdict::NotCoarse { .. }));
    }

    #[test]
    fn images_of_alike_pairs() {
        let z = Space::integers();
        let m = AsrModel::metric(z, ProbeBudget::default());
        let f = on_z(PointMap::Scale(2));
        let rep = asr_map_check(&f, &m, &m, &[(SetExpr::evens(), SetExpr::odds())], &[SetExpr::scalars([0])]).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.pairs[0].image, Some(ScaleVerdict::AlikeWithin(int(4))));
        let c = on_z(PointMap::Constant(Point::scalar(0)));
        let rep = asr_map_check(&c, &m, &m, &[], &[SetExpr::scalars([0])]).unwrap();
        assert!(!rep.passed());
        assert!(rep.properness[0].is_refuted());
    }
}
