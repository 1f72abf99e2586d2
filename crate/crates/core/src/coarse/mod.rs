//! Entourages, the resemblance they induce, and membership in the maximal
//! coarse structure of a resemblance.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::unsupported;
use crate::maps::PointMap;
use crate::spaces::{SetExpr, Space};
use crate::{int, Error, ExtReal, Point, Rational, Result};

mod maximal;
mod structures;
mod via;

pub use maximal::{in_maximal, MaximalLimits, MaximalVerdict};
pub use structures::{NatStructure, StructureVerdict};
pub use via::{alike_via, Side, ViaVerdict, DEFAULT_DEPTH};

pub type Pair = (Point, Point);

/// A subset of `X × X`.
#[derive(Clone, Debug, PartialEq)]
pub enum Entourage {
    Explicit(BTreeSet<Pair>),
    /// All pairs at distance at most `bound`.
    Displacement {
        space: Space,
        bound: Rational,
    },
    /// `(x, f(x))` for `x` in the closed window of radius `window`.
    Graph {
        map: PointMap,
        domain: Space,
        window: Rational,
    },
}

impl Entourage {
    pub fn explicit<I: IntoIterator<Item = Pair>>(pairs: I) -> Self {
        Entourage::Explicit(pairs.into_iter().collect())
    }

    pub fn diagonal<I: IntoIterator<Item = Point>>(points: I) -> Self {
        Entourage::explicit(points.into_iter().map(|p| (p.clone(), p)))
    }

    pub fn displacement(space: Space, bound: Rational) -> Self {
        Entourage::Displacement { space, bound }
    }

    /// The finite pair list behind an explicit or graph entourage.
    pub fn pairs(&self) -> Result<BTreeSet<Pair>> {
        match self {
            Entourage::Explicit(ps) => Ok(ps.clone()),
            Entourage::Graph { map, domain, window } => {
                let mut out = BTreeSet::new();
                for x in domain.enumerate(window) {
                    let y = map.apply(&x)?;
                    out.insert((x, y));
                }
                Ok(out)
            }
            Entourage::Displacement { .. } => Err(unsupported("displacement entourages are not finite pair lists")),
        }
    }

    pub fn contains(&self, x: &Point, y: &Point) -> Result<bool> {
        match self {
            Entourage::Explicit(ps) => Ok(ps.contains(&(x.clone(), y.clone()))),
            Entourage::Displacement { space, bound } => Ok(space.dist(x, y).le(bound)),
            Entourage::Graph { map, domain, window } => {
                Ok(domain.contains(x) && domain.depth(x).le(window) && map.apply(x)? == *y)
            }
        }
    }

    pub fn inverse(&self) -> Result<Entourage> {
        match self {
            Entourage::Displacement { .. } => Ok(self.clone()),
            _ => Ok(Entourage::explicit(self.pairs()?.into_iter().map(|(x, y)| (y, x)))),
        }
    }

    /// `self ∘ other = {(x,y) : (x,z) ∈ other, (z,y) ∈ self}`. Displacement
    /// bounds add; finite pair lists compose exactly.
    pub fn compose(&self, other: &Entourage) -> Result<Entourage> {
        match (self, other) {
            (Entourage::Displacement { space: s, bound: a }, Entourage::Displacement { space: t, bound: b }) => {
                if s != t {
                    return Err(unsupported("displacement entourages over different spaces"));
                }
                Ok(Entourage::Displacement { space: s.clone(), bound: *a + *b })
            }
            (Entourage::Displacement { .. }, _) | (_, Entourage::Displacement { .. }) => {
                Err(unsupported("cannot compose a displacement entourage with a finite pair list"))
            }
            _ => {
                let e = self.pairs()?;
                let f = other.pairs()?;
                let mut out = BTreeSet::new();
                for (x, z) in &f {
                    for (_, y) in e.range((z.clone(), Point::new(&[]))..).take_while(|(w, _)| w == z) {
                        out.insert((x.clone(), y.clone()));
                    }
                }
                Ok(Entourage::Explicit(out))
            }
        }
    }

    pub fn union(&self, other: &Entourage) -> Result<Entourage> {
        match (self, other) {
            (Entourage::Displacement { space: s, bound: a }, Entourage::Displacement { space: t, bound: b })
                if s == t =>
            {
                Ok(Entourage::Displacement { space: s.clone(), bound: (*a).max(*b) })
            }
            (Entourage::Displacement { .. }, _) | (_, Entourage::Displacement { .. }) => {
                Err(unsupported("cannot unite a displacement entourage with a finite pair list"))
            }
            _ => {
                let mut e = self.pairs()?;
                e.extend(other.pairs()?);
                Ok(Entourage::Explicit(e))
            }
        }
    }

    /// Whether `y ∈ E(S) = {y : (x,y) ∈ E for some x ∈ S}`.
    pub fn image_contains(&self, s: &SetExpr, y: &Point) -> Result<bool> {
        match self {
            Entourage::Explicit(ps) => {
                for (x, z) in ps {
                    if z == y && s.contains(x)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Entourage::Displacement { space, bound } => {
                if *bound < int(0) || !space.contains(y) {
                    return Ok(false);
                }
                Ok(space.neighborhood(bound, true).nearest(space, y, s)?.is_some())
            }
            Entourage::Graph { map, domain, window } => {
                let xs = if map.has_preimage() {
                    map.preimage(y)?
                } else {
                    domain.enumerate(window).into_iter().filter(|x| map.apply(x).as_ref() == Ok(y)).collect()
                };
                for x in xs {
                    if domain.contains(&x) && domain.depth(&x).le(window) && s.contains(&x)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// `E(A)` for a finite `A`.
    pub fn image(&self, a: &BTreeSet<Point>) -> Result<BTreeSet<Point>> {
        match self {
            Entourage::Displacement { space, bound } => {
                let nb = space.neighborhood(bound, true);
                Ok(a.iter().filter(|p| space.contains(p)).flat_map(|p| nb.around(space, p)).map(|(q, _)| q).collect())
            }
            _ => Ok(self.pairs()?.into_iter().filter(|(x, _)| a.contains(x)).map(|(_, y)| y).collect()),
        }
    }

    /// The pairs whose first point lies in the closed window of radius
    /// `radius` of `space`.
    pub fn sample(&self, space: &Space, radius: &Rational) -> Result<Vec<Pair>> {
        match self {
            Entourage::Displacement { space: s, bound } => {
                let nb = s.neighborhood(bound, true);
                let mut out = Vec::new();
                for x in s.enumerate(radius) {
                    for (y, _) in nb.around(s, &x) {
                        out.push((x.clone(), y));
                    }
                }
                Ok(out)
            }
            _ => {
                Ok(self.pairs()?.into_iter().filter(|(x, _)| space.contains(x) && space.depth(x).le(radius)).collect())
            }
        }
    }

    /// `sup d(x,y)` over a finite pair list, or the bound of a displacement
    /// entourage.
    pub fn displacement_sup(&self, space: &Space) -> Result<ExtReal> {
        match self {
            Entourage::Displacement { bound, .. } => Ok(ExtReal::Finite(*bound)),
            _ => Ok(self.pairs()?.iter().map(|(x, y)| space.dist(x, y)).max().unwrap_or(ExtReal::ZERO)),
        }
    }
}

/// First and second projections of a finite pair list.
pub fn projections(pairs: &BTreeSet<Pair>) -> (BTreeSet<Point>, BTreeSet<Point>) {
    (pairs.iter().map(|(x, _)| x.clone()).collect(), pairs.iter().map(|(_, y)| y.clone()).collect())
}

/// The largest fibre `max(|E(x)|, |E⁻¹(x)|)` of a finite pair list.
pub fn fibre_bound(pairs: &BTreeSet<Pair>) -> usize {
    let mut out: alloc::collections::BTreeMap<&Point, usize> = Default::default();
    let mut inn: alloc::collections::BTreeMap<&Point, usize> = Default::default();
    for (x, y) in pairs {
        *out.entry(x).or_default() += 1;
        *inn.entry(y).or_default() += 1;
    }
    out.values().chain(inn.values()).copied().max().unwrap_or(0)
}

pub(crate) fn require_explicit(e: &Entourage) -> Result<&BTreeSet<Pair>> {
    match e {
        Entourage::Explicit(ps) => Ok(ps),
        _ => Err(Error::UnsupportedModel("expected an explicit pair list".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: i64) -> Point {
        Point::scalar(n)
    }

    fn pairs(ps: &[(i64, i64)]) -> Entourage {
        Entourage::explicit(ps.iter().map(|(a, b)| (p(*a), p(*b))))
    }

    #[test]
    fn single_chain() {
        let e = pairs(&[(1, 2)]);
        let f = pairs(&[(0, 1)]);
        assert_eq!(e.compose(&f).unwrap(), pairs(&[(0, 2)]));
        assert_eq!(f.compose(&e).unwrap(), pairs(&[]));
    }

    #[test]
    fn diagonal_is_neutral() {
        let delta = Entourage::diagonal((0..3).map(p));
        let f = pairs(&[(0, 1), (2, 0), (1, 1)]);
        assert_eq!(delta.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&delta).unwrap(), f);
    }

    #[test]
    fn displacement_bounds_add() {
        let z = Space::integers();
        let e = Entourage::displacement(z.clone(), int(3));
        let f = Entourage::displacement(z.clone(), int(5));
        let c = e.compose(&f).unwrap();
        assert_eq!(c, Entourage::displacement(z.clone(), int(8)));
        // brute force on a window: (x,y) is in the composite iff some z links them
        for x in -12..=12i64 {
            for y in -12..=12i64 {
                let linked = (-30..=30i64).any(|m| (m - x).abs() <= 5 && (y - m).abs() <= 3);
                assert_eq!(c.contains(&p(x), &p(y)).unwrap(), linked);
            }
        }
    }

    #[test]
    fn mixed_composition_is_rejected() {
        let e = Entourage::displacement(Space::integers(), int(1));
        assert!(matches!(e.compose(&pairs(&[(0, 1)])), Err(Error::UnsupportedModel(_))));
    }

    #[test]
    fn images_and_inverse() {
        let e = pairs(&[(0, 1), (0, 2), (3, 4)]);
        let a: BTreeSet<Point> = [p(0)].into();
        assert_eq!(e.image(&a).unwrap(), [p(1), p(2)].into());
        assert!(e.image_contains(&SetExpr::scalars([3]), &p(4)).unwrap());
        assert!(!e.image_contains(&SetExpr::scalars([3]), &p(1)).unwrap());
        assert_eq!(e.inverse().unwrap(), pairs(&[(1, 0), (2, 0), (4, 3)]));
        let d = Entourage::displacement(Space::integers(), int(1));
        assert_eq!(d.image(&a).unwrap(), [p(-1), p(0), p(1)].into());
        assert!(d.image_contains(&SetExpr::odds(), &p(4)).unwrap());
        assert_eq!(fibre_bound(&e.pairs().unwrap()), 2);
    }

    #[test]
    fn graph_entourage() {
        let g = Entourage::Graph { map: PointMap::Scale(2), domain: Space::integers(), window: int(3) };
        assert!(g.contains(&p(3), &p(6)).unwrap());
        assert!(!g.contains(&p(4), &p(8)).unwrap());
        assert!(g.image_contains(&SetExpr::naturals(), &p(4)).unwrap());
        assert!(!g.image_contains(&SetExpr::naturals(), &p(-4)).unwrap());
        assert_eq!(g.displacement_sup(&Space::integers()).unwrap(), ExtReal::from_int(3));
    }
}
