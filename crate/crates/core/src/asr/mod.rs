//! Asymptotic resemblance: windowed metric semi-decisions, exact models,
//! boundedness, decomposition, connectedness and the axiom checker.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{invalid, unsupported};
use crate::natset::{finiteness, NatSet};
use crate::spaces::{SetExpr, Space};
use crate::{int, ExtReal, Point, Rational, Result};

mod axioms;
mod decompose;
pub mod ray;
mod windowed;

pub use axioms::{check_asr_axioms, check_asr_axioms_sampled};
pub use decompose::decompose;

/// Window radii, candidate scales and the stability window of a probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeBudget {
    pub radii: Vec<Rational>,
    pub scales: Vec<Rational>,
    pub stability: usize,
}

impl Default for ProbeBudget {
    fn default() -> Self {
        ProbeBudget {
            radii: [25, 50, 100, 200].into_iter().map(int).collect(),
            scales: [1, 2, 4, 8, 16].into_iter().map(int).collect(),
            stability: 3,
        }
    }
}

impl ProbeBudget {
    pub fn new(radii: Vec<Rational>, scales: Vec<Rational>, stability: usize) -> Result<Self> {
        let p = ProbeBudget { radii, scales, stability };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ascending = |v: &[Rational]| v.windows(2).all(|w| w[0] < w[1]);
        if self.radii.is_empty() || !ascending(&self.radii) || self.radii[0] < int(0) {
            return Err(invalid("probe radii must be a nonempty strictly ascending list of nonnegative values"));
        }
        if self.scales.is_empty() || !ascending(&self.scales) || self.scales[0] <= int(0) {
            return Err(invalid("probe scales must be a nonempty strictly ascending list of positive values"));
        }
        if self.stability == 0 {
            return Err(invalid("stability window must be positive"));
        }
        Ok(())
    }

    pub fn max_radius(&self) -> Rational {
        *self.radii.last().unwrap()
    }

    pub fn max_scale(&self) -> Rational {
        *self.scales.last().unwrap()
    }

    /// The radii making up the trailing stability window.
    pub fn tail(&self) -> &[Rational] {
        let k = self.stability.min(self.radii.len());
        &self.radii[self.radii.len() - k..]
    }
}

/// Why an exact model refuted alikeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    FiniteVersusInfinite,
    InfiniteSymmetricDifference,
    EmptyVersusNonempty,
    UnboundedVersusBounded,
}

impl Reason {
    pub fn name(&self) -> &'static str {
        match self {
            Reason::FiniteVersusInfinite => "finite-versus-infinite",
            Reason::InfiniteSymmetricDifference => "infinite-symmetric-difference",
            Reason::EmptyVersusNonempty => "empty-versus-nonempty",
            Reason::UnboundedVersusBounded => "unbounded-versus-bounded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A point at distance `distance` from the other set; a lower bound
    /// when `exact` is false.
    Point {
        point: Point,
        distance: ExtReal,
        exact: bool,
    },
    Symbolic {
        reason: Reason,
        example: Option<Point>,
    },
}

/// Outcome of a (semi-)decision about alikeness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScaleVerdict {
    AlikeWithin(Rational),
    RefutedUpTo { radius: Option<Rational>, witness: Witness },
    Inconclusive { max_radius: Rational, max_scale: Rational },
}

impl ScaleVerdict {
    pub fn is_alike(&self) -> bool {
        matches!(self, ScaleVerdict::AlikeWithin(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ScaleVerdict::RefutedUpTo { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, ScaleVerdict::Inconclusive { .. })
    }

    pub fn scale(&self) -> Option<Rational> {
        match self {
            ScaleVerdict::AlikeWithin(r) => Some(*r),
            _ => None,
        }
    }

    pub(crate) fn symbolic(reason: Reason, example: Option<Point>) -> Self {
        ScaleVerdict::RefutedUpTo { radius: None, witness: Witness::Symbolic { reason, example } }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscreteUniverse {
    Naturals,
    /// A finite universe: every pair of subsets is alike.
    Finite,
}

/// An asymptotic resemblance that can answer `alike`.
#[derive(Clone, Debug, PartialEq)]
pub enum AsrModel {
    /// Finite Hausdorff distance, probed on windows.
    MetricWindowed { space: Space, probe: ProbeBudget },
    /// Subsets of the reals: alike iff both empty, both unbounded below,
    /// or both nonempty and bounded below.
    RayOnR,
    /// Alike iff the symmetric difference is finite.
    Discrete(DiscreteUniverse),
    /// Subsets of the naturals: alike iff both infinite, or both finite and
    /// both empty or both nonempty.
    FiniteInfiniteOnN,
    /// A group with a word metric: `A ⊆ BK`, `B ⊆ AK` for a finite `K`.
    GroupLeft { space: Space, probe: ProbeBudget },
    /// The restriction to subsets of `subset`.
    Subspace { parent: Box<AsrModel>, subset: SetExpr },
}

impl AsrModel {
    pub fn metric(space: Space, probe: ProbeBudget) -> Self {
        AsrModel::MetricWindowed { space, probe }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            AsrModel::MetricWindowed { .. } | AsrModel::GroupLeft { .. } => false,
            AsrModel::Subspace { parent, .. } => parent.is_exact(),
            _ => true,
        }
    }

    /// The metric space and probe behind a windowed model.
    pub fn windowed(&self) -> Option<(&Space, &ProbeBudget)> {
        match self {
            AsrModel::MetricWindowed { space, probe } | AsrModel::GroupLeft { space, probe } => Some((space, probe)),
            AsrModel::Subspace { parent, .. } => parent.windowed(),
            _ => None,
        }
    }

    fn check_group(&self) -> Result<()> {
        if let AsrModel::GroupLeft { space: Space::Word(_), .. } | AsrModel::MetricWindowed { .. } = self {
            return Ok(());
        }
        if let AsrModel::GroupLeft { .. } = self {
            return Err(unsupported("the group model needs a word-metric space"));
        }
        Ok(())
    }
}

/// Decides or semi-decides `A λ B`.
pub fn alike(model: &AsrModel, a: &SetExpr, b: &SetExpr) -> Result<ScaleVerdict> {
    model.check_group()?;
    match model {
        AsrModel::MetricWindowed { space, probe } | AsrModel::GroupLeft { space, probe } => {
            windowed::alike(space, a, b, probe)
        }
        AsrModel::RayOnR => ray::alike(a, b),
        AsrModel::Discrete(DiscreteUniverse::Finite) => Ok(ScaleVerdict::AlikeWithin(int(0))),
        AsrModel::Discrete(DiscreteUniverse::Naturals) => discrete_alike(a, b),
        AsrModel::FiniteInfiniteOnN => finite_infinite_alike(a, b),
        AsrModel::Subspace { parent, subset } => alike(
            parent,
            &SetExpr::intersect(a.clone(), subset.clone()),
            &SetExpr::intersect(b.clone(), subset.clone()),
        ),
    }
}

/// Decides or semi-decides whether `A` is bounded.
pub fn bounded(model: &AsrModel, a: &SetExpr) -> Result<ScaleVerdict> {
    model.check_group()?;
    if a.is_plainly_empty() {
        return Ok(ScaleVerdict::AlikeWithin(int(0)));
    }
    match model {
        AsrModel::MetricWindowed { space, probe } | AsrModel::GroupLeft { space, probe } => {
            windowed::bounded(space, a, probe)
        }
        AsrModel::RayOnR => ray::bounded(a),
        AsrModel::Discrete(DiscreteUniverse::Finite) => Ok(ScaleVerdict::AlikeWithin(int(0))),
        AsrModel::Discrete(DiscreteUniverse::Naturals) | AsrModel::FiniteInfiniteOnN => {
            // bounded means alike to a singleton, i.e. finite, in both models
            match finiteness(a) {
                Some(true) => Ok(ScaleVerdict::AlikeWithin(int(0))),
                Some(false) => Ok(ScaleVerdict::symbolic(Reason::FiniteVersusInfinite, example_member(a, 0))),
                None => Err(unsupported("finiteness of this set is not decidable here")),
            }
        }
        AsrModel::Subspace { parent, subset } => bounded(parent, &SetExpr::intersect(a.clone(), subset.clone())),
    }
}

/// Checks `{x} λ {y}` for every pair.
pub fn connected(model: &AsrModel, pairs: &[(Point, Point)]) -> Result<ScaleVerdict> {
    if let Some((space, _)) = model.windowed() {
        // two singletons are alike exactly when their distance is finite
        let mut worst = int(0);
        for (x, y) in pairs {
            if !space.contains(x) || !space.contains(y) {
                return Err(crate::Error::InvalidPoint(if space.contains(x) { y.clone() } else { x.clone() }));
            }
            match space.dist(x, y) {
                ExtReal::Finite(d) => worst = worst.max(d),
                ExtReal::Infinite => {
                    return Ok(ScaleVerdict::RefutedUpTo {
                        radius: None,
                        witness: Witness::Point { point: y.clone(), distance: ExtReal::Infinite, exact: true },
                    })
                }
            }
        }
        return Ok(ScaleVerdict::AlikeWithin(worst + int(1)));
    }
    let mut worst = int(0);
    for (x, y) in pairs {
        let v = alike(model, &SetExpr::singleton(x.clone()), &SetExpr::singleton(y.clone()))?;
        match v {
            ScaleVerdict::AlikeWithin(r) => worst = worst.max(r),
            other => return Ok(other),
        }
    }
    Ok(ScaleVerdict::AlikeWithin(worst))
}

fn discrete_alike(a: &SetExpr, b: &SetExpr) -> Result<ScaleVerdict> {
    if let (Some(x), Some(y)) = (NatSet::from_expr(a), NatSet::from_expr(b)) {
        if let Some(d) = x.symmetric_difference(&y) {
            if d.is_finite() {
                return Ok(ScaleVerdict::AlikeWithin(int(0)));
            }
            let ex = d.member_from(d.threshold()).map(|n| Point::scalar(n as i64));
            return Ok(ScaleVerdict::symbolic(Reason::InfiniteSymmetricDifference, ex));
        }
    }
    let delta =
        SetExpr::union(alloc::vec![SetExpr::minus(a.clone(), b.clone()), SetExpr::minus(b.clone(), a.clone()),]);
    match finiteness(&delta) {
        Some(true) => Ok(ScaleVerdict::AlikeWithin(int(0))),
        Some(false) => Ok(ScaleVerdict::symbolic(Reason::InfiniteSymmetricDifference, example_member(&delta, 0))),
        None => match (finiteness(a), finiteness(b)) {
            (Some(true), Some(true)) => Ok(ScaleVerdict::AlikeWithin(int(0))),
            (Some(x), Some(y)) if x != y => Ok(ScaleVerdict::symbolic(
                Reason::InfiniteSymmetricDifference,
                example_member(if x { b } else { a }, finite_bound(if x { a } else { b })),
            )),
            _ => Err(unsupported("symmetric difference is not decidable for these sets")),
        },
    }
}

fn finite_infinite_alike(a: &SetExpr, b: &SetExpr) -> Result<ScaleVerdict> {
    match (finiteness(a), finiteness(b)) {
        (Some(true), Some(true)) => {
            // E(∅) = ∅ for every entourage, so ∅ is alike only to itself
            match (example_member(a, 0), example_member(b, 0)) {
                (None, Some(p)) | (Some(p), None) => Ok(ScaleVerdict::symbolic(Reason::EmptyVersusNonempty, Some(p))),
                _ => Ok(ScaleVerdict::AlikeWithin(int(0))),
            }
        }
        (Some(x), Some(y)) if x == y => Ok(ScaleVerdict::AlikeWithin(int(0))),
        (Some(x), Some(_)) => {
            let (fin, inf) = if x { (a, b) } else { (b, a) };
            Ok(ScaleVerdict::symbolic(Reason::FiniteVersusInfinite, example_member(inf, finite_bound(fin))))
        }
        _ => Err(unsupported("finiteness of these sets is not decidable here")),
    }
}

const EXAMPLE_SEARCH: i64 = 1 << 16;

/// One more than the largest natural member of a finite set (0 if empty).
fn finite_bound(e: &SetExpr) -> i64 {
    if let Some(n) = NatSet::from_expr(e) {
        return n.members_below(EXAMPLE_SEARCH as u64).last().map_or(0, |m| *m as i64 + 1);
    }
    (0..EXAMPLE_SEARCH).rev().find(|n| e.contains(&Point::scalar(*n)).unwrap_or(false)).map_or(0, |m| m + 1)
}

/// Some natural member of `e` at or beyond `from`.
fn example_member(e: &SetExpr, from: i64) -> Option<Point> {
    if let Some(n) = NatSet::from_expr(e) {
        return n.member_from(from as u64).map(|m| Point::scalar(m as i64));
    }
    (from..from + EXAMPLE_SEARCH).find(|n| e.contains(&Point::scalar(*n)).unwrap_or(false)).map(Point::scalar)
}
