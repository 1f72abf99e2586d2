use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::asr::ray::summarize;
use crate::asr::{AsrModel, DiscreteUniverse};
use crate::error::unsupported;
use crate::natset::{finiteness, NatSet};
use crate::spaces::SetExpr;
use crate::subsets::{members, random_mask, Axiom, AxiomLimits, AxiomReport, Collector, Mask, Table};
use crate::{Error, Point, Result};

/// Members of a set of naturals scanned when no normal form is available.
const SCAN: i64 = 1 << 16;

/// `A δ_λ B`: the closures meet, or both contain unbounded subsets that are
/// alike to each other.
///
/// On the line with the ray resemblance closures are the usual ones and the
/// unbounded sets are those unbounded below, all of them mutually alike. On
/// the two models over the naturals the topology is discrete, so closure is
/// the identity; under `FiniteInfiniteOnN` any two infinite sets are alike,
/// while under the discrete resemblance two infinite sets with finite
/// symmetric difference already meet.
pub fn delta_proximity(model: &AsrModel, a: &SetExpr, b: &SetExpr) -> Result<bool> {
    match model {
        AsrModel::RayOnR => {
            let (sa, sb) = (summarize(a)?, summarize(b)?);
            if sa.is_empty() || sb.is_empty() {
                return Ok(false);
            }
            Ok(sa.closures_meet(&sb) || (sa.infimum().is_none() && sb.infimum().is_none()))
        }
        AsrModel::FiniteInfiniteOnN => {
            if let (Some(false), Some(false)) = (finiteness(a), finiteness(b)) {
                return Ok(true);
            }
            meets(a, b)
        }
        AsrModel::Discrete(DiscreteUniverse::Naturals) | AsrModel::Discrete(DiscreteUniverse::Finite) => meets(a, b),
        _ => Err(unsupported("the proximity is only decided on the exact models")),
    }
}

/// Whether two sets of naturals share a member.
pub(crate) fn meets(a: &SetExpr, b: &SetExpr) -> Result<bool> {
    if let Some(s) = NatSet::from_expr(&SetExpr::intersect(a.clone(), b.clone())) {
        return Ok(!s.is_empty());
    }
    // a finite side with a normal form can be listed
    for (fin, other) in [(a, b), (b, a)] {
        if let Some(s) = NatSet::from_expr(fin).filter(|s| s.is_finite()) {
            for n in s.members_below(s.threshold()) {
                if other.contains(&Point::scalar(n as i64))? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
    }
    for n in 0..SCAN {
        let p = Point::scalar(n);
        if a.contains(&p)? && b.contains(&p)? {
            return Ok(true);
        }
    }
    Err(unsupported("cannot decide whether these sets of naturals meet"))
}

/// Exhaustively checks the proximity axioms for `delta` on all subsets of
/// `universe`: symmetry, the empty set being far from every set (in either
/// slot), meeting sets being near, `A δ (B∪C) <=> A δ B or A δ C`, and the
/// separation axiom `A δ̄ B => ∃E: A δ̄ E and (X∖E) δ̄ B`. The separation
/// axiom is skipped above `limits.existential_cap`.
pub fn check_proximity_axioms<F>(universe: &[Point], delta: F, limits: &AxiomLimits) -> Result<AxiomReport>
where
    F: Fn(&BTreeSet<Point>, &BTreeSet<Point>) -> bool,
{
    let n = universe.len();
    limits.admit(n)?;
    let subsets: Vec<BTreeSet<Point>> = (0..1u32 << n).map(|m| members(universe, m)).collect();
    let t = Table::tabulate(n, |a, b| delta(&subsets[a as usize], &subsets[b as usize]));
    let size = t.size() as Mask;
    let max = limits.max_violations;

    let mut sym = Collector::new(Axiom::ProximitySymmetry, max);
    let mut empty = Collector::new(Axiom::EmptySetFar, max);
    let mut meet = Collector::new(Axiom::IntersectionNear, max);
    let mut union = Collector::new(Axiom::UnionEquivalence, max);
    for a in 0..size {
        if t.get(0, a) || t.get(a, 0) {
            empty.push(&[("A", a)]);
        }
        for b in 0..size {
            if t.get(a, b) && !t.get(b, a) {
                sym.push(&[("A", a), ("B", b)]);
            }
            if a & b != 0 && !t.get(a, b) {
                meet.push(&[("A", a), ("B", b)]);
            }
            let near_b = t.get(a, b);
            for c in 0..size {
                if t.get(a, b | c) != (near_b || t.get(a, c)) {
                    union.push(&[("A", a), ("B", b), ("C", c)]);
                }
            }
        }
    }
    let sep = if n <= limits.existential_cap {
        let full = size - 1;
        let mut c = Collector::new(Axiom::Separation, max);
        for a in 0..size {
            for b in 0..size {
                if !t.get(a, b) && separating_set_in(&t, full, a, b).is_none() {
                    c.push(&[("A", a), ("B", b)]);
                }
            }
        }
        c.finish()
    } else {
        Collector::skipped(Axiom::Separation)
    };
    Ok(AxiomReport {
        universe: universe.to_vec(),
        checks: alloc::vec![sym.finish(), empty.finish(), meet.finish(), union.finish(), sep],
    })
}

/// The first `E` (in mask order) with `A δ̄ E` and `(X∖E) δ̄ B`, for far
/// `A`, `B`; `None` if no such set exists.
pub fn separating_set<F>(universe: &[Point], delta: F, a: Mask, b: Mask) -> Result<Option<Mask>>
where
    F: Fn(&BTreeSet<Point>, &BTreeSet<Point>) -> bool,
{
    let n = universe.len();
    AxiomLimits::default().admit(n)?;
    let full = ((1u64 << n) - 1) as Mask;
    let rel = |x: Mask, y: Mask| delta(&members(universe, x), &members(universe, y));
    Ok((0..=full).find(|&e| !rel(a, e) && !rel(full & !e, b)))
}

fn separating_set_in(t: &Table, full: Mask, a: Mask, b: Mask) -> Option<Mask> {
    (0..=full).find(|&e| !t.get(a, e) && !t.get(full & !e, b))
}

/// Randomized variant for universes beyond the exhaustive caps: `samples`
/// random tuples per axiom. The separation axiom searches its witness `E`
/// among `samples` random sets plus `B` and the complement of `A`.
pub fn check_proximity_axioms_sampled<F, R>(
    universe: &[Point],
    delta: F,
    samples: u64,
    limits: &AxiomLimits,
    rng: &mut R,
) -> Result<AxiomReport>
where
    F: Fn(&BTreeSet<Point>, &BTreeSet<Point>) -> bool,
    R: RngCore + ?Sized,
{
    let n = universe.len();
    if n > 31 {
        return Err(Error::CapExceeded { size: n, cap: 31 });
    }
    let full: Mask = ((1u64 << n) - 1) as Mask;
    let rel = |a: Mask, b: Mask| delta(&members(universe, a), &members(universe, b));
    let max = limits.max_violations;
    let mut sym = Collector::sampled(Axiom::ProximitySymmetry, max, samples);
    let mut empty = Collector::sampled(Axiom::EmptySetFar, max, samples);
    let mut meet = Collector::sampled(Axiom::IntersectionNear, max, samples);
    let mut union = Collector::sampled(Axiom::UnionEquivalence, max, samples);
    let mut sep = Collector::sampled(Axiom::Separation, max, samples);
    for _ in 0..samples {
        let (a, b, c) = (random_mask(rng, n), random_mask(rng, n), random_mask(rng, n));
        if rel(a, b) && !rel(b, a) {
            sym.push(&[("A", a), ("B", b)]);
        }
        if rel(0, a) || rel(a, 0) {
            empty.push(&[("A", a)]);
        }
        if a & b != 0 && !rel(a, b) {
            meet.push(&[("A", a), ("B", b)]);
        }
        if rel(a, b | c) != (rel(a, b) || rel(a, c)) {
            union.push(&[("A", a), ("B", b), ("C", c)]);
        }
        if !rel(a, b) {
            let mut found = [b, full & !a].into_iter().any(|e| !rel(a, e) && !rel(full & !e, b));
            let mut tries = 0;
            while !found && tries < samples.min(64) {
                let e = random_mask(rng, n);
                found = !rel(a, e) && !rel(full & !e, b);
                tries += 1;
            }
            if !found {
                sep.push(&[("A", a), ("B", b)]);
            }
        }
    }
    Ok(AxiomReport {
        universe: universe.to_vec(),
        checks: alloc::vec![sym.finish(), empty.finish(), meet.finish(), union.finish(), sep.finish()],
    })
}
