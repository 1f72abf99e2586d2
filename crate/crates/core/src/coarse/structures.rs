use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::asr::Reason;
use crate::error::unsupported;
use crate::natset::{finiteness, NatSet};
use crate::spaces::{SetExpr, Space};
use crate::{Error, Point, Rational, Result};

use super::{alike_via, fibre_bound, Entourage, Pair, ViaVerdict};

/// Largest natural scanned when looking for a partner beyond the window.
const SCAN_LIMIT: i64 = 1 << 22;

/// Two coarse structures on the naturals, given by membership predicates on
/// pair lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NatStructure {
    /// `E(A)` and `E⁻¹(A)` are finite for every finite `A`.
    FiniteImages,
    /// `E(x)` and `E⁻¹(x)` have at most `n_E` members for a fixed `n_E`.
    BoundedFibres,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StructureVerdict {
    /// The constructed entourage, truncated to the window, its largest fibre
    /// and the bound it was admitted under (`None` for finite images).
    Alike { entourage: Entourage, fibre: usize, admitted_bound: Option<usize>, check: ViaVerdict },
    /// Every member of the structure maps a finite set to a finite set, so a
    /// finite set is never alike to an infinite one (and `E(∅) = ∅`).
    Refuted { reason: Reason, example: Option<Point> },
}

impl StructureVerdict {
    pub fn is_alike(&self) -> bool {
        matches!(self, StructureVerdict::Alike { .. })
    }
}

/// Increasing enumeration of a subset of the naturals.
struct Members<'a> {
    set: &'a SetExpr,
    found: Vec<i64>,
    next: i64,
}

impl<'a> Members<'a> {
    fn new(set: &'a SetExpr) -> Self {
        Members { set, found: Vec::new(), next: 0 }
    }

    fn nth(&mut self, k: usize) -> Result<Option<i64>> {
        while self.found.len() <= k {
            if self.next > SCAN_LIMIT {
                return Ok(None);
            }
            if self.set.contains(&Point::scalar(self.next))? {
                self.found.push(self.next);
            }
            self.next += 1;
        }
        Ok(Some(self.found[k]))
    }

    /// Least member at or above `n`.
    fn from(&mut self, n: i64) -> Result<Option<i64>> {
        let mut k = self.found.partition_point(|m| *m < n);
        loop {
            match self.nth(k)? {
                Some(m) if m >= n => return Ok(Some(m)),
                Some(_) => k += 1,
                None => return Ok(None),
            }
        }
    }
}

fn finite_members(e: &SetExpr) -> Result<Vec<i64>> {
    let n = NatSet::from_expr(e).ok_or_else(|| unsupported("finite set without a normal form"))?;
    Ok(n.members_below(n.threshold()).into_iter().map(|m| m as i64).collect())
}

fn p(n: i64) -> Point {
    Point::scalar(n)
}

impl NatStructure {
    /// Membership of a (window-truncated) pair list: always true for
    /// `FiniteImages` on finite lists; for `BoundedFibres` the largest fibre
    /// must respect the declared bound.
    pub fn admits(&self, pairs: &BTreeSet<Pair>, declared: Option<usize>) -> bool {
        match self {
            NatStructure::FiniteImages => true,
            NatStructure::BoundedFibres => declared.is_some_and(|n| fibre_bound(pairs) <= n),
        }
    }

    /// Decides `A λ_E B` on the naturals by building the entourage of the
    /// standard argument on the window `[0, radius]` and checking it.
    ///
    /// Two finite sets are joined by `A×B ∪ B×A`. Two infinite sets are
    /// joined by the matching `a_n ↔ b_n` of their increasing enumerations
    /// (fibres of size at most two) under `BoundedFibres`, and by the
    /// "next member above" relation and its inverse under `FiniteImages`;
    /// the latter has finite but possibly unbounded fibres.
    pub fn alike(&self, a: &SetExpr, b: &SetExpr, radius: &Rational) -> Result<StructureVerdict> {
        let (fa, fb) = match (finiteness(a), finiteness(b)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(unsupported("finiteness of these sets is not decidable here")),
        };
        let naturals = Space::naturals();
        let (pairs, declared): (BTreeSet<Pair>, Option<usize>) = match (fa, fb) {
            (true, true) => {
                let (xs, ys) = (finite_members(a)?, finite_members(b)?);
                if xs.is_empty() != ys.is_empty() {
                    let example = xs.first().or(ys.first()).map(|n| p(*n));
                    return Ok(StructureVerdict::Refuted { reason: Reason::EmptyVersusNonempty, example });
                }
                let mut pairs = BTreeSet::new();
                for x in &xs {
                    for y in &ys {
                        pairs.insert((p(*x), p(*y)));
                        pairs.insert((p(*y), p(*x)));
                    }
                }
                // a point of A ∩ B sees all of A ∪ B
                let joint: BTreeSet<i64> = xs.iter().chain(&ys).copied().collect();
                (pairs, Some(joint.len()))
            }
            (true, false) | (false, true) => {
                let (fin, inf) = if fa { (a, b) } else { (b, a) };
                let top = finite_members(fin)?.last().copied().unwrap_or(-1);
                let example = Members::new(inf).from(top + 1)?.map(p);
                return Ok(StructureVerdict::Refuted { reason: Reason::FiniteVersusInfinite, example });
            }
            (false, false) => {
                let window = crate::floor_int(radius).max(0);
                let mut ma = Members::new(a);
                let mut mb = Members::new(b);
                let mut pairs = BTreeSet::new();
                match self {
                    NatStructure::BoundedFibres => {
                        let mut k = 0;
                        loop {
                            let (x, y) = match (ma.nth(k)?, mb.nth(k)?) {
                                (Some(x), Some(y)) => (x, y),
                                _ => return Err(Error::BudgetExhausted { nodes: SCAN_LIMIT as u64 }),
                            };
                            if x > window && y > window {
                                break;
                            }
                            pairs.insert((p(x), p(y)));
                            pairs.insert((p(y), p(x)));
                            k += 1;
                        }
                        (pairs, Some(2))
                    }
                    NatStructure::FiniteImages => {
                        next_above(&mut ma, &mut mb, window, &mut pairs)?;
                        next_above(&mut mb, &mut ma, window, &mut pairs)?;
                        (pairs, None)
                    }
                }
            }
        };
        if !self.admits(&pairs, declared) {
            return Err(Error::CertificateFailed { scale: *radius, check: "structure membership".into() });
        }
        let fibre = fibre_bound(&pairs);
        let entourage = Entourage::Explicit(pairs);
        let check = alike_via(&naturals, core::slice::from_ref(&entourage), a, b, radius, 1)?;
        if !check.is_alike() {
            return Err(Error::CertificateFailed { scale: *radius, check: "containment".into() });
        }
        let admitted_bound = declared.filter(|_| *self == NatStructure::BoundedFibres);
        Ok(StructureVerdict::Alike { entourage, fibre, admitted_bound, check })
    }
}

/// Pairs every member `x ≤ window` of `src` with the least member of
/// `other` at or above it, in both orders.
fn next_above(src: &mut Members, other: &mut Members, window: i64, pairs: &mut BTreeSet<Pair>) -> Result<()> {
    let mut k = 0;
    while let Some(x) = src.nth(k)? {
        if x > window {
            break;
        }
        let y = other.from(x)?.ok_or(Error::BudgetExhausted { nodes: SCAN_LIMIT as u64 })?;
        pairs.insert((p(x), p(y)));
        pairs.insert((p(y), p(x)));
        k += 1;
    }
    Ok(())
}
