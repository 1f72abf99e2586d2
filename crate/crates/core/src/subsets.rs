//! Finite universes, subset bitmasks, tabulated relations and axiom reports.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::{Error, Point, Result};

/// A subset of a finite universe; bit `i` stands for the `i`-th point.
pub type Mask = u32;

/// Hard limit for exhaustive tabulation (`2^n` squared relation entries).
pub const TABULATION_LIMIT: usize = 10;

pub fn members(universe: &[Point], m: Mask) -> BTreeSet<Point> {
    universe.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, p)| p.clone()).collect()
}

/// A relation on all subsets of an `n`-point universe stored as bit rows.
pub struct Table {
    size: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Table {
    pub fn tabulate(n: usize, mut f: impl FnMut(Mask, Mask) -> bool) -> Table {
        let size = 1usize << n;
        let words = size.div_ceil(64);
        let mut rows = alloc::vec![0u64; size * words];
        for a in 0..size {
            for b in 0..size {
                if f(a as Mask, b as Mask) {
                    rows[a * words + b / 64] |= 1 << (b % 64);
                }
            }
        }
        Table { size, words, rows }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn get(&self, a: Mask, b: Mask) -> bool {
        let (a, b) = (a as usize, b as usize);
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn row(&self, a: Mask) -> &[u64] {
        let a = a as usize;
        &self.rows[a * self.words..(a + 1) * self.words]
    }
}

/// Set bits of a bit row, ascending.
pub(crate) fn ones(row: &[u64]) -> impl Iterator<Item = Mask> + '_ {
    row.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        core::iter::from_fn(move || {
            if b == 0 {
                return None;
            }
            let t = b.trailing_zeros();
            b &= b - 1;
            Some((w as u32) * 64 + t)
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Reflexivity,
    Symmetry,
    Transitivity,
    /// `A1 ~ B1, A2 ~ B2  =>  A1∪A2 ~ B1∪B2`.
    UnionProperty,
    /// `(B1∪B2) ~ A  =>  A = A1∪A2` with `Bi ~ Ai`.
    DecompositionProperty,
    ProximitySymmetry,
    /// The empty set is far from everything.
    EmptySetFar,
    /// Meeting sets are near.
    IntersectionNear,
    /// `A δ (B∪C)  <=>  A δ B or A δ C`.
    UnionEquivalence,
    /// Far sets are separated by some `E`.
    Separation,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Symmetry => "symmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::UnionProperty => "union",
            Axiom::DecompositionProperty => "decomposition",
            Axiom::ProximitySymmetry => "proximity-symmetry",
            Axiom::EmptySetFar => "empty-set-far",
            Axiom::IntersectionNear => "intersection-near",
            Axiom::UnionEquivalence => "union-equivalence",
            Axiom::Separation => "separation",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    /// Not run because the universe exceeds the cap for this axiom.
    Skipped,
}

/// A violating tuple of named subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub sets: Vec<(&'static str, Mask)>,
}

impl Violation {
    pub fn new(sets: &[(&'static str, Mask)]) -> Self {
        Violation { sets: sets.to_vec() }
    }

    pub fn resolve(&self, universe: &[Point]) -> Vec<(&'static str, BTreeSet<Point>)> {
        self.sets.iter().map(|(name, m)| (*name, members(universe, *m))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub status: CheckStatus,
    /// Every violation found, including those not stored.
    pub violation_count: u64,
    /// The first violations in lexicographic order of their masks.
    pub violations: Vec<Violation>,
    /// Number of tuples examined (sampled mode) or `None` when exhaustive.
    pub samples: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub universe: Vec<Point>,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Failed)
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Failed).map(|c| c.axiom).collect()
    }
}

/// Size caps for the exhaustive checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomLimits {
    /// Largest universe for the universally quantified axioms.
    pub cap: usize,
    /// Largest universe for the axiom with an existential inside.
    pub existential_cap: usize,
    /// Violations stored per axiom.
    pub max_violations: usize,
}

impl Default for AxiomLimits {
    fn default() -> Self {
        AxiomLimits { cap: 8, existential_cap: 6, max_violations: 16 }
    }
}

impl AxiomLimits {
    pub(crate) fn admit(&self, n: usize) -> Result<()> {
        let cap = self.cap.min(TABULATION_LIMIT);
        if n > cap {
            return Err(Error::CapExceeded { size: n, cap });
        }
        Ok(())
    }
}

pub(crate) struct Collector {
    axiom: Axiom,
    count: u64,
    kept: Vec<Violation>,
    max: usize,
    samples: Option<u64>,
}

impl Collector {
    pub(crate) fn new(axiom: Axiom, max: usize) -> Self {
        Collector { axiom, count: 0, kept: Vec::new(), max, samples: None }
    }

    pub(crate) fn sampled(axiom: Axiom, max: usize, samples: u64) -> Self {
        Collector { samples: Some(samples), ..Collector::new(axiom, max) }
    }

    pub(crate) fn push(&mut self, sets: &[(&'static str, Mask)]) {
        self.count += 1;
        if self.kept.len() < self.max {
            self.kept.push(Violation::new(sets));
        }
    }

    /// Records `n` violations of which only the first tuples are built.
    pub(crate) fn push_many(&mut self, n: u64, mut build: impl FnMut(usize) -> Option<Violation>) {
        let room = self.max.saturating_sub(self.kept.len());
        for i in 0..room {
            match build(i) {
                Some(v) => self.kept.push(v),
                None => break,
            }
        }
        self.count += n;
    }

    pub(crate) fn finish(self) -> AxiomCheck {
        AxiomCheck {
            axiom: self.axiom,
            status: if self.count == 0 { CheckStatus::Passed } else { CheckStatus::Failed },
            violation_count: self.count,
            violations: self.kept,
            samples: self.samples,
        }
    }

    pub(crate) fn skipped(axiom: Axiom) -> AxiomCheck {
        AxiomCheck { axiom, status: CheckStatus::Skipped, violation_count: 0, violations: Vec::new(), samples: None }
    }
}

/// Draws a uniformly random subset mask of an `n`-point universe.
pub(crate) fn random_mask<R: rand_core::RngCore + ?Sized>(rng: &mut R, n: usize) -> Mask {
    if n == 0 {
        return 0;
    }
    let full: u64 = (1u64 << n) - 1;
    (rng.next_u64() & full) as Mask
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_rows() {
        let t = Table::tabulate(3, |a, b| a & b != 0);
        assert!(t.get(1, 3));
        assert!(!t.get(1, 2));
        let row: Vec<Mask> = ones(t.row(1)).collect();
        assert_eq!(row, alloc::vec![1, 3, 5, 7]);
    }

    #[test]
    fn members_follow_bits() {
        let u: Vec<Point> = (1..=3).map(Point::scalar).collect();
        assert_eq!(members(&u, 0b101), [Point::scalar(1), Point::scalar(3)].into_iter().collect());
    }
}
