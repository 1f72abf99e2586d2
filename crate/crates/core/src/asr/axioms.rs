use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::subsets::{
    members, ones, random_mask, Axiom, AxiomCheck, AxiomLimits, AxiomReport, Collector, Mask, Table, Violation,
};
use crate::{Error, Point, Result};

/// Exhaustively checks that `relation` is an asymptotic resemblance on all
/// subsets of `universe`: an equivalence relation with the union and
/// decomposition properties. The decomposition property is skipped above
/// `limits.existential_cap`.
pub fn check_asr_axioms<F>(universe: &[Point], relation: F, limits: &AxiomLimits) -> Result<AxiomReport>
where
    F: Fn(&BTreeSet<Point>, &BTreeSet<Point>) -> bool,
{
    let n = universe.len();
    limits.admit(n)?;
    let subsets: Vec<BTreeSet<Point>> = (0..1u32 << n).map(|m| members(universe, m)).collect();
    let t = Table::tabulate(n, |a, b| relation(&subsets[a as usize], &subsets[b as usize]));
    let max = limits.max_violations;
    let mut checks =
        alloc::vec![reflexivity(&t, max), symmetry(&t, max), transitivity(&t, max), union_property(&t, max)];
    checks.push(if n <= limits.existential_cap {
        decomposition(&t, n, max)
    } else {
        Collector::skipped(Axiom::DecompositionProperty)
    });
    Ok(AxiomReport { universe: universe.to_vec(), checks })
}

fn reflexivity(t: &Table, max: usize) -> AxiomCheck {
    let mut c = Collector::new(Axiom::Reflexivity, max);
    for a in 0..t.size() as Mask {
        if !t.get(a, a) {
            c.push(&[("A", a)]);
        }
    }
    c.finish()
}

pub(crate) fn symmetry_into(t: &Table, c: &mut Collector) {
    for a in 0..t.size() as Mask {
        for b in ones(t.row(a)) {
            if !t.get(b, a) {
                c.push(&[("A", a), ("B", b)]);
            }
        }
    }
}

fn symmetry(t: &Table, max: usize) -> AxiomCheck {
    let mut c = Collector::new(Axiom::Symmetry, max);
    symmetry_into(t, &mut c);
    c.finish()
}

fn transitivity(t: &Table, max: usize) -> AxiomCheck {
    let mut c = Collector::new(Axiom::Transitivity, max);
    let mut scratch = alloc::vec![0u64; t.words()];
    for a in 0..t.size() as Mask {
        for b in ones(t.row(a)) {
            let mut n = 0u64;
            for (w, (x, y)) in t.row(b).iter().zip(t.row(a)).enumerate() {
                scratch[w] = x & !y;
                n += scratch[w].count_ones() as u64;
            }
            if n > 0 {
                let cs: Vec<Mask> = ones(&scratch).collect();
                c.push_many(n, |i| cs.get(i).map(|&x| Violation::new(&[("A", a), ("B", b), ("C", x)])));
            }
        }
    }
    c.finish()
}

fn union_property(t: &Table, max: usize) -> AxiomCheck {
    let size = t.size();
    let words = t.words();
    // fails[u][b1] = { b2 : not (u ~ b1|b2) }
    let mut fails = alloc::vec![0u64; size * size * words];
    for u in 0..size {
        for b1 in 0..size {
            let base = (u * size + b1) * words;
            for b2 in 0..size {
                if !t.get(u as Mask, (b1 | b2) as Mask) {
                    fails[base + b2 / 64] |= 1 << (b2 % 64);
                }
            }
        }
    }
    let mut c = Collector::new(Axiom::UnionProperty, max);
    let mut scratch = alloc::vec![0u64; words];
    for a1 in 0..size as Mask {
        for b1 in ones(t.row(a1)) {
            for a2 in 0..size as Mask {
                let base = (((a1 | a2) as usize) * size + b1 as usize) * words;
                let mut n = 0u64;
                for (w, x) in t.row(a2).iter().enumerate() {
                    scratch[w] = x & fails[base + w];
                    n += scratch[w].count_ones() as u64;
                }
                if n > 0 {
                    let bs: Vec<Mask> = ones(&scratch).collect();
                    c.push_many(n, |i| {
                        bs.get(i).map(|&b2| Violation::new(&[("A1", a1), ("B1", b1), ("A2", a2), ("B2", b2)]))
                    });
                }
            }
        }
    }
    c.finish()
}

/// For each nonempty `A`, marks the pairs `(B1, B2)` that admit a
/// decomposition `A = A1 ∪ A2` with nonempty parts and `Bi ~ Ai`, by running
/// over all `3^|A|` ways to place each point of `A` in `A1`, `A2` or both.
///
/// The empty `A` is not examined: it has no decomposition into nonempty
/// parts, so the property only constrains nonempty sets. Relations such as
/// the discrete one (finite symmetric difference) relate `∅` to finite sets
/// and are still resemblances under this reading.
fn decomposition(t: &Table, n: usize, max: usize) -> AxiomCheck {
    let size = 1usize << n;
    // cls[x] = { b : b ~ x }
    let cls: Vec<Vec<Mask>> = (0..size as Mask).map(|x| (0..size as Mask).filter(|&b| t.get(b, x)).collect()).collect();
    let cls_bits: Vec<Vec<u64>> = cls
        .iter()
        .map(|v| {
            let mut bits = alloc::vec![0u64; size.div_ceil(64)];
            for &b in v {
                bits[b as usize / 64] |= 1 << (b % 64);
            }
            bits
        })
        .collect();
    let words = size.div_ceil(64);
    let mut c = Collector::new(Axiom::DecompositionProperty, max);
    for a in 1..size as Mask {
        let mut good = alloc::vec![0u64; size * words];
        for (a1, a2) in covers(a) {
            for &b1 in &cls[a1 as usize] {
                let row = &mut good[b1 as usize * words..(b1 as usize + 1) * words];
                for (g, x) in row.iter_mut().zip(&cls_bits[a2 as usize]) {
                    *g |= x;
                }
            }
        }
        for b1 in 1..size as Mask {
            for b2 in 1..size as Mask {
                if t.get(b1 | b2, a) && good[b1 as usize * words + b2 as usize / 64] >> (b2 % 64) & 1 == 0 {
                    c.push(&[("A", a), ("B1", b1), ("B2", b2)]);
                }
            }
        }
    }
    c.finish()
}

/// All `(A1, A2)` with `A1 ∪ A2 = a` and both nonempty.
fn covers(a: Mask) -> Vec<(Mask, Mask)> {
    let mut out = Vec::new();
    let mut a1 = a;
    while a1 != 0 {
        let rest = a & !a1;
        // a2 = rest ∪ s for s ⊆ a1
        let mut s = a1;
        loop {
            let a2 = rest | s;
            if a2 != 0 {
                out.push((a1, a2));
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & a1;
        }
        a1 = (a1 - 1) & a;
    }
    out
}

/// Randomized variant for universes beyond the exhaustive caps: checks
/// `samples` random tuples per axiom. Decomposition samples use sets `A`
/// of at most `limits.existential_cap` points.
pub fn check_asr_axioms_sampled<F, R>(
    universe: &[Point],
    relation: F,
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
    let rel = |a: Mask, b: Mask| relation(&members(universe, a), &members(universe, b));
    let max = limits.max_violations;
    let mut refl = Collector::sampled(Axiom::Reflexivity, max, samples);
    let mut sym = Collector::sampled(Axiom::Symmetry, max, samples);
    let mut trans = Collector::sampled(Axiom::Transitivity, max, samples);
    let mut uni = Collector::sampled(Axiom::UnionProperty, max, samples);
    let mut dec = Collector::sampled(Axiom::DecompositionProperty, max, samples);
    for _ in 0..samples {
        let (a, b, c) = (random_mask(rng, n), random_mask(rng, n), random_mask(rng, n));
        if !rel(a, a) {
            refl.push(&[("A", a)]);
        }
        if rel(a, b) && !rel(b, a) {
            sym.push(&[("A", a), ("B", b)]);
        }
        if rel(a, b) && rel(b, c) && !rel(a, c) {
            trans.push(&[("A", a), ("B", b), ("C", c)]);
        }
        let d = random_mask(rng, n);
        if rel(a, b) && rel(c, d) && !rel(a | c, b | d) {
            uni.push(&[("A1", a), ("B1", b), ("A2", c), ("B2", d)]);
        }
        let small = shrink(rng, a, limits.existential_cap);
        if small != 0 && b != 0 && c != 0 && rel(b | c, small) {
            let ok = covers(small).into_iter().any(|(x, y)| rel(b, x) && rel(c, y));
            if !ok {
                dec.push(&[("A", small), ("B1", b), ("B2", c)]);
            }
        }
    }
    Ok(AxiomReport {
        universe: universe.to_vec(),
        checks: alloc::vec![refl.finish(), sym.finish(), trans.finish(), uni.finish(), dec.finish()],
    })
}

/// Drops random points until at most `cap` remain.
fn shrink<R: RngCore + ?Sized>(rng: &mut R, mut m: Mask, cap: usize) -> Mask {
    while m.count_ones() as usize > cap {
        let bits: Vec<u32> = (0..32).filter(|i| m >> i & 1 == 1).collect();
        let drop = bits[(rng.next_u32() as usize) % bits.len()];
        m &= !(1 << drop);
    }
    m
}
