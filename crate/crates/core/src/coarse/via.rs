use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::spaces::{SetExpr, Space};
use crate::{Point, Rational, Result};

use super::Entourage;

/// Composition depth used when none is given.
pub const DEFAULT_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// A point of `A` outside `E(B)`.
    A,
    /// A point of `B` outside `E(A)`.
    B,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ViaVerdict {
    /// `A ⊆ E(B)` and `B ⊆ F(A)` on the window, where `E` and `F` are the
    /// unions of the listed composites. Each composite is a word of
    /// generator indices read as `E_w0 ∘ E_w1 ∘ ...`; the empty word is the
    /// diagonal.
    Alike { forward: Vec<Vec<usize>>, backward: Vec<Vec<usize>> },
    /// A window point of one side outside the image of the other under every
    /// composite up to the depth.
    Refuted { side: Side, witness: Point },
}

impl ViaVerdict {
    pub fn is_alike(&self) -> bool {
        matches!(self, ViaVerdict::Alike { .. })
    }
}

/// All words of length `0..=depth` over `n` generators, shortest first.
fn words(n: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..n {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `A λ_E B` with `E` ranging over the composites of `family` up to
/// `depth`, checked on the closed window of radius `radius`.
///
/// A coarse structure is closed under finite unions, so a point-by-point
/// choice of composites is as good as a single one: the verdict is `Alike`
/// exactly when every window point of either side lies in the image of the
/// other side under some composite.
pub fn alike_via(
    space: &Space,
    family: &[Entourage],
    a: &SetExpr,
    b: &SetExpr,
    radius: &Rational,
    depth: usize,
) -> Result<ViaVerdict> {
    let ws = words(family.len(), depth);
    let mut composites: Vec<(Vec<usize>, Option<Entourage>)> = Vec::new();
    for w in ws {
        let e = match w.split_first() {
            None => None,
            Some((first, rest)) => {
                let mut e = family[*first].clone();
                for g in rest {
                    e = e.compose(&family[*g])?;
                }
                Some(e)
            }
        };
        if !composites.iter().any(|(_, f)| *f == e) {
            composites.push((w, e));
        }
    }

    let a_pts = a.window_points(space, radius)?;
    let b_pts = b.window_points(space, radius)?;
    let mut used = [BTreeSet::new(), BTreeSet::new()];
    let mut order: Vec<(crate::ExtReal, Point, Side)> = Vec::new();
    for (pts, side) in [(&a_pts, Side::A), (&b_pts, Side::B)] {
        for p in pts {
            order.push((space.depth(p), p.clone(), side));
        }
    }
    // A side first, then by depth and point
    order.sort_by(|x, y| (x.2 as u8, &x.0, &x.1).cmp(&(y.2 as u8, &y.0, &y.1)));
    for (_, p, side) in order {
        let (other, slot) = match side {
            Side::A => (b, 0),
            Side::B => (a, 1),
        };
        let mut hit = None;
        for (i, (_, e)) in composites.iter().enumerate() {
            let covered = match e {
                None => other.contains(&p)?,
                Some(e) => e.image_contains(other, &p)?,
            };
            if covered {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => {
                used[slot].insert(i);
            }
            None => return Ok(ViaVerdict::Refuted { side, witness: p }),
        }
    }
    let names = |s: &BTreeSet<usize>| s.iter().map(|i| composites[*i].0.clone()).collect();
    Ok(ViaVerdict::Alike { forward: names(&used[0]), backward: names(&used[1]) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    #[test]
    fn evens_and_odds_within_one() {
        let z = Space::integers();
        let fam = [Entourage::displacement(z.clone(), int(1))];
        let v = alike_via(&z, &fam, &SetExpr::evens(), &SetExpr::odds(), &int(50), DEFAULT_DEPTH).unwrap();
        assert_eq!(
            v,
            ViaVerdict::Alike { forward: alloc::vec![alloc::vec![0]], backward: alloc::vec![alloc::vec![0]] }
        );
    }

    #[test]
    fn diagonal_only_sees_equality() {
        let z = Space::integers();
        let delta = Entourage::diagonal((-5..=5).map(Point::scalar));
        let v = alike_via(&z, &[delta], &SetExpr::scalars([0, 3]), &SetExpr::scalars([0]), &int(10), 3).unwrap();
        assert_eq!(v, ViaVerdict::Refuted { side: Side::A, witness: Point::scalar(3) });
    }

    #[test]
    fn composites_reach_further() {
        let z = Space::integers();
        let step = Entourage::explicit((-20..20).map(|n| (Point::scalar(n), Point::scalar(n + 1))));
        let back = step.inverse().unwrap();
        let a = SetExpr::scalars([0]);
        let b = SetExpr::scalars([3]);
        let shallow = alike_via(&z, &[step.clone(), back.clone()], &a, &b, &int(10), 2).unwrap();
        assert!(!shallow.is_alike());
        let deep = alike_via(&z, &[step, back], &a, &b, &int(10), 3).unwrap();
        assert!(deep.is_alike());
    }

    #[test]
    fn word_count() {
        assert_eq!(words(2, 3).len(), 1 + 2 + 4 + 8);
        assert_eq!(words(0, 3).len(), 1);
    }
}
