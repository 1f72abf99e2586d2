use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::spaces::SetExpr;
use crate::Point;

const MAX_PERIOD: u64 = 1 << 16;
const MAX_THRESHOLD: u64 = 1 << 20;

/// An eventually periodic set of naturals: below `threshold` membership is
/// `head`, from `threshold` on it is `n mod period ∈ residues`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatSet {
    threshold: u64,
    head: BTreeSet<u64>,
    period: u64,
    residues: BTreeSet<u64>,
}

impl NatSet {
    pub fn empty() -> Self {
        NatSet { threshold: 0, head: BTreeSet::new(), period: 1, residues: BTreeSet::new() }
    }

    pub fn all() -> Self {
        NatSet { threshold: 0, head: BTreeSet::new(), period: 1, residues: [0].into() }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(ns: I) -> Self {
        let head: BTreeSet<u64> = ns.into_iter().collect();
        let threshold = head.last().map_or(0, |m| m + 1);
        NatSet { threshold, head, period: 1, residues: BTreeSet::new() }
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.threshold {
            self.head.contains(&n)
        } else {
            self.residues.contains(&(n % self.period))
        }
    }

    /// Start of the periodic tail.
    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_empty() && self.residues.is_empty()
    }

    /// The members below `bound`.
    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|n| self.contains(*n)).collect()
    }

    fn rebase(&self, threshold: u64, period: u64) -> NatSet {
        let head = (0..threshold).filter(|n| self.contains(*n)).collect();
        let residues = (0..period).filter(|i| self.residues.contains(&(i % self.period))).collect();
        NatSet { threshold, head, period, residues }
    }

    fn combine(&self, other: &NatSet, op: impl Fn(bool, bool) -> bool) -> Option<NatSet> {
        let t = self.threshold.max(other.threshold);
        let p = self.period.lcm(&other.period);
        if p > MAX_PERIOD || t > MAX_THRESHOLD {
            return None;
        }
        let (a, b) = (self.rebase(t, p), other.rebase(t, p));
        let head = (0..t).filter(|n| op(a.head.contains(n), b.head.contains(n))).collect();
        let residues = (0..p).filter(|i| op(a.residues.contains(i), b.residues.contains(i))).collect();
        Some(NatSet { threshold: t, head, period: p, residues })
    }

    pub fn union(&self, other: &NatSet) -> Option<NatSet> {
        self.combine(other, |x, y| x || y)
    }

    pub fn intersection(&self, other: &NatSet) -> Option<NatSet> {
        self.combine(other, |x, y| x && y)
    }

    pub fn difference(&self, other: &NatSet) -> Option<NatSet> {
        self.combine(other, |x, y| x && !y)
    }

    pub fn symmetric_difference(&self, other: &NatSet) -> Option<NatSet> {
        self.combine(other, |x, y| x != y)
    }

    /// Some member of `self` at or beyond `from`, if one exists.
    pub fn member_from(&self, from: u64) -> Option<u64> {
        let start = from.max(self.threshold);
        if let Some(n) = self.head.range(from..).next() {
            return Some(*n);
        }
        (start..start + self.period).find(|n| self.contains(*n))
    }

    /// The normal form of a set expression read as a subset of the naturals.
    /// `None` when the expression is not eventually periodic over the
    /// naturals or mentions negative points.
    pub fn from_expr(e: &SetExpr) -> Option<NatSet> {
        match e {
            SetExpr::Empty => Some(NatSet::empty()),
            SetExpr::Whole => Some(NatSet::all()),
            SetExpr::Explicit(pts) => {
                let mut ns = Vec::new();
                for p in pts {
                    ns.push(u64::try_from(p.as_scalar()?).ok()?);
                }
                Some(NatSet::finite(ns))
            }
            SetExpr::Cofinite(excluded) => {
                let t = excluded.last().map_or(0, |m| m + 1).max(0) as u64;
                if t > MAX_THRESHOLD {
                    return None;
                }
                let head = (0..t).filter(|n| !excluded.contains(&(*n as i64))).collect();
                Some(NatSet { threshold: t, head, period: 1, residues: [0].into() })
            }
            SetExpr::Progression(p) => {
                let lo = p.min.unwrap_or(0).max(0) as u64;
                if p.modulus <= 0 || p.modulus as u64 > MAX_PERIOD || lo > MAX_THRESHOLD {
                    return None;
                }
                match p.max {
                    Some(hi) if hi < 0 => Some(NatSet::empty()),
                    Some(hi) => {
                        if hi as u64 > MAX_THRESHOLD {
                            return None;
                        }
                        Some(NatSet::finite((lo..=hi as u64).filter(|n| p.contains(*n as i64))))
                    }
                    None => {
                        let period = p.modulus as u64;
                        let residues = p.residues.iter().map(|r| r.mod_floor(&p.modulus) as u64).collect();
                        Some(NatSet { threshold: lo, head: BTreeSet::new(), period, residues })
                    }
                }
            }
            SetExpr::Boxes(boxes) => {
                let mut acc = NatSet::empty();
                for b in boxes {
                    if b.axes.len() != 1 {
                        return None;
                    }
                    let (lo, hi) = b.axes[0];
                    let lo = lo.unwrap_or(0).max(0) as u64;
                    let part = match hi {
                        Some(h) if h < lo as i64 => NatSet::empty(),
                        Some(h) if h as u64 > MAX_THRESHOLD => return None,
                        Some(h) => NatSet::finite(lo..=h as u64),
                        None if lo > MAX_THRESHOLD => return None,
                        None => NatSet { threshold: lo, head: BTreeSet::new(), period: 1, residues: [0].into() },
                    };
                    acc = acc.union(&part)?;
                }
                Some(acc)
            }
            SetExpr::PolynomialValues(c) if c.iter().skip(1).all(|x| *x == 0) => {
                let v = *c.first().unwrap_or(&0);
                Some(NatSet::finite(u64::try_from(v).ok()))
            }
            SetExpr::Union(parts) => {
                let mut acc = NatSet::empty();
                for s in parts {
                    acc = acc.union(&NatSet::from_expr(s)?)?;
                }
                Some(acc)
            }
            SetExpr::Intersection(parts) => {
                let mut acc = NatSet::all();
                for s in parts {
                    acc = acc.intersection(&NatSet::from_expr(s)?)?;
                }
                Some(acc)
            }
            SetExpr::Difference(a, b) => NatSet::from_expr(a)?.difference(&NatSet::from_expr(b)?),
            _ => None,
        }
    }

    pub fn to_expr(&self) -> SetExpr {
        let head = SetExpr::explicit(self.head.iter().map(|n| Point::scalar(*n as i64)));
        if self.residues.is_empty() {
            return head;
        }
        let tail = SetExpr::Progression(crate::spaces::Progression {
            modulus: self.period as i64,
            residues: self.residues.iter().map(|r| *r as i64).collect(),
            min: Some(self.threshold as i64),
            max: None,
        });
        SetExpr::union(alloc::vec![head, tail])
    }
}

/// Whether `e`, read as a subset of the naturals, is finite. Falls back to
/// structural rules when no periodic normal form exists.
pub(crate) fn finiteness(e: &SetExpr) -> Option<bool> {
    if let Some(n) = NatSet::from_expr(e) {
        return Some(n.is_finite());
    }
    match e {
        SetExpr::PolynomialValues(c) => Some(c.iter().skip(1).all(|x| *x == 0)),
        SetExpr::Union(parts) => {
            let mut all_finite = true;
            for s in parts {
                match finiteness(s) {
                    Some(false) => return Some(false),
                    Some(true) => {}
                    None => all_finite = false,
                }
            }
            all_finite.then_some(true)
        }
        SetExpr::Intersection(parts) => parts.iter().any(|s| finiteness(s) == Some(true)).then_some(true),
        SetExpr::Difference(a, b) => {
            if syntactic_subset(a, b) {
                return Some(true);
            }
            if let SetExpr::Union(parts) = a.as_ref() {
                let mut all = true;
                for p in parts {
                    match finiteness(&SetExpr::minus(p.clone(), (**b).clone())) {
                        Some(false) => return Some(false),
                        Some(true) => {}
                        None => all = false,
                    }
                }
                if all {
                    return Some(true);
                }
            }
            match (finiteness(a), finiteness(b)) {
                (Some(true), _) => Some(true),
                (Some(false), Some(true)) => Some(false),
                _ => None,
            }
        }
        SetExpr::Image(f, s) if f.has_preimage() => {
            // finite fibres: the image is finite iff the source is
            finiteness(s)
        }
        SetExpr::Preimage(f, s) if f.has_preimage() => match finiteness(s) {
            Some(true) => Some(true),
            _ => None,
        },
        _ => None,
    }
}

/// A conservative structural test for `a ⊆ b`.
fn syntactic_subset(a: &SetExpr, b: &SetExpr) -> bool {
    if a == b || a.is_plainly_empty() || matches!(b, SetExpr::Whole) {
        return true;
    }
    match (a, b) {
        (SetExpr::Union(parts), _) => parts.iter().all(|p| syntactic_subset(p, b)),
        (SetExpr::Intersection(parts), _) if parts.iter().any(|p| syntactic_subset(p, b)) => true,
        (SetExpr::Difference(x, _), _) if syntactic_subset(x, b) => true,
        (_, SetExpr::Union(parts)) => parts.iter().any(|p| syntactic_subset(a, p)),
        (_, SetExpr::Intersection(parts)) => parts.iter().all(|p| syntactic_subset(a, p)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(e: &SetExpr, n: u64) -> bool {
        e.contains(&Point::scalar(n as i64)).unwrap()
    }

    #[test]
    fn normal_forms_agree_with_membership() {
        let exprs = [
            SetExpr::evens(),
            SetExpr::Cofinite([0, 3, 7].into()),
            SetExpr::union(alloc::vec![SetExpr::residues(3, &[1]), SetExpr::scalars([0, 4])]),
            SetExpr::minus(SetExpr::naturals(), SetExpr::residues(4, &[0, 1])),
            SetExpr::intersect(SetExpr::odds(), SetExpr::range(Some(5), Some(40))),
            SetExpr::range(Some(-5), Some(3)),
        ];
        for e in &exprs {
            let n = NatSet::from_expr(e).unwrap();
            for k in 0..200 {
                assert_eq!(n.contains(k), brute(e, k), "{e:?} at {k}");
            }
            let back = n.to_expr();
            for k in 0..200 {
                assert_eq!(brute(&back, k), n.contains(k));
            }
        }
    }

    #[test]
    fn finiteness_rules() {
        assert_eq!(finiteness(&SetExpr::squares()), Some(false));
        assert_eq!(finiteness(&SetExpr::scalars([1, 2])), Some(true));
        assert_eq!(finiteness(&SetExpr::minus(SetExpr::squares(), SetExpr::naturals())), None);
        assert_eq!(finiteness(&SetExpr::intersect(SetExpr::squares(), SetExpr::scalars([4]))), Some(true));
        assert_eq!(finiteness(&SetExpr::Cofinite(BTreeSet::new())), Some(false));
    }

    #[test]
    fn symmetric_difference() {
        let a = NatSet::from_expr(&SetExpr::Cofinite([1, 2].into())).unwrap();
        let b = NatSet::all();
        let d = a.symmetric_difference(&b).unwrap();
        assert!(d.is_finite());
        assert_eq!(d.members_below(10), alloc::vec![1, 2]);
        let e = NatSet::from_expr(&SetExpr::evens()).unwrap();
        assert!(!e.symmetric_difference(&b).unwrap().is_finite());
    }
}
