use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::{Integer, Roots};

use crate::error::invalid;
use crate::{Error, Point, Result};

/// A built-in map between point sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointMap {
    Identity,
    /// `x -> k x`, coordinatewise.
    Scale(i64),
    /// `x -> x + v`.
    Translate(Vec<i64>),
    /// `n -> n^2` on one-dimensional points.
    Square,
    /// `x -> floor(x / k)`, coordinatewise, `k > 0`.
    FloorDiv(i64),
    /// `n -> sign(n) floor(sqrt |n|)`.
    IntSqrt,
    /// `x -> (x_i)`.
    Project(usize),
    Constant(Point),
    /// Apply the listed maps left to right.
    Compose(Vec<PointMap>),
    /// A finite lookup table.
    Table(BTreeMap<Point, Point>),
}

impl PointMap {
    pub fn apply(&self, p: &Point) -> Result<Point> {
        let scalar = || p.as_scalar().ok_or_else(|| Error::InvalidPoint(p.clone()));
        Ok(match self {
            PointMap::Identity => p.clone(),
            PointMap::Scale(k) => map_coords(p, |c| c.checked_mul(*k))?,
            PointMap::Translate(v) => {
                if v.len() != p.dim() {
                    return Err(Error::InvalidPoint(p.clone()));
                }
                let mut it = v.iter();
                map_coords(p, |c| c.checked_add(*it.next().unwrap()))?
            }
            PointMap::Square => {
                let n = scalar()?;
                Point::scalar(n.checked_mul(n).ok_or_else(|| invalid("overflow in square"))?)
            }
            PointMap::FloorDiv(k) => {
                if *k <= 0 {
                    return Err(invalid("floor-div needs a positive divisor"));
                }
                map_coords(p, |c| Some(Integer::div_floor(&c, k)))?
            }
            PointMap::IntSqrt => {
                let n = scalar()?;
                Point::scalar(n.signum() * n.unsigned_abs().sqrt() as i64)
            }
            PointMap::Project(i) => Point::scalar(*p.coords().get(*i).ok_or_else(|| Error::InvalidPoint(p.clone()))?),
            PointMap::Constant(c) => c.clone(),
            PointMap::Compose(maps) => {
                let mut q = p.clone();
                for m in maps {
                    q = m.apply(&q)?;
                }
                q
            }
            PointMap::Table(t) => t.get(p).cloned().ok_or_else(|| Error::InvalidPoint(p.clone()))?,
        })
    }

    /// Whether [`PointMap::preimage`] is available (finite fibres).
    pub fn has_preimage(&self) -> bool {
        match self {
            PointMap::Scale(k) => *k != 0,
            PointMap::FloorDiv(k) => *k > 0,
            PointMap::Project(_) | PointMap::Constant(_) => false,
            PointMap::Compose(maps) => maps.iter().all(PointMap::has_preimage),
            _ => true,
        }
    }

    /// The full fibre over `y`, sorted.
    pub fn preimage(&self, y: &Point) -> Result<Vec<Point>> {
        if !self.has_preimage() {
            return Err(Error::MissingPreimage);
        }
        let mut out = match self {
            PointMap::Identity => alloc::vec![y.clone()],
            PointMap::Scale(k) => {
                if y.coords().iter().all(|c| c % k == 0) {
                    alloc::vec![map_coords(y, |c| Some(c / k))?]
                } else {
                    Vec::new()
                }
            }
            PointMap::Translate(v) => {
                if v.len() != y.dim() {
                    return Ok(Vec::new());
                }
                let mut it = v.iter();
                alloc::vec![map_coords(y, |c| c.checked_sub(*it.next().unwrap()))?]
            }
            PointMap::Square => match y.as_scalar() {
                Some(m) if m >= 0 => {
                    let r = m.sqrt();
                    if r * r != m {
                        Vec::new()
                    } else if r == 0 {
                        alloc::vec![Point::scalar(0)]
                    } else {
                        alloc::vec![Point::scalar(-r), Point::scalar(r)]
                    }
                }
                _ => Vec::new(),
            },
            PointMap::FloorDiv(k) => {
                let mut acc = alloc::vec![Vec::new()];
                for &c in y.coords() {
                    let mut next = Vec::new();
                    for prefix in &acc {
                        for x in c * k..c * k + k {
                            let mut v: Vec<i64> = Vec::clone(prefix);
                            v.push(x);
                            next.push(v);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(Point::from).collect()
            }
            PointMap::IntSqrt => match y.as_scalar() {
                Some(0) => alloc::vec![Point::scalar(0)],
                Some(m) => {
                    let a = m.abs();
                    let (lo, hi) = (a * a, (a + 1) * (a + 1) - 1);
                    (lo..=hi).map(|n| Point::scalar(m.signum() * n)).collect()
                }
                None => Vec::new(),
            },
            PointMap::Compose(maps) => {
                let mut layer = alloc::vec![y.clone()];
                for m in maps.iter().rev() {
                    let mut next = Vec::new();
                    for q in &layer {
                        next.extend(m.preimage(q)?);
                    }
                    layer = next;
                }
                layer
            }
            PointMap::Table(t) => t.iter().filter(|(_, v)| *v == y).map(|(k, _)| k.clone()).collect(),
            PointMap::Project(_) | PointMap::Constant(_) => return Err(Error::MissingPreimage),
        };
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn map_coords(p: &Point, mut f: impl FnMut(i64) -> Option<i64>) -> Result<Point> {
    let v: Option<Vec<i64>> = p.coords().iter().map(|c| f(*c)).collect();
    v.map(Point::from).ok_or_else(|| invalid("coordinate overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_fibres(f: &PointMap, domain: core::ops::RangeInclusive<i64>) {
        for n in domain {
            let p = Point::scalar(n);
            let y = f.apply(&p).unwrap();
            assert!(f.preimage(&y).unwrap().contains(&p), "{f:?} at {n}");
        }
    }

    #[test]
    fn fibres_contain_their_points() {
        for f in [
            PointMap::Identity,
            PointMap::Scale(2),
            PointMap::Scale(-3),
            PointMap::Square,
            PointMap::FloorDiv(2),
            PointMap::FloorDiv(5),
            PointMap::IntSqrt,
            PointMap::Translate(alloc::vec![5]),
            PointMap::Compose(alloc::vec![PointMap::Scale(2), PointMap::FloorDiv(3)]),
        ] {
            check_fibres(&f, -30..=30);
        }
    }

    #[test]
    fn fibres_are_exact() {
        assert_eq!(PointMap::Scale(2).preimage(&Point::scalar(7)).unwrap(), Vec::<Point>::new());
        assert_eq!(
            PointMap::FloorDiv(2).preimage(&Point::scalar(-1)).unwrap(),
            alloc::vec![Point::scalar(-2), Point::scalar(-1)]
        );
        assert_eq!(PointMap::IntSqrt.preimage(&Point::scalar(2)).unwrap().len(), 5);
        assert_eq!(PointMap::IntSqrt.apply(&Point::scalar(-10)).unwrap(), Point::scalar(-3));
        assert_eq!(PointMap::Constant(Point::scalar(0)).preimage(&Point::scalar(0)), Err(Error::MissingPreimage));
    }
}
