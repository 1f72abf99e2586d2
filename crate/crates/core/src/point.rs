use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

/// A point id: a short integer array.
///
/// Lattice points are coordinates, free-group elements are reduced words
/// (letter `±i` is generator `i` or its inverse), finite-space points are
/// `[index]`, and points of a disjoint union carry the component tag first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point(pub SmallVec<[i64; 4]>);

impl Point {
    pub fn new(coords: &[i64]) -> Self {
        Point(SmallVec::from_slice(coords))
    }

    pub fn scalar(n: i64) -> Self {
        Point::new(&[n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The single coordinate of a one-dimensional point.
    pub fn as_scalar(&self) -> Option<i64> {
        match self.0.as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }

    pub(crate) fn tagged(tag: i64, rest: &Point) -> Point {
        let mut v = SmallVec::with_capacity(rest.dim() + 1);
        v.push(tag);
        v.extend_from_slice(rest.coords());
        Point(v)
    }

    pub(crate) fn untag(&self) -> Option<(i64, Point)> {
        let (&tag, rest) = self.0.split_first()?;
        Some((tag, Point::new(rest)))
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Self {
        Point::new(&v)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
