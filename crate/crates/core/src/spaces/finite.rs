use alloc::vec::Vec;

use crate::error::invalid;
use crate::{ExtReal, Point, Rational, Result};
use num_traits::Signed;

/// A finite weighted graph with its shortest-path metric; points are `[i]`.
/// Unreachable pairs sit at distance `inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    size: usize,
    basepoint: usize,
    dist: Vec<Vec<ExtReal>>,
}

impl FiniteSpace {
    pub fn from_edges(size: usize, edges: &[(usize, usize, Rational)], basepoint: usize) -> Result<Self> {
        if size == 0 || basepoint >= size {
            return Err(invalid("finite space needs a basepoint among its points"));
        }
        let mut d = alloc::vec![alloc::vec![ExtReal::Infinite; size]; size];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = ExtReal::ZERO;
        }
        for &(u, v, w) in edges {
            if u >= size || v >= size {
                return Err(invalid("edge endpoint out of range"));
            }
            if w.is_negative() {
                return Err(invalid("edge weights must be nonnegative"));
            }
            let w = ExtReal::Finite(w);
            if w < d[u][v] {
                d[u][v] = w;
                d[v][u] = w;
            }
        }
        for k in 0..size {
            for i in 0..size {
                for j in 0..size {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        Ok(FiniteSpace { size, basepoint, dist: d })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basepoint(&self) -> Point {
        Point::scalar(self.basepoint as i64)
    }

    fn index(&self, p: &Point) -> Option<usize> {
        let i = usize::try_from(p.as_scalar()?).ok()?;
        (i < self.size).then_some(i)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index(p).is_some()
    }

    pub fn dist(&self, p: &Point, q: &Point) -> ExtReal {
        match (self.index(p), self.index(q)) {
            (Some(i), Some(j)) => self.dist[i][j],
            _ => ExtReal::Infinite,
        }
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.size).map(|i| Point::scalar(i as i64)).collect()
    }

    pub fn enumerate(&self, radius: &Rational) -> Vec<Point> {
        (0..self.size).filter(|&i| self.dist[self.basepoint][i].le(radius)).map(|i| Point::scalar(i as i64)).collect()
    }
}
