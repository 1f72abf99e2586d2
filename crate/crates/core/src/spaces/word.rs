use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::error::invalid;
use crate::num::max_integer_within;
use crate::{ExtReal, Point, Rational, Result};

/// A finitely generated group with its word metric `d(g,h) = |g^-1 h|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordMetric {
    /// Free group on `rank` generators; points are reduced words.
    Free { rank: usize },
    /// `Z^dim` generated by the given vectors (and their inverses).
    Abelian(AbelianWord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianWord {
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
    table: BTreeMap<Point, u32>,
    horizon: u32,
}

const DEFAULT_HORIZON: u32 = 48;

impl AbelianWord {
    /// Fails unless the generators generate all of `Z^dim` quickly enough
    /// for every unit vector to appear within the word-length horizon.
    pub fn new(dim: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 || generators.iter().any(|g| g.len() != dim) {
            return Err(invalid("generator dimension mismatch"));
        }
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for g in &generators {
            if g.iter().all(|c| *c == 0) {
                continue;
            }
            let inv: Vec<i64> = g.iter().map(|c| -c).collect();
            for v in [g.clone(), inv] {
                if !gens.contains(&v) {
                    gens.push(v);
                }
            }
        }
        gens.sort();
        let table = bfs(&gens, dim, DEFAULT_HORIZON);
        for axis in 0..dim {
            let mut e = alloc::vec![0i64; dim];
            e[axis] = 1;
            if !table.contains_key(&Point::from(e)) {
                return Err(invalid("generators do not generate the lattice"));
            }
        }
        Ok(AbelianWord { dim, generators: gens, table, horizon: DEFAULT_HORIZON })
    }

    /// The standard generators `±e_i`.
    pub fn standard(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| {
                let mut e = alloc::vec![0i64; dim];
                e[i] = 1;
                e
            })
            .collect();
        AbelianWord::new(dim, gens).expect("standard generators generate")
    }

    pub fn length(&self, v: &Point) -> u32 {
        if let Some(n) = self.table.get(v) {
            return *n;
        }
        let mut horizon = self.horizon * 2;
        loop {
            let t = bfs(&self.generators, self.dim, horizon);
            if let Some(n) = t.get(v) {
                return *n;
            }
            horizon *= 2;
        }
    }

    fn ball(&self, b: u32) -> Vec<(Point, u32)> {
        let owned;
        let table = if b <= self.horizon {
            &self.table
        } else {
            owned = bfs(&self.generators, self.dim, b);
            &owned
        };
        table.iter().filter(|(_, n)| **n <= b).map(|(p, n)| (p.clone(), *n)).collect()
    }
}

fn bfs(gens: &[Vec<i64>], dim: usize, horizon: u32) -> BTreeMap<Point, u32> {
    let origin = Point::from(alloc::vec![0i64; dim]);
    let mut seen = BTreeMap::new();
    seen.insert(origin.clone(), 0u32);
    let mut queue = VecDeque::from([origin]);
    while let Some(p) = queue.pop_front() {
        let n = seen[&p];
        if n == horizon {
            continue;
        }
        for g in gens {
            let q: Vec<i64> = p.coords().iter().zip(g).map(|(a, b)| a + b).collect();
            let q = Point::from(q);
            if !seen.contains_key(&q) {
                seen.insert(q.clone(), n + 1);
                queue.push_back(q);
            }
        }
    }
    seen
}

impl WordMetric {
    pub fn free(rank: usize) -> Self {
        WordMetric::Free { rank }
    }

    pub fn identity(&self) -> Point {
        match self {
            WordMetric::Free { .. } => Point::default(),
            WordMetric::Abelian(a) => Point::from(alloc::vec![0i64; a.dim]),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            WordMetric::Free { rank } => {
                let w = p.coords();
                w.iter().all(|l| *l != 0 && l.unsigned_abs() as usize <= *rank)
                    && w.windows(2).all(|pair| pair[0] != -pair[1])
            }
            WordMetric::Abelian(a) => p.dim() == a.dim,
        }
    }

    pub fn dist(&self, p: &Point, q: &Point) -> ExtReal {
        match self {
            WordMetric::Free { .. } => {
                let (u, v) = (p.coords(), q.coords());
                let common = u.iter().zip(v).take_while(|(a, b)| a == b).count();
                ExtReal::from_int((u.len() + v.len() - 2 * common) as i64)
            }
            WordMetric::Abelian(a) => {
                let diff: Vec<i64> = q.coords().iter().zip(p.coords()).map(|(x, y)| x - y).collect();
                ExtReal::from_int(a.length(&Point::from(diff)) as i64)
            }
        }
    }

    /// Group elements of word length at most `b`, with their lengths.
    pub fn ball_words(&self, b: i64) -> Vec<(Point, i64)> {
        if b < 0 {
            return Vec::new();
        }
        match self {
            WordMetric::Free { rank } => {
                let mut out = Vec::new();
                let mut cur = Vec::new();
                free_words(*rank as i64, b as usize, &mut cur, &mut out);
                out
            }
            WordMetric::Abelian(a) => a.ball(b as u32).into_iter().map(|(p, n)| (p, n as i64)).collect(),
        }
    }

    /// The product `p * w`.
    pub fn multiply(&self, p: &Point, w: &Point) -> Point {
        match self {
            WordMetric::Free { .. } => {
                let mut out: Vec<i64> = p.coords().to_vec();
                for &l in w.coords() {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                Point::from(out)
            }
            WordMetric::Abelian(_) => {
                Point::from(p.coords().iter().zip(w.coords()).map(|(a, b)| a + b).collect::<Vec<_>>())
            }
        }
    }

    pub fn enumerate(&self, radius: &Rational) -> Vec<Point> {
        let Some(b) = max_integer_within(radius, true) else {
            return Vec::new();
        };
        let mut pts: Vec<Point> = self.ball_words(b).into_iter().map(|(p, _)| p).collect();
        pts.sort();
        pts
    }
}

fn free_words(rank: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<(Point, i64)>) {
    out.push((Point::new(cur), cur.len() as i64));
    if left == 0 {
        return;
    }
    for g in 1..=rank {
        for l in [g, -g] {
            if cur.last() == Some(&-l) {
                continue;
            }
            cur.push(l);
            free_words(rank, left - 1, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    #[test]
    fn free_group_ball_sizes() {
        // |ball(n)| in F_2 is 1 + 4(3^n - 1)/2
        let f2 = WordMetric::free(2);
        for n in 0..5i64 {
            let expected = 1 + 2 * (3i64.pow(n as u32) - 1);
            assert_eq!(f2.enumerate(&int(n)).len() as i64, expected);
        }
    }

    #[test]
    fn free_group_distance_is_left_invariant() {
        let f2 = WordMetric::free(2);
        let g = Point::from([1, 2]);
        let h = Point::from([1, -2, -1]);
        let k = Point::from([-2, 1]);
        let d = f2.dist(&g, &h);
        assert_eq!(d, ExtReal::from_int(3));
        assert_eq!(f2.dist(&f2.multiply(&k, &g), &f2.multiply(&k, &h)), d);
    }

    #[test]
    fn abelian_with_odd_generators() {
        let a = AbelianWord::new(1, alloc::vec![alloc::vec![2], alloc::vec![3]]).unwrap();
        let w = WordMetric::Abelian(a);
        assert_eq!(w.dist(&Point::scalar(0), &Point::scalar(1)), ExtReal::from_int(2));
        assert_eq!(w.dist(&Point::scalar(0), &Point::scalar(6)), ExtReal::from_int(2));
        assert_eq!(w.dist(&Point::scalar(0), &Point::scalar(200)), ExtReal::from_int(67));
        assert!(AbelianWord::new(1, alloc::vec![alloc::vec![2]]).is_err());
    }
}
