use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::coarse::Entourage;
use crate::spaces::Space;
use crate::{int, Error, Point, Rational, Result};

/// A bounded function to the plane, values as `(re, im)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueFn {
    Constant(Rational, Rational),
    /// `x_0 mod 2` on the first coordinate.
    Parity,
    /// `1 / (1 + |x|_1)`.
    Reciprocal,
    Table(BTreeMap<Point, (Rational, Rational)>),
}

impl ValueFn {
    pub fn eval(&self, p: &Point) -> Result<(Rational, Rational)> {
        Ok(match self {
            ValueFn::Constant(a, b) => (*a, *b),
            ValueFn::Parity => {
                let c = *p.coords().first().ok_or_else(|| Error::InvalidPoint(p.clone()))?;
                (int(c.rem_euclid(2)), int(0))
            }
            ValueFn::Reciprocal => {
                let n: i64 = p.coords().iter().map(|c| c.abs()).sum();
                (Rational::new(1, 1 + n), int(0))
            }
            ValueFn::Table(t) => *t.get(p).ok_or_else(|| Error::InvalidPoint(p.clone()))?,
        })
    }
}

/// `|u - v|` in the max norm on `(re, im)`; exact, and within a factor
/// `√2` of the modulus.
fn gap(u: (Rational, Rational), v: (Rational, Rational)) -> Rational {
    (u.0 - v.0).abs().max((u.1 - v.1).abs())
}

/// `sup { |f(x) - f(y)| : (x,y) ∈ E, x or y outside B(x0, R) }` for each `R`,
/// over the pairs of `E` whose points lie in the window of radius `horizon`.
pub fn higson_variation(
    space: &Space,
    f: &ValueFn,
    e: &Entourage,
    radii: &[Rational],
    horizon: &Rational,
) -> Result<Vec<(Rational, Rational)>> {
    let mut rows: Vec<(Rational, Rational)> = Vec::new();
    for (x, y) in e.sample(space, horizon)? {
        let dy = match space.depth(&y).finite() {
            Some(d) if d <= *horizon => d,
            _ => continue,
        };
        let outer = space.depth(&x).finite().unwrap().max(dy);
        rows.push((outer, gap(f.eval(&x)?, f.eval(&y)?)));
    }
    Ok(radii
        .iter()
        .map(|radius| (*radius, rows.iter().filter(|(d, _)| d >= radius).map(|(_, g)| *g).max().unwrap_or(int(0))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radii() -> Vec<Rational> {
        [0, 10, 20, 40, 80].into_iter().map(int).collect()
    }

    #[test]
    fn constant_has_no_variation() {
        let z = Space::integers();
        let e = Entourage::displacement(z.clone(), int(3));
        let prof = higson_variation(&z, &ValueFn::Constant(int(1), int(2)), &e, &radii(), &int(100)).unwrap();
        assert!(prof.iter().all(|(_, v)| *v == int(0)));
    }

    #[test]
    fn parity_never_settles() {
        let z = Space::integers();
        let e = Entourage::displacement(z.clone(), int(2));
        let prof = higson_variation(&z, &ValueFn::Parity, &e, &radii(), &int(100)).unwrap();
        assert!(prof.iter().all(|(_, v)| *v == int(1)));
    }

    #[test]
    fn reciprocal_fades() {
        let z = Space::integers();
        let e = Entourage::displacement(z.clone(), int(1));
        let prof = higson_variation(&z, &ValueFn::Reciprocal, &e, &radii(), &int(100)).unwrap();
        // brute force: the largest jump outside the ball sits at |x| = R - 1 -> R
        for (r, v) in &prof {
            let r = crate::floor_int(r);
            let expected = if r == 0 { Rational::new(1, 2) } else { Rational::new(1, r) - Rational::new(1, r + 1) };
            assert_eq!(*v, expected, "R={r}");
        }
        assert!(prof.windows(2).all(|w| w[1].1 < w[0].1));
    }
}
