use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_rational::Ratio;
use num_traits::Zero;

/// Exact rational number used for every distance and radius.
pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn floor_int(q: &Rational) -> i64 {
    q.floor().to_integer()
}

pub fn ceil_int(q: &Rational) -> i64 {
    q.ceil().to_integer()
}

/// Largest integer distance `k` with `k < r` (open) or `k <= r` (closed).
/// `None` when no nonnegative integer qualifies.
pub(crate) fn max_integer_within(r: &Rational, closed: bool) -> Option<i64> {
    let k = if closed { floor_int(r) } else { ceil_int(r) - 1 };
    (k >= 0).then_some(k)
}

/// A nonnegative rational or `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtReal {
    Finite(Rational),
    Infinite,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(Ratio::new_raw(0, 1));

    pub fn from_int(n: i64) -> Self {
        ExtReal::Finite(int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            ExtReal::Finite(q) => Some(*q),
            ExtReal::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(q) if q.is_zero())
    }

    /// `self < r` for a finite rational `r`.
    pub fn lt(&self, r: &Rational) -> bool {
        matches!(self, ExtReal::Finite(q) if q < r)
    }

    /// `self <= r` for a finite rational `r`.
    pub fn le(&self, r: &Rational) -> bool {
        matches!(self, ExtReal::Finite(q) if q <= r)
    }

    pub fn gt(&self, r: &Rational) -> bool {
        !self.le(r)
    }

    pub fn within(&self, r: &Rational, closed: bool) -> bool {
        if closed {
            self.le(r)
        } else {
            self.lt(r)
        }
    }
}

impl From<Rational> for ExtReal {
    fn from(q: Rational) -> Self {
        ExtReal::Finite(q)
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.cmp(b),
            (ExtReal::Finite(_), ExtReal::Infinite) => Ordering::Less,
            (ExtReal::Infinite, ExtReal::Finite(_)) => Ordering::Greater,
            (ExtReal::Infinite, ExtReal::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Infinite,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(q) => write!(f, "{q}"),
            ExtReal::Infinite => f.write_str("inf"),
        }
    }
}
