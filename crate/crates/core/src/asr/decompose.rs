use alloc::collections::BTreeSet;
use alloc::string::String;

use crate::spaces::{ball, SetExpr, Space};
use crate::{Error, Point, Rational, Result};

/// Splits `A` along a decomposition `B1 ∪ B2` of a set alike to it:
/// `Ai = ball(Bi, r) ∩ A` on the `R`-window.
///
/// Fails when some window point of `A` lies outside `ball(B1 ∪ B2, r)`.
pub fn decompose(
    space: &Space,
    a: &SetExpr,
    b1: &SetExpr,
    b2: &SetExpr,
    r: &Rational,
    radius: &Rational,
) -> Result<(BTreeSet<Point>, BTreeSet<Point>)> {
    for (name, b) in [("B1", b1), ("B2", b2)] {
        if b.window_points(space, &(*radius + *r))?.is_empty() {
            return Err(Error::PreconditionFailed {
                reason: alloc::format!("{name} is empty on the window"),
                witness: None,
            });
        }
    }
    let a_pts = a.window_points(space, radius)?;
    let near1 = ball(space, b1, r, radius)?;
    let near2 = ball(space, b2, r, radius)?;
    if let Some(p) = a_pts.iter().find(|p| !near1.contains(*p) && !near2.contains(*p)) {
        return Err(Error::PreconditionFailed {
            reason: String::from("A is not inside the r-ball around B1 ∪ B2"),
            witness: Some(p.clone()),
        });
    }
    let a1 = a_pts.iter().filter(|p| near1.contains(*p)).cloned().collect();
    let a2 = a_pts.iter().filter(|p| near2.contains(*p)).cloned().collect();
    Ok((a1, a2))
}
