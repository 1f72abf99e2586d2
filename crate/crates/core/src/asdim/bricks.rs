use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::asr::{AsrModel, ProbeBudget};
use crate::error::{invalid, unsupported};
use crate::spaces::{IntBox, SetExpr, Space};
use crate::{floor_int, int, Error, Rational, Result};

use super::cover::{balls_refine, multiplicity, uniformly_bounded_check, Cover, UBVerdict};

/// The default side length for scale `r`.
pub fn default_side(r: i64) -> i64 {
    8 * r
}

/// A staggered cover of `Z^d` by boxes of side `side`, each grown by `r` on
/// every side, keeping the bricks that meet the cube `[-R, R]^d`.
///
/// For `d = 1` the bricks are the intervals `[kL - r, (k+1)L - 1 + r]`.
/// For `d = 2` the columns `[sL, (s+1)L)` are cut at heights
/// `L/4 + (s mod 2) L/2 + kL`, so two column seams never meet a row seam
/// of both neighbours, and no row seam of any column crosses the axis
/// `y = 0` while `L > 4r`.
pub fn brick_cover(dim: usize, side: i64, r: i64, window: &Rational) -> Result<Cover> {
    if side <= 0 || r < 0 || side < 4 * r {
        return Err(invalid("bricks need a side of at least 4r and r >= 0"));
    }
    if dim == 2 && side % 4 != 0 {
        return Err(invalid("planar bricks need a side divisible by 4"));
    }
    if dim == 0 || dim > 2 {
        return Err(unsupported("brick covers are built in dimensions 1 and 2"));
    }
    let reach = floor_int(window).max(0);
    // brick indices whose grown extent meets [-reach, reach]
    let span = |offset: i64| (reach + r + offset).div_euclid(side) + 1;
    let grow = |lo: i64| (lo - r, lo + side - 1 + r);
    let mut members = Vec::new();
    match dim {
        1 => {
            let k = span(0);
            for i in -k..=k {
                members.push(SetExpr::Boxes(alloc::vec![IntBox::finite(&[grow(i * side)])]));
            }
        }
        _ => {
            let ks = span(0);
            for s in -ks..=ks {
                let offset = side / 4 + s.rem_euclid(2) * (side / 2);
                let kr = span(side);
                for k in -kr..=kr {
                    let (x, y) = (grow(s * side), grow(offset + k * side));
                    if x.1 < -reach || x.0 > reach || y.1 < -reach || y.0 > reach {
                        continue;
                    }
                    members.push(SetExpr::Boxes(alloc::vec![IntBox::finite(&[x, y])]));
                }
            }
        }
    }
    members.retain(|m| match m {
        SetExpr::Boxes(b) => b[0].axes.iter().all(|(lo, hi)| hi.unwrap() >= -reach && lo.unwrap() <= reach),
        _ => true,
    });
    Ok(Cover::new(members, *window))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScaleCertificate {
    pub r: i64,
    pub side: i64,
    pub cover: Cover,
    pub multiplicity: usize,
    pub refines: bool,
    pub ub: UBVerdict,
}

/// Evidence that `asdim <= claimed_dim`, valid on the recorded window.
#[derive(Clone, Debug, PartialEq)]
pub struct DimCertificate {
    pub claimed_dim: usize,
    pub window: Rational,
    pub per_scale: Vec<ScaleCertificate>,
    pub assumption: &'static str,
}

const PERIODIC: &str =
    "checked on the window; the brick pattern is periodic, so the window contains every local configuration";
const FINITE: &str = "the space is finite, so one member covers it at every scale";

fn fail(r: i64, check: String) -> Error {
    Error::CertificateFailed { scale: int(r), check }
}

/// The uniform-boundedness probe used for certificates: windows `R/2` and
/// `R`, both in the tail.
fn ub_probe(window: &Rational) -> Result<ProbeBudget> {
    ProbeBudget::new(alloc::vec![*window / int(2), *window], alloc::vec![int(1)], 2)
}

/// Builds and checks an upper-bound certificate at each scale `r`.
///
/// Lattices of dimension 1 and 2 get brick covers with side `side(r)`;
/// each cover must have multiplicity at most `d + 1`, contain every closed
/// `r`-ball centred in the core of the window, and be uniformly bounded.
/// The window defaults to four times the largest side. A finite space gets
/// the one-member cover and dimension 0.
pub fn asdim_upper(
    space: &Space,
    scales: &[i64],
    side: &dyn Fn(i64) -> i64,
    window: Option<Rational>,
) -> Result<DimCertificate> {
    if scales.is_empty() || scales[0] <= 0 || scales.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("scales must be positive, nonempty and strictly ascending"));
    }
    let r_max = *scales.iter().max().unwrap();
    match space {
        Space::Finite(_) => {
            let window = window.unwrap_or_else(|| int(4 * side(r_max)));
            let mut per_scale = Vec::new();
            for &r in scales {
                let cover = Cover::new(alloc::vec![SetExpr::Whole], window);
                let mu = multiplicity(space, &cover)?;
                let refines = balls_refine(space, r, &cover)?.is_none();
                let ub = uniformly_bounded_check(
                    &AsrModel::metric(space.clone(), ub_probe(&window)?),
                    &cover.members,
                    &ub_probe(&window)?,
                )?;
                per_scale.push(ScaleCertificate { r, side: 0, cover, multiplicity: mu, refines, ub });
            }
            Ok(DimCertificate { claimed_dim: 0, window, per_scale, assumption: FINITE })
        }
        Space::Lattice(l) => {
            let d = l.dim;
            let window = window.unwrap_or_else(|| int(4 * side(r_max)));
            let probe = ub_probe(&window)?;
            let model = AsrModel::metric(space.clone(), probe.clone());
            let mut per_scale = Vec::new();
            for &r in scales {
                let l_r = side(r);
                let cover = brick_cover(d, l_r, r, &window)?;
                let mu = multiplicity(space, &cover)?;
                if mu > d + 1 {
                    return Err(fail(r, format!("multiplicity {mu} exceeds {}", d + 1)));
                }
                if let Some(p) = balls_refine(space, r, &cover)? {
                    return Err(fail(r, format!("the closed {r}-ball around {p} lies in no member")));
                }
                let ub = uniformly_bounded_check(&model, &cover.members, &probe)?;
                if !ub.is_ub() {
                    return Err(fail(r, String::from("the cover is not uniformly bounded on the window")));
                }
                per_scale.push(ScaleCertificate { r, side: l_r, cover, multiplicity: mu, refines: true, ub });
            }
            Ok(DimCertificate { claimed_dim: d, window, per_scale, assumption: PERIODIC })
        }
        _ => Err(unsupported("upper bounds are built for lattices and finite spaces")),
    }
}

/// Re-checks a certificate from its covers alone.
pub fn verify_certificate(space: &Space, cert: &DimCertificate) -> Result<()> {
    let probe = ub_probe(&cert.window)?;
    let model = AsrModel::metric(space.clone(), probe.clone());
    for s in &cert.per_scale {
        if s.cover.window != cert.window {
            return Err(fail(s.r, String::from("cover window differs from the certificate window")));
        }
        let mu = multiplicity(space, &s.cover)?;
        if mu != s.multiplicity || mu > cert.claimed_dim + 1 {
            return Err(fail(s.r, format!("multiplicity {mu}, recorded {}", s.multiplicity)));
        }
        if let Some(p) = balls_refine(space, s.r, &s.cover)? {
            return Err(fail(s.r, format!("the closed {}-ball around {p} lies in no member", s.r)));
        }
        if !uniformly_bounded_check(&model, &s.cover.members, &probe)?.is_ub() {
            return Err(fail(s.r, String::from("the cover is not uniformly bounded on the window")));
        }
    }
    Ok(())
}
