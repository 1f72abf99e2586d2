//! Scenario descriptors to core values.

use std::collections::{BTreeMap, BTreeSet};

use coarse_core::asr::DiscreteUniverse;
use coarse_core::coarse::Entourage;
use coarse_core::maps::ValueFn;
use coarse_core::spaces::{AbelianWord, Bound, FiniteSpace, IntBox, Interval, LatticeMetric, Progression, WordMetric};
use coarse_core::{AsrModel, MapDescriptor, Point, PointMap, ProbeBudget, Rational, SetExpr, Space};

use crate::scenario::*;

/// A rejected input, with the dotted path of the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { field: field.into(), message: message.into() }
    }
}

pub type Input<T> = Result<T, InputError>;

pub fn rational(field: &str, r: &RationalDto) -> Input<Rational> {
    match r {
        RationalDto::Int(n) => Ok(Rational::from_integer(*n)),
        RationalDto::Text(s) => {
            let t = s.trim();
            if t.contains('/') && t.ends_with("/0") {
                return Err(InputError::new(field, "zero denominator"));
            }
            t.parse::<Rational>().map_err(|_| InputError::new(field, format!("not a rational: {s:?}")))
        }
    }
}

pub fn rationals(field: &str, rs: &[RationalDto]) -> Input<Vec<Rational>> {
    rs.iter().enumerate().map(|(i, r)| rational(&format!("{field}[{i}]"), r)).collect()
}

pub fn point(p: &PointDto) -> Point {
    match p {
        PointDto::Scalar(n) => Point::scalar(*n),
        PointDto::Coords(v) => Point::from(v.clone()),
    }
}

pub fn points(ps: &[PointDto]) -> Vec<Point> {
    ps.iter().map(point).collect()
}

/// Scenario probe, then command-line overrides, then defaults.
pub fn probe(
    dto: &ProbeDto,
    radii: Option<Vec<Rational>>,
    scales: Option<Vec<Rational>>,
    stability: Option<usize>,
) -> Input<ProbeBudget> {
    let base = ProbeBudget::default();
    let radii = match (radii, &dto.radii) {
        (Some(r), _) => r,
        (None, Some(r)) => rationals("probe.radii", r)?,
        (None, None) => base.radii,
    };
    let scales = match (scales, &dto.scales) {
        (Some(s), _) => s,
        (None, Some(s)) => rationals("probe.scales", s)?,
        (None, None) => base.scales,
    };
    let stability = stability.or(dto.stability).unwrap_or(base.stability);
    ProbeBudget::new(radii, scales, stability).map_err(|e| InputError::new("probe", e.to_string()))
}

pub fn space(field: &str, s: &SpaceDto) -> Input<Space> {
    let fail = |e: coarse_core::Error| InputError::new(field, e.to_string());
    Ok(match s {
        SpaceDto::Integers {} => Space::integers(),
        SpaceDto::Naturals {} => Space::naturals(),
        SpaceDto::Lattice { dim, metric } => {
            if *dim == 0 {
                return Err(InputError::new(format!("{field}.dim"), "dimension must be positive"));
            }
            let m = match metric {
                MetricDto::L1 => LatticeMetric::L1,
                MetricDto::Linf => LatticeMetric::LInf,
            };
            Space::lattice(*dim, m)
        }
        SpaceDto::FreeGroup { rank } => {
            if *rank == 0 {
                return Err(InputError::new(format!("{field}.rank"), "rank must be positive"));
            }
            Space::free_group(*rank)
        }
        SpaceDto::Abelian { dim, generators } => {
            Space::Word(WordMetric::Abelian(AbelianWord::new(*dim, generators.clone()).map_err(fail)?))
        }
        SpaceDto::Finite { size, edges, basepoint } => {
            let mut es = Vec::with_capacity(edges.len());
            for (i, (a, b, w)) in edges.iter().enumerate() {
                es.push((*a, *b, rational(&format!("{field}.edges[{i}]"), w)?));
            }
            Space::Finite(FiniteSpace::from_edges(*size, &es, *basepoint).map_err(fail)?)
        }
        SpaceDto::DisjointUnion { left, right } => {
            Space::disjoint_union(space(&format!("{field}.left"), left)?, space(&format!("{field}.right"), right)?)
        }
        SpaceDto::Subspace { parent, subset } => {
            Space::subspace(space(&format!("{field}.parent"), parent)?, set(&format!("{field}.subset"), subset)?)
                .map_err(fail)?
        }
    })
}

fn bound(field: &str, r: &Option<RationalDto>, closed: bool) -> Input<Bound> {
    Ok(match r {
        None => Bound::Unbounded,
        Some(q) if closed => Bound::Closed(rational(field, q)?),
        Some(q) => Bound::Open(rational(field, q)?),
    })
}

pub fn set(field: &str, s: &SetDto) -> Input<SetExpr> {
    let sub = |name: &str, i: usize| format!("{field}.{name}[{i}]");
    Ok(match s {
        SetDto::Empty {} => SetExpr::Empty,
        SetDto::Whole {} => SetExpr::Whole,
        SetDto::Explicit { points: ps } => SetExpr::explicit(points(ps)),
        SetDto::Range { lo, hi } => SetExpr::range(*lo, *hi),
        SetDto::Naturals {} => SetExpr::naturals(),
        SetDto::Evens {} => SetExpr::evens(),
        SetDto::Odds {} => SetExpr::odds(),
        SetDto::Squares {} => SetExpr::squares(),
        SetDto::Progression { modulus, residues, min, max } => {
            if *modulus <= 0 {
                return Err(InputError::new(format!("{field}.modulus"), "modulus must be positive"));
            }
            SetExpr::Progression(Progression {
                modulus: *modulus,
                residues: residues.iter().map(|r| r.rem_euclid(*modulus)).collect(),
                min: *min,
                max: *max,
            })
        }
        SetDto::Polynomial { coeffs } => {
            if coeffs.iter().any(|c| *c < 0) {
                return Err(InputError::new(format!("{field}.coeffs"), "coefficients must be nonnegative"));
            }
            SetExpr::PolynomialValues(coeffs.clone())
        }
        SetDto::Cofinite { excluded } => SetExpr::Cofinite(excluded.iter().copied().collect()),
        SetDto::Intervals { parts } => {
            let mut out = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                let f = sub("parts", i);
                out.push(Interval::new(bound(&f, &p.lo, p.lo_closed)?, bound(&f, &p.hi, p.hi_closed)?));
            }
            SetExpr::intervals(out)
        }
        SetDto::Boxes { boxes } => {
            let mut out = Vec::new();
            for (i, axes) in boxes.iter().enumerate() {
                if axes.is_empty() {
                    return Err(InputError::new(sub("boxes", i), "a box needs at least one axis"));
                }
                out.push(IntBox::new(axes.clone()));
            }
            SetExpr::Boxes(out)
        }
        SetDto::Union { parts } => {
            SetExpr::union(parts.iter().enumerate().map(|(i, p)| set(&sub("parts", i), p)).collect::<Input<_>>()?)
        }
        SetDto::Intersection { parts } => SetExpr::Intersection(
            parts.iter().enumerate().map(|(i, p)| set(&sub("parts", i), p)).collect::<Input<_>>()?,
        ),
        SetDto::Difference { a, b } => SetExpr::minus(set(&format!("{field}.a"), a)?, set(&format!("{field}.b"), b)?),
        SetDto::Image { map: m, set: s } => {
            SetExpr::Image(map(&format!("{field}.map"), m)?, Box::new(set(&format!("{field}.set"), s)?))
        }
        SetDto::Preimage { map: m, set: s } => {
            SetExpr::Preimage(map(&format!("{field}.map"), m)?, Box::new(set(&format!("{field}.set"), s)?))
        }
    })
}

pub fn map(field: &str, m: &MapDto) -> Input<PointMap> {
    Ok(match m {
        MapDto::Identity {} => PointMap::Identity,
        MapDto::Scale { k } => PointMap::Scale(*k),
        MapDto::Translate { by } => PointMap::Translate(by.clone()),
        MapDto::Square {} => PointMap::Square,
        MapDto::FloorDiv { k } => {
            if *k <= 0 {
                return Err(InputError::new(format!("{field}.k"), "floor-div needs k > 0"));
            }
            PointMap::FloorDiv(*k)
        }
        MapDto::IntSqrt {} => PointMap::IntSqrt,
        MapDto::CoordinateProject { axis } => PointMap::Project(*axis),
        MapDto::Constant { point: p } => PointMap::Constant(point(p)),
        MapDto::Compose { maps } => PointMap::Compose(
            maps.iter().enumerate().map(|(i, m)| map(&format!("{field}.maps[{i}]"), m)).collect::<Input<_>>()?,
        ),
        MapDto::Table { entries } => {
            let mut t = BTreeMap::new();
            for (i, (x, y)) in entries.iter().enumerate() {
                if t.insert(point(x), point(y)).is_some() {
                    return Err(InputError::new(format!("{field}.entries[{i}]"), "repeated argument"));
                }
            }
            PointMap::Table(t)
        }
    })
}

pub fn map_desc(field: &str, d: &MapDescDto) -> Input<MapDescriptor> {
    let domain = space(&format!("{field}.domain"), &d.domain)?;
    let codomain = match &d.codomain {
        Some(c) => space(&format!("{field}.codomain"), c)?,
        None => domain.clone(),
    };
    Ok(MapDescriptor::new(map(&format!("{field}.map"), &d.map)?, domain, codomain))
}

pub fn model(field: &str, m: &ModelDto, probe: &ProbeBudget) -> Input<AsrModel> {
    Ok(match m {
        ModelDto::Metric { space: s } => AsrModel::metric(space(&format!("{field}.space"), s)?, probe.clone()),
        ModelDto::Ray {} => AsrModel::RayOnR,
        ModelDto::DiscreteNaturals {} => AsrModel::Discrete(DiscreteUniverse::Naturals),
        ModelDto::DiscreteFinite {} => AsrModel::Discrete(DiscreteUniverse::Finite),
        ModelDto::FiniteInfinite {} => AsrModel::FiniteInfiniteOnN,
        ModelDto::Group { space: s } => {
            AsrModel::GroupLeft { space: space(&format!("{field}.space"), s)?, probe: probe.clone() }
        }
        ModelDto::Subspace { parent, subset } => AsrModel::Subspace {
            parent: Box::new(model(&format!("{field}.parent"), parent, probe)?),
            subset: set(&format!("{field}.subset"), subset)?,
        },
    })
}

pub fn entourage(field: &str, e: &EntourageDto) -> Input<Entourage> {
    Ok(match e {
        EntourageDto::Explicit { pairs } => Entourage::explicit(pairs.iter().map(|(x, y)| (point(x), point(y)))),
        EntourageDto::Diagonal { points: ps } => Entourage::diagonal(points(ps)),
        EntourageDto::Displacement { space: s, bound } => {
            Entourage::displacement(space(&format!("{field}.space"), s)?, rational(&format!("{field}.bound"), bound)?)
        }
        EntourageDto::Graph { map: m, domain, window } => Entourage::Graph {
            map: map(&format!("{field}.map"), m)?,
            domain: space(&format!("{field}.domain"), domain)?,
            window: rational(&format!("{field}.window"), window)?,
        },
    })
}

pub fn value_fn(field: &str, f: &ValueFnDto) -> Input<ValueFn> {
    Ok(match f {
        ValueFnDto::Constant { re, im } => {
            ValueFn::Constant(rational(&format!("{field}.re"), re)?, rational(&format!("{field}.im"), im)?)
        }
        ValueFnDto::Parity {} => ValueFn::Parity,
        ValueFnDto::Reciprocal {} => ValueFn::Reciprocal,
        ValueFnDto::Table { entries } => {
            let mut t = BTreeMap::new();
            for (i, (p, re, im)) in entries.iter().enumerate() {
                let f = format!("{field}.entries[{i}]");
                t.insert(point(p), (rational(&f, re)?, rational(&f, im)?));
            }
            ValueFn::Table(t)
        }
    })
}

/// The listed pairs of a table relation, as point sets.
pub fn table(pairs: &[(Vec<PointDto>, Vec<PointDto>)]) -> BTreeSet<(BTreeSet<Point>, BTreeSet<Point>)> {
    pairs.iter().map(|(a, b)| (points(a).into_iter().collect(), points(b).into_iter().collect())).collect()
}
