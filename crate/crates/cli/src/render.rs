//! Core results as JSON. Rationals print as `"p/q"` strings unless they
//! are integers; infinity is the string `"inf"`.

use std::collections::BTreeSet;

use coarse_core::asdim::{DimCertificate, LowerBound, UBVerdict, UBWitness};
use coarse_core::coarse::{Entourage, MaximalVerdict, Side, StructureVerdict, ViaVerdict};
use coarse_core::maps::{CoarseVerdict, EquivalenceReport, ModulusProfile, Properness};
use coarse_core::separation::{DisjointVerdict, DivergenceProfile, NormalityCertificate};
use coarse_core::spaces::{Bound, SetExpr};
use coarse_core::subsets::{AxiomReport, CheckStatus};
use coarse_core::{ExtReal, Point, PointMap, ProbeBudget, Rational, ScaleVerdict, Witness};
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    if q.is_integer() {
        json!(q.to_integer())
    } else {
        json!(q.to_string())
    }
}

pub fn ext(x: &ExtReal) -> Value {
    match x {
        ExtReal::Finite(q) => rational(q),
        ExtReal::Infinite => json!("inf"),
    }
}

pub fn point(p: &Point) -> Value {
    match p.as_scalar() {
        Some(n) => json!(n),
        None => json!(p.coords()),
    }
}

pub fn points<'a>(ps: impl IntoIterator<Item = &'a Point>) -> Value {
    Value::Array(ps.into_iter().map(point).collect())
}

fn pairs<'a>(ps: impl IntoIterator<Item = &'a (Point, Point)>) -> Value {
    Value::Array(ps.into_iter().map(|(x, y)| json!([point(x), point(y)])).collect())
}

fn table(rows: &[(Rational, ExtReal)]) -> Value {
    Value::Array(rows.iter().map(|(r, v)| json!([rational(r), ext(v)])).collect())
}

pub fn probe(p: &ProbeBudget) -> Value {
    json!({
        "radii": p.radii.iter().map(rational).collect::<Vec<_>>(),
        "scales": p.scales.iter().map(rational).collect::<Vec<_>>(),
        "stability": p.stability,
    })
}

fn bound(b: &Bound) -> Value {
    match b {
        Bound::Unbounded => Value::Null,
        Bound::Closed(q) => json!({"closed": rational(q)}),
        Bound::Open(q) => json!({"open": rational(q)}),
    }
}

pub fn map(m: &PointMap) -> Value {
    match m {
        PointMap::Identity => json!({"kind": "identity"}),
        PointMap::Scale(k) => json!({"kind": "scale", "k": k}),
        PointMap::Translate(v) => json!({"kind": "translate", "by": v}),
        PointMap::Square => json!({"kind": "square"}),
        PointMap::FloorDiv(k) => json!({"kind": "floor-div", "k": k}),
        PointMap::IntSqrt => json!({"kind": "int-sqrt"}),
        PointMap::Project(i) => json!({"kind": "coordinate-project", "axis": i}),
        PointMap::Constant(p) => json!({"kind": "constant", "point": point(p)}),
        PointMap::Compose(ms) => json!({"kind": "compose", "maps": ms.iter().map(map).collect::<Vec<_>>()}),
        PointMap::Table(t) => json!({
            "kind": "table",
            "entries": t.iter().map(|(x, y)| json!([point(x), point(y)])).collect::<Vec<_>>(),
        }),
    }
}

pub fn set(s: &SetExpr) -> Value {
    let all = |ps: &[SetExpr]| ps.iter().map(set).collect::<Vec<_>>();
    match s {
        SetExpr::Empty => json!({"kind": "empty"}),
        SetExpr::Whole => json!({"kind": "whole"}),
        SetExpr::Explicit(ps) => json!({"kind": "explicit", "points": points(ps)}),
        SetExpr::Intervals(is) => json!({
            "kind": "intervals",
            "parts": is.iter().map(|i| json!({"lo": bound(&i.lo), "hi": bound(&i.hi)})).collect::<Vec<_>>(),
        }),
        SetExpr::Cofinite(ex) => json!({"kind": "cofinite", "excluded": ex}),
        SetExpr::Boxes(bs) => json!({"kind": "boxes", "boxes": bs.iter().map(|b| json!(b.axes)).collect::<Vec<_>>()}),
        SetExpr::Progression(p) => {
            json!({"kind": "progression", "modulus": p.modulus, "residues": p.residues, "min": p.min, "max": p.max})
        }
        SetExpr::PolynomialValues(c) => json!({"kind": "polynomial", "coeffs": c}),
        SetExpr::Union(ps) => json!({"kind": "union", "parts": all(ps)}),
        SetExpr::Intersection(ps) => json!({"kind": "intersection", "parts": all(ps)}),
        SetExpr::Difference(a, b) => json!({"kind": "difference", "a": set(a), "b": set(b)}),
        SetExpr::Image(m, s) => json!({"kind": "image", "map": map(m), "set": set(s)}),
        SetExpr::Preimage(m, s) => json!({"kind": "preimage", "map": map(m), "set": set(s)}),
    }
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Point { point: p, distance, exact } => {
            json!({"kind": "point", "point": point(p), "distance": ext(distance), "exact": exact})
        }
        Witness::Symbolic { reason, example } => {
            json!({"kind": "symbolic", "reason": reason.name(), "example": example.as_ref().map(point)})
        }
    }
}

pub fn scale_verdict(v: &ScaleVerdict) -> Value {
    match v {
        ScaleVerdict::AlikeWithin(r) => json!({"kind": "alike-within", "r": rational(r)}),
        ScaleVerdict::RefutedUpTo { radius, witness: w } => {
            json!({"kind": "refuted", "radius": radius.as_ref().map(rational), "witness": witness(w)})
        }
        ScaleVerdict::Inconclusive { max_radius, max_scale } => {
            json!({"kind": "inconclusive", "max_radius": rational(max_radius), "max_scale": rational(max_scale)})
        }
    }
}

fn modulus(p: &ModulusProfile) -> Value {
    Value::Array(p.windows.iter().map(|(w, rows)| json!({"window": rational(w), "expansion": table(rows)})).collect())
}

fn properness(p: &Properness) -> Value {
    json!({
        "rho": rational(&p.rho),
        "reach": p.reach.iter().map(|(w, d)| json!([rational(w), d.as_ref().map(rational)])).collect::<Vec<_>>(),
        "proper": p.proper,
    })
}

pub fn coarse(v: &CoarseVerdict) -> Value {
    match v {
        CoarseVerdict::Coarse { profile, properness: p } => {
            json!({"kind": "coarse", "profile": modulus(profile), "properness": properness(p)})
        }
        CoarseVerdict::NotCoarse { x, y, r, image_distance, profile } => json!({
            "kind": "not-coarse",
            "x": point(x),
            "y": point(y),
            "r": rational(r),
            "image_distance": ext(image_distance),
            "profile": modulus(profile),
        }),
        CoarseVerdict::NotProper { witness, properness: p, profile } => json!({
            "kind": "not-proper",
            "witness": point(witness),
            "properness": properness(p),
            "profile": modulus(profile),
        }),
        CoarseVerdict::Inconclusive { profile } => json!({"kind": "inconclusive", "profile": modulus(profile)}),
    }
}

pub fn equivalence(e: &EquivalenceReport) -> Value {
    json!({
        "passed": e.passed(),
        "f": coarse(&e.f),
        "g": coarse(&e.g),
        "g_after_f": scale_verdict(&e.gf),
        "f_after_g": scale_verdict(&e.fg),
    })
}

fn divergence(p: &DivergenceProfile) -> Value {
    table(&p.entries)
}

pub fn disjoint(v: &DisjointVerdict) -> Value {
    match v {
        DisjointVerdict::Divergent { profile } => json!({"kind": "divergent", "profile": divergence(profile)}),
        DisjointVerdict::Bounded { profile, k, pairs: ps } => {
            json!({"kind": "bounded", "k": rational(k), "pairs": pairs(ps), "profile": divergence(profile)})
        }
        DisjointVerdict::Inconclusive { profile } => json!({"kind": "inconclusive", "profile": divergence(profile)}),
    }
}

fn side(s: Side) -> &'static str {
    match s {
        Side::A => "a",
        Side::B => "b",
    }
}

pub fn normality(c: &NormalityCertificate, emit_strips: bool) -> Value {
    let mut out = json!({
        "covers": c.covers(),
        "radius": rational(&c.radius),
        "uncovered": c.uncovered.as_ref().map(point),
        "a_vs_x1": disjoint(&c.a_vs_x1),
        "b_vs_x2": disjoint(&c.b_vs_x2),
        "strip_count": c.strips.len(),
    });
    if emit_strips {
        out["x1"] = set(&c.x1);
        out["x2"] = set(&c.x2);
        out["strips"] = Value::Array(
            c.strips
                .iter()
                .map(|s| {
                    json!({
                        "point": point(&s.point),
                        "dist_a": rational(&s.dist_a),
                        "dist_b": rational(&s.dist_b),
                        "i": s.i,
                        "j": s.j,
                        "side": side(s.side),
                    })
                })
                .collect(),
        );
    }
    out
}

pub fn axioms(r: &AxiomReport) -> Value {
    let checks = r
        .checks
        .iter()
        .map(|c| {
            let status = match c.status {
                CheckStatus::Passed => "passed",
                CheckStatus::Failed => "failed",
                CheckStatus::Skipped => "skipped",
            };
            let violations = c
                .violations
                .iter()
                .map(|v| {
                    let mut m = serde_json::Map::new();
                    for (name, pts) in v.resolve(&r.universe) {
                        m.insert(name.to_string(), points(&pts));
                    }
                    Value::Object(m)
                })
                .collect::<Vec<_>>();
            json!({
                "axiom": c.axiom.name(),
                "status": status,
                "violation_count": c.violation_count,
                "violations": violations,
                "samples": c.samples,
            })
        })
        .collect::<Vec<_>>();
    json!({
        "passed": r.passed(),
        "universe": points(&r.universe),
        "failed": r.failed_axioms().iter().map(|a| a.name()).collect::<Vec<_>>(),
        "checks": checks,
    })
}

pub fn via(v: &ViaVerdict) -> Value {
    match v {
        ViaVerdict::Alike { forward, backward } => json!({"kind": "alike", "forward": forward, "backward": backward}),
        ViaVerdict::Refuted { side: s, witness } => {
            json!({"kind": "refuted", "side": side(*s), "witness": point(witness)})
        }
    }
}

pub fn maximal(v: &MaximalVerdict) -> Value {
    match v {
        MaximalVerdict::Member { displacement } => {
            json!({"kind": "member", "displacement": displacement.as_ref().map(ext)})
        }
        MaximalVerdict::NonMember { witness, verdict } => {
            json!({"kind": "non-member", "witness": pairs(witness), "verdict": scale_verdict(verdict)})
        }
        MaximalVerdict::Inconclusive { reason } => json!({"kind": "inconclusive", "reason": reason}),
    }
}

pub fn entourage(e: &Entourage) -> Value {
    match e {
        Entourage::Explicit(ps) => json!({"kind": "explicit", "pairs": pairs(ps)}),
        Entourage::Displacement { bound, .. } => json!({"kind": "displacement", "bound": rational(bound)}),
        Entourage::Graph { map: m, window, .. } => json!({"kind": "graph", "map": map(m), "window": rational(window)}),
    }
}

pub fn structure(v: &StructureVerdict) -> Value {
    match v {
        StructureVerdict::Alike { entourage: e, fibre, admitted_bound, check } => json!({
            "kind": "alike",
            "entourage": entourage(e),
            "fibre": fibre,
            "admitted_bound": admitted_bound,
            "check": via(check),
        }),
        StructureVerdict::Refuted { reason, example } => {
            json!({"kind": "refuted", "reason": reason.name(), "example": example.as_ref().map(point)})
        }
    }
}

pub fn ub(v: &UBVerdict) -> Value {
    match v {
        UBVerdict::UniformlyBounded { k } => json!({"kind": "uniformly-bounded", "k": k.as_ref().map(rational)}),
        UBVerdict::NotUB { witness } => {
            let w = match witness {
                UBWitness::UnboundedMember { index, verdict } => {
                    json!({"kind": "unbounded-member", "index": index, "verdict": verdict.as_ref().map(scale_verdict)})
                }
                UBWitness::Growth { profile } => json!({"kind": "growth", "profile": table(profile)}),
                UBWitness::Pair { index, verdict } => {
                    json!({"kind": "pair", "index": index, "verdict": scale_verdict(verdict)})
                }
            };
            json!({"kind": "not-uniformly-bounded", "witness": w})
        }
        UBVerdict::Inconclusive { profile } => json!({"kind": "inconclusive", "profile": table(profile)}),
    }
}

pub fn certificate(c: &DimCertificate, emit_cover: bool) -> Value {
    let scales = c
        .per_scale
        .iter()
        .map(|s| {
            let mut out = json!({
                "r": s.r,
                "side": s.side,
                "members": s.cover.len(),
                "multiplicity": s.multiplicity,
                "refines": s.refines,
                "uniformly_bounded": ub(&s.ub),
            });
            if emit_cover {
                out["cover"] = Value::Array(s.cover.members.iter().map(set).collect());
            }
            out
        })
        .collect::<Vec<_>>();
    json!({
        "claimed_dim": c.claimed_dim,
        "window": rational(&c.window),
        "assumption": c.assumption,
        "per_scale": scales,
    })
}

pub fn lower(b: &LowerBound, emit_cover: bool) -> Value {
    match b {
        LowerBound::Infeasible { nodes } => json!({"kind": "infeasible", "nodes": nodes}),
        LowerBound::Feasible { cover, nodes } => {
            let mut out = json!({"kind": "feasible", "nodes": nodes, "members": cover.len()});
            if emit_cover {
                out["cover"] = Value::Array(cover.iter().map(|m: &BTreeSet<Point>| points(m)).collect());
            }
            out
        }
        LowerBound::Budget { nodes } => json!({"kind": "budget", "nodes": nodes}),
    }
}

pub fn higson(rows: &[(Rational, Rational)]) -> Value {
    Value::Array(rows.iter().map(|(r, v)| json!({"radius": rational(r), "variation": rational(v)})).collect())
}
