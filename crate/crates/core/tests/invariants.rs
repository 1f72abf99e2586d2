use std::collections::BTreeSet;

use coarse_core::asdim::{
    asdim_upper, default_side, lower_bound_search, multiplicity, refines, restrict_cover, validate_cover,
    verify_certificate, Cover, LowerBound,
};
use coarse_core::asr::{self, DiscreteUniverse};
use coarse_core::coarse::Entourage;
use coarse_core::spaces::{ball, closed_ball, hausdorff, IntBox, LatticeMetric};
use coarse_core::{int, AsrModel, ExtReal, Point, SetExpr, Space};
use proptest::prelude::*;

fn plane(linf: bool) -> Space {
    Space::lattice(2, if linf { LatticeMetric::LInf } else { LatticeMetric::L1 })
}

fn pt() -> impl Strategy<Value = Point> {
    (-12i64..=12, -12i64..=12).prop_map(|(x, y)| Point::from([x, y]))
}

fn pts(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(pt(), 1..=max)
}

fn nat_set() -> impl Strategy<Value = SetExpr> {
    (prop::collection::btree_set(0i64..40, 0..6), any::<bool>()).prop_map(|(s, cofinite)| {
        if cofinite {
            SetExpr::Cofinite(s)
        } else {
            SetExpr::scalars(s)
        }
    })
}

fn explicit(points: &[Point]) -> SetExpr {
    SetExpr::Explicit(points.iter().cloned().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_metric_axioms(linf in any::<bool>(), p in pt(), q in pt(), r in pt()) {
        let s = plane(linf);
        prop_assert_eq!(s.dist(&p, &p), ExtReal::ZERO);
        prop_assert_eq!(s.dist(&p, &q), s.dist(&q, &p));
        prop_assert_eq!(s.dist(&p, &q) == ExtReal::ZERO, p == q);
        prop_assert!(s.dist(&p, &r) <= s.dist(&p, &q) + s.dist(&q, &r));
    }

    #[test]
    fn hausdorff_is_a_metric_on_finite_sets(linf in any::<bool>(), a in pts(6), b in pts(6), c in pts(6)) {
        let s = plane(linf);
        prop_assert_eq!(hausdorff(&s, &a, &b), hausdorff(&s, &b, &a));
        prop_assert_eq!(hausdorff(&s, &a, &a), ExtReal::ZERO);
        prop_assert!(hausdorff(&s, &a, &c) <= hausdorff(&s, &a, &b) + hausdorff(&s, &b, &c));
        let (sa, sb): (BTreeSet<_>, BTreeSet<_>) = (a.iter().collect(), b.iter().collect());
        prop_assert_eq!(hausdorff(&s, &a, &b) == ExtReal::ZERO, sa == sb);
    }

    #[test]
    fn balls_grow_with_the_radius(linf in any::<bool>(), a in pts(4), r1 in 0i64..5, extra in 0i64..4) {
        let s = plane(linf);
        let set = explicit(&a);
        let window = int(40);
        let small = ball(&s, &set, &int(r1), &window).unwrap();
        let large = ball(&s, &set, &int(r1 + extra), &window).unwrap();
        let closed = closed_ball(&s, &set, &int(r1), &window).unwrap();
        prop_assert!(small.is_subset(&large));
        prop_assert!(small.is_subset(&closed));
        prop_assert!(a.iter().all(|p| closed.contains(p)));
    }

    #[test]
    fn restriction_never_raises_multiplicity(
        r in 1i64..3,
        lo in -20i64..0,
        w in 0i64..30,
        rows in (-6i64..=0, 0i64..=6),
    ) {
        let s = plane(false);
        let cert = asdim_upper(&s, &[r], &default_side, None).unwrap();
        let cover = &cert.per_scale[0].cover;
        let y = SetExpr::Boxes(vec![IntBox::new(vec![(Some(lo), Some(lo + w)), (Some(rows.0), Some(rows.1))])]);
        let cut = restrict_cover(&s, cover, &y).unwrap();
        prop_assert!(multiplicity(&s, &cut).unwrap() <= multiplicity(&s, cover).unwrap());
    }

    #[test]
    fn refinement_is_a_preorder(
        members in prop::collection::vec(pts(3), 1..5),
        merges in prop::collection::vec((0usize..8, 0usize..8), 0..4),
    ) {
        let s = plane(false);
        let window = int(40);
        let u: Vec<SetExpr> = members.iter().map(|m| explicit(m)).collect();
        let merge = |family: &[SetExpr]| -> Vec<SetExpr> {
            let mut out = family.to_vec();
            for &(i, j) in &merges {
                let (i, j) = (i % family.len(), j % family.len());
                out.push(SetExpr::union(vec![family[i].clone(), family[j].clone()]));
            }
            out
        };
        let v = merge(&u);
        let w = merge(&v);
        let (cu, cv, cw) = (Cover::new(u, window), Cover::new(v, window), Cover::new(w, window));
        prop_assert!(refines(&s, &cu, &cu).unwrap());
        prop_assert!(refines(&s, &cu, &cv).unwrap());
        prop_assert!(refines(&s, &cv, &cw).unwrap());
        prop_assert!(refines(&s, &cu, &cw).unwrap());
    }

    #[test]
    fn resemblances_are_reflexive_and_symmetric(a in nat_set(), b in nat_set()) {
        for model in [AsrModel::FiniteInfiniteOnN, AsrModel::Discrete(DiscreteUniverse::Naturals)] {
            prop_assert!(asr::alike(&model, &a, &a).unwrap().is_alike());
            prop_assert_eq!(asr::alike(&model, &a, &b).unwrap().is_alike(), asr::alike(&model, &b, &a).unwrap().is_alike());
        }
    }

    #[test]
    fn entourage_algebra(
        e in prop::collection::btree_set((0i64..6, 0i64..6), 0..10),
        f in prop::collection::btree_set((0i64..6, 0i64..6), 0..10),
        g in prop::collection::btree_set((0i64..6, 0i64..6), 0..10),
    ) {
        let ent = |s: &BTreeSet<(i64, i64)>| Entourage::explicit(s.iter().map(|(x, y)| (Point::scalar(*x), Point::scalar(*y))));
        let (e, f, g) = (ent(&e), ent(&f), ent(&g));
        prop_assert_eq!(e.inverse().unwrap().inverse().unwrap().pairs().unwrap(), e.pairs().unwrap());
        let left = e.compose(&f).unwrap().compose(&g).unwrap();
        let right = e.compose(&f.compose(&g).unwrap()).unwrap();
        prop_assert_eq!(left.pairs().unwrap(), right.pairs().unwrap());
        // (E ∘ F)^-1 = F^-1 ∘ E^-1
        let inv = e.compose(&f).unwrap().inverse().unwrap();
        let swapped = f.inverse().unwrap().compose(&e.inverse().unwrap()).unwrap();
        prop_assert_eq!(inv.pairs().unwrap(), swapped.pairs().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn line_certificates_verify(scales in prop::collection::btree_set(1i64..4, 1..=3)) {
        let z = Space::integers();
        let scales: Vec<i64> = scales.into_iter().collect();
        let cert = asdim_upper(&z, &scales, &default_side, None).unwrap();
        verify_certificate(&z, &cert).unwrap();
        for s in &cert.per_scale {
            prop_assert!(s.multiplicity <= 2);
            prop_assert!(s.refines);
            prop_assert!(s.ub.is_ub());
        }
    }

    #[test]
    fn feasible_covers_validate(len in 4i64..24, m in 1i64..6, r in 0i64..2, n in 1usize..3) {
        let z = Space::integers();
        let region = IntBox::finite(&[(0, len)]);
        match lower_bound_search(&z, &region, m, r, n, 1 << 16).unwrap() {
            LowerBound::Feasible { cover, .. } => {
                validate_cover(&z, &region, &cover, m, r, n).unwrap();
                // more overlap allowed never hurts
                let wider = lower_bound_search(&z, &region, m, r, n + 1, 1 << 16).unwrap();
                prop_assert!(matches!(wider, LowerBound::Feasible { .. }), "{wider:?}");
            }
            LowerBound::Infeasible { .. } | LowerBound::Budget { .. } => {}
        }
    }
}
