mod common;

use std::collections::BTreeSet;

use common::*;
use num::Zero;
use proptest::prelude::*;
use vgit::gitfan::{
    ample_region, chamber_components, classify_theta, enumerate_classes, fan_verify, inclusion_poset,
    profile_at, region_faces, stability_region, stable_nonempty, walls, GitClass, ThetaClass,
};
use vgit::polycore::{linalg, Location, QPolytope};
use vgit::stability::{classify_state, measure_m, StateClass};
use vgit::{sl2, Linearization, QVector, State, StateFamily, WeightSystem, Q};

fn semistable_by_measure(ws: &WeightSystem, s: &State, theta: &QVector) -> bool {
    measure_m(ws, s, &Linearization::new(theta.clone()))
        .unwrap()
        .0
        .sign
        <= 0
}

fn stable_states(ws: &WeightSystem, family: &StateFamily, theta: &QVector) -> BTreeSet<State> {
    let lin = Linearization::new(theta.clone());
    family
        .states(ws)
        .unwrap()
        .into_iter()
        .filter(|s| classify_state(ws, s, &lin).unwrap() == StateClass::Stable)
        .collect()
}

/// A point of the relative interior: a combination of the vertices with
/// positive weights.
fn interior_point(cone: &QPolytope, coeffs: &[i64]) -> QVector {
    let mut acc = QVector::zeros(cone.ambient_dim());
    let mut total = Q::zero();
    for (k, x) in cone.vertices().iter().enumerate() {
        let c = q(coeffs[k % coeffs.len()], 1);
        acc = acc.add(&x.scale(&c));
        total += c;
    }
    acc.scale(&total.recip())
}

fn contains_cone(outer: &GitClass, inner: &GitClass) -> bool {
    inner.cone.vertices().iter().all(|x| outer.cone.contains(x))
}

#[test]
fn first_example_fan() {
    let ws = sl2::first_example();
    let family = StateFamily::AllSubsets;
    let classes = enumerate_classes(&ws, &family).unwrap();
    assert!(fan_verify(&ws, &family, &classes).unwrap().violations.is_empty());
    assert!(inclusion_poset(&classes).violations.is_empty());
    let chambers = classes.iter().filter(|c| c.is_chamber).count();
    assert_eq!(chambers, chamber_components(&ws, &family).unwrap().len());
    let ample = ample_region(&ws);
    let mut corners = ample.vertices().to_vec();
    corners.sort();
    assert_eq!(corners, vec![v(&[-4, -1]), v(&[-4, 1]), v(&[2, -1]), v(&[2, 1])]);
}

#[test]
fn explicit_full_state_has_no_walls() {
    let ws = WeightSystem::from_ints(2, &[("a", &[0, 0]), ("b", &[3, 0]), ("c", &[0, 3])]).unwrap();
    let family = StateFamily::explicit(&ws, vec![ws.full_state()]).unwrap();
    assert!(walls(&ws, &family).unwrap().is_empty());
    let classes = enumerate_classes(&ws, &family).unwrap();
    assert_eq!(classes.iter().filter(|c| c.is_chamber).count(), 1);
}

#[test]
fn theta_outside_is_not_effective() {
    let ws = WeightSystem::from_ints(1, &[("m", &[-1]), ("p", &[1])]).unwrap();
    let lin = Linearization::new(v(&[5]));
    let got = classify_theta(&ws, &StateFamily::AllSubsets, &lin).unwrap();
    assert_eq!(got, ThetaClass::NotEffective);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_profiles_match_measure_signs(
        ws in weight_system(2, 2..=5, -3, 3),
        coeffs in prop::collection::vec(1i64..=9, 20),
    ) {
        let family = StateFamily::AllSubsets;
        let states = family.states(&ws).unwrap();
        for class in enumerate_classes(&ws, &family).unwrap() {
            for k in 0..20 {
                let rot: Vec<i64> = coeffs.iter().cycle().skip(k).take(7).copied().collect();
                let theta = interior_point(&class.cone, &rot);
                prop_assert_eq!(class.cone.locate(&theta), Location::Interior);
                for s in &states {
                    prop_assert_eq!(class.profile.admits(s), semistable_by_measure(&ws, s, &theta));
                }
            }
        }
    }

    #[test]
    fn classify_theta_agrees_with_enumeration(
        ws in weight_system(2, 2..=5, -3, 3),
        theta in rational_point(2, -4, 4),
    ) {
        let family = StateFamily::AllSubsets;
        let classes = enumerate_classes(&ws, &family).unwrap();
        let lin = Linearization::new(theta.clone());
        match classify_theta(&ws, &family, &lin).unwrap() {
            ThetaClass::NotEffective => prop_assert!(!ample_region(&ws).contains(&theta)),
            ThetaClass::Class(c) => {
                let hits: Vec<&GitClass> = classes
                    .iter()
                    .filter(|k| k.cone.locate(&theta) == Location::Interior)
                    .collect();
                prop_assert_eq!(hits.len(), 1);
                prop_assert_eq!(&hits[0].profile, &c.profile);
                prop_assert_eq!(hits[0].cone.vertices(), c.cone.vertices());
            }
        }
    }

    #[test]
    fn monotone_across_walls(ws in weight_system(2, 2..=5, -3, 3)) {
        let family = StateFamily::AllSubsets;
        let classes = enumerate_classes(&ws, &family).unwrap();
        for f in classes.iter().filter(|c| !c.is_chamber) {
            let stable_f = stable_states(&ws, &family, &f.sample);
            for c in classes.iter().filter(|c| c.is_chamber && contains_cone(c, f)) {
                prop_assert!(c.profile.included_in(&f.profile));
                prop_assert!(stable_f.is_subset(&stable_states(&ws, &family, &c.sample)));
            }
        }
    }

    #[test]
    fn fan_axioms_and_poset(ws in weight_system(2, 1..=6, -3, 3)) {
        let family = StateFamily::AllSubsets;
        let classes = enumerate_classes(&ws, &family).unwrap();
        let report = fan_verify(&ws, &family, &classes).unwrap();
        prop_assert!(report.violations.is_empty(), "{:?}", report.violations);
        let poset = inclusion_poset(&classes);
        prop_assert!(poset.violations.is_empty());
        for i in 0..classes.len() {
            prop_assert!(poset.edges.contains(&(i, i)));
        }
        let chambers = classes.iter().filter(|c| c.is_chamber).count();
        prop_assert_eq!(chambers, chamber_components(&ws, &family).unwrap().len());
    }

    #[test]
    fn dropping_a_face_class_is_reported(ws in weight_system(2, 2..=5, -3, 3), k in 0usize..64) {
        let family = StateFamily::AllSubsets;
        let mut classes = enumerate_classes(&ws, &family).unwrap();
        let faces: Vec<usize> = (0..classes.len()).filter(|&i| !classes[i].is_chamber).collect();
        prop_assume!(!faces.is_empty());
        classes.remove(faces[k % faces.len()]);
        let report = fan_verify(&ws, &family, &classes).unwrap();
        prop_assert!(report.violations.iter().any(|x| x.starts_with("(b)")));
    }

    #[test]
    fn grid_profiles_are_class_profiles(ws in weight_system(2, 2..=5, -2, 2)) {
        let family = StateFamily::AllSubsets;
        let classes = enumerate_classes(&ws, &family).unwrap();
        let known: BTreeSet<_> = classes.iter().map(|c| c.profile.clone()).collect();
        prop_assert_eq!(known.len(), classes.len());
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                let theta = QVector::new(vec![q(a, 4), q(b, 4)]);
                let p = profile_at(&ws, &family, &theta).unwrap();
                prop_assert!(p.is_empty() || known.contains(&p));
            }
        }
    }

    #[test]
    fn stable_points_iff_interior(
        ws in weight_system(2, 1..=5, -3, 3),
        theta in rational_point(2, -3, 3),
    ) {
        let family = StateFamily::AllSubsets;
        let check = stable_nonempty(&ws, &family, &Linearization::new(theta.clone())).unwrap();
        let full = ample_region(&ws).is_full_dimensional();
        prop_assert_eq!(check.hypothesis_met, full);
        if full {
            let interior = ample_region(&ws).locate(&theta) == Location::Interior;
            prop_assert_eq!(check.nonempty, interior);
            prop_assert_eq!(check.direct, interior);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn faces_are_cut_by_one_parameter_subgroups(pts in points(3, 1..=6, -3, 3)) {
        let ws = WeightSystem::unlabelled(3, &pts).unwrap();
        let s = ws.full_state();
        let whole = stability_region(&ws, &s).unwrap().region;
        for (face, sub) in region_faces(&ws, &s).unwrap() {
            let own = QPolytope::hull(&ws.points(&sub)).unwrap();
            prop_assert_eq!(own.vertices(), face.vertices());
            if face.vertices().len() == whole.vertices().len() {
                continue;
            }
            let on: Vec<usize> = face
                .vertices()
                .iter()
                .map(|x| whole.vertices().iter().position(|y| y == x).unwrap())
                .collect();
            let mut normal = QVector::zeros(3);
            for f in 0..whole.facets().len() {
                if on.iter().all(|i| whole.facet_vertices(f).contains(i)) {
                    normal = normal.add(&whole.facets()[f].normal);
                }
            }
            // The face is where the least pairing with -normal is attained.
            let lam = normal.neg().primitive().unwrap();
            let least = ws.points(&s).iter().map(|x| lam.dot(x)).min().unwrap();
            let attained: Vec<QVector> = whole
                .vertices()
                .iter()
                .filter(|x| lam.dot(x) == least)
                .cloned()
                .collect();
            prop_assert_eq!(attained.as_slice(), face.vertices());
        }
    }

    #[test]
    fn codimension_is_rank_deficit(pts in points(3, 1..=6, -3, 3)) {
        let ws = WeightSystem::unlabelled(3, &pts).unwrap();
        let diffs: Vec<Vec<Q>> = pts.iter().map(|p| p.sub(&pts[0]).coords().to_vec()).collect();
        let reg = stability_region(&ws, &ws.full_state()).unwrap();
        prop_assert_eq!(reg.codim, 3 - linalg::rank(&diffs, 3));
        prop_assert!(reg.region.vertices().iter().all(|x| x.is_integral()));
    }
}
