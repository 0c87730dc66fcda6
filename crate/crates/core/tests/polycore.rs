mod common;

use std::collections::BTreeSet;

use common::*;
use num::{One, Signed, Zero};
use proptest::prelude::*;
use vgit::polycore::nearest::{min_norm_point, min_norm_point_enumerate, project_metric_enumerate};
use vgit::polycore::{
    arrangement_cells, boundary_distance_sq, hull_locate, lp, primitive, project_metric, side, to_f64s,
    Constraint, FloatShape, GramForm, Hyperplane, Location, QPolytope, ShapeIndex,
};
use vgit::{sl2, QVector, Q};

/// Relative-interior oracle: some strictly positive convex combination of
/// the points equals `theta`. With `mu_i = 1 + x_i`, this is the LP
/// `sum x_i (p_i - theta) = -sum (p_i - theta)`, `x >= 0`.
fn in_relative_interior(theta: &QVector, pts: &[QVector]) -> bool {
    let diffs: Vec<QVector> = pts.iter().map(|p| p.sub(theta)).collect();
    let a: Vec<Vec<Q>> = (0..theta.dim())
        .map(|i| diffs.iter().map(|d| d[i].clone()).collect())
        .collect();
    let b: Vec<Q> = (0..theta.dim())
        .map(|i| -diffs.iter().map(|d| d[i].clone()).sum::<Q>())
        .collect();
    lp::feasible_point(&a, &b).is_some()
}

fn square(h: i64) -> QPolytope {
    QPolytope::hull(&[v(&[-h, -h]), v(&[h, -h]), v(&[-h, h]), v(&[h, h])]).unwrap()
}

fn hyperplane() -> impl Strategy<Value = Option<Hyperplane>> {
    (prop::collection::vec(-3i64..=3, 2), -4i64..=4).prop_map(|(n, b)| {
        let n = v(&n);
        if n.is_zero() {
            None
        } else {
            Some(Hyperplane::new(&n, &Q::from_integer(b.into())).unwrap())
        }
    })
}

#[test]
fn documented_examples() {
    let seg = [v(&[-1]), v(&[1])];
    assert_eq!(hull_locate(&v(&[0]), &seg).unwrap(), Location::Interior);
    assert_eq!(hull_locate(&v(&[1]), &seg).unwrap(), Location::Boundary);
    assert_eq!(
        hull_locate(&v(&[0, 0]), &[v(&[2, 1]), v(&[2, -1])]).unwrap(),
        Location::Outside
    );

    let id = GramForm::identity(2);
    let p = QPolytope::hull(&[v(&[2, 1]), v(&[2, -1])]).unwrap();
    assert_eq!(
        project_metric(&v(&[0, 0]), &p, &id).unwrap(),
        (v(&[2, 0]), q(4, 1))
    );
    let p = QPolytope::hull(&[v(&[1, 0]), v(&[1, 1])]).unwrap();
    assert_eq!(
        project_metric(&v(&[0, 0]), &p, &id).unwrap(),
        (v(&[1, 0]), q(1, 1))
    );

    assert_eq!(
        boundary_distance_sq(&v(&[0, 0]), &square(1), &id).unwrap(),
        q(1, 1)
    );
    let ex1 = QPolytope::hull(sl2::first_example().weights()).unwrap();
    assert_eq!(boundary_distance_sq(&v(&[0, 0]), &ex1, &id).unwrap(), q(1, 1));

    assert_eq!(primitive(&v(&[2, 4])).unwrap(), v(&[1, 2]));
    assert_eq!(
        primitive(&QVector::new(vec![q(1, 3), q(1, 2)])).unwrap(),
        v(&[2, 3])
    );
    assert_eq!(primitive(&v(&[-2, 0])).unwrap(), v(&[-1, 0]));
    assert!(primitive(&v(&[0, 0])).is_err());
}

#[test]
fn interval_cells() {
    let region = QPolytope::hull(&[v(&[-1]), v(&[1])]).unwrap();
    let h = Hyperplane::new(&v(&[1]), &Q::zero()).unwrap();
    let mut samples: Vec<QVector> = arrangement_cells(&[h], &region)
        .unwrap()
        .into_iter()
        .map(|c| c.1)
        .collect();
    samples.sort();
    assert_eq!(
        samples,
        vec![QVector::new(vec![q(-1, 2)]), v(&[0]), QVector::new(vec![q(1, 2)])]
    );
    assert_eq!(arrangement_cells(&[], &region).unwrap().len(), 1);
}

#[test]
fn two_generic_lines_in_a_square() {
    let lines = [
        Hyperplane::new(&v(&[1, 2]), &Q::zero()).unwrap(),
        Hyperplane::new(&v(&[2, -1]), &Q::one()).unwrap(),
    ];
    let cells = arrangement_cells(&lines, &square(2)).unwrap();
    let mut by_dim = [0; 3];
    for (c, _) in &cells {
        by_dim[c.affine_dim()] += 1;
    }
    assert_eq!(by_dim, [1, 4, 4]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hull_locate_agrees_with_lp(
        pts in points(2, 1..=6, -4, 4),
        theta in rational_point(2, -8, 8),
    ) {
        let loc = hull_locate(&theta, &pts).unwrap();
        let inside = lp::in_convex_hull(&theta, &pts);
        prop_assert_eq!(loc != Location::Outside, inside);
        if inside {
            prop_assert_eq!(loc == Location::Interior, in_relative_interior(&theta, &pts));
        }
    }

    #[test]
    fn float_shapes_never_contradict_exact_tests(
        sets in prop::collection::vec(points(3, 1..=5, -3, 3), 1..=6),
        theta in rational_point(3, -4, 4),
        pick in 0usize..64,
    ) {
        let polys: Vec<QPolytope> = sets.iter().map(|p| QPolytope::hull(p).unwrap()).collect();
        // Vertex midpoints land on faces, where the floating test must defer.
        let verts: Vec<&QVector> = polys.iter().flat_map(|p| p.vertices()).collect();
        let a = verts[pick % verts.len()];
        let b = verts[(pick / 7) % verts.len()];
        let probes = [theta, a.add(b).scale(&q(1, 2)), a.clone()];
        let index = ShapeIndex::new(&polys);
        for x in &probes {
            let approx = to_f64s(x);
            for p in &polys {
                if let Some(loc) = FloatShape::new(p).locate(&approx) {
                    prop_assert_eq!(loc, p.locate(x));
                }
            }
            let interiors: Vec<usize> =
                (0..polys.len()).filter(|&i| polys[i].locate(x) == Location::Interior).collect();
            prop_assert_eq!(index.interiors(&polys, x), interiors);
            let holding: Vec<usize> = (0..polys.len()).filter(|&i| polys[i].contains(x)).collect();
            prop_assert_eq!(index.holds_any(&polys, x), !holding.is_empty());
            let candidates: BTreeSet<usize> = index.candidates(&approx).collect();
            prop_assert!(holding.iter().all(|i| candidates.contains(i)));
        }
    }

    #[test]
    fn distance_vanishes_exactly_on_the_hull(
        pts in points(3, 1..=6, -3, 3),
        theta in rational_point(3, -6, 6),
        form in gram_form(3),
    ) {
        let p = QPolytope::hull(&pts).unwrap();
        let (x, d) = project_metric(&theta, &p, &form).unwrap();
        prop_assert_eq!(d.is_zero(), hull_locate(&theta, &pts).unwrap() != Location::Outside);
        prop_assert!(p.contains(&x));
        prop_assert_eq!(form.dual_norm_sq(&x.sub(&theta)), d);
    }

    #[test]
    fn projection_satisfies_the_variational_inequality(
        pts in points(2, 1..=7, -4, 4),
        theta in rational_point(2, -8, 8),
        form in gram_form(2),
    ) {
        let p = QPolytope::hull(&pts).unwrap();
        let (x, _) = project_metric(&theta, &p, &form).unwrap();
        let toward = theta.sub(&x);
        for qv in p.vertices() {
            prop_assert!(!form.dual_inner(&toward, &qv.sub(&x)).is_positive());
        }
    }

    #[test]
    fn wolfe_matches_face_enumeration(
        pts in points(3, 1..=7, -3, 3),
        theta in rational_point(3, -5, 5),
        form in gram_form(3),
    ) {
        let shifted: Vec<QVector> = pts.iter().map(|p| p.sub(&theta)).collect();
        prop_assert_eq!(min_norm_point(&shifted, &form), min_norm_point_enumerate(&shifted, &form));
        let p = QPolytope::hull(&pts).unwrap();
        prop_assert_eq!(
            project_metric(&theta, &p, &form).unwrap(),
            project_metric_enumerate(&theta, &p, &form).unwrap()
        );
    }

    #[test]
    fn boundary_distance_is_zero_exactly_on_the_boundary(
        pts in points(2, 3..=6, -4, 4),
        theta in rational_point(2, -4, 4),
    ) {
        let p = QPolytope::hull(&pts).unwrap();
        prop_assume!(p.contains(&theta));
        let d = boundary_distance_sq(&theta, &p, &GramForm::identity(2)).unwrap();
        let interior = p.affine_dim() > 0 && p.locate(&theta) == Location::Interior;
        prop_assert_eq!(d.is_positive(), interior);
    }

    #[test]
    fn primitive_is_idempotent_and_scale_invariant(
        c in prop::collection::vec(-12i64..=12, 1..=4),
        num in 1i64..=9,
        den in 1i64..=9,
    ) {
        let x = v(&c);
        prop_assume!(!x.is_zero());
        let p = primitive(&x).unwrap();
        prop_assert_eq!(primitive(&p).unwrap(), p.clone());
        prop_assert_eq!(primitive(&x.scale(&q(num, den))).unwrap(), p.clone());
        prop_assert!(p.is_integral());
        let g = p.iter().fold(num::BigInt::zero(), |g, a| num::Integer::gcd(&g, a.numer()));
        prop_assert!(g.is_one());
        prop_assert!(x.dot(&p).is_positive());
    }

    #[test]
    fn arrangement_cells_partition_the_region(
        hs in prop::collection::vec(hyperplane(), 0..=4),
        probes in prop::collection::vec(rational_point(2, -11, 11), 20),
    ) {
        let hs: Vec<Hyperplane> = hs.into_iter().flatten().collect();
        let region = square(3);
        let cells = arrangement_cells(&hs, &region).unwrap();
        let signs = |x: &QVector| -> Vec<i8> { hs.iter().map(|h| side(h, x)).collect() };

        // Samples: in their own cell only, with pairwise distinct sign vectors.
        let mut seen = BTreeSet::new();
        for (i, (c, s)) in cells.iter().enumerate() {
            prop_assert_eq!(c.locate(s), Location::Interior);
            prop_assert!(seen.insert(signs(s)));
            for (j, (other, _)) in cells.iter().enumerate() {
                if i != j {
                    prop_assert_ne!(other.locate(s), Location::Interior);
                }
            }
        }
        // Euler characteristic of the open square.
        let chi: i64 = cells.iter().map(|(c, _)| if c.affine_dim() % 2 == 0 { 1 } else { -1 }).sum();
        prop_assert_eq!(chi, 1);

        // Random points of the open region: exactly one cell, the one with
        // the point's sign vector.
        for x in probes.iter().map(|p| p.scale(&q(1, 4))) {
            if region.locate(&x) != Location::Interior {
                continue;
            }
            let hits: Vec<usize> = (0..cells.len())
                .filter(|&i| cells[i].0.locate(&x) == Location::Interior)
                .collect();
            prop_assert_eq!(hits.len(), 1);
            prop_assert_eq!(signs(&cells[hits[0]].1), signs(&x));
        }
    }

    #[test]
    fn split_agrees_with_constraints(
        pts in points(3, 4..=8, -3, 3),
        normal in prop::collection::vec(-3i64..=3, 3),
        offset in -3i64..=3,
    ) {
        let p = QPolytope::hull(&pts).unwrap();
        prop_assume!(p.is_full_dimensional() && normal.iter().any(|&a| a != 0));
        let c = Constraint::new(v(&normal), Q::from_integer(offset.into()));
        let flip = Constraint::new(c.normal.neg(), -c.offset.clone());
        match p.split(&c) {
            None => {
                let vals: Vec<Q> = p.vertices().iter().map(|x| c.eval(x)).collect();
                prop_assert!(vals.iter().all(|x| !x.is_positive()) || vals.iter().all(|x| !x.is_negative()));
            }
            Some((lo, hi)) => {
                for (half, extra) in [(lo, c.clone()), (hi, flip)] {
                    let mut ineqs = p.facets().to_vec();
                    ineqs.push(extra);
                    let direct = QPolytope::from_constraints(3, &ineqs, &[]).unwrap().unwrap();
                    prop_assert_eq!(half.vertices(), direct.vertices());
                    let a: BTreeSet<_> = half.facets().iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
                    let b: BTreeSet<_> = direct.facets().iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
                    prop_assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn weyl_elements_preserve_the_form(
        diag in prop::collection::vec(1i64..=5, 2),
        lam in int_point(2, -6, 6),
        chi in int_point(2, -6, 6),
    ) {
        let b = vec![
            vec![Q::from_integer(diag[0].into()), Q::zero()],
            vec![Q::zero(), Q::from_integer(diag[1].into())],
        ];
        let form = GramForm::new(b).unwrap();
        let ws = sl2::first_example().with_form(form.clone()).unwrap();
        for w in ws.weyl() {
            prop_assert!(form.is_invariant_under(w));
            prop_assert_eq!(form.norm_sq(&ws.act_on_lps(w, &lam)), form.norm_sq(&lam));
            let image = QVector::new(vgit::polycore::linalg::mat_vec(w, &chi));
            prop_assert_eq!(form.dual_norm_sq(&image), form.dual_norm_sq(&chi));
        }
    }
}

#[test]
fn non_invariant_form_is_rejected() {
    let b = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(2, 1)]];
    let form = GramForm::new(b).unwrap();
    assert!(sl2::first_example().with_form(form).is_err());
}
