//! Invariants of the polytope and covering layers on random exact inputs.

use proptest::prelude::*;

use simplex_cover_core::bodies::{make_body, tetrahedron, BodyName};
use simplex_cover_core::covering::{
    covering_check, pair_overlap, theta_density, CoverageStatus, CoveringConfig,
};
use simplex_cover_core::polytope::{
    affine_image, detect_homothet, intersect, locate_point, minkowski_sum, volume, Homothety,
    Location,
};
use simplex_cover_core::{rat, Polytope, Rat, RngStream, Vec3};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn point() -> impl Strategy<Value = Vec3> {
    (small_rat(), small_rat(), small_rat()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn solid() -> impl Strategy<Value = Polytope> {
    prop::collection::vec(point(), 4..10)
        .prop_map(|pts| Polytope::from_points(&pts).expect("non-empty input"))
        .prop_filter("full-dimensional", |p| p.is_solid())
}

fn positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=16, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

fn translate(x: &Vec3) -> Polytope {
    affine_image(&tetrahedron(), &Rat::ONE, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_and_halfspaces_agree(pts in prop::collection::vec(point(), 4..12)) {
        let p = Polytope::from_points(&pts).unwrap();
        prop_assume!(p.is_solid());
        let q = Polytope::from_halfspaces(p.facets()).unwrap();
        prop_assert_eq!(&q, &p);
        for v in &pts {
            prop_assert!(!matches!(locate_point(&p, v), Location::Outside));
        }
        for v in p.vertices() {
            prop_assert!(pts.contains(v));
        }
    }

    #[test]
    fn volume_scales_cubically(p in solid(), k in small_rat(), t in point()) {
        let image = affine_image(&p, &k, &t);
        prop_assert_eq!(volume(&image), volume(&p) * k.abs().pow(3));
    }

    #[test]
    fn minkowski_sum_commutes_and_grows(a in solid(), b in solid()) {
        let ab = minkowski_sum(&a, &b).unwrap();
        prop_assert_eq!(&ab, &minkowski_sum(&b, &a).unwrap());
        prop_assert!(volume(&ab) >= volume(&a) + volume(&b));
    }

    #[test]
    fn difference_body_is_symmetric(k in solid()) {
        let neg = affine_image(&k, &rat(-1, 1), &Vec3::zero());
        let d = minkowski_sum(&k, &neg).unwrap();
        prop_assert_eq!(&affine_image(&d, &rat(-1, 1), &Vec3::zero()), &d);
        prop_assert_eq!(locate_point(&d, &Vec3::zero()), Location::Interior);
    }

    #[test]
    fn homothets_are_recovered(mu in positive_rat(), y in point()) {
        let t = tetrahedron();
        let image = affine_image(&t, &mu, &y);
        match detect_homothet(&image, &t).unwrap() {
            Homothety::Homothet(h) => {
                prop_assert_eq!(&h.ratio, &mu);
                prop_assert_eq!(&h.translation, &y);
                prop_assert_eq!(&h.edge_length_sq, &(mu.pow(2) * Rat::from_integer(8)));
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn pair_overlap_matches_intersection(x in point(), d in point()) {
        // Shrink d so the pair overlaps often.
        let d = d.scale(&rat(1, 6));
        let p = make_body(BodyName::P);
        let y = &x + &d;
        let direct = volume(&intersect(&intersect(&translate(&x), &translate(&y)), &p));
        prop_assert_eq!(pair_overlap(&x, &y), direct);
    }

    #[test]
    fn theta_excess_is_the_overlap(x in point(), d in point()) {
        let d = d.scale(&rat(1, 6));
        prop_assume!(!d.is_zero());
        let y = &x + &d;
        let p = make_body(BodyName::P);
        let (a, b) = (intersect(&translate(&x), &p), intersect(&translate(&y), &p));
        let both = intersect(&a, &b);
        // Inclusion and exclusion on the union, every term by general intersection.
        let union = volume(&a) + volume(&b) - volume(&both);
        let r = theta_density(&CoveringConfig::new(vec![x, y], None).unwrap());
        prop_assert_eq!(&r.theta * &Rat::from_integer(512) - union, r.overlap_total.clone());
        prop_assert_eq!(r.overlap_total, volume(&both));
    }

    #[test]
    fn coverage_witnesses_are_genuine(xs in prop::collection::vec(point(), 1..6), seed in any::<u64>()) {
        let xs: Vec<Vec3> = xs.iter().map(|x| x.scale(&rat(1, 4))).collect();
        let mut unique = xs.clone();
        unique.sort();
        unique.dedup();
        let cfg = CoveringConfig::new(unique, None).unwrap();
        let region = simplex_cover_core::bodies::centered_cube(&rat(1, 2));
        let v = covering_check(&cfg, &region, 4).unwrap();
        let inside = |p: &Vec3| cfg.translates().iter().any(|x| {
            !matches!(locate_point(&translate(x), p), Location::Outside)
        });
        match v.status {
            CoverageStatus::Uncovered(w) => {
                prop_assert!(!matches!(locate_point(&region, &w), Location::Outside));
                prop_assert!(!inside(&w));
            }
            CoverageStatus::Covered => {
                let mut rng = RngStream::new(seed, 0);
                let (lo, hi) = region.bounding_box().unwrap();
                for _ in 0..20 {
                    let p = simplex_cover_core::numeric::sample_point(&lo, &hi, &mut rng).unwrap();
                    prop_assert!(inside(&p));
                }
            }
            CoverageStatus::Inconclusive(_) => {}
        }
    }
}

#[test]
fn duplicate_translates_are_rejected() {
    let x = Vec3::new(rat(1, 3), Rat::ZERO, Rat::ZERO);
    assert!(CoveringConfig::new(vec![x.clone(), x], None).is_err());
}
