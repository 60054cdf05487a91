use ncluster_core::fourth_point::{ceva_candidate, farey_interior, pyth_arctan_candidate, scan_parameters, Method, ParamPair, PlacedTriangle};
use ncluster_core::geometry::{rational_distance, RationalPoint};
use ncluster_core::heron::generate_naive;
use ncluster_core::HeronTriangle;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn t543() -> PlacedTriangle {
    PlacedTriangle::from_heron(&HeronTriangle::new(5, 4, 3).unwrap())
}

#[test]
fn equal_parameters_give_the_centroid() {
    let half = ParamPair::new(q(1, 2), q(1, 2)).unwrap();
    for t in generate_naive(100) {
        let p = PlacedTriangle::from_heron(&t);
        let [a, b, c] = p.vertices();
        let three = q(3, 1);
        let centroid = RationalPoint::new((&a.x + &b.x + &c.x) / &three, (&a.y + &b.y + &c.y) / &three);
        assert_eq!(ceva_candidate(&p, &half).unwrap().point, centroid, "{t}");
    }
}

#[test]
fn placement_has_the_side_lengths() {
    for t in generate_naive(60) {
        let [a, b, c] = PlacedTriangle::from_heron(&t).vertices();
        let d = |u: &RationalPoint, v: &RationalPoint| rational_distance(u, v).unwrap();
        assert_eq!([d(&a, &b), d(&a, &c), d(&b, &c)], [q(t.a as i64, 1), q(t.b as i64, 1), q(t.c as i64, 1)]);
    }
}

#[test]
fn scan_hits_are_at_rational_distance() {
    let tri = t543();
    let v = tri.vertices();
    let hits = scan_parameters(&tri, 20);
    let count = |m: Method| hits.iter().filter(|h| h.method == m).count();
    for h in &hits {
        for k in 0..3 {
            assert_eq!(rational_distance(&h.point, &v[k]).as_ref(), Some(&h.dist[k]));
        }
    }
    // regression values for this scan
    assert_eq!((count(Method::PythArctan), count(Method::Ceva)), (399, 2));
}

#[test]
fn farey_sizes() {
    // |F_n| − 2 interior fractions: 0, 1, 3, 5, 9, 11
    let sizes: Vec<usize> = (1..=6).map(|n| farey_interior(n).len()).collect();
    assert_eq!(sizes, vec![0, 1, 3, 5, 9, 11]);
}

fn unit_fraction() -> impl Strategy<Value = BigRational> {
    (2i64..60).prop_flat_map(|d| (1..d).prop_map(move |n| q(n, d)))
}

proptest! {
    #[test]
    fn arctan_distances_match_coordinates(r in unit_fraction(), s in unit_fraction()) {
        let tri = t543();
        let p = ParamPair::new(r, s).unwrap();
        let Ok(cand) = pyth_arctan_candidate(&tri, &p) else { return Ok(()) };
        let v = tri.vertices();
        for k in 0..2 {
            let d = cand.dist[k].clone().unwrap();
            prop_assert_eq!(cand.point.squared_distance(&v[k]), &d * &d);
        }
        prop_assert_eq!(cand.dist[2].clone(), rational_distance(&cand.point, &v[2]));
    }

    #[test]
    fn ceva_point_is_inside(r in unit_fraction(), s in unit_fraction()) {
        let tri = t543();
        let Ok(cand) = ceva_candidate(&tri, &ParamPair::new(r, s).unwrap()) else { return Ok(()) };
        let zero = q(0, 1);
        prop_assert!(cand.point.y > zero && cand.point.y < tri.y0);
    }
}
