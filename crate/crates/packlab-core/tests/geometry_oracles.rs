//! Independent geometric oracles: dense boundary sampling for Hausdorff and
//! gap distances, cross-checked against the analytic kernel, plus property
//! tests of the predicate invariants.

use packlab_core::geometry::{
    self, connected_union, gap_distance, hausdorff_body_distance, overlap,
};
use packlab_core::{Body, Isometry, Placement, PlacedBody, Point};
use proptest::prelude::*;

/// Sample the boundary of a placed body at the given arc pitch.
fn boundary_samples(body: &PlacedBody, step: f64) -> Vec<Point> {
    match body {
        PlacedBody::Disc { center, radius } => {
            let n = (core::f64::consts::TAU * radius / step).ceil() as usize;
            (0..n)
                .map(|k| {
                    *center + Point::from_angle(k as f64 * core::f64::consts::TAU / n as f64) * *radius
                })
                .collect()
        }
        PlacedBody::Polygon { vertices } => {
            let mut out = Vec::new();
            let n = vertices.len();
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let m = (a.dist(b) / step).ceil() as usize;
                for k in 0..m {
                    out.push(a + (b - a) * (k as f64 / m as f64));
                }
            }
            out
        }
    }
}

/// Exact distance from a point to a placed body, written independently of
/// the library's distance code.
fn point_to_body(body: &PlacedBody, p: Point) -> f64 {
    match body {
        PlacedBody::Disc { center, radius } => (p.dist(*center) - radius).max(0.0),
        PlacedBody::Polygon { vertices } => {
            let n = vertices.len();
            let mut inside = true;
            let mut best = f64::INFINITY;
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                if (b - a).cross(p - a) < 0.0 {
                    inside = false;
                }
                // segment distance
                let e = b - a;
                let t = ((p - a).dot(e) / e.norm_sq()).clamp(0.0, 1.0);
                best = best.min(p.dist(a + e * t));
            }
            if inside {
                0.0
            } else {
                best
            }
        }
    }
}

/// Directed-max-min Hausdorff oracle over boundary samples. The maximum of
/// `d(., B)` over a convex set is attained on the boundary, so sampling both
/// boundaries at pitch `step` is accurate to O(step).
fn hausdorff_oracle(a: &PlacedBody, b: &PlacedBody, step: f64) -> f64 {
    let dir = |from: &PlacedBody, to: &PlacedBody| {
        boundary_samples(from, step)
            .iter()
            .map(|p| point_to_body(to, *p))
            .fold(0.0f64, f64::max)
    };
    dir(a, b).max(dir(b, a))
}

fn gap_oracle(a: &PlacedBody, b: &PlacedBody, step: f64) -> f64 {
    boundary_samples(a, step)
        .iter()
        .map(|p| point_to_body(b, *p))
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn square_gap_matches_boundary_oracle() {
    let sq = Body::centered_square(1.0).unwrap();
    let a = Placement::at(0.0, 0.0);
    let b = Placement::at(2.5, 0.0);
    let exact = gap_distance(&sq, &a, &b);
    assert!((exact - 1.5).abs() < 1e-12);
    let oracle = gap_oracle(&sq.place(&a.pose), &sq.place(&b.pose), 2e-4);
    assert!((exact - oracle).abs() < 1e-3, "exact {exact} oracle {oracle}");
    // an oblique pair exercises the vertex-vertex branch
    let c = Placement::new(Isometry::new(0.6, Point::new(2.0, 1.7), false));
    let exact = gap_distance(&sq, &a, &c);
    let oracle = gap_oracle(&sq.place(&a.pose), &sq.place(&c.pose), 2e-4);
    assert!((exact - oracle).abs() < 1e-3, "exact {exact} oracle {oracle}");
}

#[test]
fn hausdorff_rotated_square_frozen_value() {
    // side-1 square against its own 45-degree rotation about the center:
    // the boundary-sampling oracle pins (sqrt(2) - 1) / 2
    let sq = Body::centered_square(1.0).unwrap();
    let a = Placement::at(0.0, 0.0);
    let rot = Placement::new(Isometry::rotation(core::f64::consts::FRAC_PI_4));
    let expected = (2f64.sqrt() - 1.0) / 2.0; // 0.20710678...
    let exact = hausdorff_body_distance(&sq, &a, &rot);
    assert!((exact - expected).abs() < 1e-9, "got {exact}");
    let oracle = hausdorff_oracle(&sq.place(&a.pose), &sq.place(&rot.pose), 2e-4);
    assert!((oracle - expected).abs() < 1e-3, "oracle {oracle}");
    // the same experiment for a square of circumradius 1 (side sqrt(2))
    // scales the answer to (sqrt(2) - 1) / sqrt(2)
    let big = Body::centered_square(2f64.sqrt()).unwrap();
    let exact = hausdorff_body_distance(&big, &a, &rot);
    let expected = (2f64.sqrt() - 1.0) / 2f64.sqrt(); // 0.29289321...
    assert!((exact - expected).abs() < 1e-9, "got {exact}");
}

#[test]
fn hausdorff_polygon_translates() {
    let sq = Body::centered_square(1.0).unwrap();
    let a = Placement::at(0.0, 0.0);
    let b = Placement::at(0.25, -0.4);
    let exact = hausdorff_body_distance(&sq, &a, &b);
    assert!((exact - b.position().norm()).abs() < 1e-12);
}

#[test]
fn self_nesting_verified_by_vertex_oracle() {
    let corner = Body::convex_polygon(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])
    .unwrap();
    let eps = 0.01;
    let g = geometry::self_nests(&corner, eps, geometry::IsometryGroup::All).expect("witness");
    // oracle: every mapped vertex strictly inside the scaled polygon
    let scaled: Vec<Point> = corner
        .vertices()
        .unwrap()
        .iter()
        .map(|v| *v * (1.0 + eps))
        .collect();
    let scaled_body = PlacedBody::Polygon { vertices: scaled };
    for v in corner.vertices().unwrap() {
        let image = g.apply(*v);
        assert_eq!(point_to_body(&scaled_body, image), 0.0, "inside");
        // strictly interior: push outward a hair and check we can leave
        assert!(scaled_body.signed_dist_to_point(image) < 0.0);
    }
}

fn disc_placements() -> impl Strategy<Value = (Placement, Placement, Placement)> {
    let pl = (-8.0f64..8.0, -8.0f64..8.0).prop_map(|(x, y)| Placement::at(x, y));
    (pl.clone(), pl.clone(), pl)
}

fn square_placements() -> impl Strategy<Value = (Placement, Placement)> {
    let pl = (-6.0f64..6.0, -6.0f64..6.0, 0.0f64..core::f64::consts::TAU, any::<bool>())
        .prop_map(|(x, y, a, refl)| Placement::new(Isometry::new(a, Point::new(x, y), refl)));
    (pl.clone(), pl)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Overlap and gap are symmetric; gaps are nonnegative and vanish
    /// exactly on overlap or touching.
    #[test]
    fn predicates_are_symmetric((a, b) in square_placements()) {
        let sq = Body::centered_square(1.0).unwrap();
        prop_assert_eq!(overlap(&sq, &a, &b), overlap(&sq, &b, &a));
        let gab = gap_distance(&sq, &a, &b);
        let gba = gap_distance(&sq, &b, &a);
        prop_assert!((gab - gba).abs() < 1e-9);
        prop_assert!(gab >= 0.0);
        if overlap(&sq, &a, &b) {
            prop_assert_eq!(gab, 0.0);
        }
    }

    /// Triangle inequality for the body Hausdorff distance.
    #[test]
    fn hausdorff_triangle_inequality((a, b, c) in disc_placements()) {
        let disc = Body::unit_disc();
        let ab = hausdorff_body_distance(&disc, &a, &b);
        let bc = hausdorff_body_distance(&disc, &b, &c);
        let ac = hausdorff_body_distance(&disc, &a, &c);
        prop_assert!(ac <= ab + bc + 1e-6);
    }

    /// Hausdorff distance agrees with the boundary oracle on random square
    /// placements.
    #[test]
    fn hausdorff_matches_oracle((a, b) in square_placements()) {
        let sq = Body::centered_square(1.0).unwrap();
        let exact = hausdorff_body_distance(&sq, &a, &b);
        let oracle = hausdorff_oracle(&sq.place(&a.pose), &sq.place(&b.pose), 1e-3);
        prop_assert!((exact - oracle).abs() < 5e-3, "exact {} oracle {}", exact, oracle);
    }

    /// Union connectivity is invariant under permutation and under one
    /// global isometry applied to every placement.
    #[test]
    fn connectivity_invariances(
        (a, b, c) in disc_placements(),
        angle in 0.0f64..core::f64::consts::TAU,
        tx in -3.0f64..3.0,
        ty in -3.0f64..3.0,
        refl in any::<bool>(),
    ) {
        let disc = Body::unit_disc();
        let pls = [a, b, c];
        let baseline = connected_union(&disc, &pls);
        let permuted = [c, a, b];
        prop_assert_eq!(connected_union(&disc, &permuted), baseline);
        let g = Isometry::new(angle, Point::new(tx, ty), refl);
        let moved: Vec<Placement> = pls.iter().map(|p| Placement::new(g.compose(&p.pose))).collect();
        prop_assert_eq!(connected_union(&disc, &moved), baseline);
    }
}
