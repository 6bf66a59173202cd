//! Overlap, gap and Hausdorff predicates for placed bodies, connectivity of
//! unions, and self-nesting witnesses.
//!
//! All predicates share one absolute tolerance, [`EPS_GEOM`]: a signed gap in
//! `(-EPS_GEOM, EPS_GEOM)` counts as touching, never as overlapping, so exact
//! tangencies (ubiquitous in lattice packings) classify as valid contacts.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::body::{Body, PlacedBody, Placement};
use crate::convex;
use crate::isometry::Isometry;
use crate::vec2::Point;

/// Absolute tolerance for touch/overlap classification, in length units.
pub const EPS_GEOM: f64 = 1e-9;

/// Which isometries are allowed when searching for placements or witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IsometryGroup {
    Translations,
    #[default]
    All,
}

/// Signed gap between two placed copies of the same body: Euclidean distance
/// when disjoint, minus the penetration depth when interiors intersect.
pub fn signed_gap(body: &Body, a: &Placement, b: &Placement) -> f64 {
    signed_gap_placed(&body.place(&a.pose), &body.place(&b.pose))
}

pub(crate) fn signed_gap_placed(a: &PlacedBody, b: &PlacedBody) -> f64 {
    match (a, b) {
        (
            PlacedBody::Disc {
                center: ca,
                radius: ra,
            },
            PlacedBody::Disc {
                center: cb,
                radius: rb,
            },
        ) => ca.dist(*cb) - (ra + rb),
        (PlacedBody::Polygon { vertices: va }, PlacedBody::Polygon { vertices: vb }) => {
            convex::poly_signed_gap(va, vb)
        }
        _ => unreachable!("placements of one body share its shape"),
    }
}

/// True iff the interiors of the two placed bodies intersect by more than
/// [`EPS_GEOM`]; tangency counts as non-overlapping.
pub fn overlap(body: &Body, a: &Placement, b: &Placement) -> bool {
    signed_gap(body, a, b) < -EPS_GEOM
}

/// Euclidean distance between the two placed sets; 0 when they intersect or
/// touch (gaps at most [`EPS_GEOM`] snap to 0).
pub fn gap_distance(body: &Body, a: &Placement, b: &Placement) -> f64 {
    let g = signed_gap(body, a, b);
    if g <= EPS_GEOM {
        0.0
    } else {
        g
    }
}

/// Hausdorff distance between two placed copies of the same body.
pub fn hausdorff_body_distance(body: &Body, a: &Placement, b: &Placement) -> f64 {
    hausdorff_placed(&body.place(&a.pose), &body.place(&b.pose))
}

pub(crate) fn hausdorff_placed(a: &PlacedBody, b: &PlacedBody) -> f64 {
    match (a, b) {
        (PlacedBody::Disc { center: ca, .. }, PlacedBody::Disc { center: cb, .. }) => ca.dist(*cb),
        (PlacedBody::Polygon { vertices: va }, PlacedBody::Polygon { vertices: vb }) => {
            convex::hausdorff_convex(va, vb)
        }
        _ => unreachable!("placements of one body share its shape"),
    }
}

/// True iff the union of the placed closed bodies is connected. Two copies
/// are joined when their gap is at most [`EPS_GEOM`]; for closed convex sets
/// this graph connectivity coincides with set connectivity.
pub fn connected_union(body: &Body, placements: &[Placement]) -> bool {
    let placed: Vec<PlacedBody> = placements.iter().map(|p| body.place(&p.pose)).collect();
    connected_union_placed(&placed)
}

pub(crate) fn connected_union_placed(placed: &[PlacedBody]) -> bool {
    let n = placed.len();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if signed_gap_placed(&placed[i], &placed[j]) <= EPS_GEOM {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..n).all(|i| find(&mut parent, i) == root)
}

/// Check `g K` against the interior of `(1 + epsilon) K` with a strict margin.
fn nests_inside(body: &Body, g: &Isometry, epsilon: f64) -> bool {
    let margin = 1e-12_f64.max(1e-9 * epsilon * body.circumradius());
    match body.as_disc() {
        Some(r) => {
            // g maps the disc to a disc of the same radius at g(0)
            g.translation.norm() + r < (1.0 + epsilon) * r - margin
        }
        None => {
            let verts = body.vertices().unwrap();
            let scaled: Vec<Point> = verts.iter().map(|v| *v * (1.0 + epsilon)).collect();
            verts
                .iter()
                .map(|v| g.apply(*v))
                .all(|p| convex::point_poly_dist(&scaled, p) < -margin)
        }
    }
}

/// Search for an isometry `g` with `g K` inside the interior of
/// `(1 + epsilon) K`. The search family is documented and small: the
/// identity, then translations toward the centroid. `None` means no witness
/// was found in this family, not that the body fails to self-nest.
pub fn self_nests(body: &Body, epsilon: f64, group: IsometryGroup) -> Option<Isometry> {
    if !(epsilon > 0.0) {
        return None;
    }
    let _ = group; // the family below uses translations, allowed in both groups
    if nests_inside(body, &Isometry::IDENTITY, epsilon) {
        return Some(Isometry::IDENTITY);
    }
    let toward = body.centroid();
    if toward.norm() == 0.0 {
        return None;
    }
    // scan translation magnitudes as fractions of epsilon * circumradius
    let scale = epsilon * body.circumradius();
    for k in 1..=64 {
        let t = toward * (scale * k as f64 / 64.0 / toward.norm());
        let g = Isometry::translation(t);
        if nests_inside(body, &g, epsilon) {
            return Some(g);
        }
    }
    None
}
