//! Convex polygon primitives shared by the public modules: areas, distances,
//! separating-axis gaps, half-plane clipping, disc/polygon intersection areas
//! and exact support-function Hausdorff distances.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::vec2::Point;

/// Shoelace area of a simple polygon (positive for counterclockwise).
pub(crate) fn poly_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * s
}

pub(crate) fn poly_centroid(pts: &[Point]) -> Point {
    let n = pts.len();
    let mut acc = Point::ZERO;
    let mut area2 = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let c = a.cross(b);
        acc = acc + (a + b) * c;
        area2 += c;
    }
    if area2.abs() < 1e-300 {
        // degenerate: fall back to vertex average
        let mut m = Point::ZERO;
        for p in pts {
            m = m + *p;
        }
        return m / n as f64;
    }
    acc / (3.0 * area2)
}

/// Point-in-convex-polygon test with absolute slack `eps` (counterclockwise
/// vertices; `eps > 0` accepts points slightly outside).
pub(crate) fn poly_contains(pts: &[Point], p: Point, eps: f64) -> bool {
    let n = pts.len();
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let e = b - a;
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        if e.cross(p - a) < -eps * len {
            return false;
        }
    }
    true
}

pub(crate) fn seg_point_dist(a: Point, b: Point, p: Point) -> f64 {
    let e = b - a;
    let len_sq = e.norm_sq();
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(e) / len_sq).clamp(0.0, 1.0);
    p.dist(a + e * t)
}

fn segments_properly_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    let d1 = (a2 - a1).cross(b1 - a1);
    let d2 = (a2 - a1).cross(b2 - a1);
    let d3 = (b2 - b1).cross(a1 - b1);
    let d4 = (b2 - b1).cross(a2 - b1);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

pub(crate) fn seg_seg_dist(a1: Point, a2: Point, b1: Point, b2: Point) -> f64 {
    if segments_properly_intersect(a1, a2, b1, b2) {
        return 0.0;
    }
    seg_point_dist(a1, a2, b1)
        .min(seg_point_dist(a1, a2, b2))
        .min(seg_point_dist(b1, b2, a1))
        .min(seg_point_dist(b1, b2, a2))
}

/// Signed distance from `p` to a convex counterclockwise polygon:
/// negative inside, positive outside.
pub(crate) fn point_poly_dist(pts: &[Point], p: Point) -> f64 {
    let n = pts.len();
    let mut boundary = f64::INFINITY;
    let mut inside = true;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        boundary = boundary.min(seg_point_dist(a, b, p));
        if (b - a).cross(p - a) < 0.0 {
            inside = false;
        }
    }
    if inside {
        -boundary
    } else {
        boundary
    }
}

fn project(pts: &[Point], axis: Point) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in pts {
        let v = p.dot(axis);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Signed gap between two convex counterclockwise polygons: the Euclidean
/// distance when disjoint, minus the penetration depth when the interiors
/// intersect. Exact for convex polygons (the minimum translation axis is an
/// edge normal of one of them).
pub(crate) fn poly_signed_gap(a: &[Point], b: &[Point]) -> f64 {
    let mut min_overlap = f64::INFINITY;
    let mut separated = false;
    for (pts, other) in [(a, b), (b, a)] {
        let n = pts.len();
        for i in 0..n {
            let e = pts[(i + 1) % n] - pts[i];
            let len = e.norm();
            if len == 0.0 {
                continue;
            }
            let axis = Point::new(e.y, -e.x) / len; // outward normal
            let (la, ha) = project(pts, axis);
            let (lb, hb) = project(other, axis);
            let overlap = ha.min(hb) - la.max(lb);
            min_overlap = min_overlap.min(overlap);
            if overlap < 0.0 {
                separated = true;
            }
        }
    }
    if !separated {
        // interiors intersect: penetration depth along the best normal
        return -min_overlap;
    }
    // disjoint: true distance over boundary segment pairs
    let mut best = f64::INFINITY;
    let (na, nb) = (a.len(), b.len());
    for i in 0..na {
        for j in 0..nb {
            best = best.min(seg_seg_dist(
                a[i],
                a[(i + 1) % na],
                b[j],
                b[(j + 1) % nb],
            ));
        }
    }
    best
}

/// Clip a convex polygon by the half-plane `n . x <= c` (Sutherland–Hodgman).
pub(crate) fn clip_halfplane(pts: &[Point], n: Point, c: f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(pts.len() + 1);
    let len = pts.len();
    for i in 0..len {
        let cur = pts[i];
        let nxt = pts[(i + 1) % len];
        let dc = n.dot(cur) - c;
        let dn = n.dot(nxt) - c;
        if dc <= 0.0 {
            out.push(cur);
        }
        if (dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0) {
            let t = dc / (dc - dn);
            out.push(cur + (nxt - cur) * t);
        }
    }
    out
}

/// Intersection area of two convex counterclockwise polygons.
pub(crate) fn poly_poly_intersection_area(a: &[Point], b: &[Point]) -> f64 {
    let mut clipped: Vec<Point> = a.to_vec();
    let n = b.len();
    for i in 0..n {
        if clipped.len() < 3 {
            return 0.0;
        }
        let p = b[i];
        let q = b[(i + 1) % n];
        let e = q - p;
        // interior of b is on the left: e x (x - p) >= 0  <=>  (-perp e).x <= -perp(e).p
        let nrm = Point::new(e.y, -e.x);
        clipped = clip_halfplane(&clipped, nrm, nrm.dot(p));
    }
    poly_area(&clipped).max(0.0)
}

fn wrap_angle(a: f64) -> f64 {
    let mut r = a;
    while r > PI {
        r -= 2.0 * PI;
    }
    while r <= -PI {
        r += 2.0 * PI;
    }
    r
}

/// Signed area of `triangle(origin, p, q)` intersected with the disc of
/// radius `r` about the origin; the sign follows the orientation of (p, q).
fn tri_circ_area(p: Point, q: Point, r: f64) -> f64 {
    let sector = |a: Point, b: Point| 0.5 * r * r * wrap_angle(b.angle() - a.angle());
    let inside_p = p.norm_sq() <= r * r;
    let inside_q = q.norm_sq() <= r * r;
    if inside_p && inside_q {
        return 0.5 * p.cross(q);
    }
    // segment-circle intersections: |p + t (q - p)| = r
    let d = q - p;
    let aa = d.norm_sq();
    let bb = 2.0 * p.dot(d);
    let cc = p.norm_sq() - r * r;
    let disc = bb * bb - 4.0 * aa * cc;
    if aa == 0.0 {
        return 0.0;
    }
    if inside_p {
        // leaving the disc at t1
        let t1 = (-bb + disc.max(0.0).sqrt()) / (2.0 * aa);
        let m = p + d * t1.clamp(0.0, 1.0);
        return 0.5 * p.cross(m) + sector(m, q);
    }
    if inside_q {
        let t0 = (-bb - disc.max(0.0).sqrt()) / (2.0 * aa);
        let m = p + d * t0.clamp(0.0, 1.0);
        return sector(p, m) + 0.5 * m.cross(q);
    }
    // both endpoints outside
    if disc > 0.0 {
        let sq = disc.sqrt();
        let t0 = (-bb - sq) / (2.0 * aa);
        let t1 = (-bb + sq) / (2.0 * aa);
        if t0 > 0.0 && t1 < 1.0 && t0 < t1 {
            let m0 = p + d * t0;
            let m1 = p + d * t1;
            return sector(p, m0) + 0.5 * m0.cross(m1) + sector(m1, q);
        }
    }
    sector(p, q)
}

/// Exact area of `polygon ∩ disc(center, r)` via per-edge circular segments.
pub(crate) fn circle_poly_area(center: Point, r: f64, pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += tri_circ_area(pts[i] - center, pts[(i + 1) % n] - center, r);
    }
    s.max(0.0)
}

/// Intersection area of two discs.
pub(crate) fn disc_disc_area(c1: Point, r1: f64, c2: Point, r2: f64) -> f64 {
    let d = c1.dist(c2);
    if d >= r1 + r2 {
        return 0.0;
    }
    let rmin = r1.min(r2);
    if d <= (r1 - r2).abs() {
        return PI * rmin * rmin;
    }
    let alpha = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0);
    let beta = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0);
    let t1 = r1 * r1 * alpha.acos();
    let t2 = r2 * r2 * beta.acos();
    let k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    t1 + t2 - 0.5 * k.max(0.0).sqrt()
}

fn support_vertex(pts: &[Point], u: Point) -> Point {
    let mut best = pts[0];
    let mut bv = best.dot(u);
    for p in &pts[1..] {
        let v = p.dot(u);
        if v > bv {
            bv = v;
            best = *p;
        }
    }
    best
}

/// Hausdorff distance between two convex counterclockwise polygons, computed
/// exactly as `sup_u |h_A(u) - h_B(u)|` over unit directions. The circle of
/// directions is split at the edge-normal angles of both polygons; on each
/// arc the active vertex pair is constant, so the supremum of the sinusoid
/// `(v - w) . u(theta)` is attained at an arc endpoint or at its own peak.
pub(crate) fn hausdorff_convex(a: &[Point], b: &[Point]) -> f64 {
    let mut cuts: Vec<f64> = Vec::with_capacity(a.len() + b.len());
    for pts in [a, b] {
        let n = pts.len();
        for i in 0..n {
            let e = pts[(i + 1) % n] - pts[i];
            cuts.push(Point::new(e.y, -e.x).angle());
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let m = cuts.len();
    let mut best = 0.0f64;
    for i in 0..m {
        let t0 = cuts[i];
        let t1 = if i + 1 == m {
            cuts[0] + 2.0 * PI
        } else {
            cuts[i + 1]
        };
        if t1 - t0 < 1e-15 {
            continue;
        }
        let mid = Point::from_angle(0.5 * (t0 + t1));
        let d = support_vertex(a, mid) - support_vertex(b, mid);
        let amp = d.norm();
        if amp == 0.0 {
            continue;
        }
        let phi = d.angle();
        // candidates: arc endpoints, plus the two sinusoid extrema if interior
        for theta in [t0, t1] {
            best = best.max((d.dot(Point::from_angle(theta))).abs());
        }
        for peak in [phi, phi + PI] {
            // normalize into [t0, t0 + 2 pi) before the arc test
            let mut t = peak;
            while t < t0 {
                t += 2.0 * PI;
            }
            while t >= t0 + 2.0 * PI {
                t -= 2.0 * PI;
            }
            if t <= t1 {
                best = best.max(amp);
            }
        }
    }
    best
}

/// Merge near-duplicate vertices and drop collinear ones. Used to tidy
/// polygons produced by repeated half-plane clipping.
pub(crate) fn poly_clean(pts: &[Point], tol: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts {
        if let Some(&last) = out.last() {
            if last.dist(p) <= tol {
                continue;
            }
        }
        out.push(p);
    }
    while out.len() >= 2 && out[0].dist(*out.last().unwrap()) <= tol {
        out.pop();
    }
    if out.len() < 3 {
        return out;
    }
    let mut cleaned: Vec<Point> = Vec::with_capacity(out.len());
    let n = out.len();
    for i in 0..n {
        let prev = out[(i + n - 1) % n];
        let cur = out[i];
        let next = out[(i + 1) % n];
        if (cur - prev).cross(next - cur).abs() > tol * (cur - prev).norm().max(1e-300) {
            cleaned.push(cur);
        }
    }
    if cleaned.len() >= 3 {
        cleaned
    } else {
        out
    }
}


#[cfg(test)]
mod debug_tests {
    use super::*;
    use crate::vec2::Point;
    use alloc::vec::Vec;

    #[test]
    fn arc_sweep_matches_dense_sweep() {
        let a: Vec<Point> = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]
            .iter()
            .map(|&(x, y)| Point::new(x, y))
            .collect();
        let th = 2.731423696799017f64;
        let t = Point::new(0.6012124468606425, -3.4890115808565487);
        let b: Vec<Point> = a.iter().map(|p| p.rotated(th) + t).collect();
        let mut dense = 0.0f64;
        let n = 3_000_000;
        for k in 0..n {
            let ang = core::f64::consts::TAU * k as f64 / n as f64;
            let u = Point::from_angle(ang);
            let ha = a.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max);
            let hb = b.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max);
            dense = dense.max((ha - hb).abs());
        }
        let mine = hausdorff_convex(&a, &b);
        assert!((mine - dense).abs() < 1e-6, "mine {mine} dense {dense}");
    }
}
