//! Voronoi cells of disc packings on a torus, deviation of cells from the
//! regular circumscribed hexagon, and equal-area cell truncation.
//!
//! Cells are built by half-plane clipping: each site starts from the
//! rectangle bounded by its own periodic images and is cut by the bisectors
//! of every other site image within reach. On a torus the cells partition
//! the fundamental domain, so their areas sum to the window area.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::convex;
use crate::packing::{Packing, Window};
use crate::vec2::{Point, Rect};

#[derive(Clone, Debug, PartialEq)]
pub enum VoronoiError {
    NeedsTorus,
    NeedsDiscBody,
    NoSites,
    /// Truncation target exceeds the cell area.
    TargetTooLarge { target: f64, cell_area: f64 },
    /// Pieces passed to the coverage check overlap.
    OverlappingPieces(usize, usize),
    BadParameter(&'static str),
}

impl fmt::Display for VoronoiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VoronoiError::NeedsTorus => write!(f, "Voronoi cells need a torus window"),
            VoronoiError::NeedsDiscBody => write!(f, "Voronoi cells need a disc body"),
            VoronoiError::NoSites => write!(f, "at least one site required"),
            VoronoiError::TargetTooLarge { target, cell_area } => {
                write!(f, "target area {target} exceeds cell area {cell_area}")
            }
            VoronoiError::OverlappingPieces(i, j) => {
                write!(f, "pieces {i} and {j} have overlapping interiors")
            }
            VoronoiError::BadParameter(what) => write!(f, "bad parameter: {what}"),
        }
    }
}

impl core::error::Error for VoronoiError {}

/// One Voronoi cell: the region of the torus nearer to `site` than to any
/// other site (or site image).
#[derive(Clone, Debug, PartialEq)]
pub struct VoronoiCell {
    pub site: Point,
    /// Convex vertices, counterclockwise, in plane coordinates about the
    /// site's canonical position.
    pub polygon: Vec<Point>,
    pub area: f64,
}

/// Voronoi partition of a torus by the disc centers of a packing.
pub fn cells(p: &Packing) -> Result<Vec<VoronoiCell>, VoronoiError> {
    let Window::Torus { width, height } = *p.window() else {
        return Err(VoronoiError::NeedsTorus);
    };
    if p.body().as_disc().is_none() {
        return Err(VoronoiError::NeedsDiscBody);
    }
    if p.is_empty() {
        return Err(VoronoiError::NoSites);
    }
    let sites: Vec<Point> = p.placements().iter().map(|pl| pl.position()).collect();
    let mut out = Vec::with_capacity(sites.len());
    for (s_idx, &site) in sites.iter().enumerate() {
        // own periodic images bound the cell inside a period rectangle
        let mut poly: Vec<Point> = Rect::new(
            site.x - 0.5 * width,
            site.y - 0.5 * height,
            site.x + 0.5 * width,
            site.y + 0.5 * height,
        )
        .corners()
        .to_vec();
        // clip by bisectors of every relevant site image
        let reach = (width * width + height * height).sqrt();
        let nx = (reach / width).ceil() as i64;
        let ny = (reach / height).ceil() as i64;
        for (t_idx, &other) in sites.iter().enumerate() {
            for i in -nx..=nx {
                for j in -ny..=ny {
                    if t_idx == s_idx && i == 0 && j == 0 {
                        continue;
                    }
                    let image = other + Point::new(i as f64 * width, j as f64 * height);
                    let mid = (site + image) * 0.5;
                    let n = image - site;
                    if n.norm() > reach {
                        continue;
                    }
                    // keep the side of the bisector containing the site
                    poly = convex::clip_halfplane(&poly, n, n.dot(mid));
                    if poly.len() < 3 {
                        break;
                    }
                }
            }
        }
        let poly = convex::poly_clean(&poly, 1e-12 * width.max(height));
        let area = convex::poly_area(&poly);
        out.push(VoronoiCell {
            site,
            polygon: poly,
            area,
        });
    }
    Ok(out)
}

/// Regular hexagon circumscribed about the disc of radius `r` (apothem `r`),
/// one flat side down, centered at the origin.
pub fn circumscribed_hexagon(r: f64) -> Vec<Point> {
    let circum = 2.0 * r / 3f64.sqrt();
    (0..6)
        .map(|k| Point::from_angle(PI / 6.0 + k as f64 * PI / 3.0) * circum)
        .collect()
}

/// Hausdorff distance from the cell (recentered at its site) to the best
/// rotation of the regular hexagon circumscribed about the radius-`r` disc.
/// The rotation is searched on a 0.5-degree grid and refined locally by
/// golden-section.
pub fn hexagon_deviation(cell: &VoronoiCell, r: f64) -> f64 {
    let recentered: Vec<Point> = cell.polygon.iter().map(|v| *v - cell.site).collect();
    let hexagon = circumscribed_hexagon(r);
    let dist_at = |theta: f64| {
        let rotated: Vec<Point> = hexagon.iter().map(|v| v.rotated(theta)).collect();
        convex::hausdorff_convex(&recentered, &rotated)
    };
    // the hexagon has 60-degree symmetry
    let period = PI / 3.0;
    let steps = 120; // 0.5 degrees
    let mut best_theta = 0.0;
    let mut best = f64::INFINITY;
    for k in 0..steps {
        let theta = k as f64 * period / steps as f64;
        let d = dist_at(theta);
        if d < best {
            best = d;
            best_theta = theta;
        }
    }
    // golden-section refinement around the best grid angle
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (
        best_theta - period / steps as f64,
        best_theta + period / steps as f64,
    );
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (dist_at(x1), dist_at(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = dist_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = dist_at(x2);
        }
    }
    best.min(f1).min(f2)
}

/// A Voronoi cell truncated by a concentric disc: the intersection of the
/// cell polygon with `B(site, radius)` (no disc when the target equals the
/// cell area).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedCell {
    pub site: Point,
    pub polygon: Vec<Point>,
    /// Truncation disc radius about the site; `None` when the whole cell is
    /// kept.
    pub disc_radius: Option<f64>,
    pub area: f64,
}

impl TruncatedCell {
    pub fn contains(&self, p: Point) -> bool {
        if let Some(r) = self.disc_radius {
            if p.dist(self.site) > r {
                return false;
            }
        }
        convex::poly_contains(&self.polygon, p, 0.0)
    }
}

/// Area tolerance of the truncation bisection.
pub const TRUNCATION_AREA_TOL: f64 = 1e-9;

/// Intersect the cell with a concentric disc whose radius is chosen by
/// bisection so the result has the target area (within
/// [`TRUNCATION_AREA_TOL`]). The result contains the packed disc whenever
/// `target >= pi r^2`, because the cell does.
pub fn truncate_cell_to_area(
    cell: &VoronoiCell,
    target: f64,
) -> Result<TruncatedCell, VoronoiError> {
    if !(target > 0.0) {
        return Err(VoronoiError::BadParameter("target area must be positive"));
    }
    if target > cell.area + TRUNCATION_AREA_TOL {
        return Err(VoronoiError::TargetTooLarge {
            target,
            cell_area: cell.area,
        });
    }
    if target >= cell.area - TRUNCATION_AREA_TOL {
        return Ok(TruncatedCell {
            site: cell.site,
            polygon: cell.polygon.clone(),
            disc_radius: None,
            area: cell.area,
        });
    }
    let circum = cell
        .polygon
        .iter()
        .map(|v| v.dist(cell.site))
        .fold(0.0f64, |a, b| a.max(b));
    let area_at = |radius: f64| convex::circle_poly_area(cell.site, radius, &cell.polygon);
    let (mut lo, mut hi) = (0.0, circum);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let a = area_at(mid);
        if (a - target).abs() <= TRUNCATION_AREA_TOL {
            lo = mid;
            hi = mid;
            break;
        }
        if a < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * circum.max(1.0) {
            break;
        }
    }
    let radius = 0.5 * (lo + hi);
    Ok(TruncatedCell {
        site: cell.site,
        polygon: cell.polygon.clone(),
        disc_radius: Some(radius),
        area: area_at(radius),
    })
}

/// Window area minus the total area of the pieces: zero exactly when the
/// pieces tile the window. Pieces must be pairwise interior-disjoint.
pub fn coverage_gap(pieces: &[TruncatedCell], window: &Window) -> Result<f64, VoronoiError> {
    for i in 0..pieces.len() {
        for j in (i + 1)..pieces.len() {
            if pieces_overlap(&pieces[i], &pieces[j]) {
                return Err(VoronoiError::OverlappingPieces(i, j));
            }
        }
    }
    let total: f64 = pieces.iter().map(|p| p.area).sum();
    Ok(window.area() - total)
}

fn pieces_overlap(a: &TruncatedCell, b: &TruncatedCell) -> bool {
    // polygons disjoint (or touching) means pieces disjoint
    if convex::poly_signed_gap(&a.polygon, &b.polygon) >= -1e-9 {
        return false;
    }
    // polygons overlap: compare against the truncation discs by sampling the
    // polygon intersection with a fine clip of each disc
    let mut clipped: Vec<Point> = a.polygon.clone();
    let nb = b.polygon.len();
    for k in 0..nb {
        let p = b.polygon[k];
        let q = b.polygon[(k + 1) % nb];
        let e = q - p;
        let n = Point::new(e.y, -e.x);
        clipped = convex::clip_halfplane(&clipped, n, n.dot(p));
        if clipped.len() < 3 {
            return false;
        }
    }
    let mut area = convex::poly_area(&clipped);
    if let Some(r) = a.disc_radius {
        area = area.min(convex::circle_poly_area(a.site, r, &clipped));
    }
    if let Some(r) = b.disc_radius {
        area = area.min(convex::circle_poly_area(b.site, r, &clipped));
    }
    area > 1e-9
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{Body, Placement};
    use alloc::vec;

    #[test]
    fn two_sites_split_the_torus_evenly() {
        let p = Packing::new(
            Body::unit_disc(),
            Window::torus(8.0, 4.0),
            vec![Placement::at(-2.0, 0.0), Placement::at(2.0, 0.0)],
        )
        .unwrap();
        let cs = cells(&p).unwrap();
        assert_eq!(cs.len(), 2);
        assert!((cs[0].area - 16.0).abs() < 1e-9);
        assert!((cs[1].area - 16.0).abs() < 1e-9);
        let total: f64 = cs.iter().map(|c| c.area).sum();
        assert!((total - 32.0).abs() < 1e-9);
    }

    #[test]
    fn single_site_gets_the_fundamental_domain() {
        let p = Packing::new(
            Body::disc(0.5).unwrap(),
            Window::torus(3.0, 2.0),
            vec![Placement::at(0.5, 0.25)],
        )
        .unwrap();
        let cs = cells(&p).unwrap();
        assert_eq!(cs.len(), 1);
        assert!((cs[0].area - 6.0).abs() < 1e-9);
    }

    #[test]
    fn hexagon_helper_has_right_metrics() {
        let hexagon = circumscribed_hexagon(1.0);
        let area = convex::poly_area(&hexagon);
        assert!((area - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        // apothem 1: distance from origin to each edge midpoint
        for k in 0..6 {
            let mid = (hexagon[k] + hexagon[(k + 1) % 6]) * 0.5;
            assert!((mid.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_hits_target_area() {
        let cell = VoronoiCell {
            site: Point::ZERO,
            polygon: Rect::new(-1.0, -1.0, 1.0, 1.0).corners().to_vec(),
            area: 4.0,
        };
        let t = truncate_cell_to_area(&cell, PI).unwrap();
        // the square of area 4 truncated to pi keeps exactly the unit disc
        assert!((t.disc_radius.unwrap() - 1.0).abs() < 1e-6);
        assert!((t.area - PI).abs() < TRUNCATION_AREA_TOL * 2.0);
        // identity truncation
        let id = truncate_cell_to_area(&cell, 4.0).unwrap();
        assert!(id.disc_radius.is_none());
        assert_eq!(id.area, 4.0);
        // near-identity target met within tolerance
        let near = truncate_cell_to_area(&cell, 0.999 * 4.0).unwrap();
        assert!((near.area - 3.996).abs() < TRUNCATION_AREA_TOL * 2.0);
        // too large rejected
        assert!(matches!(
            truncate_cell_to_area(&cell, 4.1),
            Err(VoronoiError::TargetTooLarge { .. })
        ));
    }

    #[test]
    fn coverage_gap_of_empty_piece_list() {
        let w = Window::torus(4.0, 4.0);
        assert_eq!(coverage_gap(&[], &w).unwrap(), 16.0);
    }
}
