//! Finite packings over a torus or box window, densities, and the
//! element-matching distance between packings.
//!
//! A torus window stands in for a periodic packing of the plane (densities
//! are exact there); a box window holds finite patch experiments. Placement
//! coordinates on a torus are kept in the centered fundamental domain
//! `[-w/2, w/2) x [-h/2, h/2)`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::body::{Body, PlacedBody, Placement};
use crate::convex;
use crate::geometry::{self, EPS_GEOM};
use crate::matching;
use crate::vec2::{wrap_coord, Point, Rect};

/// The finite region a packing lives on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Window {
    /// Periodic window: opposite edges identified.
    Torus { width: f64, height: f64 },
    /// Hard-walled box centered at the origin; bodies must fit inside.
    Box { width: f64, height: f64 },
}

impl Window {
    pub fn torus(width: f64, height: f64) -> Window {
        Window::Torus { width, height }
    }

    pub fn rect_box(width: f64, height: f64) -> Window {
        Window::Box { width, height }
    }

    pub fn width(&self) -> f64 {
        match self {
            Window::Torus { width, .. } | Window::Box { width, .. } => *width,
        }
    }

    pub fn height(&self) -> f64 {
        match self {
            Window::Torus { height, .. } | Window::Box { height, .. } => *height,
        }
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, Window::Torus { .. })
    }

    /// Largest radius of a ball about the origin that the window can report
    /// on faithfully.
    pub fn reach(&self) -> f64 {
        0.5 * self.width().min(self.height())
    }

    /// Fundamental domain (torus) or walls (box) as a rectangle.
    pub fn bounds(&self) -> Rect {
        Rect::new(
            -0.5 * self.width(),
            -0.5 * self.height(),
            0.5 * self.width(),
            0.5 * self.height(),
        )
    }

    pub fn scaled(&self, factor: f64) -> Window {
        match *self {
            Window::Torus { width, height } => Window::Torus {
                width: width * factor,
                height: height * factor,
            },
            Window::Box { width, height } => Window::Box {
                width: width * factor,
                height: height * factor,
            },
        }
    }

    fn wrap(&self, p: Point) -> Point {
        match self {
            Window::Torus { width, height } => {
                Point::new(wrap_coord(p.x, *width), wrap_coord(p.y, *height))
            }
            Window::Box { .. } => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PackingError {
    BadWindow,
    /// Two elements overlap (indices into the placement list).
    OverlappingPair(usize, usize),
    /// An element sticks out of a box window.
    OutsideBox(usize),
    /// Density is only defined over a torus window.
    DensityNeedsTorus,
    /// Operation mixes packings of different bodies.
    BodyMismatch,
    BadParameter(&'static str),
}

impl fmt::Display for PackingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PackingError::BadWindow => write!(f, "window dimensions must be positive"),
            PackingError::OverlappingPair(i, j) => {
                write!(f, "placements {i} and {j} overlap")
            }
            PackingError::OutsideBox(i) => write!(f, "placement {i} leaves the box window"),
            PackingError::DensityNeedsTorus => {
                write!(f, "density is defined over torus windows only")
            }
            PackingError::BodyMismatch => write!(f, "packings use different bodies"),
            PackingError::BadParameter(what) => write!(f, "bad parameter: {what}"),
        }
    }
}

impl core::error::Error for PackingError {}

/// A finite packing: one body, a window, and non-overlapping placements.
#[derive(Clone, Debug, PartialEq)]
pub struct Packing {
    body: Body,
    window: Window,
    placements: Vec<Placement>,
}

impl Packing {
    /// Validating constructor: canonicalizes torus coordinates and runs the
    /// all-pairs disjointness check.
    pub fn new(
        body: Body,
        window: Window,
        placements: Vec<Placement>,
    ) -> Result<Packing, PackingError> {
        if !(window.width() > 0.0) || !(window.height() > 0.0) {
            return Err(PackingError::BadWindow);
        }
        let mut canonical = placements;
        for pl in &mut canonical {
            pl.pose.translation = window.wrap(pl.pose.translation);
        }
        let packing = Packing {
            body,
            window,
            placements: canonical,
        };
        packing.validate()?;
        Ok(packing)
    }

    pub fn empty(body: Body, window: Window) -> Result<Packing, PackingError> {
        Packing::new(body, window, Vec::new())
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn placed(&self, index: usize) -> PlacedBody {
        self.body.place(&self.placements[index].pose)
    }

    /// Signed gap between two placements, window-aware (over a torus, the
    /// minimum across periodic images; the `(0,0)` image is skipped when the
    /// two placements are identical so a body is not tested against itself).
    pub fn signed_gap_between(&self, a: &Placement, b: &Placement) -> f64 {
        let same = a == b;
        let delta = b.position() - a.position();
        match self.window {
            Window::Box { .. } => {
                if same {
                    return f64::INFINITY;
                }
                if let Some(r) = self.body.as_disc() {
                    return delta.norm() - 2.0 * r;
                }
                geometry::signed_gap_placed(
                    &self.body.place(&a.pose),
                    &self.body.place(&b.pose),
                )
            }
            Window::Torus { width, height } => {
                // componentwise wrapping gives the nearest periodic image on
                // a rectangular lattice
                let wrapped = Point::new(wrap_coord(delta.x, width), wrap_coord(delta.y, height));
                if let Some(r) = self.body.as_disc() {
                    if !same {
                        return wrapped.norm() - 2.0 * r;
                    }
                    // nearest image of a placement to itself
                    let mut best = f64::INFINITY;
                    for (i, j) in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)] {
                        best = best.min((i * width).hypot(j * height));
                    }
                    return best - 2.0 * r;
                }
                // polygons: scan an image ring wide enough that any
                // gap-minimizing image is included
                let pa = self.body.place(&a.pose);
                let pb = self.body.place(&b.pose);
                let shift0 = wrapped - delta;
                let span = 2.0 * self.body.circumradius() + 0.5 * width.hypot(height);
                let nx = 1 + (span / width).ceil() as i64;
                let ny = 1 + (span / height).ceil() as i64;
                let mut best = f64::INFINITY;
                for i in -nx..=nx {
                    for j in -ny..=ny {
                        let shift = shift0 + Point::new(i as f64 * width, j as f64 * height);
                        if same && shift == Point::ZERO {
                            continue;
                        }
                        best =
                            best.min(geometry::signed_gap_placed(&pa, &pb.translated(shift)));
                    }
                }
                best
            }
        }
    }

    /// Window-aware gap distance (0 when touching or overlapping).
    pub fn gap_between(&self, a: &Placement, b: &Placement) -> f64 {
        let g = self.signed_gap_between(a, b);
        if g <= EPS_GEOM {
            0.0
        } else {
            g
        }
    }

    /// Does a candidate placement fit: inside a box window, and overlapping
    /// no element except the ignored indices?
    pub fn fits(&self, candidate: &Placement, ignore: &[usize]) -> bool {
        if !self.inside_window(candidate) {
            return false;
        }
        let mut cand = *candidate;
        cand.pose.translation = self.window.wrap(cand.pose.translation);
        for (j, pl) in self.placements.iter().enumerate() {
            if ignore.contains(&j) {
                continue;
            }
            if self.signed_gap_between(&cand, pl) < -EPS_GEOM {
                return false;
            }
        }
        // over a torus a candidate may also collide with its own images
        if self.window.is_torus() && self.signed_gap_between(&cand, &cand) < -EPS_GEOM {
            return false;
        }
        true
    }

    /// True iff the placed body lies inside a box window (always true on a
    /// torus). Touching the walls within [`EPS_GEOM`] is allowed.
    pub fn inside_window(&self, candidate: &Placement) -> bool {
        match self.window {
            Window::Torus { .. } => true,
            Window::Box { width, height } => {
                let (hw, hh) = (0.5 * width + EPS_GEOM, 0.5 * height + EPS_GEOM);
                match self.body.place(&candidate.pose) {
                    PlacedBody::Disc { center, radius } => {
                        center.x - radius >= -hw
                            && center.x + radius <= hw
                            && center.y - radius >= -hh
                            && center.y + radius <= hh
                    }
                    PlacedBody::Polygon { vertices } => vertices.iter().all(|v| {
                        v.x >= -hw && v.x <= hw && v.y >= -hh && v.y <= hh
                    }),
                }
            }
        }
    }

    /// Re-run the full invariant: pairwise disjointness (brute force over all
    /// pairs and periodic images) and box containment.
    pub fn validate(&self) -> Result<(), PackingError> {
        let n = self.placements.len();
        for (i, pl) in self.placements.iter().enumerate() {
            if !self.inside_window(pl) {
                return Err(PackingError::OutsideBox(i));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.signed_gap_between(&self.placements[i], &self.placements[j]) < -EPS_GEOM {
                    return Err(PackingError::OverlappingPair(i, j));
                }
            }
            if self.window.is_torus()
                && self.signed_gap_between(&self.placements[i], &self.placements[i]) < -EPS_GEOM
            {
                return Err(PackingError::OverlappingPair(i, i));
            }
        }
        Ok(())
    }

    /// New packing with one more placement; validates only the new element.
    pub fn with_inserted(&self, candidate: Placement) -> Result<Packing, PackingError> {
        if !self.inside_window(&candidate) {
            return Err(PackingError::OutsideBox(self.placements.len()));
        }
        for (j, pl) in self.placements.iter().enumerate() {
            if self.signed_gap_between(&candidate, pl) < -EPS_GEOM {
                return Err(PackingError::OverlappingPair(j, self.placements.len()));
            }
        }
        if self.window.is_torus() && self.signed_gap_between(&candidate, &candidate) < -EPS_GEOM {
            let n = self.placements.len();
            return Err(PackingError::OverlappingPair(n, n));
        }
        let mut placements = self.placements.clone();
        let mut cand = candidate;
        cand.pose.translation = self.window.wrap(cand.pose.translation);
        placements.push(cand);
        Ok(Packing {
            body: self.body.clone(),
            window: self.window,
            placements,
        })
    }

    /// New packing with the given indices removed.
    pub fn without(&self, indices: &[usize]) -> Packing {
        let placements = self
            .placements
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, pl)| *pl)
            .collect();
        Packing {
            body: self.body.clone(),
            window: self.window,
            placements,
        }
    }

    /// Translate every placement by `t` (wrapping over a torus). Over a box
    /// window the result is re-validated against the walls.
    pub fn translated(&self, t: Point) -> Result<Packing, PackingError> {
        let placements: Vec<Placement> = self
            .placements
            .iter()
            .map(|pl| {
                let mut moved = *pl;
                moved.pose.translation = self.window.wrap(pl.position() + t);
                moved
            })
            .collect();
        let moved = Packing {
            body: self.body.clone(),
            window: self.window,
            placements,
        };
        for (i, pl) in moved.placements.iter().enumerate() {
            if !moved.inside_window(pl) {
                return Err(PackingError::OutsideBox(i));
            }
        }
        Ok(moved)
    }

    /// Window-aware connectivity of the union of the given placed bodies.
    /// Over a torus, two copies also join across the seam.
    pub fn connected_union(&self, placements: &[Placement]) -> bool {
        let n = placements.len();
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
                if self.signed_gap_between(&placements[i], &placements[j]) <= EPS_GEOM {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }

    /// Exact area fraction over a torus window. This equals the infinite-
    /// plane density of the periodic extension.
    pub fn density(&self) -> Result<f64, PackingError> {
        if !self.window.is_torus() {
            return Err(PackingError::DensityNeedsTorus);
        }
        Ok(self.placements.len() as f64 * self.body.area() / self.window.area())
    }

    /// Area of `union of bodies ∩ B(center, r)` divided by `pi r^2`.
    /// Bodies are interior-disjoint, so the union area is the sum of exact
    /// per-body intersection areas (wrapped periodically over a torus).
    pub fn density_in_ball(&self, center: Point, r: f64) -> f64 {
        assert!(r > 0.0, "ball radius must be positive");
        let circ = self.body.circumradius();
        let mut covered = 0.0;
        for pl in &self.placements {
            let placed = self.body.place(&pl.pose);
            for shift in self.ball_shifts(center, r + circ, pl.position()) {
                let moved = placed.translated(shift);
                covered += match &moved {
                    PlacedBody::Disc { center: c, radius } => {
                        convex::disc_disc_area(*c, *radius, center, r)
                    }
                    PlacedBody::Polygon { vertices } => {
                        convex::circle_poly_area(center, r, vertices)
                    }
                };
            }
        }
        covered / (PI * r * r)
    }

    /// Image shifts that can bring `pos` within `max_dist` of `center`.
    fn ball_shifts(&self, center: Point, max_dist: f64, pos: Point) -> Vec<Point> {
        match self.window {
            Window::Box { .. } => {
                if pos.dist(center) <= max_dist {
                    alloc::vec![Point::ZERO]
                } else {
                    Vec::new()
                }
            }
            Window::Torus { width, height } => {
                let mut out = Vec::new();
                let nx = ((max_dist + (pos.x - center.x).abs()) / width).ceil() as i64;
                let ny = ((max_dist + (pos.y - center.y).abs()) / height).ceil() as i64;
                for i in -nx..=nx {
                    for j in -ny..=ny {
                        let shift = Point::new(i as f64 * width, j as f64 * height);
                        if (pos + shift).dist(center) <= max_dist {
                            out.push(shift);
                        }
                    }
                }
                out
            }
        }
    }

    /// Worst-case deviation of ball densities from the global density, per
    /// radius, over a deterministic grid of ball centers.
    pub fn uniform_density_profile(
        &self,
        radii: &[f64],
        centers: &CenterGrid,
    ) -> Result<DensityProfile, PackingError> {
        let delta = self.density()?;
        let mut sorted = radii.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if sorted.iter().any(|r| !(*r > 0.0)) {
            return Err(PackingError::BadParameter("radii must be positive"));
        }
        let (w, h) = (self.window.width(), self.window.height());
        let mut samples = Vec::with_capacity(sorted.len());
        for r in sorted {
            let mut worst = 0.0f64;
            for i in 0..centers.nx {
                for j in 0..centers.ny {
                    let c = Point::new(
                        -0.5 * w + (i as f64 + 0.5) * w / centers.nx as f64,
                        -0.5 * h + (j as f64 + 0.5) * h / centers.ny as f64,
                    );
                    worst = worst.max((self.density_in_ball(c, r) - delta).abs());
                }
            }
            samples.push((r, worst));
        }
        Ok(DensityProfile { samples })
    }
}

/// Deterministic grid of ball centers over the fundamental domain.
#[derive(Clone, Copy, Debug)]
pub struct CenterGrid {
    pub nx: usize,
    pub ny: usize,
}

impl Default for CenterGrid {
    fn default() -> Self {
        CenterGrid { nx: 32, ny: 32 }
    }
}

/// Per-radius worst-case deviation of local from global density.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityProfile {
    /// `(radius, worst deviation)`, radii strictly increasing.
    pub samples: Vec<(f64, f64)>,
}

/// Outcome of the element-matching comparison of two packings.
#[derive(Clone, Debug)]
pub struct PackingDistanceReport {
    pub epsilon: f64,
    /// One-to-one pairing `(index in p, index in q)` witnessing the verdict.
    pub matched: Vec<(usize, usize)>,
    pub verdict: bool,
    /// Set when the comparison ball does not fit the windows, so the verdict
    /// only speaks for the finite window.
    pub window_limited: bool,
}

/// Does a one-to-one pairing exist matching every element that meets
/// `B(0, 1/epsilon)` (in either packing) to a partner at body Hausdorff
/// distance at most `epsilon`? Symmetric in its packing arguments.
pub fn modified_hausdorff_leq(
    p: &Packing,
    q: &Packing,
    epsilon: f64,
) -> Result<PackingDistanceReport, PackingError> {
    if !(epsilon > 0.0) {
        return Err(PackingError::BadParameter("epsilon must be positive"));
    }
    matching_report(p, q, epsilon, 1.0 / epsilon)
}

/// Matching comparison with an explicit requirement ball radius.
pub(crate) fn matching_report(
    p: &Packing,
    q: &Packing,
    epsilon: f64,
    ball_radius: f64,
) -> Result<PackingDistanceReport, PackingError> {
    if p.body() != q.body() {
        return Err(PackingError::BodyMismatch);
    }
    let window_limited = ball_radius > p.window().reach() || ball_radius > q.window().reach();

    let placed_p: Vec<PlacedBody> = (0..p.len()).map(|i| p.placed(i)).collect();
    let placed_q: Vec<PlacedBody> = (0..q.len()).map(|i| q.placed(i)).collect();
    let req_p: Vec<bool> = placed_p
        .iter()
        .map(|b| b.dist_to_point(Point::ZERO) <= ball_radius)
        .collect();
    let req_q: Vec<bool> = placed_q
        .iter()
        .map(|b| b.dist_to_point(Point::ZERO) <= ball_radius)
        .collect();

    // edges: pairs within epsilon in body Hausdorff distance; a cheap center
    // prefilter skips hopeless pairs
    let reach = epsilon + 2.0 * p.body().circumradius();
    let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); p.len()];
    for (i, bi) in placed_p.iter().enumerate() {
        for (j, bj) in placed_q.iter().enumerate() {
            if p.placements()[i]
                .position()
                .dist(q.placements()[j].position())
                > reach
            {
                continue;
            }
            if geometry::hausdorff_placed(bi, bj) <= epsilon {
                adj[i].push(j);
            }
        }
    }

    match matching::covering_matching(&adj, q.len(), &req_p, &req_q) {
        Some(matched) => Ok(PackingDistanceReport {
            epsilon,
            matched,
            verdict: true,
            window_limited,
        }),
        None => Ok(PackingDistanceReport {
            epsilon,
            matched: Vec::new(),
            verdict: false,
            window_limited,
        }),
    }
}
