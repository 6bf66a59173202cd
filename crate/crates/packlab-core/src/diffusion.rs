//! Discretized finite measures, diffused mass fields `mu * chi_P`, pairwise
//! dominance verdicts, and replacement margins.
//!
//! A [`GridMeasure`] is a finite measure sampled on a square grid of cells
//! about the origin, together with the analytic tail mass beyond its support
//! radius (recorded, never ignored). The measures used for saturation
//! margins are the radial exponentials
//! `f(x) = (n/(n+1))^{|x|/(2n-1)}`, built by [`lemma_mu`]; these carry their
//! analytic kernel so that field evaluations can integrate exactly instead
//! of summing grid atoms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::body::PlacedBody;
use crate::convex;
use crate::packing::{Packing, Window};
use crate::quad::{adaptive_simpson, RadialExp};
use crate::vec2::{Point, Rect};

#[derive(Clone, Debug, PartialEq)]
pub enum DiffusionError {
    /// The margin argument needs the kernel to reach across a connected
    /// union, so the cutoff must be at least `2n - 1` body diameters.
    CutoffTooSmall { cutoff: f64, needed: f64 },
    /// Field comparison requires identical grids.
    GridMismatch,
    /// Composition requires equal cell sizes.
    IncompatibleCells,
    /// The dominance tolerance must exceed the combined numeric error.
    TauTooSmall { tau: f64, needed: f64 },
    BadParameter(&'static str),
}

impl fmt::Display for DiffusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffusionError::CutoffTooSmall { cutoff, needed } => {
                write!(f, "cutoff {cutoff} below required {needed}")
            }
            DiffusionError::GridMismatch => write!(f, "fields live on different grids"),
            DiffusionError::IncompatibleCells => write!(f, "cell sizes are incompatible"),
            DiffusionError::TauTooSmall { tau, needed } => {
                write!(f, "tolerance {tau} does not exceed the error bound {needed}")
            }
            DiffusionError::BadParameter(what) => write!(f, "bad parameter: {what}"),
        }
    }
}

impl core::error::Error for DiffusionError {}

/// A finite measure discretized on a `(2 half + 1)^2` grid of square cells
/// of pitch `cell`, centered at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMeasure {
    cell: f64,
    half: i64,
    support_radius: f64,
    masses: Vec<f64>,
    truncation_error: f64,
    kernel: Option<RadialExp>,
}

/// Decay rate of the level-`n` margin kernel.
pub fn lemma_lambda(n: u32) -> f64 {
    let q = n as f64 / (n as f64 + 1.0);
    -q.ln() / (2.0 * n as f64 - 1.0)
}

/// Default cutoff radius: where the density falls to 1e-6, capped at 40
/// body diameters.
pub fn default_cutoff(n: u32) -> f64 {
    let r = -(1e-6f64).ln() / lemma_lambda(n);
    r.min(40.0)
}

/// The margin measure for level `n`: density `(n/(n+1))^{|x|/(2n-1)}` on
/// `B(0, cutoff)`, for bodies normalized to diameter 1. The tail mass beyond
/// the cutoff is computed analytically and recorded as the truncation error.
pub fn lemma_mu(n: u32, cell: f64, cutoff: f64) -> Result<GridMeasure, DiffusionError> {
    if n < 1 {
        return Err(DiffusionError::BadParameter("n must be at least 1"));
    }
    if !(cell > 0.0) {
        return Err(DiffusionError::BadParameter("cell size must be positive"));
    }
    let needed = 2.0 * n as f64 - 1.0;
    if cutoff < needed {
        return Err(DiffusionError::CutoffTooSmall { cutoff, needed });
    }
    let kernel = RadialExp {
        lambda: lemma_lambda(n),
    };
    let half = (cutoff / cell).ceil() as i64;
    let side = (2 * half + 1) as usize;
    let mut masses = vec![0.0; side * side];
    for j in -half..=half {
        for i in -half..=half {
            let c = Point::new(i as f64 * cell, j as f64 * cell);
            if c.norm() <= cutoff {
                masses[((j + half) as usize) * side + (i + half) as usize] =
                    kernel.density(c.norm()) * cell * cell;
            }
        }
    }
    Ok(GridMeasure {
        cell,
        half,
        support_radius: cutoff,
        masses,
        truncation_error: kernel.tail_mass(cutoff),
        kernel: Some(kernel),
    })
}

impl GridMeasure {
    /// Unit point mass at the origin (single cell), the convolution identity.
    pub fn point_mass(cell: f64) -> GridMeasure {
        GridMeasure {
            cell,
            half: 0,
            support_radius: 0.0,
            masses: vec![1.0],
            truncation_error: 0.0,
            kernel: None,
        }
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    pub fn grid_half(&self) -> i64 {
        self.half
    }

    /// Mass in cell `(i, j)`, indices in `[-half, half]`.
    pub fn mass_at(&self, i: i64, j: i64) -> f64 {
        if i.abs() > self.half || j.abs() > self.half {
            return 0.0;
        }
        let side = (2 * self.half + 1) as usize;
        self.masses[((j + self.half) as usize) * side + (i + self.half) as usize]
    }

    /// Total grid mass (excludes the recorded truncation tail).
    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub(crate) fn kernel(&self) -> Option<&RadialExp> {
        self.kernel.as_ref()
    }

    /// Discrete convolution of the two mass grids. Support radii add, and
    /// truncation errors combine as `|mu| tb + |nu| ta + ta tb`.
    pub fn compose(&self, other: &GridMeasure) -> Result<GridMeasure, DiffusionError> {
        if (self.cell - other.cell).abs() > 1e-12 * self.cell.max(other.cell) {
            return Err(DiffusionError::IncompatibleCells);
        }
        let half = self.half + other.half;
        let side = (2 * half + 1) as usize;
        let mut masses = vec![0.0; side * side];
        for ja in -self.half..=self.half {
            for ia in -self.half..=self.half {
                let ma = self.mass_at(ia, ja);
                if ma == 0.0 {
                    continue;
                }
                for jb in -other.half..=other.half {
                    for ib in -other.half..=other.half {
                        let mb = other.mass_at(ib, jb);
                        if mb == 0.0 {
                            continue;
                        }
                        let (i, j) = (ia + ib, ja + jb);
                        masses[((j + half) as usize) * side + (i + half) as usize] += ma * mb;
                    }
                }
            }
        }
        let (ta, tb) = (self.truncation_error, other.truncation_error);
        Ok(GridMeasure {
            cell: self.cell,
            half,
            support_radius: self.support_radius + other.support_radius,
            masses,
            truncation_error: self.total_mass() * tb + other.total_mass() * ta + ta * tb,
            kernel: None,
        })
    }
}

/// A diffused mass field `mu * chi_P` sampled over a rectangular region:
/// `values[j][i]` holds the midpoint-rule mass of cell `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    cell: f64,
    origin: Point,
    nx: usize,
    ny: usize,
    values: Vec<f64>,
    error_bound: f64,
}

impl Field {
    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn region(&self) -> Rect {
        Rect::new(
            self.origin.x,
            self.origin.y,
            self.origin.x + self.nx as f64 * self.cell,
            self.origin.y + self.ny as f64 * self.cell,
        )
    }

    pub fn cell_center(&self, i: usize, j: usize) -> Point {
        Point::new(
            self.origin.x + (i as f64 + 0.5) * self.cell,
            self.origin.y + (j as f64 + 0.5) * self.cell,
        )
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Per-cell absolute error bound (quadrature plus measure truncation).
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    fn same_grid(&self, other: &Field) -> bool {
        self.nx == other.nx
            && self.ny == other.ny
            && (self.cell - other.cell).abs() <= 1e-9 * self.cell
            && self.origin.dist(other.origin) <= 1e-9 * self.cell
    }
}

/// Pointwise `(mu * chi_P)(x)` with an absolute error bound.
///
/// With an analytic kernel the integral over every body (and torus image)
/// within reach is evaluated by radial quadrature; parts beyond the support
/// radius are covered by the recorded truncation mass (the characteristic
/// measure of a packing is at most 1 everywhere). Tabulated measures fall
/// back to summing grid atoms, scoring cells that straddle a body boundary
/// into the error bound.
pub fn field_value_at(p: &Packing, mu: &GridMeasure, x: Point) -> (f64, f64) {
    let reach = mu.support_radius + p.body().circumradius();
    let bodies = bodies_near(p, x, reach.max(mu.cell));
    match mu.kernel() {
        Some(kernel) => {
            let mut value = 0.0;
            let mut err = mu.truncation_error;
            for b in &bodies {
                let (v, e) = kernel.integral_over_body(b, x, 1e-12);
                value += v;
                err += e;
            }
            (value, err)
        }
        None => {
            let mut value = 0.0;
            let mut err = 0.0;
            let guard = mu.cell * core::f64::consts::FRAC_1_SQRT_2;
            for j in -mu.half..=mu.half {
                for i in -mu.half..=mu.half {
                    let m = mu.mass_at(i, j);
                    if m == 0.0 {
                        continue;
                    }
                    let probe = x - Point::new(i as f64 * mu.cell, j as f64 * mu.cell);
                    let mut inside = false;
                    let mut near_boundary = false;
                    for b in &bodies {
                        let d = b.signed_dist_to_point(probe);
                        if d <= 0.0 {
                            inside = true;
                        }
                        if d.abs() <= guard {
                            near_boundary = true;
                        }
                    }
                    if inside {
                        value += m;
                    }
                    if near_boundary {
                        err += m;
                    }
                }
            }
            (value, err + mu.truncation_error)
        }
    }
}

/// Pointwise field difference `(mu * chi_after)(x) - (mu * chi_before)(x)`
/// with an absolute error bound. Only differing placements contribute. For
/// measures with an analytic kernel the difference is evaluated against the
/// untruncated kernel, so the bound is pure quadrature error; tabulated
/// measures fall back to two full evaluations.
pub fn field_difference_at(
    before: &Packing,
    after: &Packing,
    mu: &GridMeasure,
    x: Point,
) -> Result<(f64, f64), DiffusionError> {
    if before.body() != after.body() {
        return Err(DiffusionError::BadParameter("packings of different bodies"));
    }
    match mu.kernel() {
        Some(kernel) => {
            let removed = before
                .placements()
                .iter()
                .filter(|pl| !after.placements().contains(pl));
            let inserted = after
                .placements()
                .iter()
                .filter(|pl| !before.placements().contains(pl));
            let mut value = 0.0;
            let mut err = 0.0;
            // reach far enough that skipped torus images are negligible
            // against the recorded quadrature tolerance
            let reach = 40.0 / kernel.lambda + after.body().circumradius();
            for (pl, sign) in inserted
                .map(|p| (p, 1.0))
                .chain(removed.map(|p| (p, -1.0)))
            {
                for img in images_of(after, pl, x, reach) {
                    let (v, e) = kernel.integral_over_body(&img, x, 1e-12);
                    value += sign * v;
                    err += e;
                }
            }
            Ok((value, err))
        }
        None => {
            let (va, ea) = field_value_at(after, mu, x);
            let (vb, eb) = field_value_at(before, mu, x);
            Ok((va - vb, ea + eb))
        }
    }
}

/// Torus images of one placement within `reach` of `x` (just the placement
/// itself over a box window).
fn images_of(p: &Packing, pl: &crate::body::Placement, x: Point, reach: f64) -> Vec<PlacedBody> {
    let placed = p.body().place(&pl.pose);
    match p.window() {
        Window::Box { .. } => alloc::vec![placed],
        Window::Torus { width, height } => {
            let mut out = Vec::new();
            let nx = ((reach + (pl.position().x - x.x).abs()) / width).ceil() as i64;
            let ny = ((reach + (pl.position().y - x.y).abs()) / height).ceil() as i64;
            for i in -nx..=nx {
                for j in -ny..=ny {
                    let shift = Point::new(i as f64 * width, j as f64 * height);
                    if (pl.position() + shift).dist(x) <= reach {
                        out.push(placed.translated(shift));
                    }
                }
            }
            out
        }
    }
}

/// Placed bodies (with torus images) whose copies can reach `x`.
fn bodies_near(p: &Packing, x: Point, reach: f64) -> Vec<PlacedBody> {
    let mut out = Vec::new();
    let circ = p.body().circumradius();
    for pl in p.placements() {
        let placed = p.body().place(&pl.pose);
        match p.window() {
            Window::Box { .. } => {
                if pl.position().dist(x) <= reach + circ {
                    out.push(placed);
                }
            }
            Window::Torus { width, height } => {
                let nx = ((reach + circ + (pl.position().x - x.x).abs()) / width).ceil() as i64;
                let ny = ((reach + circ + (pl.position().y - x.y).abs()) / height).ceil() as i64;
                for i in -nx..=nx {
                    for j in -ny..=ny {
                        let shift = Point::new(i as f64 * width, j as f64 * height);
                        if (pl.position() + shift).dist(x) <= reach + circ {
                            out.push(placed.translated(shift));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Sample `mu * chi_P` over `region` on a grid of the measure's cell size.
/// The region is snapped to a whole number of cells anchored at its
/// lower-left corner.
pub fn convolve_field(
    p: &Packing,
    mu: &GridMeasure,
    region: Rect,
) -> Result<Field, DiffusionError> {
    if !(region.width() > 0.0) || !(region.height() > 0.0) {
        return Err(DiffusionError::BadParameter("empty field region"));
    }
    let nx = (region.width() / mu.cell).round().max(1.0) as usize;
    let ny = (region.height() / mu.cell).round().max(1.0) as usize;
    let origin = Point::new(region.x0, region.y0);
    let mut values = vec![0.0; nx * ny];
    let mut worst = 0.0f64;
    let cell_area = mu.cell * mu.cell;
    for j in 0..ny {
        for i in 0..nx {
            let c = Point::new(
                origin.x + (i as f64 + 0.5) * mu.cell,
                origin.y + (j as f64 + 0.5) * mu.cell,
            );
            let (v, e) = field_value_at(p, mu, c);
            values[j * nx + i] = v * cell_area;
            worst = worst.max(e * cell_area);
        }
    }
    Ok(Field {
        cell: mu.cell,
        origin,
        nx,
        ny,
        values,
        error_bound: worst,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominanceOutcome {
    Dominates,
    DominatedBy,
    Equal,
    Incomparable,
}

/// Pointwise comparison of two fields on the same grid.
#[derive(Clone, Copy, Debug)]
pub struct DominanceVerdict {
    pub outcome: DominanceOutcome,
    /// Minimum of `a - b` over cells (the worst margin for `a`).
    pub worst_margin: f64,
    pub worst_location: Point,
}

/// Compare `a` against `b` with tolerance `tau`, which must exceed the
/// combined error bounds of the two fields.
pub fn dominates(a: &Field, b: &Field, tau: f64) -> Result<DominanceVerdict, DiffusionError> {
    if !a.same_grid(b) {
        return Err(DiffusionError::GridMismatch);
    }
    let needed = a.error_bound + b.error_bound;
    if !(tau > needed) {
        return Err(DiffusionError::TauTooSmall { tau, needed });
    }
    let mut above = false;
    let mut below = false;
    let mut worst = f64::INFINITY;
    let mut where_ = Point::ZERO;
    for j in 0..a.ny {
        for i in 0..a.nx {
            let d = a.value(i, j) - b.value(i, j);
            if d > tau {
                above = true;
            }
            if d < -tau {
                below = true;
            }
            if d < worst {
                worst = d;
                where_ = a.cell_center(i, j);
            }
        }
    }
    let outcome = match (above, below) {
        (false, false) => DominanceOutcome::Equal,
        (true, false) => DominanceOutcome::Dominates,
        (false, true) => DominanceOutcome::DominatedBy,
        (true, true) => DominanceOutcome::Incomparable,
    };
    Ok(DominanceVerdict {
        outcome,
        worst_margin: worst,
        worst_location: where_,
    })
}

/// A replacement margin: increase of the field integral over a region.
#[derive(Clone, Copy, Debug)]
pub struct Margin {
    pub value: f64,
    pub error_bound: f64,
}

/// Increase of `int_region (mu * chi) ` from `before` to `after`. Only the
/// differing placements contribute; identical packings give exactly 0.
pub fn replacement_margin(
    before: &Packing,
    after: &Packing,
    mu: &GridMeasure,
    region: Rect,
) -> Result<Margin, DiffusionError> {
    if before.body() != after.body() {
        return Err(DiffusionError::BadParameter("packings of different bodies"));
    }
    let removed: Vec<&crate::body::Placement> = before
        .placements()
        .iter()
        .filter(|pl| !after.placements().contains(pl))
        .collect();
    let inserted: Vec<&crate::body::Placement> = after
        .placements()
        .iter()
        .filter(|pl| !before.placements().contains(pl))
        .collect();
    let mut value = 0.0;
    let mut err = 0.0;
    for (pl, sign) in inserted
        .iter()
        .map(|p| (*p, 1.0))
        .chain(removed.iter().map(|p| (*p, -1.0)))
    {
        let (v, e) = body_region_integral(after, pl, mu, region)?;
        value += sign * v;
        err += e;
    }
    Ok(Margin {
        value,
        error_bound: err,
    })
}

/// `int_region (mu * chi_D)` for the single placement `pl` (with images).
fn body_region_integral(
    p: &Packing,
    pl: &crate::body::Placement,
    mu: &GridMeasure,
    region: Rect,
) -> Result<(f64, f64), DiffusionError> {
    let placed = p.body().place(&pl.pose);
    let circ = p.body().circumradius();
    let reach = mu.support_radius + circ;
    // torus images whose copy can touch the region
    let mut images = Vec::new();
    match p.window() {
        Window::Box { .. } => images.push(placed.clone()),
        Window::Torus { width, height } => {
            let nx = ((reach + 0.5 * region.width()) / width).ceil() as i64 + 1;
            let ny = ((reach + 0.5 * region.height()) / height).ceil() as i64 + 1;
            for i in -nx..=nx {
                for j in -ny..=ny {
                    let shift = Point::new(i as f64 * width, j as f64 * height);
                    let pos = pl.position() + shift;
                    if region.dist_to_point(pos) <= reach {
                        images.push(placed.translated(shift));
                    }
                }
            }
        }
    }
    let mut total = 0.0;
    let mut err = 0.0;
    match mu.kernel() {
        Some(kernel) => {
            // the analytic kernel is integrated without truncation, so only
            // quadrature error accumulates
            for img in &images {
                let inner_err = core::cell::Cell::new(0.0f64);
                let f = |x: f64| {
                    let g = |y: f64| kernel.integral_over_body(img, Point::new(x, y), 1e-12).0;
                    let (v, e) = adaptive_simpson(&g, region.y0, region.y1, 1e-10);
                    inner_err.set(inner_err.get().max(e));
                    v
                };
                let (v, e_outer) = adaptive_simpson(&f, region.x0, region.x1, 1e-9);
                total += v;
                err += e_outer + inner_err.get() * region.width() + 1e-12 * region.area();
            }
        }
        None => {
            // atoms: exact area of body against the shifted region per cell
            let corners = region.corners();
            for img in &images {
                for j in -mu.half..=mu.half {
                    for i in -mu.half..=mu.half {
                        let m = mu.mass_at(i, j);
                        if m == 0.0 {
                            continue;
                        }
                        let z = Point::new(i as f64 * mu.cell, j as f64 * mu.cell);
                        let shifted: Vec<Point> = corners.iter().map(|c| *c - z).collect();
                        let a = match img {
                            PlacedBody::Disc { center, radius } => {
                                convex::circle_poly_area(*center, *radius, &shifted)
                            }
                            PlacedBody::Polygon { vertices } => {
                                convex::poly_poly_intersection_area(vertices, &shifted)
                            }
                        };
                        total += m * a;
                    }
                }
                // mass sits at cell centers; moving it within its cell sways
                // the overlap area by at most a perimeter strip
                let perim = match img {
                    PlacedBody::Disc { radius, .. } => 2.0 * core::f64::consts::PI * radius,
                    PlacedBody::Polygon { vertices } => {
                        let n = vertices.len();
                        (0..n)
                            .map(|k| vertices[k].dist(vertices[(k + 1) % n]))
                            .sum()
                    }
                };
                err += mu.total_mass() * perim * mu.cell * core::f64::consts::FRAC_1_SQRT_2;
            }
        }
    }
    Ok((total, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{Body, Placement};

    #[test]
    fn lemma_mu_density_values() {
        // density at 0 is 1; n = 2 at |x| = 3 gives 2/3; n = 1 at |x| = 2
        // gives 1/4
        let k2 = RadialExp {
            lambda: lemma_lambda(2),
        };
        assert!((k2.density(0.0) - 1.0).abs() < 1e-15);
        assert!((k2.density(3.0) - 2.0 / 3.0).abs() < 1e-15);
        let k1 = RadialExp {
            lambda: lemma_lambda(1),
        };
        assert!((k1.density(2.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn lemma_mu_rejects_small_cutoff() {
        assert!(matches!(
            lemma_mu(2, 0.1, 2.0),
            Err(DiffusionError::CutoffTooSmall { .. })
        ));
        assert!(lemma_mu(2, 0.1, 3.0).is_ok());
    }

    #[test]
    fn point_mass_is_compose_identity() {
        let mu = lemma_mu(1, 0.25, 3.0).unwrap();
        let delta = GridMeasure::point_mass(0.25);
        let composed = mu.compose(&delta).unwrap();
        assert_eq!(composed.grid_half(), mu.grid_half());
        for j in -mu.half..=mu.half {
            for i in -mu.half..=mu.half {
                assert_eq!(composed.mass_at(i, j), mu.mass_at(i, j));
            }
        }
        // mass multiplicativity
        let nu = lemma_mu(2, 0.25, 3.0).unwrap();
        let prod = mu.compose(&nu).unwrap();
        assert!(
            (prod.total_mass() - mu.total_mass() * nu.total_mass()).abs()
                < 1e-9 * prod.total_mass()
        );
    }

    #[test]
    fn compose_of_radial_measures_is_symmetric() {
        let mu = lemma_mu(1, 0.5, 3.0).unwrap();
        let sq = mu.compose(&mu).unwrap();
        // summation order differs between mirrored cells, so allow rounding
        let tol = 1e-13 * sq.total_mass();
        for j in -sq.half..=sq.half {
            for i in -sq.half..=sq.half {
                assert!((sq.mass_at(i, j) - sq.mass_at(-i, -j)).abs() <= tol);
                assert!((sq.mass_at(i, j) - sq.mass_at(-i, j)).abs() <= tol);
            }
        }
    }

    #[test]
    fn empty_packing_has_zero_field() {
        let p = Packing::empty(Body::disc(0.5).unwrap(), Window::rect_box(8.0, 8.0)).unwrap();
        let mu = lemma_mu(1, 0.5, 2.0).unwrap();
        let field = convolve_field(&p, &mu, Rect::new(-2.0, -2.0, 2.0, 2.0)).unwrap();
        assert!(field.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn field_decays_away_from_a_single_disc() {
        let body = Body::disc(0.5).unwrap();
        let p = Packing::new(
            body,
            Window::rect_box(40.0, 40.0),
            alloc::vec![Placement::at(0.0, 0.0)],
        )
        .unwrap();
        let mu = lemma_mu(1, 0.5, default_cutoff(1)).unwrap();
        let (at_origin, e0) = field_value_at(&p, &mu, Point::ZERO);
        let (far, e1) = field_value_at(&p, &mu, Point::new(10.0, 0.0));
        assert!(at_origin > far + 10.0 * (e0 + e1));
        // radial monotonicity on a few samples
        let mut last = at_origin;
        for k in 1..6 {
            let (v, _) = field_value_at(&p, &mu, Point::new(k as f64, 0.0));
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn margin_of_identical_packings_is_zero() {
        let body = Body::disc(0.5).unwrap();
        let p = Packing::new(
            body,
            Window::rect_box(10.0, 10.0),
            alloc::vec![Placement::at(0.0, 0.0), Placement::at(2.0, 0.0)],
        )
        .unwrap();
        let mu = lemma_mu(1, 0.5, 2.0).unwrap();
        let m = replacement_margin(&p, &p, &mu, Rect::new(-2.0, -2.0, 2.0, 2.0)).unwrap();
        assert_eq!(m.value, 0.0);
    }
}
