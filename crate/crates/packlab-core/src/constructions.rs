//! Deterministic generators for the packings used as fixtures: hexagonal and
//! square lattices, the hexagonal packing with a six-site vacancy ring
//! around the center, seeded sparse random packings, and strings of unit
//! squares marching away from the origin.

use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;
use rand_core::{RngCore, SeedableRng};

use crate::body::{Body, Placement};
use crate::packing::{Packing, PackingError, Window};
use crate::vec2::Point;

#[derive(Clone, Debug, PartialEq)]
pub enum ConstructError {
    /// Window dimensions must be whole multiples of the family's lattice.
    IncommensurateWindow { axis: &'static str },
    /// The window is too small to hold the requested pattern.
    WindowTooSmall,
    /// Rejection sampling gave up.
    SamplingFailed { placed: usize, requested: usize },
    Invalid(PackingError),
    BadParameter(&'static str),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::IncommensurateWindow { axis } => {
                write!(f, "window {axis} is not commensurate with the lattice")
            }
            ConstructError::WindowTooSmall => write!(f, "window too small for the pattern"),
            ConstructError::SamplingFailed { placed, requested } => {
                write!(f, "placed only {placed} of {requested} random bodies")
            }
            ConstructError::Invalid(e) => write!(f, "generated packing invalid: {e}"),
            ConstructError::BadParameter(what) => write!(f, "bad parameter: {what}"),
        }
    }
}

impl core::error::Error for ConstructError {}

/// Body choice for the square-lattice family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeBody {
    Disc,
    Square,
}

/// The generator families.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Triangular lattice of tangent discs (row spacing `sqrt(3) r`).
    Hexagonal,
    /// Square lattice at the given pitch, of discs or axis-aligned squares.
    SquareLattice { pitch: f64, body: LatticeBody },
    /// Hexagonal lattice with the six sites nearest the center removed (the
    /// center itself stays).
    Figure1Defect,
    /// Seeded rejection-sampled non-overlapping placements.
    SparseRandom { seed: u64, count: usize },
}

/// A family plus its scale (disc radius, or square side) and window.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    /// Disc radius for disc families; side length for squares.
    pub scale: f64,
    pub window: Window,
}

fn commensurate(extent: f64, step: f64, axis: &'static str) -> Result<usize, ConstructError> {
    let ratio = extent / step;
    let rounded = ratio.round();
    if rounded < 1.0 || (ratio - rounded).abs() > 1e-9 * ratio.max(1.0) {
        return Err(ConstructError::IncommensurateWindow { axis });
    }
    Ok(rounded as usize)
}

/// Triangular lattice sites for a torus that is `cols` columns wide and
/// `2 rows` staggered rows tall, with a site at the origin.
fn hexagonal_sites(r: f64, cols: usize, rows2: usize) -> Vec<Point> {
    let mut sites = Vec::with_capacity(cols * rows2);
    for j in 0..rows2 {
        let offset = if j % 2 == 1 { r } else { 0.0 };
        for i in 0..cols {
            sites.push(Point::new(2.0 * r * i as f64 + offset, 3f64.sqrt() * r * j as f64));
        }
    }
    sites
}

/// The six lattice sites nearest the origin site.
fn vacancy_ring(r: f64) -> [Point; 6] {
    let s = 3f64.sqrt() * r;
    [
        Point::new(2.0 * r, 0.0),
        Point::new(-2.0 * r, 0.0),
        Point::new(r, s),
        Point::new(-r, s),
        Point::new(r, -s),
        Point::new(-r, -s),
    ]
}

pub fn generate(spec: &FamilySpec) -> Result<Packing, ConstructError> {
    if !(spec.scale > 0.0) {
        return Err(ConstructError::BadParameter("scale must be positive"));
    }
    let (w, h) = (spec.window.width(), spec.window.height());
    match &spec.family {
        Family::Hexagonal => {
            let r = spec.scale;
            let cols = commensurate(w, 2.0 * r, "width")?;
            let rows = commensurate(h, 2.0 * 3f64.sqrt() * r, "height")?;
            if !spec.window.is_torus() {
                return Err(ConstructError::BadParameter(
                    "hexagonal family needs a torus window",
                ));
            }
            let placements: Vec<Placement> = hexagonal_sites(r, cols, 2 * rows)
                .into_iter()
                .map(|s| Placement::at(s.x, s.y))
                .collect();
            Packing::new(Body::disc(r).unwrap(), spec.window, placements)
                .map_err(ConstructError::Invalid)
        }
        Family::Figure1Defect => {
            let r = spec.scale;
            let cols = commensurate(w, 2.0 * r, "width")?;
            let rows = commensurate(h, 2.0 * 3f64.sqrt() * r, "height")?;
            if cols < 4 || rows < 2 {
                return Err(ConstructError::WindowTooSmall);
            }
            if !spec.window.is_torus() {
                return Err(ConstructError::BadParameter(
                    "figure1_defect family needs a torus window",
                ));
            }
            let vacancies = vacancy_ring(r);
            let placements: Vec<Placement> = hexagonal_sites(r, cols, 2 * rows)
                .into_iter()
                .filter(|s| {
                    // compare in wrapped coordinates: sites are canonical up
                    // to one period
                    !vacancies.iter().any(|v| {
                        let dx = crate::vec2::wrap_coord(s.x - v.x, w);
                        let dy = crate::vec2::wrap_coord(s.y - v.y, h);
                        dx.hypot(dy) < 1e-9 * r
                    })
                })
                .map(|s| Placement::at(s.x, s.y))
                .collect();
            Packing::new(Body::disc(r).unwrap(), spec.window, placements)
                .map_err(ConstructError::Invalid)
        }
        Family::SquareLattice { pitch, body } => {
            let cols = commensurate(w, *pitch, "width")?;
            let rows = commensurate(h, *pitch, "height")?;
            let body = match body {
                LatticeBody::Disc => Body::disc(spec.scale).unwrap(),
                LatticeBody::Square => {
                    Body::centered_square(spec.scale).map_err(|_| {
                        ConstructError::BadParameter("square side must be positive")
                    })?
                }
            };
            let mut placements = Vec::with_capacity(cols * rows);
            for j in 0..rows {
                for i in 0..cols {
                    placements.push(Placement::at(i as f64 * pitch, j as f64 * pitch));
                }
            }
            Packing::new(body, spec.window, placements).map_err(ConstructError::Invalid)
        }
        Family::SparseRandom { seed, count } => {
            let body = Body::disc(spec.scale).unwrap();
            let mut packing =
                Packing::empty(body, spec.window).map_err(ConstructError::Invalid)?;
            // uniform coordinates from 53 random bits, so runs reproduce
            // exactly across platforms
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut uniform = move |lo: f64, hi: f64| {
                let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                lo + u * (hi - lo)
            };
            let margin = if spec.window.is_torus() {
                0.0
            } else {
                spec.scale
            };
            let mut attempts = 0usize;
            while packing.len() < *count {
                attempts += 1;
                if attempts > 1000 * (*count).max(1) {
                    return Err(ConstructError::SamplingFailed {
                        placed: packing.len(),
                        requested: *count,
                    });
                }
                let cand = Placement::at(
                    uniform(-0.5 * w + margin, 0.5 * w - margin),
                    uniform(-0.5 * h + margin, 0.5 * h - margin),
                );
                if let Ok(next) = packing.with_inserted(cand) {
                    packing = next;
                }
            }
            Ok(packing)
        }
    }
}

/// A string of `k` unit squares with centers `(k, 0), (k + 1, 0), ...,
/// (2k - 1, 0)`, in a box just wide enough to also hold the string for
/// `k + 1` (so replacement moves stay inside the window).
pub fn string_of_squares(k: usize) -> Packing {
    assert!(k >= 1, "string length must be at least 1");
    let body = Body::centered_square(1.0).unwrap();
    let window = Window::rect_box(4.0 * k as f64 + 4.0, 2.0);
    let placements: Vec<Placement> = (k..=(2 * k - 1))
        .map(|i| Placement::at(i as f64, 0.0))
        .collect();
    Packing::new(body, window, placements).expect("string of squares is a packing")
}

/// The unique replace-1-by-2 move taking the `k`-string to the
/// `(k + 1)`-string: remove the square at `(k, 0)`, insert squares at
/// `(2k, 0)` and `(2k + 1, 0)`. The connectivity flag records whether the
/// union of the three squares is connected (it is only for `k = 1`).
pub fn string_step_move(k: usize) -> crate::saturation::ReplacementMove {
    assert!(k >= 1);
    let removed = alloc::vec![Placement::at(k as f64, 0.0)];
    let inserted = alloc::vec![
        Placement::at(2.0 * k as f64, 0.0),
        Placement::at(2.0 * k as f64 + 1.0, 0.0),
    ];
    let body = Body::centered_square(1.0).unwrap();
    let mut union = removed.clone();
    union.extend_from_slice(&inserted);
    let connected = crate::geometry::connected_union(&body, &union);
    crate::saturation::ReplacementMove {
        removed,
        inserted,
        connected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn hex_window(r: f64, cols: usize, rows: usize) -> Window {
        Window::torus(
            2.0 * r * cols as f64,
            2.0 * 3f64.sqrt() * r * rows as f64,
        )
    }

    #[test]
    fn minimal_hexagonal_torus() {
        let spec = FamilySpec {
            family: Family::Hexagonal,
            scale: 1.0,
            window: hex_window(1.0, 1, 1),
        };
        let p = generate(&spec).unwrap();
        assert_eq!(p.len(), 2);
        assert!((p.density().unwrap() - PI / 12f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn defect_removes_exactly_six() {
        let hex = generate(&FamilySpec {
            family: Family::Hexagonal,
            scale: 1.0,
            window: hex_window(1.0, 12, 4),
        })
        .unwrap();
        let defect = generate(&FamilySpec {
            family: Family::Figure1Defect,
            scale: 1.0,
            window: hex_window(1.0, 12, 4),
        })
        .unwrap();
        assert_eq!(hex.len(), 96);
        assert_eq!(defect.len(), hex.len() - 6);
        // the center site survives
        assert!(defect
            .placements()
            .iter()
            .any(|pl| pl.position().norm() < 1e-9));
    }

    #[test]
    fn incommensurate_windows_are_rejected() {
        let bad = FamilySpec {
            family: Family::Hexagonal,
            scale: 1.0,
            window: Window::torus(5.0, 2.0 * 3f64.sqrt()),
        };
        assert!(matches!(
            generate(&bad),
            Err(ConstructError::IncommensurateWindow { .. })
        ));
    }

    #[test]
    fn square_tiling_has_density_one() {
        let spec = FamilySpec {
            family: Family::SquareLattice {
                pitch: 1.0,
                body: LatticeBody::Square,
            },
            scale: 1.0,
            window: Window::torus(4.0, 4.0),
        };
        let p = generate(&spec).unwrap();
        assert_eq!(p.len(), 16);
        assert!((p.density().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sparse_random_is_reproducible_and_valid() {
        let spec = FamilySpec {
            family: Family::SparseRandom { seed: 7, count: 12 },
            scale: 0.5,
            window: Window::rect_box(12.0, 12.0),
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a.placements(), b.placements());
        assert_eq!(a.len(), 12);
        a.validate().unwrap();
        // empty request gives the empty packing
        let empty = generate(&FamilySpec {
            family: Family::SparseRandom { seed: 7, count: 0 },
            scale: 0.5,
            window: Window::rect_box(12.0, 12.0),
        })
        .unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn string_of_squares_layout() {
        let p2 = string_of_squares(2);
        let xs: Vec<f64> = p2.placements().iter().map(|pl| pl.position().x).collect();
        assert_eq!(xs, alloc::vec![2.0, 3.0]);
        let p5 = string_of_squares(5);
        assert_eq!(p5.len(), 5);
        assert_eq!(p5.placements().last().unwrap().position().x, 9.0);
        let p1 = string_of_squares(1);
        assert_eq!(p1.placements()[0].position().x, 1.0);
    }
}
