//! Bodies (discs and convex polygons) and their placements.

use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::convex;
use crate::isometry::Isometry;
use crate::vec2::Point;

/// Validation failures for [`Body`] constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BodyError {
    NonPositiveRadius,
    TooFewVertices,
    NotStrictlyConvex,
    NotCounterclockwise,
    OriginOutside,
}

impl fmt::Display for BodyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyError::NonPositiveRadius => write!(f, "disc radius must be positive"),
            BodyError::TooFewVertices => write!(f, "polygon needs at least 3 vertices"),
            BodyError::NotStrictlyConvex => write!(f, "polygon must be strictly convex"),
            BodyError::NotCounterclockwise => write!(f, "polygon must wind counterclockwise"),
            BodyError::OriginOutside => write!(f, "polygon must contain the origin"),
        }
    }
}

impl core::error::Error for BodyError {}

#[derive(Clone, Debug, PartialEq)]
enum Shape {
    Disc { radius: f64 },
    Polygon { vertices: Vec<Point> },
}

/// The object being packed: a disc or a strictly convex polygon, with its
/// reference point at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct Body {
    shape: Shape,
}

impl Body {
    pub fn disc(radius: f64) -> Result<Body, BodyError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(BodyError::NonPositiveRadius);
        }
        Ok(Body {
            shape: Shape::Disc { radius },
        })
    }

    pub fn unit_disc() -> Body {
        Body::disc(1.0).unwrap()
    }

    /// A strictly convex polygon given by counterclockwise vertices. The
    /// origin must lie in the closed polygon; bodies with the origin on the
    /// boundary are accepted so that off-center reference points (for example
    /// a square anchored at a vertex) can be studied.
    pub fn convex_polygon(vertices: Vec<Point>) -> Result<Body, BodyError> {
        if vertices.len() < 3 {
            return Err(BodyError::TooFewVertices);
        }
        let n = vertices.len();
        let mut area2 = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let cross = (b - a).cross(c - b);
            if cross.abs() <= 1e-12 * (b - a).norm() * (c - b).norm() {
                return Err(BodyError::NotStrictlyConvex);
            }
            if cross < 0.0 {
                // one clockwise turn: either the winding or convexity is off
                let total: f64 = (0..n)
                    .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
                    .sum();
                return Err(if total < 0.0 {
                    BodyError::NotCounterclockwise
                } else {
                    BodyError::NotStrictlyConvex
                });
            }
            area2 += a.cross(b);
        }
        if area2 <= 0.0 {
            return Err(BodyError::NotCounterclockwise);
        }
        if !convex::poly_contains(&vertices, Point::ZERO, 1e-12) {
            return Err(BodyError::OriginOutside);
        }
        Ok(Body {
            shape: Shape::Polygon { vertices },
        })
    }

    /// Axis-aligned square of the given side length, centered at the origin.
    pub fn centered_square(side: f64) -> Result<Body, BodyError> {
        if !(side > 0.0) {
            return Err(BodyError::TooFewVertices);
        }
        let h = 0.5 * side;
        Body::convex_polygon(alloc::vec![
            Point::new(-h, -h),
            Point::new(h, -h),
            Point::new(h, h),
            Point::new(-h, h),
        ])
    }

    pub fn as_disc(&self) -> Option<f64> {
        match &self.shape {
            Shape::Disc { radius } => Some(*radius),
            Shape::Polygon { .. } => None,
        }
    }

    pub fn vertices(&self) -> Option<&[Point]> {
        match &self.shape {
            Shape::Disc { .. } => None,
            Shape::Polygon { vertices } => Some(vertices),
        }
    }

    pub fn area(&self) -> f64 {
        match &self.shape {
            Shape::Disc { radius } => core::f64::consts::PI * radius * radius,
            Shape::Polygon { vertices } => convex::poly_area(vertices),
        }
    }

    /// Diameter of the body (largest point-to-point distance).
    pub fn diameter(&self) -> f64 {
        match &self.shape {
            Shape::Disc { radius } => 2.0 * radius,
            Shape::Polygon { vertices } => {
                let mut best: f64 = 0.0;
                for (i, a) in vertices.iter().enumerate() {
                    for b in vertices.iter().skip(i + 1) {
                        best = best.max(a.dist(*b));
                    }
                }
                best
            }
        }
    }

    /// Largest distance from the origin to a point of the body. Every placed
    /// copy lies inside the disc of this radius around its position.
    pub fn circumradius(&self) -> f64 {
        match &self.shape {
            Shape::Disc { radius } => *radius,
            Shape::Polygon { vertices } => vertices
                .iter()
                .map(|v| v.norm())
                .fold(0.0f64, |a, b| a.max(b)),
        }
    }

    pub fn centroid(&self) -> Point {
        match &self.shape {
            Shape::Disc { .. } => Point::ZERO,
            Shape::Polygon { vertices } => convex::poly_centroid(vertices),
        }
    }

    /// Uniformly scale the body about the origin.
    pub fn scaled(&self, factor: f64) -> Body {
        assert!(factor > 0.0, "scale factor must be positive");
        match &self.shape {
            Shape::Disc { radius } => Body {
                shape: Shape::Disc {
                    radius: radius * factor,
                },
            },
            Shape::Polygon { vertices } => Body {
                shape: Shape::Polygon {
                    vertices: vertices.iter().map(|v| *v * factor).collect(),
                },
            },
        }
    }

    /// Place the body under an isometry, producing concrete plane geometry.
    pub fn place(&self, pose: &Isometry) -> PlacedBody {
        match &self.shape {
            Shape::Disc { radius } => PlacedBody::Disc {
                center: pose.translation,
                radius: *radius,
            },
            Shape::Polygon { vertices } => {
                let mut pts: Vec<Point> = vertices.iter().map(|v| pose.apply(*v)).collect();
                if pose.reflected {
                    pts.reverse();
                }
                PlacedBody::Polygon { vertices: pts }
            }
        }
    }
}

/// A body placed in the plane. Polygon vertices are always counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub enum PlacedBody {
    Disc { center: Point, radius: f64 },
    Polygon { vertices: Vec<Point> },
}

impl PlacedBody {
    pub fn translated(&self, d: Point) -> PlacedBody {
        match self {
            PlacedBody::Disc { center, radius } => PlacedBody::Disc {
                center: *center + d,
                radius: *radius,
            },
            PlacedBody::Polygon { vertices } => PlacedBody::Polygon {
                vertices: vertices.iter().map(|v| *v + d).collect(),
            },
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            PlacedBody::Disc { radius, .. } => core::f64::consts::PI * radius * radius,
            PlacedBody::Polygon { vertices } => convex::poly_area(vertices),
        }
    }

    /// Distance from `p` to the body, 0 if `p` lies inside.
    pub fn dist_to_point(&self, p: Point) -> f64 {
        match self {
            PlacedBody::Disc { center, radius } => (p.dist(*center) - radius).max(0.0),
            PlacedBody::Polygon { vertices } => convex::point_poly_dist(vertices, p).max(0.0),
        }
    }

    /// Signed distance from `p` to the boundary (negative inside).
    pub fn signed_dist_to_point(&self, p: Point) -> f64 {
        match self {
            PlacedBody::Disc { center, radius } => p.dist(*center) - radius,
            PlacedBody::Polygon { vertices } => convex::point_poly_dist(vertices, p),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.signed_dist_to_point(p) <= 0.0
    }
}

/// One element of a packing: an isometry applied to the packing's body.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Placement {
    pub pose: Isometry,
}

impl Placement {
    #[inline]
    pub fn new(pose: Isometry) -> Placement {
        Placement { pose }
    }

    /// Pure translation placement.
    #[inline]
    pub fn at(x: f64, y: f64) -> Placement {
        Placement {
            pose: Isometry::translation(Point::new(x, y)),
        }
    }

    /// Position of the body's reference point.
    #[inline]
    pub fn position(&self) -> Point {
        self.pose.translation
    }
}
