//! Plane isometries: rotation + optional reflection + translation.

#[allow(unused_imports)]
use num_traits::Float;

use crate::vec2::Point;

/// A plane isometry `x -> R(angle) * M * x + translation`, where `M` is the
/// reflection `(x, y) -> (x, -y)` when `reflected` is set and the identity
/// otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    /// Rotation angle in radians, counterclockwise.
    pub angle: f64,
    pub translation: Point,
    pub reflected: bool,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        angle: 0.0,
        translation: Point::ZERO,
        reflected: false,
    };

    #[inline]
    pub fn translation(t: Point) -> Isometry {
        Isometry {
            angle: 0.0,
            translation: t,
            reflected: false,
        }
    }

    #[inline]
    pub fn rotation(angle: f64) -> Isometry {
        Isometry {
            angle,
            translation: Point::ZERO,
            reflected: false,
        }
    }

    #[inline]
    pub fn new(angle: f64, translation: Point, reflected: bool) -> Isometry {
        Isometry {
            angle,
            translation,
            reflected,
        }
    }

    /// Linear part only (rotation and reflection, no translation).
    #[inline]
    pub fn apply_linear(&self, p: Point) -> Point {
        let m = if self.reflected {
            Point::new(p.x, -p.y)
        } else {
            p
        };
        m.rotated(self.angle)
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.apply_linear(p) + self.translation
    }

    /// Composition `self . other` (first `other`, then `self`).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let angle = self.angle
            + if self.reflected {
                -other.angle
            } else {
                other.angle
            };
        Isometry {
            angle,
            translation: self.apply(other.translation),
            reflected: self.reflected != other.reflected,
        }
    }

    pub fn inverse(&self) -> Isometry {
        // With M R_a = R_{-a} M: the inverse of x -> R_a M x + t is
        // x -> R_a' M x - (R_a' M) t, where a' = a for reflections and -a
        // otherwise.
        let angle = if self.reflected { self.angle } else { -self.angle };
        let inv_linear = Isometry {
            angle,
            translation: Point::ZERO,
            reflected: self.reflected,
        };
        Isometry {
            angle,
            translation: -inv_linear.apply_linear(self.translation),
            reflected: self.reflected,
        }
    }

    /// Shift the translation part by `t`.
    #[inline]
    pub fn translated(&self, t: Point) -> Isometry {
        Isometry {
            translation: self.translation + t,
            ..*self
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflected && self.angle == 0.0 && self.translation == Point::ZERO
    }
}

impl Default for Isometry {
    fn default() -> Self {
        Isometry::IDENTITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point, b: Point) -> bool {
        a.dist(b) < 1e-12
    }

    #[test]
    fn compose_matches_sequential_application() {
        let g = Isometry::new(0.7, Point::new(1.0, -2.0), true);
        let h = Isometry::new(-1.3, Point::new(0.5, 3.0), false);
        let p = Point::new(0.3, -1.7);
        assert!(close(g.compose(&h).apply(p), g.apply(h.apply(p))));
        assert!(close(h.compose(&g).apply(p), h.apply(g.apply(p))));
    }

    #[test]
    fn inverse_round_trips() {
        for &(angle, refl) in &[(0.0, false), (1.1, false), (2.3, true), (-0.4, true)] {
            let g = Isometry::new(angle, Point::new(-0.8, 2.2), refl);
            let p = Point::new(1.4, 0.9);
            assert!(close(g.inverse().apply(g.apply(p)), p));
            assert!(close(g.apply(g.inverse().apply(p)), p));
        }
    }

    #[test]
    fn identity_is_neutral() {
        let g = Isometry::new(0.9, Point::new(2.0, 1.0), true);
        let p = Point::new(-0.2, 0.6);
        assert!(close(Isometry::IDENTITY.compose(&g).apply(p), g.apply(p)));
        assert!(close(g.compose(&Isometry::IDENTITY).apply(p), g.apply(p)));
    }
}
