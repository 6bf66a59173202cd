//! Adaptive quadrature and radial integrals of exponential kernels.
//!
//! The diffusion kernels in use are radial exponentials `f(x) = exp(-l |x|)`.
//! Their radial mass primitive `F(R) = int_0^R f(p) p dp` is closed-form, so
//! integrating `f(x - y) dy` over a disc or convex polygon reduces to a 1D
//! angular integral of `F` along the boundary rays, handled by adaptive
//! Simpson quadrature with an error estimate.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::body::PlacedBody;
use crate::vec2::Point;

/// Adaptive Simpson integration of `f` over `[a, b]` with an absolute
/// tolerance. Returns the value and an error estimate.
pub(crate) fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        err: &mut f64,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            *err += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, err)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, err)
    }
    if a == b {
        return (0.0, 0.0);
    }
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, a, b);
    let mut err = 0.0;
    let value = rec(f, a, b, fa, fm, fb, whole, tol, 24, &mut err);
    (value, err)
}

/// The kernel `f(x) = exp(-lambda |x|)` with `lambda > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct RadialExp {
    pub lambda: f64,
}

impl RadialExp {
    pub fn density(&self, dist: f64) -> f64 {
        (-self.lambda * dist).exp()
    }

    /// `F(R) = int_0^R exp(-l p) p dp`.
    pub fn radial_primitive(&self, radius: f64) -> f64 {
        let l = self.lambda;
        let r = radius.max(0.0);
        (1.0 - (1.0 + l * r) * (-l * r).exp()) / (l * l)
    }

    /// Mass of the plane outside `B(0, radius)`.
    pub fn tail_mass(&self, radius: f64) -> f64 {
        let l = self.lambda;
        2.0 * PI * (-l * radius).exp() * (radius / l + 1.0 / (l * l))
    }

    #[cfg(test)]
    pub fn total_mass(&self) -> f64 {
        2.0 * PI / (self.lambda * self.lambda)
    }

    /// `int_body f(x - y) dy` for a placed body, with an error estimate.
    pub fn integral_over_body(&self, body: &PlacedBody, x: Point, tol: f64) -> (f64, f64) {
        match body {
            PlacedBody::Disc { center, radius } => self.integral_over_disc(*center - x, *radius, tol),
            PlacedBody::Polygon { vertices } => {
                let rel: Vec<Point> = vertices.iter().map(|v| *v - x).collect();
                self.integral_over_polygon(&rel, tol)
            }
        }
    }

    /// Disc at offset `d` from the evaluation point, radius `a`.
    fn integral_over_disc(&self, d: Point, a: f64, tol: f64) -> (f64, f64) {
        let dist = d.norm();
        if dist < 1e-14 {
            return (2.0 * PI * self.radial_primitive(a), 0.0);
        }
        if dist < a {
            // evaluation point inside the disc: one boundary crossing per ray
            let f = |phi: f64| {
                let s = (a * a - dist * dist * phi.sin().powi(2)).max(0.0).sqrt();
                self.radial_primitive(dist * phi.cos() + s)
            };
            let (v, e) = adaptive_simpson(&f, 0.0, PI, 0.5 * tol);
            (2.0 * v, 2.0 * e)
        } else {
            // outside: rays between the tangent angles cross twice
            let beta = (a / dist).clamp(-1.0, 1.0).asin();
            let f = |phi: f64| {
                let s = (a * a - dist * dist * phi.sin().powi(2)).max(0.0).sqrt();
                let near = dist * phi.cos() - s;
                let far = dist * phi.cos() + s;
                self.radial_primitive(far) - self.radial_primitive(near)
            };
            let (v, e) = adaptive_simpson(&f, 0.0, beta, 0.5 * tol);
            (2.0 * v, 2.0 * e)
        }
    }

    /// Convex polygon with vertices relative to the evaluation point.
    /// Signed fan decomposition about the origin: each edge contributes the
    /// angular integral of `F` along the ray-to-edge distance.
    fn integral_over_polygon(&self, rel: &[Point], tol: f64) -> (f64, f64) {
        let n = rel.len();
        let mut total = 0.0;
        let mut err = 0.0;
        for i in 0..n {
            let p = rel[i];
            let q = rel[(i + 1) % n];
            let cr = p.cross(q);
            let theta_p = p.angle();
            let mut delta = q.angle() - theta_p;
            while delta > PI {
                delta -= 2.0 * PI;
            }
            while delta < -PI {
                delta += 2.0 * PI;
            }
            if delta.abs() < 1e-15 || cr.abs() < 1e-300 {
                continue;
            }
            let e = q - p;
            let f = |t: f64| {
                let u = Point::from_angle(theta_p + t * delta);
                let denom = u.cross(e);
                if denom.abs() < 1e-300 {
                    return 0.0;
                }
                self.radial_primitive((cr / denom).abs())
            };
            let (v, ev) = adaptive_simpson(&f, 0.0, 1.0, tol / n as f64);
            total += delta * v;
            err += delta.abs() * ev;
        }
        (total, err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn simpson_integrates_polynomials_exactly() {
        let (v, e) = adaptive_simpson(&|x: f64| 3.0 * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-12, "value {v}, err {e}");
        let (v, _) = adaptive_simpson(&|x: f64| x.sin(), 0.0, PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn radial_primitive_matches_quadrature() {
        let k = RadialExp { lambda: 0.7 };
        let (num, _) = adaptive_simpson(&|p: f64| k.density(p) * p, 0.0, 3.0, 1e-12);
        assert!((k.radial_primitive(3.0) - num).abs() < 1e-10);
        // total mass = lim F(R) * 2 pi
        assert!((k.total_mass() - 2.0 * PI * k.radial_primitive(1e6)).abs() < 1e-9);
        assert!((k.tail_mass(0.0) - k.total_mass()).abs() < 1e-12);
    }

    #[test]
    fn disc_integral_agrees_with_riemann_sum() {
        let k = RadialExp { lambda: 0.9 };
        for (d, a) in [(Point::new(2.0, 1.0), 0.8), (Point::new(0.2, -0.1), 1.1)] {
            let (v, e) = k.integral_over_disc(d, a, 1e-10);
            // midpoint Riemann oracle over the disc bounding box
            let n = 600;
            let h = 2.0 * a / n as f64;
            let mut sum = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let p = Point::new(
                        d.x - a + (i as f64 + 0.5) * h,
                        d.y - a + (j as f64 + 0.5) * h,
                    );
                    if p.dist(d) <= a {
                        sum += k.density(p.norm()) * h * h;
                    }
                }
            }
            assert!(
                (v - sum).abs() < 5e-3,
                "disc at {d:?}: exact {v} (err {e}) vs oracle {sum}"
            );
        }
    }

    #[test]
    fn polygon_integral_agrees_with_riemann_sum() {
        let k = RadialExp { lambda: 1.3 };
        // an off-center quadrilateral; evaluation point at the origin
        let poly = vec![
            Point::new(0.5, -0.3),
            Point::new(2.0, 0.2),
            Point::new(1.6, 1.4),
            Point::new(0.2, 1.0),
        ];
        let (v, _) = k.integral_over_polygon(&poly, 1e-10);
        let n = 900;
        let (x0, x1, y0, y1) = (0.0, 2.2, -0.5, 1.6);
        let hx = (x1 - x0) / n as f64;
        let hy = (y1 - y0) / n as f64;
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                let p = Point::new(x0 + (i as f64 + 0.5) * hx, y0 + (j as f64 + 0.5) * hy);
                if crate::convex::poly_contains(&poly, p, 0.0) {
                    sum += k.density(p.norm()) * hx * hy;
                }
            }
        }
        assert!((v - sum).abs() < 5e-3, "exact {v} vs oracle {sum}");
        // containing the origin must work too
        let with_origin = vec![
            Point::new(-1.0, -1.0),
            Point::new(1.5, -0.8),
            Point::new(1.2, 1.3),
            Point::new(-0.9, 1.1),
        ];
        let (v2, _) = k.integral_over_polygon(&with_origin, 1e-10);
        let mut sum2 = 0.0;
        let n2 = 900;
        for i in 0..n2 {
            for j in 0..n2 {
                let p = Point::new(
                    -1.0 + (i as f64 + 0.5) * 2.5 / n2 as f64,
                    -1.0 + (j as f64 + 0.5) * 2.3 / n2 as f64,
                );
                if crate::convex::poly_contains(&with_origin, p, 0.0) {
                    sum2 += k.density(p.norm()) * (2.5 / n2 as f64) * (2.3 / n2 as f64);
                }
            }
        }
        assert!((v2 - sum2).abs() < 5e-3, "exact {v2} vs oracle {sum2}");
    }
}
