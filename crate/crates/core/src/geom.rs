//! Small fixed-size geometry primitives: 2D vectors, general and symmetric
//! 2x2 matrices, and polygon containment tests.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// 2D cross product (z-component of the 3D cross product).
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    /// Counter-clockwise rotation by 90 degrees.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Outer product with itself, always symmetric PSD.
    pub fn outer(self) -> SymMat2 {
        SymMat2::new(self.x * self.x, self.x * self.y, self.y * self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

/// General (not necessarily symmetric) 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

impl Mat2 {
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2 {
            m: [[a11, a12], [a21, a22]],
        }
    }

    /// Outer product u v^T.
    pub fn outer(u: Vec2, v: Vec2) -> Self {
        Mat2::new(u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y)
    }

    pub fn transpose(self) -> Mat2 {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn trace(self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    /// trace(self * s) for symmetric s.
    pub fn trace_mul_sym(self, s: SymMat2) -> f64 {
        self.m[0][0] * s.a11
            + self.m[0][1] * s.a12
            + self.m[1][0] * s.a12
            + self.m[1][1] * s.a22
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        Mat2::new(
            self.m[0][0] * s,
            self.m[0][1] * s,
            self.m[1][0] * s,
            self.m[1][1] * s,
        )
    }
}

/// Symmetric 2x2 matrix stored as (a11, a12, a22).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymMat2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl SymMat2 {
    pub const ZERO: SymMat2 = SymMat2 {
        a11: 0.0,
        a12: 0.0,
        a22: 0.0,
    };

    pub const IDENTITY: SymMat2 = SymMat2 {
        a11: 1.0,
        a12: 0.0,
        a22: 1.0,
    };

    pub fn new(a11: f64, a12: f64, a22: f64) -> Self {
        SymMat2 { a11, a12, a22 }
    }

    pub fn diag(a: f64, b: f64) -> Self {
        SymMat2::new(a, 0.0, b)
    }

    pub fn trace(self) -> f64 {
        self.a11 + self.a22
    }

    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn frob2(self) -> f64 {
        self.a11 * self.a11 + 2.0 * self.a12 * self.a12 + self.a22 * self.a22
    }

    pub fn is_finite(self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a22.is_finite()
    }

    pub fn mat_vec(self, v: Vec2) -> Vec2 {
        Vec2::new(self.a11 * v.x + self.a12 * v.y, self.a12 * v.x + self.a22 * v.y)
    }

    /// v^T self v.
    pub fn quad_form(self, v: Vec2) -> f64 {
        self.mat_vec(v).dot(v)
    }

    /// self * self, symmetric since self is.
    pub fn square(self) -> SymMat2 {
        SymMat2::new(
            self.a11 * self.a11 + self.a12 * self.a12,
            self.a12 * (self.a11 + self.a22),
            self.a12 * self.a12 + self.a22 * self.a22,
        )
    }

    /// a*b + b*a, symmetric for symmetric a, b.
    pub fn anticommutator(a: SymMat2, b: SymMat2) -> SymMat2 {
        SymMat2::new(
            2.0 * (a.a11 * b.a11 + a.a12 * b.a12),
            a.a11 * b.a12 + a.a12 * b.a22 + a.a12 * b.a11 + a.a22 * b.a12,
            2.0 * (a.a12 * b.a12 + a.a22 * b.a22),
        )
    }

    /// trace(self * other).
    pub fn trace_mul(self, o: SymMat2) -> f64 {
        self.a11 * o.a11 + 2.0 * self.a12 * o.a12 + self.a22 * o.a22
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(self) -> (f64, f64) {
        let mean = 0.5 * (self.a11 + self.a22);
        let half_diff = 0.5 * (self.a11 - self.a22);
        let r = (half_diff * half_diff + self.a12 * self.a12).sqrt();
        (mean - r, mean + r)
    }

    /// Eigendecomposition: (eigenvalues ascending, unit eigenvectors).
    pub fn eigen(self) -> ((f64, f64), (Vec2, Vec2)) {
        let (lo, hi) = self.eigenvalues();
        // Eigenvector for hi: pick the more stable of the two column formulas.
        let v = if self.a12.abs() > 1e-300 {
            Vec2::new(self.a12, hi - self.a11)
        } else if self.a11 >= self.a22 {
            Vec2::new(1.0, 0.0)
        } else {
            Vec2::new(0.0, 1.0)
        };
        let n = v.norm();
        let v_hi = if n > 0.0 { v * (1.0 / n) } else { Vec2::new(1.0, 0.0) };
        let v_lo = v_hi.perp();
        ((lo, hi), (v_lo, v_hi))
    }

    /// Symmetric PSD square root; negative eigenvalues (round-off) clipped at zero.
    pub fn sqrt_psd(self) -> SymMat2 {
        let ((lo, hi), (v_lo, v_hi)) = self.eigen();
        let slo = lo.max(0.0).sqrt();
        let shi = hi.max(0.0).sqrt();
        SymMat2::new(
            slo * v_lo.x * v_lo.x + shi * v_hi.x * v_hi.x,
            slo * v_lo.x * v_lo.y + shi * v_hi.x * v_hi.y,
            slo * v_lo.y * v_lo.y + shi * v_hi.y * v_hi.y,
        )
    }

    /// Angle (radians) of the eigenvector for the largest eigenvalue, in (-pi/2, pi/2].
    pub fn principal_angle(self) -> f64 {
        let (_, (_, v_hi)) = self.eigen();
        let mut a = v_hi.y.atan2(v_hi.x);
        if a <= -std::f64::consts::FRAC_PI_2 {
            a += std::f64::consts::PI;
        } else if a > std::f64::consts::FRAC_PI_2 {
            a -= std::f64::consts::PI;
        }
        a
    }
}

impl Add for SymMat2 {
    type Output = SymMat2;
    fn add(self, o: SymMat2) -> SymMat2 {
        SymMat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a22 + o.a22)
    }
}

impl Sub for SymMat2 {
    type Output = SymMat2;
    fn sub(self, o: SymMat2) -> SymMat2 {
        SymMat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a22 - o.a22)
    }
}

impl Mul<f64> for SymMat2 {
    type Output = SymMat2;
    fn mul(self, s: f64) -> SymMat2 {
        SymMat2::new(self.a11 * s, self.a12 * s, self.a22 * s)
    }
}

impl AddAssign for SymMat2 {
    fn add_assign(&mut self, o: SymMat2) {
        self.a11 += o.a11;
        self.a12 += o.a12;
        self.a22 += o.a22;
    }
}

/// Point-in-polygon by even-odd ray casting. Boundary points are not
/// guaranteed either way; callers test generic points (element centroids).
pub fn point_in_polygon(p: Vec2, poly: &[Vec2]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (pi, pj) = (poly[i], poly[j]);
        if (pi.y > p.y) != (pj.y > p.y) {
            let x_cross = pi.x + (p.y - pi.y) / (pj.y - pi.y) * (pj.x - pi.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Point in a union of polygons.
pub fn point_in_union(p: Vec2, polys: &[Vec<Vec2>]) -> bool {
    polys.iter().any(|poly| point_in_polygon(p, poly))
}

/// Signed area of a simple polygon (positive for counter-clockwise).
pub fn polygon_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    let mut acc = 0.0;
    for i in 0..n {
        let j = (i + 1) % n;
        acc += poly[i].cross(poly[j]);
    }
    0.5 * acc
}

/// Axis-aligned rectangle as a counter-clockwise polygon.
pub fn rect_polygon(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Vec<Vec2> {
    vec![
        Vec2::new(xmin, ymin),
        Vec2::new(xmax, ymin),
        Vec2::new(xmax, ymax),
        Vec2::new(xmin, ymax),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn symmat_square_matches_direct_product() {
        let a = SymMat2::new(2.0, -0.7, 1.3);
        let sq = a.square();
        assert_abs_diff_eq!(sq.a11, 2.0 * 2.0 + 0.7 * 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(sq.a12, -0.7 * (2.0 + 1.3), epsilon = 1e-15);
        assert_abs_diff_eq!(sq.a22, 0.7 * 0.7 + 1.3 * 1.3, epsilon = 1e-15);
    }

    #[test]
    fn anticommutator_matches_componentwise() {
        let a = SymMat2::new(1.0, 2.0, 3.0);
        let b = SymMat2::new(-0.5, 0.25, 2.0);
        let ab_ba = SymMat2::anticommutator(a, b);
        // Direct computation via general matrices.
        let ga = Mat2::new(a.a11, a.a12, a.a12, a.a22);
        let gb = Mat2::new(b.a11, b.a12, b.a12, b.a22);
        let mut prod = Mat2::default();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    prod.m[i][j] += ga.m[i][k] * gb.m[k][j] + gb.m[i][k] * ga.m[k][j];
                }
            }
        }
        assert_abs_diff_eq!(ab_ba.a11, prod.m[0][0], epsilon = 1e-15);
        assert_abs_diff_eq!(ab_ba.a12, prod.m[0][1], epsilon = 1e-15);
        assert_abs_diff_eq!(ab_ba.a22, prod.m[1][1], epsilon = 1e-15);
        assert_abs_diff_eq!(prod.m[0][1], prod.m[1][0], epsilon = 1e-15);
    }

    #[test]
    fn eigen_reconstructs_matrix() {
        let a = SymMat2::new(3.0, 1.5, -1.0);
        let ((lo, hi), (vlo, vhi)) = a.eigen();
        let recon = vlo.outer() * lo + vhi.outer() * hi;
        assert_abs_diff_eq!(recon.a11, a.a11, epsilon = 1e-12);
        assert_abs_diff_eq!(recon.a12, a.a12, epsilon = 1e-12);
        assert_abs_diff_eq!(recon.a22, a.a22, epsilon = 1e-12);
        assert!(lo <= hi);
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let a = SymMat2::new(4.0, 1.0, 2.0);
        let s = a.sqrt_psd();
        let sq = s.square();
        assert_abs_diff_eq!(sq.a11, a.a11, epsilon = 1e-12);
        assert_abs_diff_eq!(sq.a12, a.a12, epsilon = 1e-12);
        assert_abs_diff_eq!(sq.a22, a.a22, epsilon = 1e-12);
    }

    #[test]
    fn polygon_containment() {
        let sq = rect_polygon(-1.0, 1.0, -1.0, 1.0);
        assert!(point_in_polygon(Vec2::new(0.0, 0.0), &sq));
        assert!(point_in_polygon(Vec2::new(0.99, -0.99), &sq));
        assert!(!point_in_polygon(Vec2::new(1.01, 0.0), &sq));
        assert_abs_diff_eq!(polygon_area(&sq), 4.0, epsilon = 1e-15);
    }
}
