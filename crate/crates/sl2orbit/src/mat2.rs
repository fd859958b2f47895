//! 2x2 complex matrices, stored row-major as (a, b, c, d):
//!
//! ```text
//!     | a  b |
//!     | c  d |
//! ```
//!
//! Includes the quaternion-style parametrization of SL(2,C)
//!
//! ```text
//!     | alpha + i beta    gamma + i delta |
//!     | -gamma + i delta  alpha - i beta  |
//! ```
//!
//! with det = alpha^2 + beta^2 + gamma^2 + delta^2 (complex parameters).
//! Transposing such a matrix flips the sign of gamma and fixes the rest.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

/// Real 0 as a complex scalar.
pub const ZERO: C64 = Complex64::new(0.0, 0.0);
/// Real 1 as a complex scalar.
pub const ONE: C64 = Complex64::new(1.0, 0.0);
/// The imaginary unit.
pub const I: C64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// Matrix with real entries.
    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(
            C64::new(a, 0.0),
            C64::new(b, 0.0),
            C64::new(c, 0.0),
            C64::new(d, 0.0),
        )
    }

    pub fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Mat2::new(a, ZERO, ZERO, d)
    }

    /// Assemble from quaternion parameters (alpha, beta, gamma, delta).
    pub fn from_quaternion(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Self {
        Mat2::new(
            alpha + I * beta,
            gamma + I * delta,
            -gamma + I * delta,
            alpha - I * beta,
        )
    }

    /// Recover (alpha, beta, gamma, delta); exact for matrices of the
    /// quaternion shape, a linear projection otherwise.
    pub fn quaternion_parts(&self) -> (C64, C64, C64, C64) {
        let alpha = (self.a + self.d) / 2.0;
        let beta = (self.a - self.d) / (2.0 * I);
        let gamma = (self.b - self.c) / 2.0;
        let delta = (self.b + self.c) / (2.0 * I);
        (alpha, beta, gamma, delta)
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    /// e = a - d, the eigenvalue-gap surrogate used throughout.
    pub fn diff(&self) -> C64 {
        self.a - self.d
    }

    /// Adjugate inverse; valid exactly when det = 1.
    pub fn sl2_inverse(&self) -> Self {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    /// General inverse; `scale` enters the singularity test tolerance.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let det = self.det();
        let scale = self.max_norm().powi(2).max(1.0);
        if det.norm() <= tol * scale {
            return Err(Error::SingularConjugator(format!(
                "matrix with |det| = {:.3e} is not invertible",
                det.norm()
            )));
        }
        Ok(Mat2::new(
            self.d / det,
            -self.b / det,
            -self.c / det,
            self.a / det,
        ))
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    /// max |self_ij - other_ij|.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
            .max((self.d - other.d).norm())
    }

    pub fn scale(&self, s: C64) -> Self {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// g * self * g^{-1} with the adjugate inverse; requires det(g) != 0.
    pub fn conjugated_by(&self, g: &Mat2, tol: f64) -> Result<Self> {
        let ginv = g.inverse(tol)?;
        Ok(*g * *self * ginv)
    }

    /// Eigenvalues (m + s, m - s) with m = tr/2 and s the principal square
    /// root of m^2 - det.
    pub fn eigenvalues(&self) -> (C64, C64) {
        let m = self.trace() / 2.0;
        let s = (m * m - self.det()).sqrt();
        (m + s, m - s)
    }

    /// True when the matrix is (numerically) a scalar multiple of I.
    pub fn is_scalar(&self, tol: f64) -> bool {
        let scale = self.max_norm().max(1.0);
        self.b.norm() <= tol * scale
            && self.c.norm() <= tol * scale
            && self.diff().norm() <= tol * scale
    }

    /// An eigenvector for eigenvalue `lambda`, or None when A - lambda I ~ 0
    /// (scalar matrix: every vector qualifies). The two row-kernel candidates
    /// (b, lambda - a) and (lambda - d, c) are compared and the larger wins.
    pub fn eigenvector_for(&self, lambda: C64, tol: f64) -> Option<[C64; 2]> {
        let v1 = [self.b, lambda - self.a];
        let v2 = [lambda - self.d, self.c];
        let n1 = v1[0].norm().hypot(v1[1].norm());
        let n2 = v2[0].norm().hypot(v2[1].norm());
        let scale = self.max_norm().max(lambda.norm()).max(1.0);
        let (v, n) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
        if n <= tol * scale {
            return None;
        }
        Some([v[0] / n, v[1] / n])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a + rhs.a,
            self.b + rhs.b,
            self.c + rhs.c,
            self.d + rhs.d,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a - rhs.a,
            self.b - rhs.b,
            self.c - rhs.c,
            self.d - rhs.d,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}
