//! SO(3)/SE(3) primitives: small fixed-size matrices, the skew/vex operator
//! pairs, the six elementary transforms and their se(3) generators.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn zeros() -> Self {
        Vec3::new(T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn from_array(a: [T; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    #[inline]
    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(&self, rhs: &Self) -> T {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    #[inline]
    pub fn cross(&self, rhs: &Self) -> Self {
        Vec3::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    #[inline]
    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        (*self - *other).max_abs() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Real> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

/// Row-major 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Real> Mat3<T> {
    pub fn zeros() -> Self {
        Mat3([[T::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            m.0[i][i] = T::one();
        }
        m
    }

    pub fn from_cols(c0: Vec3<T>, c1: Vec3<T>, c2: Vec3<T>) -> Self {
        Mat3([[c0.x, c1.x, c2.x], [c0.y, c1.y, c2.y], [c0.z, c1.z, c2.z]])
    }

    #[inline]
    pub fn col(&self, j: usize) -> Vec3<T> {
        Vec3::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.0[j][i] = self.0[i][j];
            }
        }
        out
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Antisymmetric part `(A - Aᵀ) / 2`.
    pub fn skew_part(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (self.0[i][j] - self.0[j][i]) * T::half();
            }
        }
        out
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|v| *v *= s);
        out
    }

    /// Elementwise infinity norm.
    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        (*self - *other).max_abs() <= tol
    }
}

impl<T: Real> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] =
                    self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j] + self.0[i][2] * rhs.0[2][j];
            }
        }
        out
    }
}

impl<T: Real> Mul<Vec3<T>> for Mat3<T> {
    type Output = Vec3<T>;
    fn mul(self, v: Vec3<T>) -> Vec3<T> {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

impl<T: Real> Add for Mat3<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real> Sub for Mat3<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real> Neg for Mat3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T> Index<(usize, usize)> for Mat3<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat3<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.0[i][j]
    }
}

/// Row-major 4x4 matrix. Holds homogeneous transforms as well as their
/// partial derivatives (which have a zero bottom row).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat4<T>(pub [[T; 4]; 4]);

impl<T: Real> Mat4<T> {
    pub fn zeros() -> Self {
        Mat4([[T::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = T::one();
        }
        m
    }

    /// Homogeneous transform from a rotation block and translation.
    pub fn from_parts(r: &Mat3<T>, t: &Vec3<T>) -> Self {
        let mut m = Self::identity();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = r.0[i][j];
            }
        }
        m.0[0][3] = t.x;
        m.0[1][3] = t.y;
        m.0[2][3] = t.z;
        m
    }

    pub fn from_row_major(v: &[T; 16]) -> Self {
        let mut m = Self::zeros();
        for (k, val) in v.iter().enumerate() {
            m.0[k / 4][k % 4] = *val;
        }
        m
    }

    pub fn to_row_major(&self) -> [T; 16] {
        let mut out = [T::zero(); 16];
        for (k, val) in out.iter_mut().enumerate() {
            *val = self.0[k / 4][k % 4];
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[j][i] = self.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|v| *v *= s);
        out
    }

    /// Applies the matrix to a point (implicit homogeneous coordinate 1).
    pub fn transform_point(&self, p: &Vec3<T>) -> Vec3<T> {
        rho(self) * *p + tau(self)
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        (*self - *other).max_abs() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }
}

impl<T: Real> Mul for Mat4<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            let a = &self.0[i];
            for j in 0..4 {
                out.0[i][j] =
                    a[0] * rhs.0[0][j] + a[1] * rhs.0[1][j] + a[2] * rhs.0[2][j] + a[3] * rhs.0[3][j];
            }
        }
        out
    }
}

impl<T: Real> Add for Mat4<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real> Sub for Mat4<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real> Neg for Mat4<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T> Index<(usize, usize)> for Mat4<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat4<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.0[i][j]
    }
}

/// Spatial 6-vector ordered (v; ω): linear part first, angular part second.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Twist6<T> {
    pub v: Vec3<T>,
    pub w: Vec3<T>,
}

impl<T: Real> Twist6<T> {
    pub fn new(v: Vec3<T>, w: Vec3<T>) -> Self {
        Twist6 { v, w }
    }

    pub fn zeros() -> Self {
        Twist6::new(Vec3::zeros(), Vec3::zeros())
    }

    pub fn from_array(a: [T; 6]) -> Self {
        Twist6::new(Vec3::new(a[0], a[1], a[2]), Vec3::new(a[3], a[4], a[5]))
    }

    pub fn to_array(self) -> [T; 6] {
        [self.v.x, self.v.y, self.v.z, self.w.x, self.w.y, self.w.z]
    }

    pub fn scale(self, s: T) -> Self {
        Twist6::new(self.v * s, self.w * s)
    }

    pub fn max_abs(&self) -> T {
        self.v.max_abs().max(self.w.max_abs())
    }

    pub fn norm(&self) -> T {
        (self.v.dot(&self.v) + self.w.dot(&self.w)).sqrt()
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        (*self - *other).max_abs() <= tol
    }
}

impl<T: Real> Add for Twist6<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Twist6::new(self.v + rhs.v, self.w + rhs.w)
    }
}

impl<T: Real> Sub for Twist6<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Twist6::new(self.v - rhs.v, self.w - rhs.w)
    }
}

/// Axis tag of an elementary transform: translation along, or rotation
/// about, one of x, y, z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Tx,
    Ty,
    Tz,
    Rx,
    Ry,
    Rz,
}

impl Axis {
    pub const ALL: [Axis; 6] = [Axis::Tx, Axis::Ty, Axis::Tz, Axis::Rx, Axis::Ry, Axis::Rz];

    #[inline]
    pub fn is_rotation(self) -> bool {
        matches!(self, Axis::Rx | Axis::Ry | Axis::Rz)
    }

    #[inline]
    pub fn is_translation(self) -> bool {
        !self.is_rotation()
    }

    /// 0 for x, 1 for y, 2 for z.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Axis::Tx | Axis::Rx => 0,
            Axis::Ty | Axis::Ry => 1,
            Axis::Tz | Axis::Rz => 2,
        }
    }

    pub fn unit<T: Real>(self) -> Vec3<T> {
        let mut a = [T::zero(); 3];
        a[self.index()] = T::one();
        Vec3::from_array(a)
    }

    /// Lowercase text tag.
    pub fn tag(self) -> &'static str {
        match self {
            Axis::Tx => "tx",
            Axis::Ty => "ty",
            Axis::Tz => "tz",
            Axis::Rx => "rx",
            Axis::Ry => "ry",
            Axis::Rz => "rz",
        }
    }

    /// Case-insensitive inverse of [`Axis::tag`].
    pub fn from_tag(tag: &str) -> Option<Axis> {
        Axis::ALL.into_iter().find(|a| a.tag().eq_ignore_ascii_case(tag))
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `[w]ₓ`, the skew-symmetric matrix with `skew3(w) * b == w × b`.
pub fn skew3<T: Real>(w: &Vec3<T>) -> Mat3<T> {
    let z = T::zero();
    Mat3([[z, -w.z, w.y], [w.z, z, -w.x], [-w.y, w.x, z]])
}

/// Inverse of [`skew3`]. Reads `(S₃₂, S₁₃, S₂₁)` without averaging.
pub fn vex3<T: Real>(s: &Mat3<T>) -> Result<Vec3<T>> {
    let residual = (*s + s.transpose()).max_abs();
    if residual > T::skew_tol() || residual.is_nan() {
        return Err(Error::NotSkewSymmetric {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(Vec3::new(s.0[2][1], s.0[0][2], s.0[1][0]))
}

/// Augmented skew-symmetric matrix of a twist (v; ω).
pub fn skew6<T: Real>(s: &Twist6<T>) -> Mat4<T> {
    let r = skew3(&s.w);
    let mut m = Mat4::zeros();
    for i in 0..3 {
        for j in 0..3 {
            m.0[i][j] = r.0[i][j];
        }
    }
    m.0[0][3] = s.v.x;
    m.0[1][3] = s.v.y;
    m.0[2][3] = s.v.z;
    m
}

/// Inverse of [`skew6`].
pub fn vex6<T: Real>(m: &Mat4<T>) -> Result<Twist6<T>> {
    let r = rho(m);
    let skew_residual = (r + r.transpose()).max_abs();
    let row_residual = m.0[3].iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    let residual = skew_residual.max(row_residual);
    if residual > T::skew_tol() || residual.is_nan() {
        return Err(Error::NotAugmentedSkew {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(Twist6::new(tau(m), Vec3::new(r.0[2][1], r.0[0][2], r.0[1][0])))
}

/// Top-left 3x3 block.
pub fn rho<T: Real>(m: &Mat4<T>) -> Mat3<T> {
    let mut r = Mat3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            r.0[i][j] = m.0[i][j];
        }
    }
    r
}

/// First three entries of the fourth column.
pub fn tau<T: Real>(m: &Mat4<T>) -> Vec3<T> {
    Vec3::new(m.0[0][3], m.0[1][3], m.0[2][3])
}

/// The elementary transform for `axis` with parameter `eta` (radians for
/// rotations, length units for translations).
pub fn elem_matrix<T: Real>(axis: Axis, eta: T) -> Mat4<T> {
    let mut m = Mat4::identity();
    if axis.is_translation() {
        m.0[axis.index()][3] = eta;
        return m;
    }
    let (s, c) = eta.sin_cos();
    // (a, b) are the two coordinates rotated into each other, in right-handed order.
    let (a, b) = match axis {
        Axis::Rx => (1, 2),
        Axis::Ry => (2, 0),
        _ => (0, 1),
    };
    m.0[a][a] = c;
    m.0[a][b] = -s;
    m.0[b][a] = s;
    m.0[b][b] = c;
    m
}

/// se(3) generator `[ŝ]` with `d/dη elem_matrix(axis, η) = [ŝ] · elem_matrix(axis, η)`.
/// A flipped (negated) joint variable negates the generator.
pub fn generator<T: Real>(axis: Axis, flipped: bool) -> Mat4<T> {
    let sign = if flipped { -T::one() } else { T::one() };
    let unit = axis.unit::<T>() * sign;
    if axis.is_rotation() {
        skew6(&Twist6::new(Vec3::zeros(), unit))
    } else {
        skew6(&Twist6::new(unit, Vec3::zeros()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
        Vec3::new(x, y, z)
    }

    #[test]
    fn skew3_layout() {
        let s = skew3(&v(1.0, 2.0, 3.0));
        assert_eq!(s.0, [[0.0, -3.0, 2.0], [3.0, 0.0, -1.0], [-2.0, 1.0, 0.0]]);
        assert_eq!(skew3(&Vec3::<f64>::zeros()), Mat3::zeros());
        assert_eq!(s * v(4.0, 5.0, 6.0), v(-3.0, 6.0, -3.0));
    }

    #[test]
    fn vex3_inverse_and_rejection() {
        assert_eq!(vex3(&skew3(&v(1.0, 2.0, 3.0))).unwrap(), v(1.0, 2.0, 3.0));
        assert_eq!(vex3(&Mat3::<f64>::zeros()).unwrap(), Vec3::zeros());
        let mut s = skew3(&v(1.0, 2.0, 3.0));
        s.0[0][0] = 0.05; // S + Sᵀ = diag(0.1, 0, 0)
        assert!(matches!(vex3(&s), Err(Error::NotSkewSymmetric { .. })));
    }

    #[test]
    fn skew6_layout() {
        let s = Twist6::new(v(1.0, 2.0, 3.0), v(4.0, 5.0, 6.0));
        let m = skew6(&s);
        assert_eq!(
            m.0,
            [
                [0.0, -6.0, 5.0, 1.0],
                [6.0, 0.0, -4.0, 2.0],
                [-5.0, 4.0, 0.0, 3.0],
                [0.0, 0.0, 0.0, 0.0]
            ]
        );
        let s = Twist6::new(v(1.0, 0.0, 0.0), v(0.0, 0.0, 1.0));
        assert_eq!(vex6(&skew6(&s)).unwrap(), s);
        assert!(matches!(
            vex6(&Mat4::<f64>::identity()),
            Err(Error::NotAugmentedSkew { .. })
        ));
    }

    #[test]
    fn rho_tau_blocks() {
        let i = Mat4::<f64>::identity();
        assert_eq!(rho(&i), Mat3::identity());
        assert_eq!(tau(&i), Vec3::zeros());

        let t = elem_matrix(Axis::Tx, 1.0) * elem_matrix(Axis::Ty, 2.0) * elem_matrix(Axis::Tz, 3.0);
        assert_eq!(rho(&t), Mat3::identity());
        assert_eq!(tau(&t), v(1.0, 2.0, 3.0));

        let r = elem_matrix(Axis::Rz, FRAC_PI_2);
        assert!(rho(&r).approx_eq(&Mat3([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]), 1e-15));
        assert_eq!(tau(&r), Vec3::zeros());
    }

    #[test]
    fn elementary_transforms() {
        assert_eq!(elem_matrix(Axis::Rx, 0.0f64), Mat4::identity());
        assert_eq!(tau(&elem_matrix(Axis::Tz, 0.333f64)), v(0.0, 0.0, 0.333));
        let p = elem_matrix(Axis::Rz, FRAC_PI_2).transform_point(&v(1.0, 0.0, 0.0));
        assert!(p.approx_eq(&v(0.0, 1.0, 0.0), 1e-15));
        // y rotation takes z to x
        let p = elem_matrix(Axis::Ry, FRAC_PI_2).transform_point(&v(0.0, 0.0, 1.0));
        assert!(p.approx_eq(&v(1.0, 0.0, 0.0), 1e-15));
        let p = elem_matrix(Axis::Rx, FRAC_PI_2).transform_point(&v(0.0, 1.0, 0.0));
        assert!(p.approx_eq(&v(0.0, 0.0, 1.0), 1e-15));
    }

    #[test]
    fn generator_entries() {
        let g = generator::<f64>(Axis::Rx, false);
        let mut expect = Mat4::zeros();
        expect.0[1][2] = -1.0;
        expect.0[2][1] = 1.0;
        assert_eq!(g, expect);

        let g = generator::<f64>(Axis::Ty, false);
        let mut expect = Mat4::zeros();
        expect.0[1][3] = 1.0;
        assert_eq!(g, expect);

        assert_eq!(
            generator::<f64>(Axis::Rz, true),
            -generator::<f64>(Axis::Rz, false)
        );
    }

    fn central_diff(axis: Axis, eta: f64, h: f64) -> Mat4<f64> {
        (elem_matrix(axis, eta + h) - elem_matrix(axis, eta - h)).scale(0.5 / h)
    }

    #[test]
    fn ry_generator_matches_central_difference() {
        let theta = 0.3;
        for h in [1e-3, 1e-4] {
            let fd = central_diff(Axis::Ry, theta, h);
            let an = generator(Axis::Ry, false) * elem_matrix(Axis::Ry, theta);
            assert!(fd.approx_eq(&an, h * h), "h={h}");
        }
    }

    #[test]
    fn generic_over_f32() {
        let s = skew3(&Vec3::<f32>::new(1.0, 2.0, 3.0));
        assert_eq!(vex3(&s).unwrap(), Vec3::new(1.0, 2.0, 3.0));
        let r = rho(&elem_matrix(Axis::Ry, 0.4f32));
        assert!((r.det() - 1.0).abs() < 1e-6);
    }

    fn finite() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn vec3() -> impl Strategy<Value = Vec3<f64>> {
        (finite(), finite(), finite()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
    }

    fn axis() -> impl Strategy<Value = Axis> {
        (0..6usize).prop_map(|i| Axis::ALL[i])
    }

    proptest! {
        #[test]
        fn skew_vex_exact(w in vec3()) {
            let s = skew3(&w);
            prop_assert_eq!(vex3(&s).unwrap(), w);
            prop_assert_eq!(s + s.transpose(), Mat3::zeros());
        }

        #[test]
        fn skew6_vex6_exact(a in vec3(), b in vec3()) {
            let s = Twist6::new(a, b);
            prop_assert_eq!(vex6(&skew6(&s)).unwrap(), s);
        }

        #[test]
        fn elementary_rotation_block_is_so3(ax in axis(), eta in -20.0..20.0f64) {
            let r = rho(&elem_matrix(ax, eta));
            prop_assert!((r.transpose() * r).approx_eq(&Mat3::identity(), 1e-12));
            prop_assert!((r.det() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn rotation_derivative_is_generator_product(i in 3..6usize, theta in -4.0..4.0f64) {
            let ax = Axis::ALL[i];
            let fd = central_diff(ax, theta, 1e-6);
            let an = generator(ax, false) * elem_matrix(ax, theta);
            prop_assert!(fd.approx_eq(&an, 1e-8));
        }

        #[test]
        fn translation_derivative_is_constant_generator(i in 0..3usize, d in -5.0..5.0f64) {
            let ax = Axis::ALL[i];
            // exact: the entry is linear in d
            let diff = elem_matrix(ax, d + 1.0) - elem_matrix(ax, d);
            let g = generator::<f64>(ax, false);
            prop_assert!(diff.approx_eq(&g, 1e-15));
            prop_assert_eq!(g * elem_matrix(ax, d), g);
        }

        #[test]
        fn skew_of_cross_is_commutator(a in vec3(), b in vec3()) {
            let lhs = skew3(&a.cross(&b));
            let rhs = skew3(&a) * skew3(&b) - skew3(&b) * skew3(&a);
            prop_assert!(lhs.approx_eq(&rhs, 1e-12));
        }

        #[test]
        fn noa_columns_follow_two_axis_convention(
            seq in proptest::collection::vec((3..6usize, -4.0..4.0f64), 1..12)
        ) {
            let t = seq.iter().fold(Mat4::identity(), |acc, &(i, eta)| acc * elem_matrix(Axis::ALL[i], eta));
            let r = rho(&t);
            let (n, o, a) = (r.col(0), r.col(1), r.col(2));
            prop_assert!(n.approx_eq(&o.cross(&a), 1e-12));
            prop_assert!(o.approx_eq(&a.cross(&n), 1e-12));
            prop_assert!(a.approx_eq(&n.cross(&o), 1e-12));
        }
    }
}
