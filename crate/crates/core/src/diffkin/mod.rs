//! Differential kinematics of an ETS in the world frame.
//!
//! Each derivative is available three ways: a naive route that multiplies
//! out partial derivatives of the full transform product, a fast route that
//! uses closed forms in terms of joint frames (Jacobian) or of the Jacobian
//! itself (Hessian), and central finite differences used as an oracle.
//!
//! Conventions: Jacobian rows are `(v; ω)`; the Hessian is indexed
//! `(r, i, j)` with `H[r, i, j] = ∂J[r, i] / ∂q_j`.

mod fd;
mod hessian;
mod jacobian;
mod twist;

pub use fd::{hessian_fd, jacobian_fd};
pub use hessian::{hessian_fast, hessian_from_jacobian, hessian_naive, second_partial_pose};
pub use jacobian::{jacobian_fast, jacobian_naive, partial_pose, PosePartial};
pub use twist::{accel_twist, velocity_twist};

use std::fmt;
use std::str::FromStr;

use crate::error::{check_len, Error, Result};
use crate::ets::Ets;
use crate::liealg::{Twist6, Vec3};
use crate::scalar::Real;

/// Central-difference step for first derivatives.
pub const FD_STEP_FIRST: f64 = 1e-6;
/// Central-difference step for second derivatives.
pub const FD_STEP_SECOND: f64 = 1e-5;

/// Dense 6×n matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat6xN<T> {
    n: usize,
    data: Vec<T>,
}

/// Manipulator Jacobian: rows 0-2 linear velocity, rows 3-5 angular velocity.
pub type Jacobian<T> = Mat6xN<T>;

impl<T: Real> Mat6xN<T> {
    pub fn zeros(n: usize) -> Self {
        Mat6xN {
            n,
            data: vec![T::zero(); 6 * n],
        }
    }

    /// From a row-major slice of length `6 * n`.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        check_len(6 * n, data.len())?;
        Ok(Mat6xN { n, data })
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.n + c] = v;
    }

    pub fn column(&self, c: usize) -> Twist6<T> {
        Twist6::from_array(std::array::from_fn(|r| self.get(r, c)))
    }

    pub fn set_column(&mut self, c: usize, col: &Twist6<T>) {
        for (r, v) in col.to_array().into_iter().enumerate() {
            self.set(r, c, v);
        }
    }

    /// Linear (top) half of column `c`.
    pub fn linear(&self, c: usize) -> Vec3<T> {
        self.column(c).v
    }

    /// Angular (bottom) half of column `c`.
    pub fn angular(&self, c: usize) -> Vec3<T> {
        self.column(c).w
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[T]) -> Result<Twist6<T>> {
        check_len(self.n, x.len())?;
        let out: [T; 6] = std::array::from_fn(|r| {
            let row = &self.data[r * self.n..(r + 1) * self.n];
            row.iter().zip(x).fold(T::zero(), |acc, (a, b)| acc + *a * *b)
        });
        Ok(Twist6::from_array(out))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..6)
            .map(|r| self.data[r * self.n..(r + 1) * self.n].to_vec())
            .collect()
    }

    /// Elementwise ∞-norm of the difference. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n, "shape mismatch");
        max_abs_diff(&self.data, &other.data)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }
}

/// Manipulator Hessian, a 6×n×n tensor. Entry `(r, i, j)` is stored at
/// `(r * n + i) * n + j`, so mode-3 fibres are contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct Hessian<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Hessian<T> {
    pub fn zeros(n: usize) -> Self {
        Hessian {
            n,
            data: vec![T::zero(); 6 * n * n],
        }
    }

    pub fn from_flat(n: usize, data: Vec<T>) -> Result<Self> {
        check_len(6 * n * n, data.len())?;
        Ok(Hessian { n, data })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, r: usize, i: usize, j: usize) -> usize {
        (r * self.n + i) * self.n + j
    }

    #[inline]
    pub fn get(&self, r: usize, i: usize, j: usize) -> T {
        self.data[self.idx(r, i, j)]
    }

    #[inline]
    pub fn set(&mut self, r: usize, i: usize, j: usize, v: T) {
        let k = self.idx(r, i, j);
        self.data[k] = v;
    }

    /// The 6-vector H_ij = (H_a_ij; H_α_ij).
    pub fn entry(&self, i: usize, j: usize) -> Twist6<T> {
        Twist6::from_array(std::array::from_fn(|r| self.get(r, i, j)))
    }

    pub fn set_entry(&mut self, i: usize, j: usize, h: &Twist6<T>) {
        for (r, v) in h.to_array().into_iter().enumerate() {
            self.set(r, i, j, v);
        }
    }

    /// Flat storage in `(r, i, j)` order.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n, "shape mismatch");
        max_abs_diff(&self.data, &other.data)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Largest |H_a_ij − H_a_ji| over the translational rows.
    pub fn translational_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for r in 0..3 {
            for i in 0..self.n {
                for j in 0..i {
                    worst = worst.max((self.get(r, i, j) - self.get(r, j, i)).abs());
                }
            }
        }
        worst
    }

    /// Largest |H_α_ij| over the rotational rows.
    pub fn rotational_max_abs(&self) -> T {
        let start = self.idx(3, 0, 0);
        self.data[start..]
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
    }
}

fn max_abs_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).abs()))
}

/// Mode-3 product: `out[r, i] = Σ_j H[r, i, j] · v[j]`.
pub fn nmode3<T: Real>(h: &Hessian<T>, v: &[T]) -> Result<Mat6xN<T>> {
    let n = h.n;
    check_len(n, v.len())?;
    let mut out = Mat6xN::zeros(n);
    for (k, fibre) in h.data.chunks_exact(n.max(1)).enumerate().take(6 * n) {
        out.data[k] = fibre.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + *a * *b);
    }
    Ok(out)
}

/// Which route to use for a derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Fast,
    Naive,
    FiniteDiff,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Method::Fast),
            "naive" => Ok(Method::Naive),
            "fd" => Ok(Method::FiniteDiff),
            other => Err(Error::Schema(format!(
                "unknown method `{other}` (expected fast, naive or fd)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Fast => "fast",
            Method::Naive => "naive",
            Method::FiniteDiff => "fd",
        })
    }
}

/// Jacobian by the chosen route; `h` is only used for finite differences.
pub fn jacobian<T: Real>(ets: &Ets<T>, q: &[T], method: Method, h: T) -> Result<Jacobian<T>> {
    match method {
        Method::Fast => jacobian_fast(ets, q),
        Method::Naive => jacobian_naive(ets, q),
        Method::FiniteDiff => jacobian_fd(ets, q, h),
    }
}

/// Hessian by the chosen route; `h` is only used for finite differences.
pub fn hessian<T: Real>(ets: &Ets<T>, q: &[T], method: Method, h: T) -> Result<Hessian<T>> {
    match method {
        Method::Fast => hessian_fast(ets, q),
        Method::Naive => hessian_naive(ets, q),
        Method::FiniteDiff => hessian_fd(ets, q, h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn counting_tensor(n: usize) -> Hessian<f64> {
        Hessian::from_flat(n, (1..=6 * n * n).map(|v| v as f64).collect()).unwrap()
    }

    #[test]
    fn nmode3_basis_selects_fibre() {
        let h = counting_tensor(3);
        let out = nmode3(&h, &[0.0, 1.0, 0.0]).unwrap();
        for r in 0..6 {
            for i in 0..3 {
                assert_eq!(out.get(r, i), h.get(r, i, 1));
            }
        }
    }

    #[test]
    fn nmode3_explicit_6x2x2() {
        // entries 1..24 in (r, i, j) order; out[r,i] = H[r,i,0] + 2 H[r,i,1]
        let h = counting_tensor(2);
        let out = nmode3(&h, &[1.0, 2.0]).unwrap();
        let expect = [
            5.0, 11.0, 17.0, 23.0, 29.0, 35.0, 41.0, 47.0, 53.0, 59.0, 65.0, 71.0,
        ];
        assert_eq!(out.as_slice(), &expect);
    }

    #[test]
    fn nmode3_dimension_mismatch() {
        assert!(matches!(
            nmode3(&counting_tensor(2), &[1.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn empty_shapes() {
        let j = Mat6xN::<f64>::zeros(0);
        assert_eq!(j.rows(), vec![Vec::<f64>::new(); 6]);
        assert_eq!(j.mul_vec(&[]).unwrap(), Twist6::zeros());
        assert_eq!(nmode3(&Hessian::<f64>::zeros(0), &[]).unwrap().ncols(), 0);
    }

    #[test]
    fn method_names() {
        for m in [Method::Fast, Method::Naive, Method::FiniteDiff] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("slow".parse::<Method>().is_err());
    }

    proptest! {
        #[test]
        fn nmode3_matches_triple_loop(
            n in 1..6usize,
            seed in proptest::collection::vec(-5.0..5.0f64, 6 * 36 + 6),
        ) {
            let h = Hessian::from_flat(n, seed[..6 * n * n].to_vec()).unwrap();
            let v = &seed[6 * 36..6 * 36 + n];
            let out = nmode3(&h, v).unwrap();
            for r in 0..6 {
                for i in 0..n {
                    let mut acc = 0.0;
                    for (j, vj) in v.iter().enumerate() {
                        acc += h.get(r, i, j) * vj;
                    }
                    prop_assert_eq!(out.get(r, i), acc);
                }
            }
        }

        #[test]
        fn nmode3_is_linear(
            a in proptest::collection::vec(-5.0..5.0f64, 3),
            b in proptest::collection::vec(-5.0..5.0f64, 3),
        ) {
            let h = counting_tensor(3);
            let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let lhs = nmode3(&h, &sum).unwrap();
            let ra = nmode3(&h, &a).unwrap();
            let rb = nmode3(&h, &b).unwrap();
            for r in 0..6 {
                for i in 0..3 {
                    prop_assert!((lhs.get(r, i) - ra.get(r, i) - rb.get(r, i)).abs() <= 1e-11);
                }
            }
        }
    }
}
