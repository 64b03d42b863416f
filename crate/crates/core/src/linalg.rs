//! Fixed-size 2×2 matrices, enough for two-parameter families.

use std::ops::{Index, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Row-major 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

impl<T: Real> Mat2<T> {
    pub fn new(a11: T, a12: T, a21: T, a22: T) -> Self {
        Self([[a11, a12], [a21, a22]])
    }

    pub fn diag(d1: T, d2: T) -> Self {
        Self::new(d1, T::zero(), T::zero(), d2)
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    /// Inverse; fails when `|det| < 1e-300`.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if !(det.abs() >= lit::<T>(1e-300)) || !det.is_finite() {
            return Err(Error::SingularMatrix { det: to_f64(det) });
        }
        let m = &self.0;
        Ok(Self::new(m[1][1] / det, -m[0][1] / det, -m[1][0] / det, m[0][0] / det))
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        (self.0[0][1] - self.0[1][0]).abs() <= tol
    }

    pub fn diagonal(&self) -> [T; 2] {
        [self.0[0][0], self.0[1][1]]
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> Mat2<U> {
        let m = &self.0;
        Mat2::new(f(m[0][0]), f(m[0][1]), f(m[1][0]), f(m[1][1]))
    }

    /// Solves `self · x = rhs`.
    pub fn solve(&self, rhs: [T; 2]) -> Result<[T; 2]> {
        Ok(self.inverse()? * rhs)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

impl<T> Index<(usize, usize)> for Mat2<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, rhs: Mat2<T>) -> Mat2<T> {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl<T: Real> Mul<[T; 2]> for Mat2<T> {
    type Output = [T; 2];
    fn mul(self, v: [T; 2]) -> [T; 2] {
        let a = &self.0;
        [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
    }
}
