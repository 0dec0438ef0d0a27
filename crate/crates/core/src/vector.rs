//! Dense real vectors and the handful of BLAS-1 kernels the solvers need.

use std::ops::{Deref, DerefMut};

/// A point of the finite-dimensional space the problem lives in.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    pub fn filled(dim: usize, value: f64) -> Self {
        Vector(vec![value; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn is_finite(&self) -> bool {
        all_finite(&self.0)
    }

    /// Returns `self * s`.
    pub fn scaled(&self, s: f64) -> Vector {
        self.0.iter().map(|v| v * s).collect()
    }

    /// Returns `self - other`.
    pub fn sub(&self, other: &[f64]) -> Vector {
        debug_assert_eq!(self.dim(), other.len());
        self.0.iter().zip(other).map(|(a, b)| a - b).collect()
    }

    /// Returns `self + other`.
    pub fn add(&self, other: &[f64]) -> Vector {
        debug_assert_eq!(self.dim(), other.len());
        self.0.iter().zip(other).map(|(a, b)| a + b).collect()
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

impl From<&[f64]> for Vector {
    fn from(v: &[f64]) -> Self {
        Vector(v.to_vec())
    }
}

impl<const N: usize> From<[f64; N]> for Vector {
    fn from(v: [f64; N]) -> Self {
        Vector(v.to_vec())
    }
}

impl FromIterator<f64> for Vector {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

pub fn norm(a: &[f64]) -> f64 {
    norm_sq(a).sqrt()
}

pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// `out = a * x + b * y`
pub fn lincomb_into(a: f64, x: &[f64], b: f64, y: &[f64], out: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    debug_assert_eq!(x.len(), out.len());
    for ((o, xi), yi) in out.iter_mut().zip(x).zip(y) {
        *o = a * xi + b * yi;
    }
}

/// `out = x - s * d`, the forward (gradient) step.
pub fn forward_step_into(x: &[f64], s: f64, d: &[f64], out: &mut [f64]) {
    debug_assert_eq!(x.len(), d.len());
    for ((o, xi), di) in out.iter_mut().zip(x).zip(d) {
        *o = xi - s * di;
    }
}

pub fn all_finite(a: &[f64]) -> bool {
    a.iter().all(|v| v.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels() {
        let a = [1.0, 2.0, 2.0];
        let b = [0.0, 1.0, -1.0];
        assert_eq!(dot(&a, &b), 0.0);
        assert_eq!(norm(&a), 3.0);
        assert_eq!(dist_sq(&a, &b), 1.0 + 1.0 + 9.0);

        let mut y = vec![1.0, 1.0, 1.0];
        axpy(2.0, &b, &mut y);
        assert_eq!(y, vec![1.0, 3.0, -1.0]);

        let mut out = [0.0; 3];
        lincomb_into(2.0, &a, -1.0, &b, &mut out);
        assert_eq!(out, [2.0, 3.0, 5.0]);
        forward_step_into(&a, 0.5, &a, &mut out);
        assert_eq!(out, [0.5, 1.0, 1.0]);
    }

    #[test]
    fn finiteness() {
        assert!(Vector::from([1.0, -2.0]).is_finite());
        assert!(!Vector::from([1.0, f64::NAN]).is_finite());
        assert!(!Vector::from([f64::INFINITY]).is_finite());
    }
}
