//! Dense vectors and the (optionally weighted) inner product of the ambient space.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;

/// Dense real coordinate vector.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Vector<T>(Vec<T>);

impl<T: Real> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![T::zero(); dim])
    }

    pub fn filled(dim: usize, value: T) -> Self {
        Self(vec![value; dim])
    }

    /// Builds a vector from `f64` coordinates, converting each one.
    pub fn from_f64(coords: &[f64]) -> Self {
        Self(coords.iter().map(|&c| T::lit(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self(self.0.iter().map(|&c| c * factor).collect())
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: T, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "axpy dimension mismatch");
        for (s, &o) in self.0.iter_mut().zip(other.0.iter()) {
            *s += factor * o;
        }
    }

    /// `a * x + b * y`.
    pub fn combine(a: T, x: &Self, b: T, y: &Self) -> Self {
        assert_eq!(x.dim(), y.dim(), "combine dimension mismatch");
        Self(
            x.0.iter()
                .zip(y.0.iter())
                .map(|(&xi, &yi)| a * xi + b * yi)
                .collect(),
        )
    }

    /// Euclidean dot product (unit weights).
    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "dot dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| a * b)
            .sum()
    }

    /// Euclidean norm (unit weights).
    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }
}

impl<T> From<Vec<T>> for Vector<T> {
    fn from(coords: Vec<T>) -> Self {
        Self(coords)
    }
}

impl<T> FromIterator<T> for Vector<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vector<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: Real> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: &Vector<T>) -> Vector<T> {
        Vector::combine(T::one(), self, T::one(), rhs)
    }
}

impl<T: Real> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: &Vector<T>) -> Vector<T> {
        Vector::combine(T::one(), self, -T::one(), rhs)
    }
}

impl<T: Real> Mul<T> for &Vector<T> {
    type Output = Vector<T>;
    fn mul(self, rhs: T) -> Vector<T> {
        self.scaled(rhs)
    }
}

impl<T: Real> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        self.scaled(-T::one())
    }
}

/// Inner product `<x, y> = sum_j w_j x_j y_j`; no weights means unit weights.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct InnerProduct<T> {
    weights: Option<Vec<T>>,
}

impl<T: Real> InnerProduct<T> {
    /// The standard dot product, valid in any dimension.
    pub fn euclidean() -> Self {
        Self { weights: None }
    }

    /// Weighted inner product; every weight must be strictly positive and finite.
    pub fn weighted(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSet("weight list is empty".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > T::zero())) {
            return Err(Error::InvalidSet(format!(
                "weight {w} is not strictly positive"
            )));
        }
        Ok(Self {
            weights: Some(weights),
        })
    }

    pub fn weights(&self) -> Option<&[T]> {
        self.weights.as_deref()
    }

    pub fn is_euclidean(&self) -> bool {
        self.weights.is_none()
    }

    /// Dimension fixed by the weights, if any.
    pub fn dim(&self) -> Option<usize> {
        self.weights.as_ref().map(Vec::len)
    }

    /// Same weights repeated `copies` times: the inner product of the product space.
    pub fn replicate(&self, copies: usize) -> Self {
        Self {
            weights: self.weights.as_ref().map(|w| {
                let mut out = Vec::with_capacity(w.len() * copies);
                for _ in 0..copies {
                    out.extend_from_slice(w);
                }
                out
            }),
        }
    }

    pub fn check(&self, dim: usize) -> Result<()> {
        match self.dim() {
            Some(d) => check_dim(d, dim),
            None => Ok(()),
        }
    }

    pub fn inner(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        check_dim(x.dim(), y.dim())?;
        self.check(x.dim())?;
        Ok(self.inner_slices(x.as_slice(), y.as_slice()))
    }

    pub fn norm(&self, x: &Vector<T>) -> Result<T> {
        self.inner(x, x).map(T::sqrt)
    }

    pub fn dist(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        check_dim(x.dim(), y.dim())?;
        self.check(x.dim())?;
        Ok(self.dist_slices(x.as_slice(), y.as_slice()))
    }

    /// Unchecked kernel; callers guarantee matching lengths.
    pub(crate) fn inner_slices(&self, x: &[T], y: &[T]) -> T {
        debug_assert_eq!(x.len(), y.len());
        match &self.weights {
            None => x.iter().zip(y).map(|(&a, &b)| a * b).sum(),
            Some(w) => x
                .iter()
                .zip(y)
                .zip(w)
                .map(|((&a, &b), &wj)| wj * a * b)
                .sum(),
        }
    }

    pub(crate) fn norm_slice(&self, x: &[T]) -> T {
        self.inner_slices(x, x).sqrt()
    }

    pub(crate) fn dist_slices(&self, x: &[T], y: &[T]) -> T {
        debug_assert_eq!(x.len(), y.len());
        let sq: T = match &self.weights {
            None => x.iter().zip(y).map(|(&a, &b)| (a - b) * (a - b)).sum(),
            Some(w) => x
                .iter()
                .zip(y)
                .zip(w)
                .map(|((&a, &b), &wj)| wj * (a - b) * (a - b))
                .sum(),
        };
        sq.sqrt()
    }
}
