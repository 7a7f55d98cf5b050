//! Finite-dimensional real vectors.
//!
//! [`Vector`] is a thin validated wrapper over `Vec<f64>`: every coordinate
//! is finite and the dimension is at least one.  All cone members, distance
//! values, and scalarization arguments in this crate are `Vector`s, so the
//! validation happens once at the boundary and the numeric kernels can
//! assume clean data.

use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty vector in R^n with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    /// Builds a vector, rejecting empty input and non-finite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFiniteCoordinate { index });
            }
        }
        Ok(Self { coords })
    }

    /// Convenience constructor from a slice.
    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    /// The zero vector in R^dim.  Panics if `dim == 0`.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Self {
            coords: vec![0.0; dim],
        }
    }

    /// All-ones vector in R^dim.  Panics if `dim == 0`.
    pub fn ones(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Self {
            coords: vec![1.0; dim],
        }
    }

    /// Standard basis vector e_i in R^dim.  Panics on a bad index.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index out of range");
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Euclidean norm of the first `n` coordinates.
    pub fn norm_head(&self, n: usize) -> f64 {
        self.coords[..n].iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Dot product.  Panics on dimension mismatch; callers validate first.
    pub fn dot(&self, other: &Vector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dot product dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Scalar multiple.
    pub fn scale(&self, s: f64) -> Vector {
        Vector {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Componentwise absolute value.
    pub fn abs(&self) -> Vector {
        Vector {
            coords: self.coords.iter().map(|c| c.abs()).collect(),
        }
    }

    /// True when every coordinate is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == 0.0)
    }

    /// Checks that `other` lives in the same dimension.
    pub fn check_same_dim(&self, other: &Vector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector addition dimension mismatch");
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, other: &Vector) -> Vector {
        assert_eq!(
            self.dim(),
            other.dim(),
            "vector subtraction dimension mismatch"
        );
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Vector::new(coords)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Vec<f64> {
        v.coords
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(Vector::new(vec![]), Err(Error::EmptyVector)));
        assert!(matches!(
            Vector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteCoordinate { index: 1 })
        ));
        assert!(matches!(
            Vector::new(vec![f64::INFINITY]),
            Err(Error::NonFiniteCoordinate { index: 0 })
        ));
    }

    #[test]
    fn arithmetic_and_norm() {
        let a = Vector::from_slice(&[3.0, 4.0]).unwrap();
        let b = Vector::from_slice(&[1.0, -1.0]).unwrap();
        assert_eq!(a.norm(), 5.0);
        assert_eq!((&a + &b).coords(), &[4.0, 3.0]);
        assert_eq!((&a - &b).coords(), &[2.0, 5.0]);
        assert_eq!(a.dot(&b), -1.0);
        assert_eq!(a.scale(2.0).coords(), &[6.0, 8.0]);
        assert!(Vector::zeros(3).is_zero());
        assert!(!b.is_zero());
    }

    #[test]
    fn serde_round_trip_validates() {
        let v: Vector = serde_json::from_str("[1.0, 2.5]").unwrap();
        assert_eq!(v.coords(), &[1.0, 2.5]);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1.0,2.5]");
        assert!(serde_json::from_str::<Vector>("[]").is_err());
    }
}
