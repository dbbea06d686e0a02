use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// A vector of Z^n with overflow-checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(Vec<i64>);

impl IntVector {
    pub fn new(entries: Vec<i64>) -> Self {
        IntVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize, scale: i64) -> Self {
        let mut v = vec![0; n];
        v[i] = scale;
        IntVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn same_len(&self, other: &IntVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<IntVector> {
        self.same_len(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::IntegerOverflow))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn checked_sub(&self, other: &IntVector) -> Result<IntVector> {
        self.same_len(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::IntegerOverflow))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn scaled(&self, k: i64) -> Result<IntVector> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::IntegerOverflow))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn dot(&self, other: &IntVector) -> Result<i128> {
        self.same_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| i128::from(a) * i128::from(b))
            .sum())
    }

    pub fn norm_sq(&self) -> i128 {
        self.0.iter().map(|&a| i128::from(a) * i128::from(a)).sum()
    }

    pub fn sum(&self) -> i128 {
        self.0.iter().map(|&a| i128::from(a)).sum()
    }

    /// Entrywise reduction into [0, m).
    pub fn rem_euclid(&self, m: i64) -> IntVector {
        IntVector(self.0.iter().map(|a| a.rem_euclid(m)).collect())
    }
}

impl Index<usize> for IntVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector(v.to_vec())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
