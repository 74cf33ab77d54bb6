use std::ops::Index;

use crate::error::{numerical, structural, Result};
use crate::fields::Grid1D;
use crate::Real;

/// Real samples of a function on a [`Grid1D`]. Values are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField<T> {
    grid: Grid1D<T>,
    values: Vec<T>,
}

impl<T: Real> RealField<T> {
    pub fn new(grid: Grid1D<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(structural!(
                "field has {} samples but the grid has {}",
                values.len(),
                grid.len()
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(numerical!("non-finite field value at index {i}"));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D<T>, f: impl Fn(T) -> T) -> Result<Self> {
        Self::new(grid, grid.coordinates().into_iter().map(f).collect())
    }

    pub fn constant(grid: Grid1D<T>, c: T) -> Self {
        Self { grid, values: vec![c; grid.len()] }
    }

    pub fn zeros(grid: Grid1D<T>) -> Self {
        Self::constant(grid, T::zero())
    }

    /// Builds a field without the finiteness scan. Callers must uphold it.
    pub(crate) fn from_vec_unchecked(grid: Grid1D<T>, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        self.check_same_grid(other)?;
        Self::new(
            self.grid,
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    pub fn scale(&self, c: T) -> Result<Self> {
        self.map(|v| v * c)
    }

    pub fn add_constant(&self, c: T) -> Result<Self> {
        self.map(|v| v + c)
    }

    /// Largest pointwise difference.
    pub fn linf_distance(&self, other: &Self) -> Result<T> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }

    pub(crate) fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(structural!("fields live on different grids"));
        }
        Ok(())
    }
}

impl<T> Index<usize> for RealField<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.values[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_mismatch_is_structural() {
        let g = Grid1D::<f64>::periodic(0.0, 1.0, 8).unwrap();
        let err = RealField::new(g, vec![0.0; 7]).unwrap_err();
        assert!(matches!(err, crate::Error::Structural(_)));
    }

    #[test]
    fn rejects_nan() {
        let g = Grid1D::<f64>::periodic(0.0, 1.0, 8).unwrap();
        let mut v = vec![0.0; 8];
        v[3] = f64::NAN;
        assert!(matches!(RealField::new(g, v), Err(crate::Error::Numerical(_))));
    }
}
