use crate::error::{structural, Result};
use crate::fields::{gradient, Grid1D, RealField};
use crate::Real;

/// External potential `V(x)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec<T> {
    Free,
    /// `m ω² x² / 2`.
    Harmonic { mass: T, omega: T },
    /// `a0 + a1 x + a2 x²`.
    Quadratic { a0: T, a1: T, a2: T },
    /// Tabulated on a specific grid; `∇V` by central differences.
    Custom(RealField<T>),
}

impl<T: Real> PotentialSpec<T> {
    pub fn harmonic(mass: T, omega: T) -> Self {
        Self::Harmonic { mass, omega }
    }

    /// Tabulates `f` on `grid` as a custom potential.
    pub fn tabulated(grid: Grid1D<T>, f: impl Fn(T) -> T) -> Result<Self> {
        Ok(Self::Custom(RealField::from_fn(grid, f)?))
    }

    fn coefficients(&self) -> Option<(T, T, T)> {
        match *self {
            Self::Free => Some((T::zero(), T::zero(), T::zero())),
            Self::Harmonic { mass, omega } => {
                Some((T::zero(), T::zero(), mass * omega * omega / T::lit(2.0)))
            }
            Self::Quadratic { a0, a1, a2 } => Some((a0, a1, a2)),
            Self::Custom(_) => None,
        }
    }

    /// At most quadratic in `x` (true for every built-in closed form).
    pub fn is_quadratic(&self) -> bool {
        self.coefficients().is_some()
    }

    pub fn values(&self, grid: &Grid1D<T>) -> Result<RealField<T>> {
        match (self, self.coefficients()) {
            (_, Some((a0, a1, a2))) => RealField::from_fn(*grid, |x| a0 + a1 * x + a2 * x * x),
            (Self::Custom(f), None) => {
                if f.grid() != grid {
                    return Err(structural!("tabulated potential lives on a different grid"));
                }
                Ok(f.clone())
            }
            _ => unreachable!(),
        }
    }

    pub fn gradient(&self, grid: &Grid1D<T>) -> Result<RealField<T>> {
        match self.coefficients() {
            Some((_, a1, a2)) => RealField::from_fn(*grid, |x| a1 + T::lit(2.0) * a2 * x),
            None => Ok(gradient(&self.values(grid)?)),
        }
    }
}
