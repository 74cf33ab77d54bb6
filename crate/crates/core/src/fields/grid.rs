use crate::error::{structural, Result};
use crate::Real;

/// Smallest grid accepted by [`Grid1D::new`].
pub const MIN_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// `x_max` is identified with `x_min`; the endpoint is not sampled twice.
    Periodic,
    /// Closed interval, both endpoints sampled.
    Reflecting,
}

/// Uniform one-dimensional grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D<T> {
    x_min: T,
    x_max: T,
    n_points: usize,
    boundary: Boundary,
    dx: T,
}

impl<T: Real> Grid1D<T> {
    pub fn new(x_min: T, x_max: T, n_points: usize, boundary: Boundary) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(structural!("grid needs finite x_min < x_max, got [{x_min}, {x_max}]"));
        }
        if n_points < MIN_POINTS {
            return Err(structural!("grid needs at least {MIN_POINTS} points, got {n_points}"));
        }
        let cells = match boundary {
            Boundary::Periodic => n_points,
            Boundary::Reflecting => n_points - 1,
        };
        let dx = (x_max - x_min) / T::from_usize_lossy(cells);
        Ok(Self { x_min, x_max, n_points, boundary, dx })
    }

    pub fn periodic(x_min: T, x_max: T, n_points: usize) -> Result<Self> {
        Self::new(x_min, x_max, n_points, Boundary::Periodic)
    }

    pub fn reflecting(x_min: T, x_max: T, n_points: usize) -> Result<Self> {
        Self::new(x_min, x_max, n_points, Boundary::Reflecting)
    }

    #[inline]
    pub fn x_min(&self) -> T {
        self.x_min
    }

    #[inline]
    pub fn x_max(&self) -> T {
        self.x_max
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n_points
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    #[inline]
    pub fn is_periodic(&self) -> bool {
        self.boundary == Boundary::Periodic
    }

    #[inline]
    pub fn dx(&self) -> T {
        self.dx
    }

    /// Length of the domain, `x_max - x_min`.
    #[inline]
    pub fn length(&self) -> T {
        self.x_max - self.x_min
    }

    #[inline]
    pub fn x(&self, i: usize) -> T {
        self.x_min + self.dx * T::from_usize_lossy(i)
    }

    pub fn coordinates(&self) -> Vec<T> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Quadrature weight of sample `i`: `dx` everywhere on periodic grids,
    /// trapezoidal (`dx/2` at the ends) on reflecting grids.
    #[inline]
    pub fn weight(&self, i: usize) -> T {
        match self.boundary {
            Boundary::Periodic => self.dx,
            Boundary::Reflecting if i == 0 || i + 1 == self.n_points => self.dx / T::lit(2.0),
            Boundary::Reflecting => self.dx,
        }
    }

    /// Index distance between two samples, measured around the ring on periodic grids.
    pub(crate) fn index_distance(&self, i: usize, j: usize) -> usize {
        let d = i.abs_diff(j);
        match self.boundary {
            Boundary::Periodic => d.min(self.n_points - d),
            Boundary::Reflecting => d,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_depends_on_boundary() {
        let p = Grid1D::<f64>::periodic(0.0, 1.0, 10).unwrap();
        let r = Grid1D::<f64>::reflecting(0.0, 1.0, 11).unwrap();
        assert_eq!(p.dx(), 0.1);
        assert!((r.dx() - 0.1).abs() < 1e-15);
        assert!((r.x(10) - 1.0).abs() < 1e-15);
        assert!((p.x(9) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid1D::<f64>::periodic(0.0, 1.0, 7).is_err());
        assert!(Grid1D::<f64>::periodic(1.0, 1.0, 16).is_err());
        assert!(Grid1D::<f64>::reflecting(2.0, 1.0, 16).is_err());
        assert!(Grid1D::<f64>::reflecting(0.0, f64::INFINITY, 16).is_err());
    }

    #[test]
    fn ring_distance_wraps() {
        let p = Grid1D::<f64>::periodic(0.0, 1.0, 10).unwrap();
        assert_eq!(p.index_distance(0, 9), 1);
        let r = Grid1D::<f64>::reflecting(0.0, 1.0, 10).unwrap();
        assert_eq!(r.index_distance(0, 9), 9);
    }
}
