//! Finite-difference operators and quadrature on [`RealField`]s.
//!
//! Interior stencils are second-order central differences. Periodic grids
//! wrap around; reflecting grids use one-sided differences at the two ends.

use crate::error::{structural, Result};
use crate::fields::{Boundary, Grid1D, RealField};
use crate::Real;

/// First derivative.
pub fn gradient<T: Real>(f: &RealField<T>) -> RealField<T> {
    let values = gradient_with(f.grid(), f.values(), |d| d);
    RealField::from_vec_unchecked(*f.grid(), values)
}

/// First derivative of a phase-like field that is only defined modulo `period`.
///
/// Every neighbour difference is first reduced into `(-period/2, period/2]`,
/// so a field with winding (for example `S = ħkx` on a ring) or with jumps of
/// exactly one period differentiates as if it were continuous.
pub fn phase_gradient<T: Real>(f: &RealField<T>, period: T) -> RealField<T> {
    let values = gradient_with(f.grid(), f.values(), |d| d.wrap_centered(period));
    RealField::from_vec_unchecked(*f.grid(), values)
}

/// Slice version of [`gradient`] with an explicit length check.
pub fn gradient_values<T: Real>(grid: &Grid1D<T>, f: &[T]) -> Result<Vec<T>> {
    check_len(grid, f)?;
    Ok(gradient_with(grid, f, |d| d))
}

fn gradient_with<T: Real>(grid: &Grid1D<T>, f: &[T], reduce: impl Fn(T) -> T) -> Vec<T> {
    let n = f.len();
    let two_dx = T::lit(2.0) * grid.dx();
    let mut out = vec![T::zero(); n];
    // forward differences d[i] = f[i+1] - f[i]
    let fwd = |i: usize| reduce(f[(i + 1) % n] - f[i]);
    for i in 1..n - 1 {
        out[i] = (fwd(i - 1) + fwd(i)) / two_dx;
    }
    match grid.boundary() {
        Boundary::Periodic => {
            out[0] = (fwd(n - 1) + fwd(0)) / two_dx;
            out[n - 1] = (fwd(n - 2) + fwd(n - 1)) / two_dx;
        }
        Boundary::Reflecting => {
            // first-order end rows: with the trapezoid weights this makes the
            // operator summation-by-parts, which keeps transport stable
            out[0] = fwd(0) / grid.dx();
            out[n - 1] = fwd(n - 2) / grid.dx();
        }
    }
    out
}

/// Second derivative with the 3-point stencil.
///
/// On reflecting grids the end samples reuse the stencil of their inner
/// neighbour, which is exact for quadratics.
pub fn laplacian<T: Real>(f: &RealField<T>) -> RealField<T> {
    let values = laplacian_slice(f.grid(), f.values());
    RealField::from_vec_unchecked(*f.grid(), values)
}

pub fn laplacian_values<T: Real>(grid: &Grid1D<T>, f: &[T]) -> Result<Vec<T>> {
    check_len(grid, f)?;
    Ok(laplacian_slice(grid, f))
}

pub(crate) fn laplacian_slice<T: Real>(grid: &Grid1D<T>, f: &[T]) -> Vec<T> {
    let n = f.len();
    let inv_dx2 = (grid.dx() * grid.dx()).recip();
    let two = T::lit(2.0);
    let mut out = vec![T::zero(); n];
    for i in 1..n - 1 {
        out[i] = (f[i - 1] - two * f[i] + f[i + 1]) * inv_dx2;
    }
    match grid.boundary() {
        Boundary::Periodic => {
            out[0] = (f[n - 1] - two * f[0] + f[1]) * inv_dx2;
            out[n - 1] = (f[n - 2] - two * f[n - 1] + f[0]) * inv_dx2;
        }
        Boundary::Reflecting => {
            out[0] = out[1];
            out[n - 1] = out[n - 2];
        }
    }
    out
}

/// `∫ f dx`: Riemann sum on periodic grids, trapezoidal rule on reflecting grids.
pub fn integrate<T: Real>(f: &RealField<T>) -> T {
    integrate_slice(f.grid(), f.values())
}

pub fn integrate_values<T: Real>(grid: &Grid1D<T>, f: &[T]) -> Result<T> {
    check_len(grid, f)?;
    Ok(integrate_slice(grid, f))
}

pub(crate) fn integrate_slice<T: Real>(grid: &Grid1D<T>, f: &[T]) -> T {
    let n = f.len();
    let sum: T = f.iter().copied().sum();
    match grid.boundary() {
        Boundary::Periodic => sum * grid.dx(),
        Boundary::Reflecting => (sum - (f[0] + f[n - 1]) / T::lit(2.0)) * grid.dx(),
    }
}

/// `∫ |∇f|² dx` from cell differences `(f[i+1] - f[i]) / dx`.
///
/// This is the quadratic form whose gradient with respect to `f` is exactly
/// `-2 · laplacian(f) · dx` at every periodic (or interior) sample, which keeps
/// discrete ensemble Hamiltonians and their equations of motion consistent.
pub fn dirichlet_energy<T: Real>(grid: &Grid1D<T>, f: &[T]) -> T {
    let n = f.len();
    let cells = match grid.boundary() {
        Boundary::Periodic => n,
        Boundary::Reflecting => n - 1,
    };
    let sum: T = (0..cells)
        .map(|i| {
            let d = f[(i + 1) % n] - f[i];
            d * d
        })
        .sum();
    sum / grid.dx()
}

fn check_len<T: Real>(grid: &Grid1D<T>, f: &[T]) -> Result<()> {
    if f.len() != grid.len() {
        return Err(structural!("slice has {} samples, grid has {}", f.len(), grid.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn ring(n: usize) -> Grid1D<f64> {
        Grid1D::<f64>::periodic(0.0, TAU, n).unwrap()
    }

    #[test]
    fn constants_are_annihilated() {
        for g in [ring(16), Grid1D::<f64>::reflecting(-1.0, 2.0, 16).unwrap()] {
            let c = RealField::constant(g, 3.7);
            assert!(gradient(&c).max_abs() == 0.0);
            assert!(laplacian(&c).max_abs() < 1e-12);
        }
    }

    #[test]
    fn linear_gradient_is_exact_on_reflecting_grid() {
        let g = Grid1D::<f64>::reflecting(-2.0, 3.0, 33).unwrap();
        let f = RealField::from_fn(g, |x| x).unwrap();
        for v in gradient(&f).values() {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn quadratic_laplacian_is_exact() {
        let g = Grid1D::<f64>::reflecting(-2.0, 3.0, 41).unwrap();
        let f = RealField::from_fn(g, |x| x * x).unwrap();
        let l = laplacian(&f);
        for v in l.values() {
            assert!((v - 2.0).abs() < 1e-8, "{v}");
        }
    }

    #[test]
    fn sine_derivatives_on_ring() {
        let g = ring(256);
        let f = RealField::from_fn(g, f64::sin).unwrap();
        let cos = RealField::from_fn(g, f64::cos).unwrap();
        let neg_sin = RealField::from_fn(g, |x| -x.sin()).unwrap();
        assert!(gradient(&f).linf_distance(&cos).unwrap() <= 1e-3);
        assert!(laplacian(&f).linf_distance(&neg_sin).unwrap() <= 1e-3);
    }

    #[test]
    fn quadrature_rules() {
        let g = Grid1D::<f64>::reflecting(0.0, 1.0, 17).unwrap();
        assert_eq!(integrate(&RealField::constant(g, 1.0)), 1.0);

        let g = Grid1D::<f64>::reflecting(-3.0, 3.0, 61).unwrap();
        let odd = RealField::from_fn(g, |x| x * (-x * x).exp() + x.powi(3)).unwrap();
        assert!(integrate(&odd).abs() < 1e-12);

        let g = Grid1D::<f64>::reflecting(-10.0, 10.0, 512).unwrap();
        let gauss = RealField::from_fn(g, |x| (-x * x / 2.0).exp() / TAU.sqrt()).unwrap();
        assert!((integrate(&gauss) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn phase_gradient_sees_through_winding() {
        let g = ring(64);
        let s = RealField::from_fn(g, |x| 3.0 * x).unwrap();
        let d = phase_gradient(&s, TAU);
        for v in d.values() {
            assert!((v - 3.0).abs() < 1e-12);
        }
        // the plain gradient is wrong at the seam
        assert!((gradient(&s)[0] - 3.0).abs() > 1.0);
    }

    #[test]
    fn dirichlet_energy_matches_analytic() {
        let g = ring(512);
        let f: Vec<f64> = g.coordinates().iter().map(|x| x.sin()).collect();
        // ∫ cos² over one period = π
        assert!((dirichlet_energy(&g, &f) - std::f64::consts::PI).abs() < 1e-4);
    }

    #[test]
    fn slice_length_is_checked() {
        let g = ring(16);
        assert!(gradient_values(&g, &[0.0; 15]).is_err());
        assert!(laplacian_values(&g, &[0.0; 17]).is_err());
        assert!(integrate_values(&g, &[0.0; 3]).is_err());
    }
}
