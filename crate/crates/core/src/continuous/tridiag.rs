//! Complex tridiagonal and cyclic-tridiagonal solvers with cached factorizations.

use num_complex::Complex;

use crate::error::{numerical, Result};
use crate::Real;

/// Thomas factorization of a tridiagonal matrix with constant off-diagonals.
#[derive(Debug, Clone)]
struct Thomas<T> {
    off: Complex<T>,
    /// Modified super-diagonal `c'_i`.
    upper: Vec<Complex<T>>,
    /// Pivots `b_i - a c'_{i-1}`.
    pivots: Vec<Complex<T>>,
}

impl<T: Real> Thomas<T> {
    fn new(diag: &[Complex<T>], off: Complex<T>) -> Result<Self> {
        let n = diag.len();
        let mut upper = vec![Complex::new(T::zero(), T::zero()); n];
        let mut pivots = vec![Complex::new(T::zero(), T::zero()); n];
        let tiny = T::epsilon() * T::epsilon();
        let mut prev_upper = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            let pivot = diag[i] - off * prev_upper;
            if !(pivot.norm() > tiny) || !pivot.re.is_finite() || !pivot.im.is_finite() {
                return Err(numerical!("singular pivot at row {i} in tridiagonal solve"));
            }
            pivots[i] = pivot;
            prev_upper = off / pivot;
            upper[i] = prev_upper;
        }
        Ok(Self { off, upper, pivots })
    }

    fn solve(&self, rhs: &mut [Complex<T>]) {
        let n = rhs.len();
        rhs[0] = rhs[0] / self.pivots[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.off * rhs[i - 1]) / self.pivots[i];
        }
        for i in (0..n - 1).rev() {
            let next = rhs[i + 1];
            rhs[i] = rhs[i] - self.upper[i] * next;
        }
    }
}

/// Solver for `A x = r` where `A` has diagonal `diag`, constant off-diagonal
/// `off`, and (when cyclic) the same `off` in the two corners.
#[derive(Debug, Clone)]
pub(crate) struct TridiagonalSolver<T> {
    inner: Thomas<T>,
    cyclic: Option<CyclicCorrection<T>>,
}

#[derive(Debug, Clone)]
struct CyclicCorrection<T> {
    /// Solution of `A' z = u`.
    z: Vec<Complex<T>>,
    /// `v = (1, 0, …, 0, off/γ)`.
    v_last: Complex<T>,
    denom: Complex<T>,
}

impl<T: Real> TridiagonalSolver<T> {
    pub(crate) fn new(diag: &[Complex<T>], off: Complex<T>, cyclic: bool) -> Result<Self> {
        if !cyclic {
            return Ok(Self { inner: Thomas::new(diag, off)?, cyclic: None });
        }
        // Sherman–Morrison: A = A' + u vᵀ with u = (γ, 0, …, 0, off), v = (1, 0, …, 0, off/γ)
        let n = diag.len();
        let gamma = -diag[0];
        let mut modified = diag.to_vec();
        modified[0] = diag[0] - gamma;
        modified[n - 1] = diag[n - 1] - off * off / gamma;
        let inner = Thomas::new(&modified, off)?;
        let mut z = vec![Complex::new(T::zero(), T::zero()); n];
        z[0] = gamma;
        z[n - 1] = off;
        inner.solve(&mut z);
        let v_last = off / gamma;
        let denom = Complex::new(T::one(), T::zero()) + z[0] + v_last * z[n - 1];
        if !(denom.norm() > T::epsilon()) {
            return Err(numerical!("cyclic tridiagonal correction is singular"));
        }
        Ok(Self { inner, cyclic: Some(CyclicCorrection { z, v_last, denom }) })
    }

    pub(crate) fn solve(&self, rhs: &mut [Complex<T>]) {
        self.inner.solve(rhs);
        if let Some(c) = &self.cyclic {
            let n = rhs.len();
            let factor = (rhs[0] + c.v_last * rhs[n - 1]) / c.denom;
            for (r, z) in rhs.iter_mut().zip(&c.z) {
                *r = *r - factor * z;
            }
        }
    }
}
