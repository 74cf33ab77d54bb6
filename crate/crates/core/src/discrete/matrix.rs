//! Small dense matrices for finite-dimensional configuration spaces.

use std::ops::{Add, Index, IndexMut, Mul};

use num_complex::Complex;

use crate::error::{domain, structural, Result};
use crate::Real;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(structural!("expected {dim}x{dim} entries, got {}", data.len()));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(domain!("matrix has non-finite entries"));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(structural!("matrix rows must all have length {dim}"));
        }
        Self::new(dim, rows.concat())
    }

    pub fn from_real(dim: usize, data: &[T]) -> Result<Self> {
        Self::new(dim, data.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex::new(T::zero(), T::zero()); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero()));
        Self { dim: 2, data: vec![o, l, l, o] }
    }

    pub fn pauli_y() -> Self {
        let o = Complex::new(T::zero(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        Self { dim: 2, data: vec![o, -i, i, o] }
    }

    pub fn pauli_z() -> Self {
        let l = Complex::new(T::one(), T::zero());
        let o = Complex::new(T::zero(), T::zero());
        Self { dim: 2, data: vec![l, o, o, -l] }
    }

    /// `μ σ·B`.
    pub fn spin_field(mu: T, field: [T; 3]) -> Self {
        Self::pauli_x().scale(mu * field[0]) + Self::pauli_y().scale(mu * field[1]) + Self::pauli_z().scale(mu * field[2])
    }

    /// Outer product `|v⟩⟨v|` (not normalized).
    pub fn outer(v: &[Complex<T>]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            for k in 0..dim {
                m[(j, k)] = v[j] * v[k].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn scale(&self, a: T) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * a).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                m[(j, k)] = self[(k, j)].conj();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim {
            return Err(structural!("vector length {} does not match dimension {}", v.len(), self.dim));
        }
        Ok(self.mul_vec_unchecked(v))
    }

    pub(crate) fn mul_vec_unchecked(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// `⟨u|M|v⟩`.
    pub fn sandwich(&self, u: &[Complex<T>], v: &[Complex<T>]) -> Result<Complex<T>> {
        let mv = self.mul_vec(v)?;
        if u.len() != self.dim {
            return Err(structural!("vector length {} does not match dimension {}", u.len(), self.dim));
        }
        Ok(u.iter().zip(&mv).map(|(a, b)| a.conj() * b).fold(Complex::new(T::zero(), T::zero()), |s, z| s + z))
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Largest entry of `|M − M†|`.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for j in 0..self.dim {
            for k in j..self.dim {
                worst = worst.max((self[(j, k)] - self[(k, j)].conj()).norm());
            }
        }
        worst
    }

    pub fn distance(&self, other: &Self) -> Result<T> {
        if self.dim != other.dim {
            return Err(structural!("dimension mismatch {} vs {}", self.dim, other.dim));
        }
        Ok(self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| m.max((a - b).norm())))
    }

    /// Row-sum operator norm, an upper bound on the spectral radius.
    pub fn row_sum_norm(&self) -> T {
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().map(|z| z.norm()).sum::<T>())
            .fold(T::zero(), T::max)
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (j, k): (usize, usize)) -> &Complex<T> {
        &self.data[j * self.dim + k]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[j * self.dim + k]
    }
}

impl<T: Real> Add for CMatrix<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Self { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for j in 0..d {
            for l in 0..d {
                let a = self[(j, l)];
                for k in 0..d {
                    out[(j, k)] = out[(j, k)] + a * rhs[(l, k)];
                }
            }
        }
        out
    }
}

/// Square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> RealMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, j: usize) -> &[T] {
        &self.data[j * self.dim..(j + 1) * self.dim]
    }
}

impl<T> Index<(usize, usize)> for RealMatrix<T> {
    type Output = T;
    fn index(&self, (j, k): (usize, usize)) -> &T {
        &self.data[j * self.dim + k]
    }
}

impl<T> IndexMut<(usize, usize)> for RealMatrix<T> {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut T {
        &mut self.data[j * self.dim + k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (CMatrix::<f64>::pauli_x(), CMatrix::pauli_y(), CMatrix::pauli_z());
        let i = CMatrix::identity(2);
        for s in [&x, &y, &z] {
            assert!((s * s).distance(&i).unwrap() < 1e-15);
            assert_eq!(s.hermitian_defect(), 0.0);
        }
        // σx σy = i σz
        let iz = CMatrix::new(2, z.data().iter().map(|v| v * C::i()).collect()).unwrap();
        assert!((&x * &y).distance(&iz).unwrap() < 1e-15);
    }

    #[test]
    fn shape_checks() {
        assert!(CMatrix::<f64>::new(2, vec![C::new(0.0, 0.0); 3]).is_err());
        assert!(CMatrix::<f64>::from_rows(&[vec![C::new(1.0, 0.0)], vec![]]).is_err());
        assert!(CMatrix::<f64>::identity(3).mul_vec(&[C::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn sandwich_of_identity_is_inner_product() {
        let v = [C::new(0.6, 0.0), C::new(0.0, 0.8)];
        let s = CMatrix::identity(2).sandwich(&v, &v).unwrap();
        assert!((s - C::new(1.0, 0.0)).norm() < 1e-15);
    }
}
