use num_complex::Complex;

use crate::error::{domain, structural, Result};
use crate::Real;

/// Tolerance on `Σ P_j = 1` for the checked constructor.
pub const DISCRETE_NORM_TOLERANCE: f64 = 1e-10;

/// Canonical state `(P_j, S_j)` on a finite configuration space.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteEnsemble<T> {
    p: Vec<T>,
    s: Vec<T>,
    hbar: T,
}

impl<T: Real> DiscreteEnsemble<T> {
    pub fn new(p: Vec<T>, s: Vec<T>, hbar: T) -> Result<Self> {
        let e = Self::from_raw(p, s, hbar)?;
        if let Some(j) = e.p.iter().position(|v| *v < T::zero()) {
            return Err(domain!("negative probability {} at index {j}", e.p[j]));
        }
        let total = e.total_probability();
        if (total - T::one()).abs() > T::lit(DISCRETE_NORM_TOLERANCE) {
            return Err(domain!("probabilities sum to {total}, expected 1"));
        }
        Ok(e)
    }

    /// Rescales non-negative `p` to unit sum.
    pub fn normalized(p: Vec<T>, s: Vec<T>, hbar: T) -> Result<Self> {
        let total: T = p.iter().copied().sum();
        if !(total > T::zero()) {
            return Err(domain!("probabilities have non-positive sum {total}"));
        }
        Self::new(p.into_iter().map(|v| v / total).collect(), s, hbar)
    }

    /// Checks shapes, finiteness and `ħ` only (integrator stages, perturbed probes).
    pub fn from_raw(p: Vec<T>, s: Vec<T>, hbar: T) -> Result<Self> {
        if p.len() < 2 || p.len() != s.len() {
            return Err(structural!("need matching P and S of length ≥ 2, got {} and {}", p.len(), s.len()));
        }
        if p.iter().chain(&s).any(|v| !v.is_finite()) {
            return Err(structural!("non-finite ensemble component"));
        }
        if !(hbar > T::zero() && hbar.is_finite()) {
            return Err(domain!("hbar must be positive, got {hbar}"));
        }
        Ok(Self { p, s, hbar })
    }

    /// Polar decomposition `z_j = √P_j e^{iS_j/ħ}` of a normalized amplitude vector.
    pub fn from_amplitudes(z: &[Complex<T>], hbar: T) -> Result<Self> {
        let p: Vec<T> = z.iter().map(|v| v.norm_sqr()).collect();
        let s = z.iter().map(|v| if v.norm_sqr() > T::zero() { hbar * v.arg() } else { T::zero() }).collect();
        Self::new(p, s, hbar)
    }

    /// As [`from_amplitudes`](Self::from_amplitudes) but choosing each `S_j`
    /// within `πħ` of `previous`, so phases evolve continuously in time.
    /// Components with `P_j = 0` keep their previous phase.
    pub fn from_amplitudes_near(z: &[Complex<T>], hbar: T, previous: &[T]) -> Result<Self> {
        if previous.len() != z.len() {
            return Err(structural!("phase reference has length {}, expected {}", previous.len(), z.len()));
        }
        let period = T::TAU() * hbar;
        let p: Vec<T> = z.iter().map(|v| v.norm_sqr()).collect();
        let s = z
            .iter()
            .zip(previous)
            .map(|(v, &prev)| {
                if v.norm_sqr() > T::zero() {
                    prev + (hbar * v.arg() - prev).wrap_centered(period)
                } else {
                    prev
                }
            })
            .collect();
        Self::from_raw(p, s, hbar)
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[T] {
        &self.p
    }

    pub fn s(&self) -> &[T] {
        &self.s
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn total_probability(&self) -> T {
        self.p.iter().copied().sum()
    }

    pub fn amplitudes(&self) -> Vec<Complex<T>> {
        self.p
            .iter()
            .zip(&self.s)
            .map(|(&p, &s)| Complex::from_polar(p.max(T::zero()).sqrt(), s / self.hbar))
            .collect()
    }

    pub fn shift_phase(&self, c: T) -> Self {
        Self { p: self.p.clone(), s: self.s.iter().map(|v| *v + c).collect(), hbar: self.hbar }
    }

    pub fn phase_differences(&self) -> PhaseDifferenceMatrix<T> {
        PhaseDifferenceMatrix::from_phases(&self.s)
    }

    pub(crate) fn with_components(&self, p: Vec<T>, s: Vec<T>) -> Self {
        Self { p, s, hbar: self.hbar }
    }
}

/// Antisymmetric matrix `M_jk = S_j − S_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDifferenceMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> PhaseDifferenceMatrix<T> {
    pub fn from_phases(s: &[T]) -> Self {
        let dim = s.len();
        let mut data = vec![T::zero(); dim * dim];
        for j in 0..dim {
            for k in 0..dim {
                data[j * dim + k] = s[j] - s[k];
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> T {
        self.data[j * self.dim + k]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|j| (0..self.dim).all(|k| self.get(j, k) == -self.get(k, j)))
    }

    /// Copy with the single entry `(j, k)` moved by `delta`, leaving `(k, j)`
    /// untouched. Only used to take the partial derivatives `∂F/∂M_jk` that
    /// define transition rates.
    pub(crate) fn nudged(&self, j: usize, k: usize, delta: T) -> Self {
        let mut m = self.clone();
        m.data[j * self.dim + k] += delta;
        m
    }
}
