//! Initial wavefunctions used by tests, presets and the acceptance suite.

use num_complex::Complex;

use crate::continuous::{GridHamiltonian, PotentialSpec};
use crate::error::{domain, Result};
use crate::fields::{Grid1D, Wavefunction};
use crate::Real;

/// Gaussian packet with position spread `sigma` (so `|ψ|²` has variance `sigma²`),
/// centre `x0` and mean momentum `p0`. On periodic grids the envelope uses the
/// minimum-image displacement.
pub fn gaussian<T: Real>(grid: Grid1D<T>, hbar: T, mass: T, sigma: T, x0: T, p0: T) -> Result<Wavefunction<T>> {
    if !(sigma > T::zero()) {
        return Err(domain!("sigma must be positive"));
    }
    let four_var = T::lit(4.0) * sigma * sigma;
    Wavefunction::from_fn(grid, hbar, mass, |x| {
        let d = displacement(&grid, x, x0);
        Complex::from_polar((-d * d / four_var).exp(), p0 * x / hbar)
    })
}

/// Harmonic-oscillator coherent state: Gaussian of width `σ² = ħ/2mω`.
pub fn coherent_state<T: Real>(grid: Grid1D<T>, hbar: T, mass: T, omega: T, x0: T, p0: T) -> Result<Wavefunction<T>> {
    let sigma = (hbar / (T::lit(2.0) * mass * omega)).sqrt();
    gaussian(grid, hbar, mass, sigma, x0, p0)
}

fn displacement<T: Real>(grid: &Grid1D<T>, x: T, x0: T) -> T {
    let d = x - x0;
    if grid.is_periodic() {
        d.wrap_centered(grid.length())
    } else {
        d
    }
}

/// Analytic harmonic-oscillator eigenfunction (Hermite function) of order `n`.
pub fn ho_eigenstate_analytic<T: Real>(grid: Grid1D<T>, hbar: T, mass: T, omega: T, n: usize) -> Result<Wavefunction<T>> {
    let scale = (mass * omega / hbar).sqrt();
    Wavefunction::from_fn(grid, hbar, mass, |x| {
        let xi = x * scale;
        let mut prev = T::zero();
        let mut cur = (-xi * xi / T::lit(2.0)).exp();
        for k in 0..n {
            let kf = T::from_usize_lossy(k);
            let next = (T::lit(2.0) / (kf + T::one())).sqrt() * xi * cur - (kf / (kf + T::one())).sqrt() * prev;
            prev = cur;
            cur = next;
        }
        Complex::new(cur, T::zero())
    })
}

/// Eigenvector of the discretized oscillator Hamiltonian closest to the
/// analytic state of order `n`, with its eigenvalue.
pub fn ho_eigenstate<T: Real>(grid: Grid1D<T>, hbar: T, mass: T, omega: T, n: usize) -> Result<(Wavefunction<T>, T)> {
    let guess = ho_eigenstate_analytic(grid, hbar, mass, omega, n)?;
    GridHamiltonian::new(grid, hbar, mass, &PotentialSpec::harmonic(mass, omega))?.refine_eigenstate(&guess)
}

/// `e^{ikx}` normalized on the grid.
pub fn plane_wave<T: Real>(grid: Grid1D<T>, hbar: T, mass: T, k: T) -> Result<Wavefunction<T>> {
    Wavefunction::from_fn(grid, hbar, mass, |x| Complex::from_polar(T::one(), k * x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standing {
    Cos,
    Sin,
}

/// `cos kx` or `sin kx` normalized on the grid (ring eigenstates of equal energy).
pub fn standing_wave<T: Real>(grid: Grid1D<T>, hbar: T, mass: T, k: T, kind: Standing) -> Result<Wavefunction<T>> {
    Wavefunction::from_fn(grid, hbar, mass, |x| {
        let v = match kind {
            Standing::Cos => (k * x).cos(),
            Standing::Sin => (k * x).sin(),
        };
        Complex::new(v, T::zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_functions_are_orthonormal() {
        let g = Grid1D::<f64>::reflecting(-10.0, 10.0, 1024).unwrap();
        let states: Vec<_> = (0..4).map(|n| ho_eigenstate_analytic(g, 1.0, 1.0, 1.0, n).unwrap()).collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let o = a.inner(b).unwrap().norm();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((o - want).abs() < 1e-10, "{i}{j} {o}");
            }
        }
    }

    #[test]
    fn refined_eigenstates_are_discrete_eigenvectors() {
        let g = Grid1D::<f64>::reflecting(-10.0, 10.0, 512).unwrap();
        let h = GridHamiltonian::new(g, 1.0, 1.0, &PotentialSpec::harmonic(1.0, 1.0)).unwrap();
        for n in 0..3 {
            let (psi, e) = ho_eigenstate(g, 1.0, 1.0, 1.0, n).unwrap();
            assert!(h.eigen_residual(&psi).unwrap() < 1e-9);
            assert!((e - (n as f64 + 0.5)).abs() < 1e-3);
        }
    }

    #[test]
    fn gaussian_spread_is_sigma() {
        let g = Grid1D::<f64>::reflecting(-10.0, 10.0, 1024).unwrap();
        let psi = gaussian(g, 1.0, 1.0, 0.8, 1.0, 0.0).unwrap();
        let p = psi.density();
        let xs = g.coordinates();
        let mean: f64 = crate::fields::integrate_slice(&g, &p.values().iter().zip(&xs).map(|(p, x)| p * x).collect::<Vec<_>>());
        let var: f64 = crate::fields::integrate_slice(
            &g,
            &p.values().iter().zip(&xs).map(|(p, x)| p * (x - mean).powi(2)).collect::<Vec<_>>(),
        );
        assert!((mean - 1.0).abs() < 1e-10);
        assert!((var - 0.64).abs() < 1e-10);
    }
}
