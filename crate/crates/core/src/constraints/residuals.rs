use num_complex::Complex;

use crate::continuous::{GridHamiltonian, PotentialSpec};
use crate::discrete::{CMatrix, DiscreteEnsemble};
use crate::error::{domain, structural, Result};
use crate::fields::{integrate, integrate_slice, phase_gradient, Ensemble};
use crate::observables::{entropy, fisher_information};
use crate::Real;

/// Tolerance used when validating projector families.
pub const PROJECTOR_TOLERANCE: f64 = 1e-12;

/// `∫ P |∇S| dx`: the P-weighted mean magnitude of the momentum density.
///
/// Neighbour differences of `S` are reduced modulo `πħ`, so the sign flips of
/// a real wavefunction at its nodes (phase jumps of exactly `πħ`) read as zero
/// momentum. Genuine gradients are unaffected as long as `|∇S| dx < πħ/2`.
pub fn momentum_density_residual<T: Real>(e: &Ensemble<T>) -> T {
    let gs = phase_gradient(e.s(), T::PI() * e.hbar());
    let integrand: Vec<T> = e.p().values().iter().zip(gs.values()).map(|(&p, &g)| p.max(T::zero()) * g.abs()).collect();
    integrate_slice(e.grid(), &integrand)
}

/// Secondary-constraint residuals of a stationary ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarityResiduals<T> {
    /// `∫ P |∇V| dx` (vanishing classical force).
    pub classical: T,
    /// `‖Ĥψ − Eψ‖₂` with `E = ⟨ψ|Ĥ|ψ⟩` (time-independent Schrödinger equation).
    pub quantum: T,
}

pub fn stationarity_secondary_residuals<T: Real>(
    e: &Ensemble<T>,
    potential: &PotentialSpec<T>,
) -> Result<StationarityResiduals<T>> {
    let grad_v = potential.gradient(e.grid())?;
    let classical = integrate(&e.p().zip_map(&grad_v, |p, g| p.max(T::zero()) * g.abs())?);
    let psi = e.to_wavefunction();
    let quantum = GridHamiltonian::for_wavefunction(&psi, potential)?.eigen_residual(&psi)?;
    Ok(StationarityResiduals { classical, quantum })
}

/// `√(P₁P₂) |sin((S₁ − S₂)/ħ)|`: zero on the `S₁ = S₂` great circle and at the poles.
pub fn spin_geodesic_residual<T: Real>(e: &DiscreteEnsemble<T>) -> Result<T> {
    if e.dim() != 2 {
        return Err(structural!("spin constraint needs a two-level ensemble, got dimension {}", e.dim()));
    }
    let (p, s) = (e.p(), e.s());
    let modulus = (p[0] * p[1]).max(T::zero()).sqrt();
    Ok(modulus * ((s[0] - s[1]) / e.hbar()).sin().abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalityMetrics<T> {
    /// `4 ∫ |∇√P|² dx`.
    pub fisher: T,
    /// `−∫ P log P dx`.
    pub entropy: T,
    /// `fisher − 2πe · e^{−2·entropy}`; non-negative, zero only for Gaussians.
    pub bound_gap: T,
    /// `|excess kurtosis| + |skewness|` of `P`.
    pub gaussian_residual: T,
}

/// Fisher information, entropy, isoperimetric gap and Gaussianity of `P`.
/// Densities on a ring are rejected: the inequality is a statement about the line.
pub fn classicality_metrics<T: Real>(e: &Ensemble<T>) -> Result<ClassicalityMetrics<T>> {
    if e.grid().is_periodic() {
        return Err(domain!("classicality metrics need a reflecting (line) grid"));
    }
    let fisher = fisher_information(e.p());
    let entropy = entropy(e)?;
    let two_pi_e = T::TAU() * T::one().exp();
    let bound_gap = fisher - two_pi_e * (-(entropy + entropy)).exp();
    Ok(ClassicalityMetrics { fisher, entropy, bound_gap, gaussian_residual: gaussian_residual(e) })
}

/// `|excess kurtosis| + |skewness|` of the (renormalized) density.
pub fn gaussian_residual<T: Real>(e: &Ensemble<T>) -> T {
    let grid = e.grid();
    let p: Vec<T> = e.p().values().iter().map(|v| v.max(T::zero())).collect();
    let xs = grid.coordinates();
    let moment = |f: &dyn Fn(T) -> T| -> T {
        let integrand: Vec<T> = xs.iter().zip(&p).map(|(&x, &p)| p * f(x)).collect();
        integrate_slice(grid, &integrand)
    };
    let norm = moment(&|_| T::one());
    let mean = moment(&|x| x) / norm;
    let central = |k: i32| moment(&|x| (x - mean).powi(k)) / norm;
    let var = central(2);
    let skew = central(3) / var.powf(T::lit(1.5));
    let kurt = central(4) / (var * var) - T::lit(3.0);
    kurt.abs() + skew.abs()
}

/// `Σ_j ⟨ψ|E_j|ψ⟩²` for an orthogonal, complete projector family.
pub fn projection_superselection_sum<T: Real>(psi: &[Complex<T>], projectors: &[CMatrix<T>]) -> Result<T> {
    check_projector_family(projectors, psi.len())?;
    let norm: T = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm - T::one()).abs() > T::lit(1e-10) {
        return Err(domain!("state has norm² {norm}, expected 1"));
    }
    let mut total = T::zero();
    for e in projectors {
        let p = e.sandwich(psi, psi)?.re;
        total += p * p;
    }
    Ok(total)
}

pub(crate) fn check_projector_family<T: Real>(projectors: &[CMatrix<T>], dim: usize) -> Result<()> {
    let tol = T::lit(PROJECTOR_TOLERANCE);
    if projectors.is_empty() {
        return Err(domain!("projector family is empty"));
    }
    let mut sum = CMatrix::zeros(dim);
    for (i, e) in projectors.iter().enumerate() {
        if e.dim() != dim {
            return Err(structural!("projector {i} has dimension {}, expected {dim}", e.dim()));
        }
        if e.hermitian_defect() > tol || (e * e).distance(e)? > tol {
            return Err(domain!("matrix {i} is not an orthogonal projector"));
        }
        for (j, f) in projectors.iter().enumerate().skip(i + 1) {
            if (e * f).max_abs() > tol {
                return Err(domain!("projectors {i} and {j} are not mutually orthogonal"));
            }
        }
        sum = sum + e.clone();
    }
    if sum.distance(&CMatrix::identity(dim))? > tol {
        return Err(domain!("projectors do not sum to the identity"));
    }
    Ok(())
}
