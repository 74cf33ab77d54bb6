use crate::constraints::{gaussian_residual, momentum_density_residual, spin_geodesic_residual, check_projector_family};
use crate::discrete::{CMatrix, DiscreteEnsemble};
use crate::error::{domain, structural, Result};
use crate::fields::Ensemble;
use crate::Real;

pub const DEFAULT_CONSTRAINT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintKind<T> {
    /// `P ∇S = 0` (energy superselection).
    MomentumDensity,
    /// `S₁ = S₂` for a two-level ensemble (spin-direction superselection).
    SpinGeodesic,
    /// Gaussian `P`, the minimizer of Fisher information at fixed entropy.
    Classicality,
    /// `Σ_j ⟨ψ|E_j|ψ⟩² = 1` for an orthogonal, complete projector family.
    ProjectionFamily(Vec<CMatrix<T>>),
}

/// A canonical constraint `K[P, S] = 0` with the tolerance used to judge it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSpec<T> {
    pub kind: ConstraintKind<T>,
    pub tolerance: T,
}

/// Borrowed continuous or discrete state.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a, T> {
    Continuous(&'a Ensemble<T>),
    Discrete(&'a DiscreteEnsemble<T>),
}

impl<'a, T> From<&'a Ensemble<T>> for StateRef<'a, T> {
    fn from(e: &'a Ensemble<T>) -> Self {
        Self::Continuous(e)
    }
}

impl<'a, T> From<&'a DiscreteEnsemble<T>> for StateRef<'a, T> {
    fn from(e: &'a DiscreteEnsemble<T>) -> Self {
        Self::Discrete(e)
    }
}

impl<T: Real> ConstraintSpec<T> {
    pub fn new(kind: ConstraintKind<T>) -> Self {
        Self { kind, tolerance: T::lit(DEFAULT_CONSTRAINT_TOLERANCE) }
    }

    pub fn momentum_density() -> Self {
        Self::new(ConstraintKind::MomentumDensity)
    }

    pub fn spin_geodesic() -> Self {
        Self::new(ConstraintKind::SpinGeodesic)
    }

    pub fn classicality() -> Self {
        Self::new(ConstraintKind::Classicality)
    }

    pub fn projection_family(projectors: Vec<CMatrix<T>>) -> Result<Self> {
        let dim = projectors.first().map(|p| p.dim()).unwrap_or(0);
        check_projector_family(&projectors, dim)?;
        Ok(Self::new(ConstraintKind::ProjectionFamily(projectors)))
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Result<Self> {
        if !(tolerance > T::zero() && tolerance.is_finite()) {
            return Err(domain!("constraint tolerance must be positive, got {tolerance}"));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ConstraintKind::MomentumDensity => "momentum_density",
            ConstraintKind::SpinGeodesic => "spin_geodesic",
            ConstraintKind::Classicality => "classicality",
            ConstraintKind::ProjectionFamily(_) => "projection_family",
        }
    }

    /// Non-negative residual, zero exactly on the constraint surface.
    pub fn residual<'a>(&self, state: impl Into<StateRef<'a, T>>) -> Result<T> {
        match (&self.kind, state.into()) {
            (ConstraintKind::MomentumDensity, StateRef::Continuous(e)) => Ok(momentum_density_residual(e)),
            (ConstraintKind::Classicality, StateRef::Continuous(e)) => Ok(gaussian_residual(e)),
            (ConstraintKind::SpinGeodesic, StateRef::Discrete(e)) => spin_geodesic_residual(e),
            (ConstraintKind::ProjectionFamily(family), StateRef::Discrete(e)) => {
                if family.first().map(|p| p.dim()) != Some(e.dim()) {
                    return Err(structural!("projectors do not act on dimension {}", e.dim()));
                }
                let z = e.amplitudes();
                let mut sum = T::zero();
                for proj in family {
                    let p = proj.sandwich(&z, &z)?.re;
                    sum += p * p;
                }
                Ok((T::one() - sum).max(T::zero()))
            }
            (_, StateRef::Continuous(_)) => Err(structural!("{} constraint needs a discrete ensemble", self.name())),
            (_, StateRef::Discrete(_)) => Err(structural!("{} constraint needs a continuous ensemble", self.name())),
        }
    }

    pub fn is_satisfied(&self, residual: T) -> bool {
        residual <= self.tolerance
    }
}
