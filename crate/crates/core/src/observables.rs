//! Ensemble diagnostics: momentum, entropy, Fisher information, the
//! homogeneity identity and local energy/momentum densities.

use crate::continuous::{fisher_of_slice, ContinuousHamiltonian};
use crate::error::{domain, Result};
use crate::fields::{integrate, integrate_slice, phase_gradient, Ensemble, RealField};
use crate::Real;

/// `Π = ∫ P ∇S dx`.
pub fn ensemble_momentum<T: Real>(e: &Ensemble<T>) -> T {
    integrate(&momentum_density(e))
}

/// Local momentum density `P ∇S`.
///
/// Neighbour differences of `S` are reduced modulo `πħ`: the sign flips of a
/// real wavefunction carry no momentum, and resolved phases (`|∇S| dx < πħ/2`)
/// are unaffected.
pub fn momentum_density<T: Real>(e: &Ensemble<T>) -> RealField<T> {
    let gs = phase_gradient(e.s(), T::PI() * e.hbar());
    let values = e.p().values().iter().zip(gs.values()).map(|(&p, &g)| p * g).collect();
    RealField::new(*e.grid(), values).expect("finite inputs")
}

/// Differential entropy `-∫ P log P dx` (with `0 log 0 = 0`). Line grids only.
pub fn entropy<T: Real>(e: &Ensemble<T>) -> Result<T> {
    if e.grid().is_periodic() {
        return Err(domain!("entropy is defined here for densities on the line (reflecting grid)"));
    }
    let integrand: Vec<T> = e
        .p()
        .values()
        .iter()
        .map(|&p| if p > T::zero() { -p * p.ln() } else { T::zero() })
        .collect();
    Ok(integrate_slice(e.grid(), &integrand))
}

/// Fisher information `∫ P |∇ log P|² dx`, evaluated as `4 ∫ |∇√P|² dx`.
pub fn fisher_information<T: Real>(p: &RealField<T>) -> T {
    fisher_of_slice(p.grid(), p.values())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneityDefects<T> {
    /// `max_{λ ∈ {1/2, 2}} |H[λP, S] − λ^r H[P, S]|`.
    pub scaling_defect: T,
    /// `|H + r⁻¹ ∫ P ∂S/∂t dx|`.
    pub identity_defect: T,
}

pub fn homogeneity_check<T: Real>(
    h: &ContinuousHamiltonian<T>,
    e: &Ensemble<T>,
    r: T,
) -> Result<HomogeneityDefects<T>> {
    if r == T::zero() {
        return Err(domain!("homogeneity degree must be non-zero"));
    }
    let prepared = h.prepare(e.grid())?;
    let base = prepared.evaluate(e)?;
    let mut scaling_defect = T::zero();
    for lambda in [T::lit(0.5), T::lit(2.0)] {
        let scaled = e.with_fields(e.p().scale(lambda)?, e.s().clone())?;
        let v = prepared.evaluate(&scaled)?;
        scaling_defect = scaling_defect.max((v - lambda.powf(r) * base).abs());
    }
    let rates = prepared.eom_rhs(e)?;
    let mean_ds = integrate(&e.p().zip_map(&rates.ds, |p, d| p * d)?);
    Ok(HomogeneityDefects { scaling_defect, identity_defect: (base + mean_ds / r).abs() })
}

/// Local energy density `-P ∂S/∂t` and momentum density `P ∇S` (degree-one kinds).
pub fn local_densities<T: Real>(
    h: &ContinuousHamiltonian<T>,
    e: &Ensemble<T>,
) -> Result<(RealField<T>, RealField<T>)> {
    let rates = h.eom_rhs(e)?;
    let energy = e.p().zip_map(&rates.ds, |p, d| -p * d)?;
    Ok((energy, momentum_density(e)))
}

/// Snapshot of the scalar diagnostics of a continuous ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRecord<T> {
    pub energy: T,
    pub momentum: T,
    pub norm: T,
    /// `None` on periodic grids.
    pub entropy: Option<T>,
    pub fisher: T,
    pub local_energy_density: Option<RealField<T>>,
    pub momentum_density: Option<RealField<T>>,
}

impl<T: Real> DiagnosticsRecord<T> {
    pub fn collect(h: &ContinuousHamiltonian<T>, e: &Ensemble<T>, with_fields: bool) -> Result<Self> {
        let clipped = e.with_fields(e.p().map(|v| v.max(T::zero()))?, e.s().clone())?;
        let (local_energy_density, momentum_density) = if with_fields {
            let (a, b) = local_densities(h, &clipped)?;
            (Some(a), Some(b))
        } else {
            (None, None)
        };
        Ok(Self {
            energy: h.evaluate(&clipped)?,
            momentum: ensemble_momentum(e),
            norm: e.norm(),
            entropy: entropy(&clipped).ok(),
            fisher: fisher_information(clipped.p()),
            local_energy_density,
            momentum_density,
        })
    }
}
