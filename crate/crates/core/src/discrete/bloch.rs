use crate::discrete::DiscreteEnsemble;
use crate::error::{domain, structural, Result};
use crate::Real;

/// Bloch-sphere coordinates with `P₁ = cos²(θ/2)` and `φ = (S₁ − S₂)/ħ mod 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> BlochPoint<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta >= T::zero() && theta <= T::PI()) || !phi.is_finite() {
            return Err(domain!("Bloch angles out of range: theta = {theta}, phi = {phi}"));
        }
        Ok(Self { theta, phi: phi.wrap_positive(T::TAU()) })
    }

    /// The point whose spin expectation points along `n` (need not be unit).
    pub fn along(n: [T; 3]) -> Result<Self> {
        let r = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if !(r > T::zero()) {
            return Err(domain!("direction must be non-zero"));
        }
        let theta = (n[2] / r).max(-T::one()).min(T::one()).acos();
        let phi = if n[0] == T::zero() && n[1] == T::zero() { T::zero() } else { (-n[1]).atan2(n[0]) };
        Self::new(theta, phi)
    }

    /// Inverse map in the `S₂ = 0` gauge.
    pub fn to_ensemble(&self, hbar: T) -> Result<DiscreteEnsemble<T>> {
        let half = self.theta / T::lit(2.0);
        let (c, s) = (half.cos(), half.sin());
        DiscreteEnsemble::normalized(vec![c * c, s * s], vec![hbar * self.phi, T::zero()], hbar)
    }

    /// Spin expectation `⟨σ⟩ = (sin θ cos φ, −sin θ sin φ, cos θ)`.
    ///
    /// The `y` component carries a minus sign because `φ` is defined through
    /// `S₁ − S₂`, the opposite of the relative phase of the second amplitude.
    pub fn unit_vector(&self) -> [T; 3] {
        let st = self.theta.sin();
        [st * self.phi.cos(), -st * self.phi.sin(), self.theta.cos()]
    }
}

pub fn bloch_map<T: Real>(e: &DiscreteEnsemble<T>) -> Result<BlochPoint<T>> {
    if e.dim() != 2 {
        return Err(structural!("Bloch map needs a two-level ensemble, got dimension {}", e.dim()));
    }
    let p = e.p();
    let theta = T::lit(2.0) * p[1].max(T::zero()).sqrt().atan2(p[0].max(T::zero()).sqrt());
    let phi = if p[0] * p[1] == T::zero() {
        T::zero()
    } else {
        ((e.s()[0] - e.s()[1]) / e.hbar()).wrap_positive(T::TAU())
    };
    Ok(BlochPoint { theta, phi })
}

/// `(⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩)` computed from the amplitudes.
pub fn expectation_sigma<T: Real>(e: &DiscreteEnsemble<T>) -> Result<[T; 3]> {
    if e.dim() != 2 {
        return Err(structural!("spin expectation needs a two-level ensemble, got dimension {}", e.dim()));
    }
    let z = e.amplitudes();
    let c = z[0].conj() * z[1];
    let two = T::lit(2.0);
    Ok([two * c.re, two * c.im, z[0].norm_sqr() - z[1].norm_sqr()])
}
