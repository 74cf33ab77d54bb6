use crate::continuous::{CanonicalSolver, ContinuousHamiltonian, CrankNicolson, PotentialSpec, Stepping};
use crate::error::Result;
use crate::fields::{integrate_slice, phase_gradient, Ensemble, DEFAULT_SUPPORT_FLOOR};
use crate::Real;

/// Distances between the canonical and reference solutions at one sample time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonSample<T> {
    pub time: T,
    /// `max |P − |ψ|²|`.
    pub linf_p: T,
    /// `(∫ (P − |ψ|²)² dx)^{1/2}`.
    pub l2_p: T,
    /// `max |∇S − ħ ∇arg ψ|` over the support of `|ψ|²`.
    pub linf_grad_s: T,
    /// `∫ |ψ|² |∇S − ħ ∇arg ψ| dx`.
    pub weighted_grad_s: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport<T> {
    pub samples: Vec<ComparisonSample<T>>,
}

impl<T: Real> ComparisonReport<T> {
    fn max_of(&self, f: impl Fn(&ComparisonSample<T>) -> T) -> T {
        self.samples.iter().map(f).fold(T::zero(), T::max)
    }

    pub fn max_linf_p(&self) -> T {
        self.max_of(|s| s.linf_p)
    }

    pub fn max_l2_p(&self) -> T {
        self.max_of(|s| s.l2_p)
    }

    pub fn max_linf_grad_s(&self) -> T {
        self.max_of(|s| s.linf_grad_s)
    }

    pub fn max_weighted_grad_s(&self) -> T {
        self.max_of(|s| s.weighted_grad_s)
    }
}

/// Runs the quantum canonical equations and the reference Schrödinger solver
/// side by side from the same initial data.
pub fn compare_madelung_schrodinger<T: Real>(
    e0: &Ensemble<T>,
    potential: &PotentialSpec<T>,
    stepping: &Stepping<T>,
) -> Result<ComparisonReport<T>> {
    compare_with_floor(e0, potential, stepping, T::lit(DEFAULT_SUPPORT_FLOOR))
}

/// As [`compare_madelung_schrodinger`] with an explicit support floor for the
/// phase-gradient distance.
pub fn compare_with_floor<T: Real>(
    e0: &Ensemble<T>,
    potential: &PotentialSpec<T>,
    stepping: &Stepping<T>,
    support_floor: T,
) -> Result<ComparisonReport<T>> {
    stepping.validate()?;
    let h = ContinuousHamiltonian::quantum(potential.clone());
    let mut canonical = CanonicalSolver::new(&h, e0.clone(), stepping.dt)?;
    let mut reference = CrankNicolson::new(e0.to_wavefunction(), potential, stepping.dt)?;
    let mut samples = Vec::with_capacity(stepping.sample_count());
    samples.push(distance(canonical.state(), &reference, support_floor)?);
    for k in 1..=stepping.n_steps {
        canonical.step()?;
        reference.step()?;
        if stepping.samples(k) {
            samples.push(distance(canonical.state(), &reference, support_floor)?);
        }
    }
    Ok(ComparisonReport { samples })
}

/// Distance between a canonical state and the reference solver's current state,
/// with the default support floor.
pub fn distance_to_reference<T: Real>(e: &Ensemble<T>, reference: &CrankNicolson<T>) -> Result<ComparisonSample<T>> {
    distance(e, reference, T::lit(DEFAULT_SUPPORT_FLOOR))
}

fn distance<T: Real>(e: &Ensemble<T>, reference: &CrankNicolson<T>, floor: T) -> Result<ComparisonSample<T>> {
    let grid = e.grid();
    let psi = reference.state();
    let ref_ens = psi.to_ensemble_with_floor(floor)?;
    let period = T::PI() * e.hbar();
    let gs = phase_gradient(e.s(), period);
    let gs_ref = phase_gradient(ref_ens.s(), period);
    let support = ref_ens.support(floor);
    let p = e.p().values();
    let p_ref = ref_ens.p().values();

    let mut linf_p = T::zero();
    let mut linf_grad_s = T::zero();
    let mut sq = Vec::with_capacity(p.len());
    let mut weighted = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        let d = p[i] - p_ref[i];
        linf_p = linf_p.max(d.abs());
        sq.push(d * d);
        let dg = (gs[i] - gs_ref[i]).abs();
        weighted.push(p_ref[i] * dg);
        if support[i] {
            linf_grad_s = linf_grad_s.max(dg);
        }
    }
    Ok(ComparisonSample {
        time: reference.time(),
        linf_p,
        l2_p: integrate_slice(grid, &sq).sqrt(),
        linf_grad_s,
        weighted_grad_s: integrate_slice(grid, &weighted),
    })
}
