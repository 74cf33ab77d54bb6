use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

use crate::constraints::{stationarity_secondary_residuals, ConstraintSpec, StateRef};
use crate::continuous::{CanonicalSolver, ContinuousHamiltonian, CrankNicolson, Diagnostics, PotentialSpec, Stepping};
use crate::discrete::{DiscreteEnsemble, DiscreteHamiltonian, DiscreteSolver};
use crate::error::Result;
use crate::fields::{Ensemble, Wavefunction};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Satisfies,
    ViolatesInitially,
    ViolatesUnderEvolution,
}

impl Verdict {
    pub fn classify<T: Real>(initial: T, max: T, tolerance: T) -> Self {
        if !(initial <= tolerance) {
            Self::ViolatesInitially
        } else if !(max <= tolerance) {
            Self::ViolatesUnderEvolution
        } else {
            Self::Satisfies
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Satisfies => "satisfies",
            Self::ViolatesInitially => "violates_initially",
            Self::ViolatesUnderEvolution => "violates_under_evolution",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperselectionReport<T> {
    pub candidate: String,
    pub constraint: &'static str,
    pub tolerance: T,
    pub residual_initial: T,
    pub residual_max: T,
    pub verdict: Verdict,
    pub secondary_residuals: BTreeMap<String, T>,
}

/// Initial data plus the dynamics that moves it.
#[derive(Debug, Clone)]
pub enum MonitoredSystem<T> {
    /// RK4 on the canonical `(P, S)` equations.
    Canonical { hamiltonian: ContinuousHamiltonian<T>, initial: Ensemble<T> },
    /// Crank–Nicolson on `ψ`, read back through the polar decomposition.
    Reference { potential: PotentialSpec<T>, initial: Wavefunction<T> },
    Discrete { hamiltonian: DiscreteHamiltonian<T>, initial: DiscreteEnsemble<T> },
}

/// Owned snapshot of a continuous or discrete state.
#[derive(Debug, Clone, PartialEq)]
pub enum Snapshot<T> {
    Continuous(Ensemble<T>),
    Discrete(DiscreteEnsemble<T>),
}

impl<T> Snapshot<T> {
    pub fn as_state(&self) -> StateRef<'_, T> {
        match self {
            Self::Continuous(e) => StateRef::Continuous(e),
            Self::Discrete(e) => StateRef::Discrete(e),
        }
    }
}

/// A [`MonitoredSystem`] being stepped forward.
#[derive(Debug, Clone)]
pub enum RunningSystem<T> {
    Canonical(CanonicalSolver<T>),
    Reference(CrankNicolson<T>),
    Discrete(DiscreteSolver<T>),
}

impl<T: Real> MonitoredSystem<T> {
    pub fn start(&self, dt: T) -> Result<RunningSystem<T>> {
        Ok(match self {
            Self::Canonical { hamiltonian, initial } => {
                RunningSystem::Canonical(CanonicalSolver::new(hamiltonian, initial.clone(), dt)?)
            }
            Self::Reference { potential, initial } => RunningSystem::Reference(CrankNicolson::new(initial.clone(), potential, dt)?),
            Self::Discrete { hamiltonian, initial } => RunningSystem::Discrete(DiscreteSolver::new(hamiltonian, initial.clone(), dt)?),
        })
    }
}

impl<T: Real> RunningSystem<T> {
    pub fn step(&mut self) -> Result<()> {
        match self {
            Self::Canonical(s) => s.step(),
            Self::Reference(s) => s.step(),
            Self::Discrete(s) => s.step(),
        }
    }

    pub fn time(&self) -> T {
        match self {
            Self::Canonical(s) => s.time(),
            Self::Reference(s) => s.time(),
            Self::Discrete(s) => s.time(),
        }
    }

    pub fn snapshot(&self) -> Result<Snapshot<T>> {
        Ok(match self {
            Self::Canonical(s) => Snapshot::Continuous(s.state().clone()),
            Self::Reference(s) => Snapshot::Continuous(s.state().to_ensemble()?),
            Self::Discrete(s) => Snapshot::Discrete(s.state().clone()),
        })
    }

    pub fn diagnostics(&self) -> Diagnostics<T> {
        match self {
            Self::Canonical(s) => s.diagnostics(),
            Self::Reference(s) => s.hamiltonian().diagnostics(s.state()),
            Self::Discrete(s) => s.diagnostics(),
        }
    }
}

/// Residual time series of a constraint along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct MonitorReport<T> {
    pub times: Vec<T>,
    pub residuals: Vec<T>,
    /// First sampled time at which the residual exceeded the tolerance.
    pub first_crossing: Option<T>,
    /// The initial state already violated the constraint.
    pub initially_violated: bool,
    pub tolerance: T,
}

impl<T: Real> MonitorReport<T> {
    pub fn residual_initial(&self) -> T {
        self.residuals[0]
    }

    pub fn residual_max(&self) -> T {
        self.residuals.iter().copied().fold(T::zero(), T::max)
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::classify(self.residual_initial(), self.residual_max(), self.tolerance)
    }

    pub fn to_report(&self, candidate: impl Into<String>, constraint: &ConstraintSpec<T>) -> SuperselectionReport<T> {
        SuperselectionReport {
            candidate: candidate.into(),
            constraint: constraint.name(),
            tolerance: self.tolerance,
            residual_initial: self.residual_initial(),
            residual_max: self.residual_max(),
            verdict: self.verdict(),
            secondary_residuals: BTreeMap::new(),
        }
    }
}

/// Evolves `system` and evaluates the constraint residual after every step.
pub fn constraint_preservation_monitor<T: Real>(
    system: &MonitoredSystem<T>,
    constraint: &ConstraintSpec<T>,
    stepping: &Stepping<T>,
) -> Result<MonitorReport<T>> {
    stepping.validate()?;
    let mut run = system.start(stepping.dt)?;
    let mut times = Vec::with_capacity(stepping.n_steps + 1);
    let mut residuals = Vec::with_capacity(stepping.n_steps + 1);
    let mut first_crossing = None;
    for k in 0..=stepping.n_steps {
        if k > 0 {
            run.step()?;
        }
        let r = constraint.residual(run.snapshot()?.as_state())?;
        if first_crossing.is_none() && !constraint.is_satisfied(r) {
            first_crossing = Some(run.time());
        }
        times.push(run.time());
        residuals.push(r);
    }
    let initially_violated = !constraint.is_satisfied(residuals[0]);
    Ok(MonitorReport { times, residuals, first_crossing, initially_violated, tolerance: constraint.tolerance })
}

/// Forms `aψ₁ + bψ₂` (normalized), evolves it with the reference dynamics in
/// `potential`, and reports whether `constraint` holds initially and stays
/// satisfied. Stationarity residuals of the initial state are attached.
pub fn superposition_test<T: Real>(
    psi1: &Wavefunction<T>,
    psi2: &Wavefunction<T>,
    a: Complex<T>,
    b: Complex<T>,
    constraint: &ConstraintSpec<T>,
    potential: &PotentialSpec<T>,
    stepping: &Stepping<T>,
) -> Result<SuperselectionReport<T>> {
    let psi = Wavefunction::superpose(a, psi1, b, psi2)?;
    let system = MonitoredSystem::Reference { potential: potential.clone(), initial: psi.clone() };
    let monitor = constraint_preservation_monitor(&system, constraint, stepping)?;
    let candidate = format!("({a})·psi1 + ({b})·psi2");
    let mut report = monitor.to_report(candidate, constraint);
    let stationarity = stationarity_secondary_residuals(&psi.to_ensemble()?, potential)?;
    report.secondary_residuals.insert("stationarity_classical".into(), stationarity.classical);
    report.secondary_residuals.insert("stationarity_quantum".into(), stationarity.quantum);
    Ok(report)
}
