//! Ensemble Hamiltonians on continuous configuration space, their canonical
//! equations of motion, time integration, and the reference Schrödinger solver.

mod canonical;
mod compare;
mod hamiltonian;
mod potential;
mod schrodinger;
pub mod states;
mod trajectory;
mod tridiag;

pub use canonical::{evolve_canonical, quantum_dt_bound, CanonicalSolver, DEFAULT_NEGATIVITY_TOLERANCE};
pub use compare::{compare_madelung_schrodinger, compare_with_floor, distance_to_reference, ComparisonReport, ComparisonSample};
pub use hamiltonian::{
    quantum_potential, quantum_potential_with_floor, ContinuousHamiltonian, FieldRates,
    PreparedHamiltonian,
};
pub(crate) use hamiltonian::fisher_of_slice;
pub use potential::PotentialSpec;
pub use schrodinger::{
    momentum_expectation, schrodinger_reference_evolve, CrankNicolson, GridHamiltonian,
};
pub use trajectory::{Diagnostics, Stepping, Trajectory};
