//! Canonical ensembles on finite configuration spaces: rate equations, the
//! general-basis quantum ensemble Hamiltonian and the spin one-half system.

mod bloch;
mod ensemble;
mod evolve;
mod hamiltonian;
mod matrix;

pub use bloch::{bloch_map, expectation_sigma, BlochPoint};
pub use ensemble::{DiscreteEnsemble, PhaseDifferenceMatrix, DISCRETE_NORM_TOLERANCE};
pub use evolve::{discrete_dt_bound, evolve_discrete, DiscreteSolver, DISCRETE_NEGATIVITY_TOLERANCE};
pub use hamiltonian::{
    rate_rhs, CustomHamiltonian, DiscreteHamiltonian, DiscreteRates, EomWarning, CUSTOM_DERIVATIVE_STEP,
    HERMITIAN_TOLERANCE,
};
pub use matrix::{CMatrix, RealMatrix};
