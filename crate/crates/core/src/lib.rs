//! Classical and quantum statistical ensembles as canonically conjugate
//! fields `(P, S)`: ensemble Hamiltonians, canonical equations of motion,
//! canonical constraints and the superselection rules they induce.
//!
//! Every numerical type is generic over the scalar ([`Real`], implemented for
//! `f32` and `f64`). The `*64` aliases below fix the scalar to `f64`, which is
//! what the tolerances quoted in the tests assume.

pub mod constraints;
pub mod continuous;
pub mod discrete;
mod error;
pub mod fields;
pub mod observables;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Grid64 = fields::Grid1D<f64>;
pub type Field64 = fields::RealField<f64>;
pub type Ensemble64 = fields::Ensemble<f64>;
pub type Wavefunction64 = fields::Wavefunction<f64>;
pub type Potential64 = continuous::PotentialSpec<f64>;
pub type ContinuousHamiltonian64 = continuous::ContinuousHamiltonian<f64>;
pub type DiscreteEnsemble64 = discrete::DiscreteEnsemble<f64>;
pub type DiscreteHamiltonian64 = discrete::DiscreteHamiltonian<f64>;
pub type ConstraintSpec64 = constraints::ConstraintSpec<f64>;

pub type Grid32 = fields::Grid1D<f32>;
pub type Field32 = fields::RealField<f32>;
pub type Ensemble32 = fields::Ensemble<f32>;
pub type Wavefunction32 = fields::Wavefunction<f32>;
pub type DiscreteEnsemble32 = discrete::DiscreteEnsemble<f32>;
