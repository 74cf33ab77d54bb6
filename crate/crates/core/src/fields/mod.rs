//! Grids, real and complex fields, finite-difference operators, quadrature
//! and the `(P, S) ↔ ψ` polar decomposition.

mod ensemble;
mod field;
mod funcderiv;
mod grid;
mod ops;

pub use ensemble::{Ensemble, Wavefunction, DEFAULT_SUPPORT_FLOOR, NORM_TOLERANCE};
pub(crate) use ensemble::support_mask;
pub use field::RealField;
pub use funcderiv::{numeric_functional_derivative, Conjugate};
pub use grid::{Boundary, Grid1D, MIN_POINTS};
pub use ops::{
    dirichlet_energy, gradient, gradient_values, integrate, integrate_values, laplacian,
    laplacian_values, phase_gradient,
};
pub(crate) use ops::{integrate_slice, laplacian_slice};
