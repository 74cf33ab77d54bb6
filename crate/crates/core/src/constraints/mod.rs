//! Canonical constraints `K[P, S] = 0`, their secondary residuals, and the
//! superposition tests that exhibit the superselection rules they induce.

mod monitor;
mod residuals;
mod spec;

pub use monitor::{
    constraint_preservation_monitor, superposition_test, MonitorReport, MonitoredSystem, RunningSystem, Snapshot,
    SuperselectionReport, Verdict,
};
pub use residuals::{
    classicality_metrics, gaussian_residual, momentum_density_residual, projection_superselection_sum,
    spin_geodesic_residual, stationarity_secondary_residuals, ClassicalityMetrics, StationarityResiduals,
    PROJECTOR_TOLERANCE,
};
pub(crate) use residuals::check_projector_family;
pub use spec::{ConstraintKind, ConstraintSpec, StateRef, DEFAULT_CONSTRAINT_TOLERANCE};
