use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Shapes, lengths or grids that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),
    /// Inputs outside the domain of an operation (negative densities, non-Hermitian matrices, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Non-finite values or failed linear solves.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Time integration stopped because a state left the admissible region.
    #[error("solver aborted at step {step} (t = {time}): {reason}")]
    SolverAbort {
        step: usize,
        time: f64,
        reason: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! structural {
    ($($arg:tt)*) => { $crate::Error::Structural(format!($($arg)*)) };
}
macro_rules! domain {
    ($($arg:tt)*) => { $crate::Error::Domain(format!($($arg)*)) };
}
macro_rules! numerical {
    ($($arg:tt)*) => { $crate::Error::Numerical(format!($($arg)*)) };
}
pub(crate) use {domain, numerical, structural};
