use crate::error::{domain, Result};
use crate::Real;

/// Fixed-step time grid: `n_steps` steps of size `dt`, sampling every `stride` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stepping<T> {
    pub dt: T,
    pub n_steps: usize,
    pub stride: usize,
}

impl<T: Real> Stepping<T> {
    pub fn new(dt: T, n_steps: usize) -> Self {
        Self { dt, n_steps, stride: 1 }
    }

    /// Steps of size at most `max_dt` that land exactly on `horizon`.
    pub fn covering(horizon: T, max_dt: T) -> Self {
        let n = (horizon / max_dt).ceil().to_usize().unwrap_or(1).max(1);
        Self::new(horizon / T::from_usize_lossy(n), n)
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn horizon(&self) -> T {
        self.dt * T::from_usize_lossy(self.n_steps)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero() && self.dt.is_finite()) {
            return Err(domain!("dt must be positive, got {}", self.dt));
        }
        if self.n_steps == 0 || self.stride == 0 {
            return Err(domain!("n_steps and stride must be at least 1"));
        }
        Ok(())
    }

    /// Whether the state after `step` steps is recorded.
    #[inline]
    pub fn samples(&self, step: usize) -> bool {
        step % self.stride == 0
    }

    pub fn sample_count(&self) -> usize {
        self.n_steps / self.stride + 1
    }
}

/// Per-snapshot conserved-quantity diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics<T> {
    pub energy: T,
    pub norm: T,
    /// Linear momentum; `None` for discrete systems.
    pub momentum: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T, S> {
    pub times: Vec<T>,
    pub states: Vec<S>,
    pub diagnostics: Vec<Diagnostics<T>>,
}

impl<T: Real, S> Trajectory<T, S> {
    pub(crate) fn with_capacity(n: usize) -> Self {
        Self {
            times: Vec::with_capacity(n),
            states: Vec::with_capacity(n),
            diagnostics: Vec::with_capacity(n),
        }
    }

    pub(crate) fn push(&mut self, t: T, state: S, diag: Diagnostics<T>) {
        self.times.push(t);
        self.states.push(state);
        self.diagnostics.push(diag);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&S> {
        self.states.last()
    }

    /// Largest relative change of the energy from its initial value.
    pub fn energy_drift(&self) -> T {
        relative_drift(self.diagnostics.iter().map(|d| d.energy))
    }

    /// Largest absolute change of the norm from its initial value.
    pub fn norm_drift(&self) -> T {
        let mut it = self.diagnostics.iter().map(|d| d.norm);
        let Some(first) = it.next() else { return T::zero() };
        it.fold(T::zero(), |m, v| m.max((v - first).abs()))
    }
}

pub(crate) fn relative_drift<T: Real>(mut values: impl Iterator<Item = T>) -> T {
    let Some(first) = values.next() else { return T::zero() };
    let scale = first.abs().max(T::epsilon());
    values.fold(T::zero(), |m, v| m.max((v - first).abs() / scale))
}
