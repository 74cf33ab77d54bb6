//! Explicit RK4 integration of the canonical field equations.

use crate::continuous::{ContinuousHamiltonian, Diagnostics, PreparedHamiltonian, Stepping, Trajectory};
use crate::error::{structural, Error, Result};
use crate::fields::{support_mask, Ensemble, Grid1D, RealField, DEFAULT_SUPPORT_FLOOR};
use crate::observables::ensemble_momentum;
use crate::Real;

/// Absolute density below which a step is treated as a stability violation.
pub const DEFAULT_NEGATIVITY_TOLERANCE: f64 = 1e-9;

/// Largest stable-by-default step for the quantum kind: `0.1 · m dx² / ħ`.
pub fn quantum_dt_bound<T: Real>(e: &Ensemble<T>) -> T {
    let dx = e.grid().dx();
    T::lit(0.1) * e.mass() * dx * dx / e.hbar()
}

/// Stateful RK4 stepper over `(P, S)`.
///
/// `P` is never renormalized; norm drift shows up in the diagnostics.
#[derive(Debug, Clone)]
pub struct CanonicalSolver<T> {
    hamiltonian: PreparedHamiltonian<T>,
    state: Ensemble<T>,
    time: T,
    step: usize,
    dt: T,
    negativity_tolerance: T,
    support_floor: T,
}

impl<T: Real> CanonicalSolver<T> {
    pub fn new(hamiltonian: &ContinuousHamiltonian<T>, initial: Ensemble<T>, dt: T) -> Result<Self> {
        if !(dt > T::zero() && dt.is_finite()) {
            return Err(structural!("dt must be positive"));
        }
        let prepared = hamiltonian.prepare(initial.grid())?;
        prepared.evaluate(&initial)?;
        Ok(Self {
            hamiltonian: prepared,
            state: initial,
            time: T::zero(),
            step: 0,
            dt,
            negativity_tolerance: T::lit(DEFAULT_NEGATIVITY_TOLERANCE),
            support_floor: T::lit(DEFAULT_SUPPORT_FLOOR),
        })
    }

    /// Relative density below which `S` is not evolved but extended linearly
    /// from the edge of the support (quantum kind only; the other kinds
    /// evolve `S` everywhere). Zero evolves every sample with `P > 0`.
    pub fn with_support_floor(mut self, floor: T) -> Self {
        self.support_floor = floor;
        self
    }

    pub fn with_negativity_tolerance(mut self, tol: T) -> Self {
        self.negativity_tolerance = tol;
        self
    }

    pub fn state(&self) -> &Ensemble<T> {
        &self.state
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    pub fn hamiltonian(&self) -> &PreparedHamiltonian<T> {
        &self.hamiltonian
    }

    /// Energy, norm and momentum of the current state. Small negative
    /// densities left by the integrator are clipped for the energy.
    pub fn diagnostics(&self) -> Diagnostics<T> {
        let e = &self.state;
        let clipped = e
            .p()
            .map(|v| v.max(T::zero()))
            .and_then(|p| e.with_fields(p, e.s().clone()));
        let energy = clipped
            .and_then(|c| self.hamiltonian.evaluate(&c))
            .unwrap_or_else(|_| T::nan());
        Diagnostics { energy, norm: e.norm(), momentum: Some(ensemble_momentum(e)) }
    }

    pub fn step(&mut self) -> Result<()> {
        let grid = *self.state.grid();
        let (hbar, mass) = (self.state.hbar(), self.state.mass());
        let n = grid.len();
        let p0 = self.state.p().values();
        let s0 = self.state.s().values();
        let dt = self.dt;
        let half = dt / T::lit(2.0);

        let mut kp = [vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n]];
        let mut ks = kp.clone();
        let mut p = vec![T::zero(); n];
        let mut s = vec![T::zero(); n];

        // only the quantum phase equation is undefined where P vanishes
        let masked = matches!(self.hamiltonian.kind(), ContinuousHamiltonian::Quantum { .. });
        let floor = self.support_floor;
        let support_of = |p: &[T]| if masked { support_mask(p, floor) } else { vec![true; n] };
        let mut s_ext = vec![T::zero(); n];
        let mut rhs = |p: &[T], s: &[T], dp: &mut [T], ds: &mut [T]| {
            let support = support_of(p);
            s_ext.copy_from_slice(s);
            extend_phase(&grid, &support, &mut s_ext);
            self.hamiltonian.rhs_into(&grid, hbar, mass, p, &s_ext, dp, ds);
            for i in 0..n {
                if !support[i] {
                    ds[i] = T::zero();
                }
            }
        };

        {
            let (a, b) = (&mut kp[0], &mut ks[0]);
            rhs(p0, s0, a, b);
        }
        for stage in 1..4 {
            let h = if stage == 3 { dt } else { half };
            for i in 0..n {
                p[i] = p0[i] + h * kp[stage - 1][i];
                s[i] = s0[i] + h * ks[stage - 1][i];
            }
            let (a, b) = (&mut kp[stage], &mut ks[stage]);
            rhs(&p, &s, a, b);
        }
        let sixth = dt / T::lit(6.0);
        let two = T::lit(2.0);
        for i in 0..n {
            p[i] = p0[i] + sixth * (kp[0][i] + two * kp[1][i] + two * kp[2][i] + kp[3][i]);
            s[i] = s0[i] + sixth * (ks[0][i] + two * ks[1][i] + two * ks[2][i] + ks[3][i]);
        }

        let next_step = self.step + 1;
        let next_time = self.time + dt;
        let abort = |reason: String| Error::SolverAbort { step: next_step, time: next_time.as_f64(), reason };
        if let Some(i) = p.iter().chain(&s).position(|v| !v.is_finite()) {
            return Err(abort(format!("non-finite field value at index {}", i % n)));
        }
        let (imin, pmin) = p
            .iter()
            .copied()
            .enumerate()
            .fold((0, T::infinity()), |(bi, bv), (i, v)| if v < bv { (i, v) } else { (bi, bv) });
        if pmin < -self.negativity_tolerance {
            return Err(abort(format!("density {pmin:e} at index {imin} below tolerance")));
        }

        let support = support_of(&p);
        extend_phase(&grid, &support, &mut s);
        self.state = self.state.with_fields(
            RealField::new(grid, p)?,
            RealField::new(grid, s)?,
        )?;
        self.time = next_time;
        self.step = next_step;
        Ok(())
    }
}

/// Overwrites `s` outside the support by linear extrapolation from the
/// nearest supported sample, using the one-sided slope just inside the edge.
pub(crate) fn extend_phase<T: Real>(grid: &Grid1D<T>, support: &[bool], s: &mut [T]) {
    let n = s.len();
    if support.iter().all(|&b| b) || !support.iter().any(|&b| b) {
        return;
    }
    let periodic = grid.is_periodic();
    let dx = grid.dx();
    let step = |i: usize, forward: bool| -> Option<usize> {
        match (forward, periodic) {
            (true, _) if i + 1 < n => Some(i + 1),
            (true, true) => Some(0),
            (false, _) if i > 0 => Some(i - 1),
            (false, true) => Some(n - 1),
            _ => None,
        }
    };
    // (source index, signed distance in samples) for every unsupported sample
    let mut best: Vec<Option<(usize, isize)>> = vec![None; n];
    for forward in [true, false] {
        for start in 0..n {
            if !support[start] {
                continue;
            }
            let Some(next) = step(start, forward) else { continue };
            if support[next] {
                continue;
            }
            let mut k = next;
            let mut dist: isize = 1;
            loop {
                let signed = if forward { dist } else { -dist };
                match best[k] {
                    Some((_, d)) if d.abs() <= dist => {}
                    _ => best[k] = Some((start, signed)),
                }
                match step(k, forward) {
                    Some(j) if !support[j] && j != start => {
                        k = j;
                        dist += 1;
                    }
                    _ => break,
                }
            }
        }
    }
    let snapshot = s.to_vec();
    for k in 0..n {
        if let Some((src, d)) = best[k] {
            // slope from the supported neighbour on the inner side of the edge
            let inner = if d > 0 { step(src, false) } else { step(src, true) };
            let slope = match inner {
                Some(j) if support[j] => {
                    let diff = snapshot[src] - snapshot[j];
                    if d > 0 { diff / dx } else { -diff / dx }
                }
                _ => T::zero(),
            };
            s[k] = snapshot[src] + slope * dx * T::lit(d as f64);
        }
    }
}

/// Runs RK4 for `stepping.n_steps` steps, sampling every `stepping.stride`.
pub fn evolve_canonical<T: Real>(
    hamiltonian: &ContinuousHamiltonian<T>,
    initial: &Ensemble<T>,
    stepping: &Stepping<T>,
) -> Result<Trajectory<T, Ensemble<T>>> {
    stepping.validate()?;
    let mut solver = CanonicalSolver::new(hamiltonian, initial.clone(), stepping.dt)?;
    let mut traj = Trajectory::with_capacity(stepping.sample_count());
    traj.push(T::zero(), initial.clone(), solver.diagnostics());
    for k in 1..=stepping.n_steps {
        solver.step()?;
        if stepping.samples(k) {
            traj.push(solver.time(), solver.state().clone(), solver.diagnostics());
        }
    }
    Ok(traj)
}
