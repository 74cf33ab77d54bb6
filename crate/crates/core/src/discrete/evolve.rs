use num_complex::Complex;

use crate::continuous::{Diagnostics, Stepping, Trajectory};
use crate::discrete::{CMatrix, DiscreteEnsemble, DiscreteHamiltonian};
use crate::error::{structural, Error, Result};
use crate::Real;

/// Probability below which a custom-kind step is treated as a stability violation.
pub const DISCRETE_NEGATIVITY_TOLERANCE: f64 = 1e-9;

/// Default step bound `0.01 ħ / ‖H‖` (row-sum norm) for the matrix kinds.
///
/// RK4 is not exactly unitary: a mode with `x = λ dt / ħ` loses `≈ x⁶/144`
/// of its weight per step, so this bound keeps `ΣP` within `1e-9` over
/// runs of ~10⁵ steps.
pub fn discrete_dt_bound<T: Real>(h: &DiscreteHamiltonian<T>, hbar: T) -> Option<T> {
    let norm = h.matrix()?.row_sum_norm();
    (norm > T::zero()).then(|| T::lit(0.01) * hbar / norm)
}

#[derive(Debug, Clone)]
enum Chart<T> {
    /// `ż = −(i/ħ) H z`; regular where the `(P, S)` chart is not (`P_j = 0`).
    Amplitude { matrix: CMatrix<T>, z: Vec<Complex<T>> },
    Canonical,
}

/// Stateful RK4 stepper for discrete ensembles.
///
/// Matrix kinds are integrated in the amplitudes `z_j = √P_j e^{iS_j/ħ}` and
/// read back with phases unwrapped in time; the custom kind is integrated
/// directly in `(P, S)`.
#[derive(Debug, Clone)]
pub struct DiscreteSolver<T> {
    hamiltonian: DiscreteHamiltonian<T>,
    chart: Chart<T>,
    state: DiscreteEnsemble<T>,
    time: T,
    step: usize,
    dt: T,
}

impl<T: Real> DiscreteSolver<T> {
    pub fn new(hamiltonian: &DiscreteHamiltonian<T>, initial: DiscreteEnsemble<T>, dt: T) -> Result<Self> {
        if !(dt > T::zero() && dt.is_finite()) {
            return Err(structural!("dt must be positive"));
        }
        hamiltonian.evaluate(&initial)?;
        let chart = match hamiltonian.matrix() {
            Some(matrix) => Chart::Amplitude { matrix, z: initial.amplitudes() },
            None => Chart::Canonical,
        };
        Ok(Self { hamiltonian: hamiltonian.clone(), chart, state: initial, time: T::zero(), step: 0, dt })
    }

    pub fn state(&self) -> &DiscreteEnsemble<T> {
        &self.state
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn diagnostics(&self) -> Diagnostics<T> {
        Diagnostics {
            energy: self.hamiltonian.evaluate(&self.state).unwrap_or_else(|_| T::nan()),
            norm: self.state.total_probability(),
            momentum: None,
        }
    }

    pub fn step(&mut self) -> Result<()> {
        let next_step = self.step + 1;
        let next_time = self.time + self.dt;
        let abort = |reason: String| Error::SolverAbort { step: next_step, time: next_time.as_f64(), reason };
        let hbar = self.state.hbar();
        let dt = self.dt;
        let next = match &mut self.chart {
            Chart::Amplitude { matrix, z } => {
                let minus_i_over_hbar = Complex::new(T::zero(), -hbar.recip());
                let f = |v: &[Complex<T>]| -> Vec<Complex<T>> {
                    matrix.mul_vec_unchecked(v).into_iter().map(|w| w * minus_i_over_hbar).collect()
                };
                let next_z = rk4(z, dt, f);
                if next_z.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
                    return Err(abort("non-finite amplitude".into()));
                }
                *z = next_z;
                DiscreteEnsemble::from_amplitudes_near(z, hbar, self.state.s())?
            }
            Chart::Canonical => {
                let h = &self.hamiltonian;
                let d = self.state.dim();
                let base = &self.state;
                let eval = |y: &[T]| -> Result<Vec<T>> {
                    let stage = base.with_components(y[..d].to_vec(), y[d..].to_vec());
                    let r = h.eom_rhs(&stage)?;
                    Ok(r.dp.into_iter().chain(r.ds).collect())
                };
                let y0: Vec<T> = base.p().iter().chain(base.s()).copied().collect();
                let y = rk4_fallible(&y0, dt, eval)?;
                if y.iter().any(|v| !v.is_finite()) {
                    return Err(abort("non-finite ensemble component".into()));
                }
                if let Some(j) = y[..d].iter().position(|v| *v < -T::lit(DISCRETE_NEGATIVITY_TOLERANCE)) {
                    return Err(abort(format!("probability {:e} at index {j} below tolerance", y[j])));
                }
                base.with_components(y[..d].to_vec(), y[d..].to_vec())
            }
        };
        self.state = next;
        self.step = next_step;
        self.time = next_time;
        Ok(())
    }
}

fn rk4<T: Real>(y0: &[Complex<T>], dt: T, f: impl Fn(&[Complex<T>]) -> Vec<Complex<T>>) -> Vec<Complex<T>> {
    let half = dt / T::lit(2.0);
    let axpy = |a: T, k: &[Complex<T>]| -> Vec<Complex<T>> { y0.iter().zip(k).map(|(y, k)| y + k * a).collect() };
    let k1 = f(y0);
    let k2 = f(&axpy(half, &k1));
    let k3 = f(&axpy(half, &k2));
    let k4 = f(&axpy(dt, &k3));
    let sixth = dt / T::lit(6.0);
    let two = T::lit(2.0);
    (0..y0.len()).map(|i| y0[i] + (k1[i] + k2[i] * two + k3[i] * two + k4[i]) * sixth).collect()
}

fn rk4_fallible<T: Real>(y0: &[T], dt: T, f: impl Fn(&[T]) -> Result<Vec<T>>) -> Result<Vec<T>> {
    let half = dt / T::lit(2.0);
    let axpy = |a: T, k: &[T]| -> Vec<T> { y0.iter().zip(k).map(|(y, k)| *y + a * *k).collect() };
    let k1 = f(y0)?;
    let k2 = f(&axpy(half, &k1))?;
    let k3 = f(&axpy(half, &k2))?;
    let k4 = f(&axpy(dt, &k3))?;
    let sixth = dt / T::lit(6.0);
    let two = T::lit(2.0);
    Ok((0..y0.len()).map(|i| y0[i] + sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i])).collect())
}

/// Runs `stepping.n_steps` RK4 steps, sampling every `stepping.stride`.
pub fn evolve_discrete<T: Real>(
    hamiltonian: &DiscreteHamiltonian<T>,
    initial: &DiscreteEnsemble<T>,
    stepping: &Stepping<T>,
) -> Result<Trajectory<T, DiscreteEnsemble<T>>> {
    stepping.validate()?;
    let mut solver = DiscreteSolver::new(hamiltonian, initial.clone(), stepping.dt)?;
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
