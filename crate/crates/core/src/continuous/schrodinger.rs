//! Reference Schrödinger solver: 3-point kinetic stencil, Crank–Nicolson steps.

use num_complex::Complex;

use crate::continuous::tridiag::TridiagonalSolver;
use crate::continuous::{Diagnostics, PotentialSpec, Stepping, Trajectory};
use crate::error::{domain, numerical, structural, Result};
use crate::fields::{Grid1D, Wavefunction};
use crate::Real;

/// `Ĥ = -(ħ²/2m) ∇² + V` on a grid: cyclic on periodic grids, hard walls
/// just outside the end samples on reflecting grids.
#[derive(Debug, Clone)]
pub struct GridHamiltonian<T> {
    grid: Grid1D<T>,
    hbar: T,
    mass: T,
    v: Vec<T>,
}

impl<T: Real> GridHamiltonian<T> {
    pub fn new(grid: Grid1D<T>, hbar: T, mass: T, potential: &PotentialSpec<T>) -> Result<Self> {
        if !(hbar > T::zero() && mass > T::zero()) {
            return Err(domain!("hbar and mass must be positive"));
        }
        let v = potential.values(&grid)?.into_values();
        Ok(Self { grid, hbar, mass, v })
    }

    pub fn for_wavefunction(psi: &Wavefunction<T>, potential: &PotentialSpec<T>) -> Result<Self> {
        Self::new(*psi.grid(), psi.hbar(), psi.mass(), potential)
    }

    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    /// Kinetic coupling `ħ²/(2m dx²)`.
    fn coupling(&self) -> T {
        self.hbar * self.hbar / (T::lit(2.0) * self.mass * self.grid.dx() * self.grid.dx())
    }

    fn diagonal(&self, i: usize) -> T {
        T::lit(2.0) * self.coupling() + self.v[i]
    }

    pub fn apply(&self, psi: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = psi.len();
        let c = self.coupling();
        let periodic = self.grid.is_periodic();
        let zero = Complex::new(T::zero(), T::zero());
        (0..n)
            .map(|i| {
                let left = if i > 0 { psi[i - 1] } else if periodic { psi[n - 1] } else { zero };
                let right = if i + 1 < n { psi[i + 1] } else if periodic { psi[0] } else { zero };
                psi[i] * self.diagonal(i) - (left + right) * c
            })
            .collect()
    }

    /// `⟨ψ|Ĥ|ψ⟩` with the grid quadrature.
    pub fn expectation(&self, psi: &Wavefunction<T>) -> Result<T> {
        self.check(psi)?;
        let hpsi = psi.with_values(self.apply(psi.values()));
        Ok(psi.inner(&hpsi)?.re)
    }

    /// `‖Ĥψ − Eψ‖₂` with `E = ⟨ψ|Ĥ|ψ⟩`.
    pub fn eigen_residual(&self, psi: &Wavefunction<T>) -> Result<T> {
        let energy = self.expectation(psi)?;
        let hpsi = self.apply(psi.values());
        let r: Vec<Complex<T>> = hpsi.iter().zip(psi.values()).map(|(h, p)| h - p * energy).collect();
        Ok(psi.with_values(r).norm().sqrt())
    }

    fn check(&self, psi: &Wavefunction<T>) -> Result<()> {
        if *psi.grid() != self.grid {
            return Err(structural!("wavefunction grid differs from Hamiltonian grid"));
        }
        Ok(())
    }

    /// Inverse iteration from `guess` towards the nearest eigenvector of the
    /// discretized operator. The result is normalized with its largest
    /// sample real and positive.
    pub fn refine_eigenstate(&self, guess: &Wavefunction<T>) -> Result<(Wavefunction<T>, T)> {
        self.check(guess)?;
        let shift = self.expectation(guess)?;
        let n = self.grid.len();
        // nudge the shift off the eigenvalue so the factorization stays regular
        let nudge = T::lit(1e-9) * (shift.abs() + self.coupling());
        let diag: Vec<Complex<T>> =
            (0..n).map(|i| Complex::new(self.diagonal(i) - shift - nudge, T::zero())).collect();
        let off = Complex::new(-self.coupling(), T::zero());
        let solver = TridiagonalSolver::new(&diag, off, self.grid.is_periodic())?;
        let mut psi = guess.clone();
        for _ in 0..50 {
            let mut v = psi.values().to_vec();
            solver.solve(&mut v);
            let next = psi.with_values(v).into_normalized()?;
            let overlap = next.inner(&psi)?.norm();
            psi = next;
            if (T::one() - overlap).abs() < T::lit(1e-15) {
                break;
            }
        }
        let peak = psi
            .values()
            .iter()
            .copied()
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
            .ok_or_else(|| numerical!("empty wavefunction"))?;
        let psi = psi.with_global_phase(-peak.arg());
        let energy = self.expectation(&psi)?;
        Ok((psi, energy))
    }

    pub fn diagnostics(&self, psi: &Wavefunction<T>) -> Diagnostics<T> {
        Diagnostics {
            energy: self.expectation(psi).unwrap_or_else(|_| T::nan()),
            norm: psi.norm(),
            momentum: Some(momentum_expectation(psi)),
        }
    }
}

/// `ħ ∫ Im(ψ* ∂ψ) dx` with central differences.
pub fn momentum_expectation<T: Real>(psi: &Wavefunction<T>) -> T {
    let grid = psi.grid();
    let re: Vec<T> = psi.values().iter().map(|z| z.re).collect();
    let im: Vec<T> = psi.values().iter().map(|z| z.im).collect();
    let dre = crate::fields::gradient_values(grid, &re).expect("lengths match");
    let dim = crate::fields::gradient_values(grid, &im).expect("lengths match");
    let integrand: Vec<T> = (0..re.len()).map(|i| re[i] * dim[i] - im[i] * dre[i]).collect();
    psi.hbar() * crate::fields::integrate_slice(grid, &integrand)
}

/// Crank–Nicolson stepper `(1 + iτĤ) ψⁿ⁺¹ = (1 − iτĤ) ψⁿ`, `τ = dt/2ħ`.
#[derive(Debug, Clone)]
pub struct CrankNicolson<T> {
    hamiltonian: GridHamiltonian<T>,
    solver: TridiagonalSolver<T>,
    tau: T,
    psi: Wavefunction<T>,
    time: T,
    step: usize,
}

impl<T: Real> CrankNicolson<T> {
    pub fn new(psi0: Wavefunction<T>, potential: &PotentialSpec<T>, dt: T) -> Result<Self> {
        if !(dt > T::zero() && dt.is_finite()) {
            return Err(domain!("dt must be positive"));
        }
        let hamiltonian = GridHamiltonian::for_wavefunction(&psi0, potential)?;
        let tau = dt / (T::lit(2.0) * hamiltonian.hbar);
        let n = psi0.grid().len();
        let i = Complex::new(T::zero(), T::one());
        let diag: Vec<Complex<T>> =
            (0..n).map(|k| Complex::new(T::one(), T::zero()) + i * tau * hamiltonian.diagonal(k)).collect();
        let off = -i * tau * hamiltonian.coupling();
        let solver = TridiagonalSolver::new(&diag, off, psi0.grid().is_periodic())?;
        Ok(Self { hamiltonian, solver, tau, psi: psi0, time: T::zero(), step: 0 })
    }

    pub fn state(&self) -> &Wavefunction<T> {
        &self.psi
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn hamiltonian(&self) -> &GridHamiltonian<T> {
        &self.hamiltonian
    }

    pub fn step(&mut self) -> Result<()> {
        let i = Complex::new(T::zero(), T::one());
        let hpsi = self.hamiltonian.apply(self.psi.values());
        let mut rhs: Vec<Complex<T>> =
            self.psi.values().iter().zip(&hpsi).map(|(p, h)| p - i * self.tau * h).collect();
        self.solver.solve(&mut rhs);
        if rhs.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(numerical!("non-finite amplitude after step {}", self.step + 1));
        }
        self.psi = self.psi.with_values(rhs);
        self.step += 1;
        self.time = T::from_usize_lossy(self.step) * self.tau * T::lit(2.0) * self.hamiltonian.hbar;
        Ok(())
    }
}

pub fn schrodinger_reference_evolve<T: Real>(
    psi0: &Wavefunction<T>,
    potential: &PotentialSpec<T>,
    stepping: &Stepping<T>,
) -> Result<Trajectory<T, Wavefunction<T>>> {
    stepping.validate()?;
    let mut cn = CrankNicolson::new(psi0.clone(), potential, stepping.dt)?;
    let mut traj = Trajectory::with_capacity(stepping.sample_count());
    traj.push(T::zero(), psi0.clone(), cn.hamiltonian().diagnostics(psi0));
    for k in 1..=stepping.n_steps {
        cn.step()?;
        if stepping.samples(k) {
            traj.push(cn.time(), cn.state().clone(), cn.hamiltonian().diagnostics(cn.state()));
        }
    }
    Ok(traj)
}
