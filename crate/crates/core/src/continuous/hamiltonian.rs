//! Ensemble Hamiltonians on a continuous configuration space and their
//! canonical equations of motion `∂P/∂t = δH/δS`, `∂S/∂t = -δH/δP`.

use crate::error::{domain, structural, Result};
use crate::fields::{
    dirichlet_energy, integrate_slice, laplacian_slice, phase_gradient, Ensemble, Grid1D,
    RealField, DEFAULT_SUPPORT_FLOOR,
};
use crate::continuous::PotentialSpec;
use crate::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum ContinuousHamiltonian<T> {
    /// `∫ P [ |∇S|²/2m + V ] dx`.
    Classical { potential: PotentialSpec<T> },
    /// Classical term plus `(ħ²/8m) · Fisher(P)`.
    Quantum { potential: PotentialSpec<T> },
    /// `-ω ∫ P ∂S/∂φ dφ` on a periodic angle grid.
    PhaseTranslation { omega: T },
}

/// Time derivatives of the canonical fields.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldRates<T> {
    pub dp: RealField<T>,
    pub ds: RealField<T>,
}

impl<T: Real> ContinuousHamiltonian<T> {
    pub fn classical(potential: PotentialSpec<T>) -> Self {
        Self::Classical { potential }
    }

    pub fn quantum(potential: PotentialSpec<T>) -> Self {
        Self::Quantum { potential }
    }

    pub fn phase_translation(omega: T) -> Self {
        Self::PhaseTranslation { omega }
    }

    pub fn potential(&self) -> Option<&PotentialSpec<T>> {
        match self {
            Self::Classical { potential } | Self::Quantum { potential } => Some(potential),
            Self::PhaseTranslation { .. } => None,
        }
    }

    /// Kind with the same potential but the other mechanics, when that makes sense.
    pub fn classical_counterpart(&self) -> Option<Self> {
        self.potential().map(|v| Self::classical(v.clone()))
    }

    /// Tabulates whatever the Hamiltonian needs on `grid`.
    pub fn prepare(&self, grid: &Grid1D<T>) -> Result<PreparedHamiltonian<T>> {
        let v = match self.potential() {
            Some(p) => p.values(grid)?.into_values(),
            None => {
                if !grid.is_periodic() {
                    return Err(structural!("phase translation needs a periodic angle grid"));
                }
                Vec::new()
            }
        };
        Ok(PreparedHamiltonian { kind: self.clone(), grid: *grid, v })
    }

    pub fn evaluate(&self, e: &Ensemble<T>) -> Result<T> {
        self.prepare(e.grid())?.evaluate(e)
    }

    pub fn eom_rhs(&self, e: &Ensemble<T>) -> Result<FieldRates<T>> {
        self.prepare(e.grid())?.eom_rhs(e)
    }
}

/// A Hamiltonian with its potential tabulated on one grid.
#[derive(Debug, Clone)]
pub struct PreparedHamiltonian<T> {
    kind: ContinuousHamiltonian<T>,
    grid: Grid1D<T>,
    v: Vec<T>,
}

impl<T: Real> PreparedHamiltonian<T> {
    pub fn kind(&self) -> &ContinuousHamiltonian<T> {
        &self.kind
    }

    pub fn potential_values(&self) -> &[T] {
        &self.v
    }

    fn check(&self, e: &Ensemble<T>) -> Result<()> {
        if *e.grid() != self.grid {
            return Err(structural!("ensemble grid differs from the Hamiltonian grid"));
        }
        if let Some(i) = e.p().values().iter().position(|v| *v < T::zero()) {
            return Err(domain!("negative density {} at index {i}", e.p()[i]));
        }
        Ok(())
    }

    pub fn evaluate(&self, e: &Ensemble<T>) -> Result<T> {
        self.check(e)?;
        let grid = e.grid();
        let p = e.p().values();
        match &self.kind {
            ContinuousHamiltonian::Classical { .. } => Ok(self.classical_value(e)),
            ContinuousHamiltonian::Quantum { .. } => {
                let fisher = fisher_of_slice(grid, p);
                Ok(self.classical_value(e) + e.hbar() * e.hbar() / (T::lit(8.0) * e.mass()) * fisher)
            }
            ContinuousHamiltonian::PhaseTranslation { omega } => {
                let ds = phase_gradient(e.s(), T::PI() * e.hbar());
                let integrand: Vec<T> = p.iter().zip(ds.values()).map(|(&p, &d)| p * d).collect();
                Ok(-*omega * integrate_slice(grid, &integrand))
            }
        }
    }

    fn classical_value(&self, e: &Ensemble<T>) -> T {
        let two_m = T::lit(2.0) * e.mass();
        // πħ reduction: the sign flip of ψ at a node is a jump of exactly πħ and carries no momentum
        let ds = phase_gradient(e.s(), T::PI() * e.hbar());
        let integrand: Vec<T> = e
            .p()
            .values()
            .iter()
            .zip(ds.values())
            .zip(&self.v)
            .map(|((&p, &g), &v)| p * (g * g / two_m + v))
            .collect();
        integrate_slice(e.grid(), &integrand)
    }

    pub fn eom_rhs(&self, e: &Ensemble<T>) -> Result<FieldRates<T>> {
        self.check(e)?;
        let n = e.grid().len();
        let mut dp = vec![T::zero(); n];
        let mut ds = vec![T::zero(); n];
        self.rhs_into(e.grid(), e.hbar(), e.mass(), e.p().values(), e.s().values(), &mut dp, &mut ds);
        Ok(FieldRates {
            dp: RealField::new(*e.grid(), dp)?,
            ds: RealField::new(*e.grid(), ds)?,
        })
    }

    /// Slice-level right-hand side shared with the integrators.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn rhs_into(
        &self,
        grid: &Grid1D<T>,
        hbar: T,
        mass: T,
        p: &[T],
        s: &[T],
        dp: &mut [T],
        ds: &mut [T],
    ) {
        let s_field = RealField::from_vec_unchecked(*grid, s.to_vec());
        let grad_s = phase_gradient(&s_field, T::PI() * hbar).into_values();
        match &self.kind {
            ContinuousHamiltonian::PhaseTranslation { omega } => {
                weighted_gradient_adjoint(grid, p, dp);
                for i in 0..p.len() {
                    dp[i] = -*omega * dp[i];
                    ds[i] = *omega * grad_s[i];
                }
            }
            ContinuousHamiltonian::Classical { .. } | ContinuousHamiltonian::Quantum { .. } => {
                let flux: Vec<T> = p.iter().zip(&grad_s).map(|(&p, &g)| p * g / mass).collect();
                weighted_gradient_adjoint(grid, &flux, dp);
                let two_m = T::lit(2.0) * mass;
                for i in 0..p.len() {
                    ds[i] = -(grad_s[i] * grad_s[i] / two_m + self.v[i]);
                }
                if matches!(self.kind, ContinuousHamiltonian::Quantum { .. }) {
                    let q = quantum_potential_slice(grid, hbar, mass, p, T::zero());
                    for i in 0..p.len() {
                        ds[i] -= q[i];
                    }
                }
            }
        }
    }
}

/// `out = W⁻¹ Dᵀ W f`, with `D` the gradient stencil and `W` the quadrature
/// weights: the exact partial derivative `∂/∂S_i ∫ f ∇S dx`, divided by the
/// weight of sample `i`. In the interior (and everywhere on periodic grids)
/// this is `−∇f`; at reflecting ends it carries the boundary terms that make
/// the discretized equations exactly canonical.
fn weighted_gradient_adjoint<T: Real>(grid: &Grid1D<T>, f: &[T], out: &mut [T]) {
    let n = f.len();
    let inv = (T::lit(2.0) * grid.dx()).recip();
    let y: Vec<T> = (0..n).map(|j| grid.weight(j) * f[j] * inv).collect();
    out.iter_mut().for_each(|v| *v = T::zero());
    // row j of D has -1 at j-1 and +1 at j+1 (times 1/2dx) in the interior
    for j in 1..n - 1 {
        out[j - 1] -= y[j];
        out[j + 1] += y[j];
    }
    if grid.is_periodic() {
        out[n - 1] -= y[0];
        out[1] += y[0];
        out[n - 2] -= y[n - 1];
        out[0] += y[n - 1];
    } else {
        let two = T::lit(2.0);
        out[0] -= two * y[0];
        out[1] += two * y[0];
        out[n - 1] += two * y[n - 1];
        out[n - 2] -= two * y[n - 1];
    }
    for (i, v) in out.iter_mut().enumerate() {
        *v /= grid.weight(i);
    }
}

/// Second difference whose reflecting-end rows are the ghost-point
/// (`u₋₁ = u₁`) stencil: the variational partner of the cell-difference
/// Fisher information.
fn variational_laplacian<T: Real>(grid: &Grid1D<T>, u: &[T]) -> Vec<T> {
    let mut lap = laplacian_slice(grid, u);
    if !grid.is_periodic() {
        let n = u.len();
        let two_inv_dx2 = T::lit(2.0) / (grid.dx() * grid.dx());
        lap[0] = (u[1] - u[0]) * two_inv_dx2;
        lap[n - 1] = (u[n - 2] - u[n - 1]) * two_inv_dx2;
    }
    lap
}

/// Fisher information `4 ∫ |∇√P|² dx` of a density slice, using cell differences.
pub(crate) fn fisher_of_slice<T: Real>(grid: &Grid1D<T>, p: &[T]) -> T {
    let amp: Vec<T> = p.iter().map(|&v| v.max(T::zero()).sqrt()).collect();
    T::lit(4.0) * dirichlet_energy(grid, &amp)
}

/// Bohm quantum potential `Q = -(ħ²/2m) ∇²√P / √P` with the default support floor.
pub fn quantum_potential<T: Real>(e: &Ensemble<T>) -> RealField<T> {
    quantum_potential_with_floor(e, T::lit(DEFAULT_SUPPORT_FLOOR))
}

/// As [`quantum_potential`]; samples with `P ≤ floor · max P` (and always
/// `P ≤ 0`) take the value of the nearest supported sample.
pub fn quantum_potential_with_floor<T: Real>(e: &Ensemble<T>, floor: T) -> RealField<T> {
    let q = quantum_potential_slice(e.grid(), e.hbar(), e.mass(), e.p().values(), floor);
    RealField::from_vec_unchecked(*e.grid(), q)
}

pub(crate) fn quantum_potential_slice<T: Real>(
    grid: &Grid1D<T>,
    hbar: T,
    mass: T,
    p: &[T],
    floor: T,
) -> Vec<T> {
    let amp: Vec<T> = p.iter().map(|&v| v.max(T::zero()).sqrt()).collect();
    let lap = variational_laplacian(grid, &amp);
    let support = crate::fields::support_mask(p, floor);
    let k = -hbar * hbar / (T::lit(2.0) * mass);
    let mut q: Vec<T> = (0..p.len())
        .map(|i| if support[i] { k * lap[i] / amp[i] } else { T::zero() })
        .collect();
    if support.iter().any(|s| !s) && support.iter().any(|s| *s) {
        fill_from_nearest(grid, &support, &mut q);
    }
    q
}

/// Copies values of supported samples into unsupported ones, nearest first.
fn fill_from_nearest<T: Real>(grid: &Grid1D<T>, support: &[bool], values: &mut [T]) {
    let n = values.len();
    let mut dist = vec![usize::MAX; n];
    let mut src = vec![0usize; n];
    for i in 0..n {
        if support[i] {
            dist[i] = 0;
            src[i] = i;
        }
    }
    // two relaxation sweeps per direction cover the ring wrap-around
    let passes = if grid.is_periodic() { 2 } else { 1 };
    for _ in 0..passes {
        for k in 1..=n {
            let i = k % n;
            let j = (k - 1) % n;
            if !grid.is_periodic() && i == 0 {
                continue;
            }
            if dist[j] != usize::MAX && dist[j] + 1 < dist[i] {
                dist[i] = dist[j] + 1;
                src[i] = src[j];
            }
        }
        for k in (0..n).rev() {
            let i = k;
            let j = (k + 1) % n;
            if !grid.is_periodic() && k == n - 1 {
                continue;
            }
            if dist[j] != usize::MAX && dist[j] + 1 < dist[i] {
                dist[i] = dist[j] + 1;
                src[i] = src[j];
            }
        }
    }
    for i in 0..n {
        if !support[i] && dist[i] != usize::MAX {
            values[i] = values[src[i]];
        }
    }
}
