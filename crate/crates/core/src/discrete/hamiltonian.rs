use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::discrete::{CMatrix, DiscreteEnsemble, PhaseDifferenceMatrix, RealMatrix};
use crate::error::{domain, numerical, structural, Result};
use crate::Real;

/// Finite-difference step for the custom kind's derivatives.
pub const CUSTOM_DERIVATIVE_STEP: f64 = 1e-7;

/// Relative Hermiticity tolerance for matrix kinds.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

type EnsembleFn<T> = dyn Fn(&[T], &PhaseDifferenceMatrix<T>) -> T + Send + Sync;

/// User-supplied ensemble Hamiltonian `F(P, M)`.
#[derive(Clone)]
pub struct CustomHamiltonian<T> {
    name: String,
    f: Arc<EnsembleFn<T>>,
}

impl<T> CustomHamiltonian<T> {
    pub fn new(name: impl Into<String>, f: impl Fn(&[T], &PhaseDifferenceMatrix<T>) -> T + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn call(&self, p: &[T], m: &PhaseDifferenceMatrix<T>) -> T {
        (self.f)(p, m)
    }
}

impl<T> fmt::Debug for CustomHamiltonian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomHamiltonian").field("name", &self.name).finish_non_exhaustive()
    }
}

/// Ensemble Hamiltonian on a discrete configuration space.
#[derive(Debug, Clone)]
pub enum DiscreteHamiltonian<T> {
    /// `H̃ = Σ_jk √(P_j P_k) H_jk e^{i(S_k − S_j)/ħ}` for a Hermitian matrix `H`.
    QuantumBasis(CMatrix<T>),
    /// Spin one-half in a magnetic field, `μ ⟨σ·B⟩`.
    SpinHalf { mu: T, field: [T; 3] },
    Custom(CustomHamiltonian<T>),
}

/// Something the equations of motion noticed but did not reject.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EomWarning<T> {
    /// `P_j = 0` while `dP_j/dt < 0`: the flow would leave the simplex.
    Positivity { index: usize, rate: T },
    /// `P_j = 0`: `S_j` is not defined and its rate was taken from the diagonal.
    PhaseUndefined { index: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteRates<T> {
    pub dp: Vec<T>,
    pub ds: Vec<T>,
    pub warnings: Vec<EomWarning<T>>,
}

impl<T: Real> DiscreteHamiltonian<T> {
    pub fn quantum_basis(h: CMatrix<T>) -> Result<Self> {
        check_hermitian(&h)?;
        Ok(Self::QuantumBasis(h))
    }

    pub fn spin_half(mu: T, field: [T; 3]) -> Self {
        Self::SpinHalf { mu, field }
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(&[T], &PhaseDifferenceMatrix<T>) -> T + Send + Sync + 'static) -> Self {
        Self::Custom(CustomHamiltonian::new(name, f))
    }

    /// Required dimension, if fixed by the kind.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::QuantumBasis(h) => Some(h.dim()),
            Self::SpinHalf { .. } => Some(2),
            Self::Custom(_) => None,
        }
    }

    /// Hamiltonian matrix of the quantum kinds (`μ σ·B` for spin one-half).
    pub fn matrix(&self) -> Option<CMatrix<T>> {
        match self {
            Self::QuantumBasis(h) => Some(h.clone()),
            Self::SpinHalf { mu, field } => Some(CMatrix::spin_field(*mu, *field)),
            Self::Custom(_) => None,
        }
    }

    fn check_dim(&self, e: &DiscreteEnsemble<T>) -> Result<()> {
        match self.dim() {
            Some(d) if d != e.dim() => Err(structural!("Hamiltonian acts on dimension {d}, ensemble has {}", e.dim())),
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, e: &DiscreteEnsemble<T>) -> Result<T> {
        self.check_dim(e)?;
        match self {
            Self::QuantumBasis(h) => {
                check_hermitian(h)?;
                let z = e.amplitudes();
                Ok(h.sandwich(&z, &z)?.re)
            }
            Self::SpinHalf { mu, field } => Ok(spin_closed_form(*mu, *field, e)),
            Self::Custom(f) => {
                let v = f.call(e.p(), &e.phase_differences());
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(numerical!("custom Hamiltonian '{}' returned {v}", f.name()))
                }
            }
        }
    }

    /// `Ṗ_j = ∂H̃/∂S_j`, `Ṡ_j = −∂H̃/∂P_j`.
    pub fn eom_rhs(&self, e: &DiscreteEnsemble<T>) -> Result<DiscreteRates<T>> {
        self.check_dim(e)?;
        let mut rates = match self {
            Self::Custom(f) => custom_rhs(f, e)?,
            _ => {
                let h = self.matrix().expect("matrix kind");
                check_hermitian(&h)?;
                matrix_rhs(&h, e)
            }
        };
        for j in 0..e.dim() {
            if e.p()[j] <= T::zero() && rates.dp[j] < T::zero() {
                rates.warnings.push(EomWarning::Positivity { index: j, rate: rates.dp[j] });
            }
        }
        Ok(rates)
    }

    /// Transition rates `T_jk` casting `Ṗ` as a rate equation; `T_jk = 0` when `P_k = 0`.
    pub fn transition_rates(&self, e: &DiscreteEnsemble<T>) -> Result<RealMatrix<T>> {
        self.check_dim(e)?;
        let d = e.dim();
        let (p, s, hbar) = (e.p(), e.s(), e.hbar());
        let mut t = RealMatrix::zeros(d);
        match self {
            Self::Custom(f) => {
                let m = e.phase_differences();
                let h = T::lit(CUSTOM_DERIVATIVE_STEP);
                for j in 0..d {
                    for k in 0..d {
                        if j == k || p[k] <= T::zero() {
                            continue;
                        }
                        let up = f.call(p, &m.nudged(j, k, h));
                        let down = f.call(p, &m.nudged(j, k, -h));
                        t[(j, k)] = (up - down) / (T::lit(2.0) * h) / p[k];
                    }
                }
            }
            _ => {
                let hm = self.matrix().expect("matrix kind");
                check_hermitian(&hm)?;
                for j in 0..d {
                    for k in 0..d {
                        if j == k || p[k] <= T::zero() {
                            continue;
                        }
                        let phase = Complex::from_polar(T::one(), -(s[j] - s[k]) / hbar);
                        t[(j, k)] = (p[j] / p[k]).sqrt() * (hm[(j, k)] * phase).im / hbar;
                    }
                }
            }
        }
        if t.data().iter().any(|v| !v.is_finite()) {
            return Err(numerical!("non-finite transition rate"));
        }
        Ok(t)
    }
}

/// Right-hand side `Σ_k (T_jk P_k − T_kj P_j)` of the rate equation.
pub fn rate_rhs<T: Real>(rates: &RealMatrix<T>, p: &[T]) -> Result<Vec<T>> {
    let d = rates.dim();
    if p.len() != d {
        return Err(structural!("rate matrix is {d}x{d}, probability vector has length {}", p.len()));
    }
    Ok((0..d)
        .map(|j| (0..d).map(|k| rates[(j, k)] * p[k] - rates[(k, j)] * p[j]).sum())
        .collect())
}

fn check_hermitian<T: Real>(h: &CMatrix<T>) -> Result<()> {
    let defect = h.hermitian_defect();
    if defect > T::lit(HERMITIAN_TOLERANCE) * h.max_abs().max(T::one()) {
        return Err(domain!("matrix is not Hermitian (defect {defect:e})"));
    }
    Ok(())
}

fn spin_closed_form<T: Real>(mu: T, b: [T; 3], e: &DiscreteEnsemble<T>) -> T {
    let (p, s) = (e.p(), e.s());
    let phi = (s[0] - s[1]) / e.hbar();
    let two = T::lit(2.0);
    mu * (p[0] - p[1]) * b[2] + two * mu * (p[0] * p[1]).max(T::zero()).sqrt() * (b[0] * phi.cos() - b[1] * phi.sin())
}

/// With `X_j = z_j^* (H z)_j`: `Ṗ_j = (2/ħ) Im X_j`, `Ṡ_j = −Re X_j / P_j`.
fn matrix_rhs<T: Real>(h: &CMatrix<T>, e: &DiscreteEnsemble<T>) -> DiscreteRates<T> {
    let z = e.amplitudes();
    let w = h.mul_vec_unchecked(&z);
    let two = T::lit(2.0);
    let mut out = DiscreteRates { dp: Vec::with_capacity(z.len()), ds: Vec::with_capacity(z.len()), warnings: Vec::new() };
    for j in 0..z.len() {
        let x = z[j].conj() * w[j];
        out.dp.push(two * x.im / e.hbar());
        let pj = e.p()[j];
        if pj > T::zero() {
            out.ds.push(-x.re / pj);
        } else {
            out.ds.push(-h[(j, j)].re);
            out.warnings.push(EomWarning::PhaseUndefined { index: j });
        }
    }
    out
}

fn custom_rhs<T: Real>(f: &CustomHamiltonian<T>, e: &DiscreteEnsemble<T>) -> Result<DiscreteRates<T>> {
    let d = e.dim();
    let h = T::lit(CUSTOM_DERIVATIVE_STEP);
    let two = T::lit(2.0);
    let eval = |p: &[T], s: &[T]| f.call(p, &PhaseDifferenceMatrix::from_phases(s));
    let (mut p, mut s) = (e.p().to_vec(), e.s().to_vec());
    let mut out = DiscreteRates { dp: vec![T::zero(); d], ds: vec![T::zero(); d], warnings: Vec::new() };
    for j in 0..d {
        let sj = s[j];
        s[j] = sj + h;
        let up = eval(&p, &s);
        s[j] = sj - h;
        let down = eval(&p, &s);
        s[j] = sj;
        out.dp[j] = (up - down) / (two * h);

        let pj = p[j];
        p[j] = pj + h;
        let up = eval(&p, &s);
        let deriv = if pj >= h {
            p[j] = pj - h;
            (up - eval(&p, &s)) / (two * h)
        } else {
            p[j] = pj;
            (up - eval(&p, &s)) / h
        };
        p[j] = pj;
        out.ds[j] = -deriv;
    }
    if out.dp.iter().chain(&out.ds).any(|v| !v.is_finite()) {
        return Err(numerical!("custom Hamiltonian '{}' has non-finite derivatives", f.name()));
    }
    Ok(out)
}
