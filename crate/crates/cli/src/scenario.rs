//! Validation of a parsed [`ScenarioFile`] into runnable core objects.

use std::collections::BTreeSet;

use ensemble_core::constraints::ConstraintSpec;
use ensemble_core::continuous::{states, ContinuousHamiltonian, PotentialSpec};
use ensemble_core::discrete::{BlochPoint, CMatrix, DiscreteEnsemble, DiscreteHamiltonian};
use ensemble_core::fields::{Boundary, Grid1D, Wavefunction};
use ensemble_core::{ConstraintSpec64, ContinuousHamiltonian64, DiscreteEnsemble64, DiscreteHamiltonian64, Potential64, Wavefunction64};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{
    BoundaryKind, ConstraintName, ContinuousBlock, ContinuousKind, DiscreteBlock, DiscreteKind, InitialSpec, OutputBlock,
    PotentialBlock, ScenarioFile, SolverKind, StandingShape, SystemBlock,
};
use crate::error::CliError;

type C64 = Complex<f64>;

/// A fully resolved `(system, initial state)` pair.
#[derive(Debug, Clone)]
pub enum BuiltSystem {
    Continuous {
        hamiltonian: ContinuousHamiltonian64,
        /// `None` for the phase-translation kind.
        potential: Option<Potential64>,
        initial: Wavefunction64,
    },
    Discrete {
        hamiltonian: DiscreteHamiltonian64,
        initial: DiscreteEnsemble64,
    },
}

impl BuiltSystem {
    pub fn is_continuous(&self) -> bool {
        matches!(self, Self::Continuous { .. })
    }
}

#[derive(Debug, Clone)]
pub struct BuiltCase {
    pub label: String,
    pub system: BuiltSystem,
    pub horizon: f64,
}

#[derive(Debug, Clone)]
pub struct ConstraintPlan {
    pub spec: ConstraintSpec64,
    pub horizon: f64,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub system: BuiltSystem,
    pub dt: f64,
    pub n_steps: usize,
    pub stride: usize,
    pub solver: SolverKind,
    pub negativity_tolerance: Option<f64>,
    pub constraint: Option<ConstraintPlan>,
    pub cases: Vec<BuiltCase>,
}

impl Scenario {
    pub fn name(&self) -> &str {
        &self.file.name
    }

    pub fn output(&self) -> &OutputBlock {
        &self.file.output
    }
}

type Check<T> = Result<T, CliError>;

fn invalid<T>(field: impl Into<String>, message: impl Into<String>) -> Check<T> {
    Err(CliError::invalid(field, message))
}

fn positive(field: &str, v: f64) -> Check<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        invalid(field, format!("must be positive and finite, got {v}"))
    }
}

fn finite(field: &str, v: f64) -> Check<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        invalid(field, format!("must be finite, got {v}"))
    }
}

fn core<T>(field: &str, r: ensemble_core::Result<T>) -> Check<T> {
    r.map_err(|e| CliError::invalid(field, e.to_string()))
}

fn safe_file_name(s: &str) -> bool {
    !s.is_empty() && s != "." && s != ".." && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

pub fn build(file: ScenarioFile) -> Check<Scenario> {
    if !safe_file_name(&file.name) || file.name.starts_with('.') {
        return invalid("name", "must be non-empty and use only letters, digits, '-', '_' and '.'");
    }
    let d = &file.dynamics;
    let dt = positive("dynamics.dt", d.dt)?;
    if d.n_steps == 0 {
        return invalid("dynamics.n_steps", "must be at least 1");
    }
    if let Some(tol) = d.negativity_tolerance {
        positive("dynamics.negativity_tolerance", tol)?;
    }
    let out = &file.output;
    if out.stride == 0 {
        return invalid("output.stride", "must be at least 1");
    }
    for (field, name) in [("output.csv", &out.csv), ("output.json", &out.json)] {
        if !safe_file_name(name) {
            return invalid(field, "must be a plain file name");
        }
    }
    if out.csv == out.json {
        return invalid("output.json", "must differ from output.csv");
    }

    let system = build_system("system", &file.system, "initial", &file.initial)?;
    check_solver(&system, d.solver)?;

    let constraint = match &file.constraint {
        None => None,
        Some(c) => {
            let horizon = positive("constraint.horizon", c.horizon)?;
            let mut spec = match c.kind {
                ConstraintName::MomentumDensity => ConstraintSpec::momentum_density(),
                ConstraintName::SpinGeodesic => ConstraintSpec::spin_geodesic(),
                ConstraintName::Classicality => ConstraintSpec::classicality(),
                ConstraintName::Projection => {
                    let Some(sets) = &c.projectors else {
                        return invalid("constraint.projectors", "required for the projection constraint");
                    };
                    let BuiltSystem::Discrete { initial, .. } = &system else {
                        return invalid("constraint.kind", "projection needs a discrete system");
                    };
                    core("constraint.projectors", ConstraintSpec::projection_family(diagonal_family(initial.dim(), sets)?))?
                }
            };
            if c.projectors.is_some() && c.kind != ConstraintName::Projection {
                return invalid("constraint.projectors", "only used by the projection constraint");
            }
            if let Some(tol) = c.tolerance {
                spec = core("constraint.tolerance", spec.with_tolerance(tol))?;
            }
            Some(ConstraintPlan { spec, horizon })
        }
    };

    let mut cases = Vec::with_capacity(file.cases.len());
    let mut labels = BTreeSet::new();
    for (i, case) in file.cases.iter().enumerate() {
        let at = |k: &str| format!("cases[{i}].{k}");
        if case.label.is_empty() || !labels.insert(case.label.clone()) {
            return invalid(at("label"), "labels must be non-empty and unique");
        }
        let Some(plan) = &constraint else {
            return invalid(at("label"), "cases need a constraint block");
        };
        let horizon = match case.horizon {
            Some(h) => positive(&at("horizon"), h)?,
            None => plan.horizon,
        };
        let sys = case.system.as_ref().unwrap_or(&file.system);
        let init = case.initial.as_ref().unwrap_or(&file.initial);
        let sys_path = if case.system.is_some() { at("system") } else { "system".into() };
        let init_path = if case.initial.is_some() { at("initial") } else { "initial".into() };
        let built = build_system(&sys_path, sys, &init_path, init)?;
        check_solver(&built, d.solver)?;
        check_constraint_fits(&plan.spec, &built, &at("system"))?;
        cases.push(BuiltCase { label: case.label.clone(), system: built, horizon });
    }
    if let Some(plan) = &constraint {
        check_constraint_fits(&plan.spec, &system, "constraint.kind")?;
    }

    Ok(Scenario {
        system,
        dt,
        n_steps: d.n_steps,
        stride: out.stride,
        solver: d.solver,
        negativity_tolerance: d.negativity_tolerance,
        constraint,
        cases,
        file,
    })
}

fn check_solver(system: &BuiltSystem, solver: SolverKind) -> Check<()> {
    match (system, solver) {
        (_, SolverKind::Canonical) => Ok(()),
        (BuiltSystem::Continuous { hamiltonian: ContinuousHamiltonian::Quantum { .. }, .. }, _) => Ok(()),
        (BuiltSystem::Continuous { .. }, _) => invalid("dynamics.solver", "the Schrödinger solver needs a quantum Hamiltonian"),
        (BuiltSystem::Discrete { .. }, _) => invalid("dynamics.solver", "discrete systems only support the canonical solver"),
    }
}

fn check_constraint_fits(spec: &ConstraintSpec64, system: &BuiltSystem, field: &str) -> Check<()> {
    use ensemble_core::constraints::ConstraintKind as K;
    match (&spec.kind, system) {
        (K::MomentumDensity, BuiltSystem::Continuous { .. }) => Ok(()),
        (K::Classicality, BuiltSystem::Continuous { initial, .. }) => {
            if initial.grid().is_periodic() {
                invalid(field, "the classicality constraint needs a reflecting grid")
            } else {
                Ok(())
            }
        }
        (K::SpinGeodesic, BuiltSystem::Discrete { initial, .. }) if initial.dim() == 2 => Ok(()),
        (K::ProjectionFamily(f), BuiltSystem::Discrete { initial, .. }) if f[0].dim() == initial.dim() => Ok(()),
        _ => invalid(field, format!("the {} constraint does not apply to this system", spec.name())),
    }
}

fn diagonal_family(dim: usize, sets: &[Vec<usize>]) -> Check<Vec<CMatrix<f64>>> {
    sets.iter()
        .enumerate()
        .map(|(i, set)| {
            let mut m = CMatrix::zeros(dim);
            for &j in set {
                if j >= dim {
                    return invalid(format!("constraint.projectors[{i}]"), format!("index {j} out of range for dimension {dim}"));
                }
                m[(j, j)] = C64::new(1.0, 0.0);
            }
            Ok(m)
        })
        .collect()
}

pub fn build_system(path: &str, system: &SystemBlock, init_path: &str, init: &InitialSpec) -> Check<BuiltSystem> {
    match (&system.continuous, &system.discrete) {
        (Some(c), None) => build_continuous(&format!("{path}.continuous"), c, init_path, init),
        (None, Some(d)) => build_discrete(&format!("{path}.discrete"), d, init_path, init),
        (Some(_), Some(_)) => invalid(path, "continuous and discrete blocks are mutually exclusive"),
        (None, None) => invalid(path, "needs either a continuous or a discrete block"),
    }
}

fn build_continuous(path: &str, c: &ContinuousBlock, init_path: &str, init: &InitialSpec) -> Check<BuiltSystem> {
    let at = |k: &str| format!("{path}.{k}");
    let hbar = positive(&at("hbar"), c.hbar)?;
    let mass = positive(&at("mass"), c.mass)?;
    let g = &c.grid;
    let (lo, hi) = (finite(&at("grid.min"), g.min)?, finite(&at("grid.max"), g.max)?);
    if !(lo < hi) {
        return invalid(at("grid.max"), "must exceed grid.min");
    }
    let boundary = match g.boundary {
        BoundaryKind::Reflecting => Boundary::Reflecting,
        BoundaryKind::Periodic => Boundary::Periodic,
    };
    let grid = core(&at("grid.n"), Grid1D::new(lo, hi, g.n, boundary))?;

    let potential = match &c.potential {
        PotentialBlock::Free => PotentialSpec::Free,
        PotentialBlock::Harmonic { omega } => PotentialSpec::harmonic(mass, positive(&at("potential.omega"), *omega)?),
        PotentialBlock::Polynomial { coefficients } => {
            let field = at("potential.coefficients");
            if coefficients.is_empty() || coefficients.iter().any(|v| !v.is_finite()) {
                return invalid(field, "must be a non-empty list of finite numbers");
            }
            let mut a = [0.0; 3];
            if coefficients.len() <= 3 {
                a[..coefficients.len()].copy_from_slice(coefficients);
                PotentialSpec::Quadratic { a0: a[0], a1: a[1], a2: a[2] }
            } else {
                let cs = coefficients.clone();
                core(&field, PotentialSpec::tabulated(grid, move |x| cs.iter().rev().fold(0.0, |acc, &c| acc * x + c)))?
            }
        }
    };
    if potential != PotentialSpec::Free && grid.is_periodic() {
        return invalid(at("potential"), "external potentials need a reflecting grid");
    }
    let (hamiltonian, potential) = match &c.hamiltonian {
        ContinuousKind::Classical => (ContinuousHamiltonian::classical(potential.clone()), Some(potential)),
        ContinuousKind::Quantum => (ContinuousHamiltonian::quantum(potential.clone()), Some(potential)),
        ContinuousKind::PhaseTranslation { omega } => {
            finite(&at("hamiltonian.omega"), *omega)?;
            if !grid.is_periodic() {
                return invalid(at("hamiltonian"), "phase translation needs a periodic grid");
            }
            if !matches!(c.potential, PotentialBlock::Free) {
                return invalid(at("potential"), "phase translation takes no potential");
            }
            (ContinuousHamiltonian::phase_translation(*omega), None)
        }
    };
    let initial = continuous_initial(init_path, init, grid, hbar, mass, &c.potential)?;
    Ok(BuiltSystem::Continuous { hamiltonian, potential, initial })
}

fn continuous_initial(
    path: &str,
    init: &InitialSpec,
    grid: Grid1D<f64>,
    hbar: f64,
    mass: f64,
    potential: &PotentialBlock,
) -> Check<Wavefunction64> {
    let at = |k: &str| format!("{path}.{k}");
    match init {
        InitialSpec::Gaussian { sigma, x0, p0 } => {
            let sigma = positive(&at("sigma"), *sigma)?;
            core(path, states::gaussian(grid, hbar, mass, sigma, finite(&at("x0"), *x0)?, finite(&at("p0"), *p0)?))
        }
        InitialSpec::HoEigenstate { n } => {
            let PotentialBlock::Harmonic { omega } = potential else {
                return invalid(at("preset"), "ho_eigenstate needs a harmonic potential");
            };
            if *n > 64 {
                return invalid(at("n"), "orders above 64 are not supported");
            }
            Ok(core(path, states::ho_eigenstate(grid, hbar, mass, *omega, *n))?.0)
        }
        InitialSpec::PlaneWave { k } => core(path, states::plane_wave(grid, hbar, mass, finite(&at("k"), *k)?)),
        InitialSpec::StandingWave { k, shape } => {
            let shape = match shape {
                StandingShape::Cos => states::Standing::Cos,
                StandingShape::Sin => states::Standing::Sin,
            };
            core(path, states::standing_wave(grid, hbar, mass, finite(&at("k"), *k)?, shape))
        }
        InitialSpec::Superposition { terms } => {
            if terms.is_empty() {
                return invalid(at("terms"), "needs at least one term");
            }
            let mut sum = vec![C64::new(0.0, 0.0); grid.len()];
            for (i, t) in terms.iter().enumerate() {
                let here = format!("{path}.terms[{i}]");
                let c = C64::new(finite(&format!("{here}.re"), t.re)?, finite(&format!("{here}.im"), t.im)?);
                let psi = continuous_initial(&format!("{here}.state"), &t.state, grid, hbar, mass, potential)?;
                for (acc, v) in sum.iter_mut().zip(psi.values()) {
                    *acc += c * v;
                }
            }
            let raw = core(path, Wavefunction::from_raw(grid, sum, hbar, mass))?;
            if !(raw.norm() > 1e-24) {
                return invalid(at("terms"), "superposition vanishes identically");
            }
            core(path, raw.into_normalized())
        }
        InitialSpec::Bloch { .. } | InitialSpec::Amplitudes { .. } => {
            invalid(at("preset"), "this preset describes a discrete state")
        }
    }
}

fn build_discrete(path: &str, d: &DiscreteBlock, init_path: &str, init: &InitialSpec) -> Check<BuiltSystem> {
    let at = |k: &str| format!("{path}.{k}");
    let hbar = positive(&at("hbar"), d.hbar)?;
    let dim = d.dimension;
    if !(1..=64).contains(&dim) {
        return invalid(at("dimension"), "must be between 1 and 64");
    }
    let hamiltonian = match &d.hamiltonian {
        DiscreteKind::Spin { mu, field } => {
            if dim != 2 {
                return invalid(at("dimension"), "a spin one-half system has dimension 2");
            }
            finite(&at("hamiltonian.mu"), *mu)?;
            for (i, b) in field.iter().enumerate() {
                finite(&format!("{path}.hamiltonian.field[{i}]"), *b)?;
            }
            DiscreteHamiltonian::spin_half(*mu, *field)
        }
        DiscreteKind::Matrix { re, im } => {
            let field = at("hamiltonian");
            let rows_ok = |m: &Vec<Vec<f64>>| m.len() == dim && m.iter().all(|r| r.len() == dim);
            if !rows_ok(re) || im.as_ref().is_some_and(|m| !rows_ok(m)) {
                return invalid(field, format!("matrix must be {dim}×{dim}"));
            }
            let data = (0..dim * dim)
                .map(|k| {
                    let (j, l) = (k / dim, k % dim);
                    C64::new(re[j][l], im.as_ref().map_or(0.0, |m| m[j][l]))
                })
                .collect();
            core(&field, CMatrix::new(dim, data).and_then(DiscreteHamiltonian::quantum_basis))?
        }
        DiscreteKind::RandomHermitian { seed, scale } => {
            let scale = positive(&at("hamiltonian.scale"), *scale)?;
            core(&at("hamiltonian"), DiscreteHamiltonian::quantum_basis(random_hermitian(*seed, dim, scale)))?
        }
    };
    let initial = match init {
        InitialSpec::Bloch { theta, phi } => {
            if dim != 2 {
                return invalid(format!("{init_path}.preset"), "bloch needs a two-level system");
            }
            let p = core(init_path, BlochPoint::new(*theta, *phi))?;
            core(init_path, p.to_ensemble(hbar))?
        }
        InitialSpec::Amplitudes { re, im } => {
            if re.len() != dim || im.as_ref().is_some_and(|v| v.len() != dim) {
                return invalid(init_path.to_string(), format!("needs {dim} amplitudes"));
            }
            let z: Vec<C64> = (0..dim).map(|j| C64::new(re[j], im.as_ref().map_or(0.0, |v| v[j]))).collect();
            let norm: f64 = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                return invalid(init_path.to_string(), "amplitudes must be finite and not all zero");
            }
            let z: Vec<C64> = z.into_iter().map(|v| v / norm).collect();
            core(init_path, DiscreteEnsemble::from_amplitudes(&z, hbar))?
        }
        _ => return invalid(format!("{init_path}.preset"), "this preset describes a continuous state"),
    };
    Ok(BuiltSystem::Discrete { hamiltonian, initial })
}

/// Hermitian matrix with diagonal in `[-2, 2]·scale` and off-diagonal real and
/// imaginary parts in `[-1, 1]·scale`, from a ChaCha8 stream.
pub fn random_hermitian(seed: u64, dim: usize, scale: f64) -> CMatrix<f64> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut m = CMatrix::zeros(dim);
    for j in 0..dim {
        m[(j, j)] = C64::new(scale * r.gen_range(-2.0..2.0), 0.0);
        for k in j + 1..dim {
            let z = C64::new(scale * r.gen_range(-1.0..1.0), scale * r.gen_range(-1.0..1.0));
            m[(j, k)] = z;
            m[(k, j)] = z.conj();
        }
    }
    m
}
