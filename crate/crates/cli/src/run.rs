//! Executes a [`Scenario`]: the sampled trajectory, scenario-level checks and
//! the constraint verdicts of every case.

use std::collections::BTreeMap;

use ensemble_core::constraints::{
    classicality_metrics, constraint_preservation_monitor, stationarity_secondary_residuals, MonitoredSystem,
};
use ensemble_core::continuous::{distance_to_reference, CanonicalSolver, ContinuousHamiltonian, CrankNicolson, Diagnostics, Stepping};
use ensemble_core::discrete::{rate_rhs, DiscreteHamiltonian, DiscreteSolver};
use ensemble_core::observables::{entropy, fisher_information, homogeneity_check};
use ensemble_core::{ConstraintSpec64, DiscreteEnsemble64, Ensemble64, Field64};
use serde::Serialize;

use crate::config::SolverKind;
use crate::scenario::{BuiltSystem, Scenario};

/// One sampled state. `None` marks a quantity that does not apply.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub t: f64,
    pub energy: f64,
    pub norm: f64,
    pub momentum: Option<f64>,
    pub entropy: Option<f64>,
    pub fisher: Option<f64>,
    pub constraint_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub system: &'static str,
    pub solver: SolverKind,
    pub dt: f64,
    pub n_steps: usize,
    pub stride: usize,
    pub rows: usize,
    pub final_time: f64,
    /// `max |E(t) − E(0)|` over the sampled rows.
    pub energy_drift: f64,
    /// `max |N(t) − N(0)|` over the sampled rows.
    pub norm_drift: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aborted: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translation: Option<TranslationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogeneity: Option<HomogeneitySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rates: Option<RateSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint: Option<ConstraintSummary>,
}

/// Canonical vs reference (Crank–Nicolson) solution at the sampled times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonSummary {
    pub max_linf_p: f64,
    pub max_l2_p: f64,
    pub max_linf_grad_s: f64,
    pub max_weighted_grad_s: f64,
}

/// Phase-translation runs against the exact rigid shift of the initial density,
/// at the samples where the shift is a whole number of cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslationSummary {
    pub omega: f64,
    pub compared_samples: usize,
    pub max_linf: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomogeneitySummary {
    pub degree: f64,
    pub scaling_defect: f64,
    pub identity_defect: f64,
}

/// Rate-equation right-hand side against the canonical `dP`, over all samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateSummary {
    pub max_rate_vs_canonical: f64,
    pub max_abs_total_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintSummary {
    pub name: &'static str,
    pub tolerance: f64,
    pub horizon: f64,
    pub cases: Vec<CaseReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub label: String,
    pub residual_initial: f64,
    pub residual_max: f64,
    pub residual_final: f64,
    pub first_crossing: Option<f64>,
    pub verdict: String,
    pub secondary: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub rows: Vec<Row>,
    pub report: Report,
}

impl RunResult {
    pub fn aborted(&self) -> Option<&str> {
        self.report.aborted.as_deref()
    }
}

type Outcome<T> = Result<T, String>;

fn fail(e: ensemble_core::Error) -> String {
    e.to_string()
}

enum Runner {
    Canonical(CanonicalSolver<f64>),
    Reference(CrankNicolson<f64>),
    Both(CanonicalSolver<f64>, CrankNicolson<f64>),
    Discrete(DiscreteSolver<f64>, DiscreteHamiltonian<f64>),
}

enum State {
    Continuous(Ensemble64),
    Discrete(DiscreteEnsemble64),
}

impl Runner {
    fn start(s: &Scenario) -> Outcome<Self> {
        Ok(match (&s.system, s.solver) {
            (BuiltSystem::Continuous { hamiltonian, initial, .. }, SolverKind::Canonical) => {
                Self::Canonical(canonical(hamiltonian, initial.to_ensemble().map_err(fail)?, s)?)
            }
            (BuiltSystem::Continuous { potential, initial, .. }, SolverKind::Schrodinger) => {
                Self::Reference(reference(potential, initial, s.dt)?)
            }
            (BuiltSystem::Continuous { hamiltonian, potential, initial }, SolverKind::Both) => {
                let e0 = initial.to_ensemble().map_err(fail)?;
                // both solvers start from the same polar state
                let psi0 = e0.to_wavefunction();
                Self::Both(canonical(hamiltonian, e0, s)?, reference(potential, &psi0, s.dt)?)
            }
            (BuiltSystem::Discrete { hamiltonian, initial }, _) => {
                Self::Discrete(DiscreteSolver::new(hamiltonian, initial.clone(), s.dt).map_err(fail)?, hamiltonian.clone())
            }
        })
    }

    fn step(&mut self) -> Outcome<()> {
        match self {
            Self::Canonical(c) => c.step(),
            Self::Reference(r) => r.step(),
            Self::Both(c, r) => c.step().and_then(|_| r.step()),
            Self::Discrete(d, _) => d.step(),
        }
        .map_err(fail)
    }

    fn time(&self) -> f64 {
        match self {
            Self::Canonical(c) | Self::Both(c, _) => c.time(),
            Self::Reference(r) => r.time(),
            Self::Discrete(d, _) => d.time(),
        }
    }

    fn diagnostics(&self) -> Diagnostics<f64> {
        match self {
            Self::Canonical(c) | Self::Both(c, _) => c.diagnostics(),
            Self::Reference(r) => r.hamiltonian().diagnostics(r.state()),
            Self::Discrete(d, _) => d.diagnostics(),
        }
    }

    fn state(&self) -> Outcome<State> {
        Ok(match self {
            Self::Canonical(c) | Self::Both(c, _) => State::Continuous(c.state().clone()),
            Self::Reference(r) => State::Continuous(r.state().to_ensemble().map_err(fail)?),
            Self::Discrete(d, _) => State::Discrete(d.state().clone()),
        })
    }
}

fn canonical(h: &ContinuousHamiltonian<f64>, e0: Ensemble64, s: &Scenario) -> Outcome<CanonicalSolver<f64>> {
    let solver = CanonicalSolver::new(h, e0, s.dt).map_err(fail)?;
    Ok(match s.negativity_tolerance {
        Some(tol) => solver.with_negativity_tolerance(tol),
        None => solver,
    })
}

fn reference(
    potential: &Option<ensemble_core::Potential64>,
    psi0: &ensemble_core::Wavefunction64,
    dt: f64,
) -> Outcome<CrankNicolson<f64>> {
    let potential = potential.as_ref().ok_or("the reference solver needs a potential")?;
    CrankNicolson::new(psi0.clone(), potential, dt).map_err(fail)
}

fn row(t: f64, d: Diagnostics<f64>, state: &State, constraint: Option<&ConstraintSpec64>) -> Row {
    let (entropy, fisher, residual) = match state {
        State::Continuous(e) => (entropy(e).ok(), Some(fisher_information(e.p())), constraint.and_then(|c| c.residual(e).ok())),
        State::Discrete(e) => (Some(shannon(e.p())), None, constraint.and_then(|c| c.residual(e).ok())),
    };
    Row { t, energy: d.energy, norm: d.norm, momentum: d.momentum, entropy, fisher, constraint_residual: residual }
}

fn shannon(p: &[f64]) -> f64 {
    -p.iter().filter(|&&v| v > 0.0).map(|&v| v * v.ln()).sum::<f64>()
}

struct Translation {
    omega: f64,
    p0: Field64,
    compared: usize,
    max_linf: f64,
}

impl Translation {
    /// `P(φ, t) = P₀(φ + ωt)` where `ωt` is a whole number of cells.
    fn observe(&mut self, t: f64, e: &Ensemble64) {
        let g = e.grid();
        let cells = self.omega * t / g.dx();
        let m = cells.round();
        if (cells - m).abs() > 1e-6 {
            return;
        }
        let n = g.len() as i64;
        let shift = (m as i64).rem_euclid(n) as usize;
        let p0 = self.p0.values();
        let linf = e.p().values().iter().enumerate().map(|(i, &v)| (v - p0[(i + shift) % g.len()]).abs()).fold(0.0, f64::max);
        self.compared += 1;
        self.max_linf = self.max_linf.max(linf);
    }
}

pub fn run(s: &Scenario) -> RunResult {
    let mut rows = Vec::with_capacity(s.n_steps / s.stride + 1);
    let mut report = Report {
        system: if s.system.is_continuous() { "continuous" } else { "discrete" },
        solver: s.solver,
        dt: s.dt,
        n_steps: s.n_steps,
        stride: s.stride,
        rows: 0,
        final_time: 0.0,
        energy_drift: 0.0,
        norm_drift: 0.0,
        aborted: None,
        comparison: None,
        translation: None,
        homogeneity: None,
        rates: None,
        constraint: None,
    };
    if let Err(reason) = trajectory(s, &mut rows, &mut report) {
        report.aborted = Some(reason);
    }
    if let (Some(first), Some(last)) = (rows.first(), rows.last()) {
        report.final_time = last.t;
        report.energy_drift = rows.iter().map(|r| (r.energy - first.energy).abs()).fold(0.0, f64::max);
        report.norm_drift = rows.iter().map(|r| (r.norm - first.norm).abs()).fold(0.0, f64::max);
    }
    report.rows = rows.len();
    if report.aborted.is_none() {
        match constraint_cases(s) {
            Ok(summary) => report.constraint = summary,
            Err(reason) => report.aborted = Some(reason),
        }
    }
    RunResult { rows, report }
}

fn trajectory(s: &Scenario, rows: &mut Vec<Row>, report: &mut Report) -> Outcome<()> {
    let constraint = s.constraint.as_ref().map(|c| &c.spec);
    if let BuiltSystem::Continuous { hamiltonian, initial, .. } = &s.system {
        let e0 = initial.to_ensemble().map_err(fail)?;
        if let Ok(d) = homogeneity_check(hamiltonian, &e0, 1.0) {
            report.homogeneity =
                Some(HomogeneitySummary { degree: 1.0, scaling_defect: d.scaling_defect, identity_defect: d.identity_defect });
        }
    }
    let mut translation = match &s.system {
        BuiltSystem::Continuous { hamiltonian: ContinuousHamiltonian::PhaseTranslation { omega }, initial, .. }
            if s.solver == SolverKind::Canonical =>
        {
            Some(Translation { omega: *omega, p0: initial.to_ensemble().map_err(fail)?.p().clone(), compared: 0, max_linf: 0.0 })
        }
        _ => None,
    };
    let mut comparison: Option<ComparisonSummary> = None;
    let mut rates: Option<RateSummary> = None;

    let mut runner = Runner::start(s)?;
    let stepping = Stepping::new(s.dt, s.n_steps).with_stride(s.stride);
    let mut outcome = Ok(());
    for k in 0..=s.n_steps {
        if k > 0 {
            if let Err(e) = runner.step() {
                outcome = Err(e);
                break;
            }
        }
        if !stepping.samples(k) {
            continue;
        }
        let state = runner.state()?;
        rows.push(row(runner.time(), runner.diagnostics(), &state, constraint));
        match (&runner, &state) {
            (Runner::Both(c, r), _) => {
                let d = distance_to_reference(c.state(), r).map_err(fail)?;
                let acc = comparison.get_or_insert(ComparisonSummary {
                    max_linf_p: 0.0,
                    max_l2_p: 0.0,
                    max_linf_grad_s: 0.0,
                    max_weighted_grad_s: 0.0,
                });
                acc.max_linf_p = acc.max_linf_p.max(d.linf_p);
                acc.max_l2_p = acc.max_l2_p.max(d.l2_p);
                acc.max_linf_grad_s = acc.max_linf_grad_s.max(d.linf_grad_s);
                acc.max_weighted_grad_s = acc.max_weighted_grad_s.max(d.weighted_grad_s);
            }
            (Runner::Discrete(_, h), State::Discrete(e)) => {
                if let (Ok(t), Ok(canonical)) = (h.transition_rates(e), h.eom_rhs(e)) {
                    let from_rates = rate_rhs(&t, e.p()).map_err(fail)?;
                    let diff = from_rates.iter().zip(&canonical.dp).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    let total = canonical.dp.iter().sum::<f64>().abs();
                    let acc = rates.get_or_insert(RateSummary { max_rate_vs_canonical: 0.0, max_abs_total_rate: 0.0 });
                    acc.max_rate_vs_canonical = acc.max_rate_vs_canonical.max(diff);
                    acc.max_abs_total_rate = acc.max_abs_total_rate.max(total);
                }
            }
            (_, State::Continuous(e)) => {
                if let Some(tr) = translation.as_mut() {
                    tr.observe(runner.time(), e);
                }
            }
            _ => {}
        }
    }
    report.comparison = comparison;
    report.rates = rates;
    report.translation =
        translation.map(|t| TranslationSummary { omega: t.omega, compared_samples: t.compared, max_linf: t.max_linf });
    outcome
}

fn constraint_cases(s: &Scenario) -> Outcome<Option<ConstraintSummary>> {
    let Some(plan) = &s.constraint else { return Ok(None) };
    let base = [crate::scenario::BuiltCase { label: "base".into(), system: s.system.clone(), horizon: plan.horizon }];
    let cases = if s.cases.is_empty() { &base[..] } else { &s.cases[..] };
    let mut out = Vec::with_capacity(cases.len());
    for case in cases {
        let monitored = match &case.system {
            BuiltSystem::Continuous { hamiltonian, potential, initial } => match (s.solver, potential) {
                (SolverKind::Schrodinger | SolverKind::Both, Some(p)) => {
                    MonitoredSystem::Reference { potential: p.clone(), initial: initial.clone() }
                }
                _ => MonitoredSystem::Canonical { hamiltonian: hamiltonian.clone(), initial: initial.to_ensemble().map_err(fail)? },
            },
            BuiltSystem::Discrete { hamiltonian, initial } => {
                MonitoredSystem::Discrete { hamiltonian: hamiltonian.clone(), initial: initial.clone() }
            }
        };
        let stepping = Stepping::covering(case.horizon, s.dt);
        let monitor =
            constraint_preservation_monitor(&monitored, &plan.spec, &stepping).map_err(|e| format!("case {}: {e}", case.label))?;
        out.push(CaseReport {
            label: case.label.clone(),
            residual_initial: monitor.residual_initial(),
            residual_max: monitor.residual_max(),
            residual_final: *monitor.residuals.last().expect("at least one sample"),
            first_crossing: monitor.first_crossing,
            verdict: monitor.verdict().to_string(),
            secondary: secondary(&case.system, &plan.spec),
        });
    }
    Ok(Some(ConstraintSummary { name: plan.spec.name(), tolerance: plan.spec.tolerance, horizon: plan.horizon, cases: out }))
}

/// Initial-state secondary residuals: stationarity for potential systems,
/// entropy-bound metrics for the classicality constraint.
fn secondary(system: &BuiltSystem, spec: &ConstraintSpec64) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    let BuiltSystem::Continuous { potential, initial, .. } = system else { return m };
    let Ok(e0) = initial.to_ensemble() else { return m };
    if let Some(Ok(r)) = potential.as_ref().map(|p| stationarity_secondary_residuals(&e0, p)) {
        m.insert("stationarity_classical".into(), r.classical);
        m.insert("stationarity_quantum".into(), r.quantum);
    }
    if spec.name() == "classicality" {
        if let Ok(c) = classicality_metrics(&e0) {
            m.insert("fisher".into(), c.fisher);
            m.insert("entropy".into(), c.entropy);
            m.insert("bound_gap".into(), c.bound_gap);
        }
    }
    m
}
