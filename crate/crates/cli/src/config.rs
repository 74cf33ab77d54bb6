//! On-disk scenario schema (TOML). Every table rejects unknown keys.

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    pub system: SystemBlock,
    pub initial: InitialSpec,
    pub dynamics: DynamicsBlock,
    #[serde(default)]
    pub constraint: Option<ConstraintBlock>,
    #[serde(default)]
    pub output: OutputBlock,
    /// Alternative `(system, initial)` pairs judged against the constraint.
    #[serde(default)]
    pub cases: Vec<CaseBlock>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SystemBlock {
    #[serde(default)]
    pub continuous: Option<ContinuousBlock>,
    #[serde(default)]
    pub discrete: Option<DiscreteBlock>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuousBlock {
    pub grid: GridBlock,
    #[serde(default)]
    pub potential: PotentialBlock,
    #[serde(default)]
    pub hamiltonian: ContinuousKind,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub min: f64,
    pub max: f64,
    pub n: usize,
    #[serde(default)]
    pub boundary: BoundaryKind,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    #[default]
    Reflecting,
    Periodic,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialBlock {
    #[default]
    Free,
    /// `m ω² x² / 2` with the system mass.
    Harmonic { omega: f64 },
    /// `Σ c_k x^k`.
    Polynomial { coefficients: Vec<f64> },
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ContinuousKind {
    Classical,
    #[default]
    Quantum,
    PhaseTranslation { omega: f64 },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteBlock {
    pub dimension: usize,
    #[serde(default = "one")]
    pub hbar: f64,
    pub hamiltonian: DiscreteKind,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DiscreteKind {
    /// `H = μ σ·B`.
    Spin { mu: f64, field: [f64; 3] },
    /// Hermitian matrix given by rows of real and (optionally) imaginary parts.
    Matrix {
        re: Vec<Vec<f64>>,
        #[serde(default)]
        im: Option<Vec<Vec<f64>>>,
    },
    /// Seeded random Hermitian matrix with entries of order `scale`.
    RandomHermitian {
        seed: u64,
        #[serde(default = "one")]
        scale: f64,
    },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSpec {
    Gaussian {
        sigma: f64,
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        p0: f64,
    },
    HoEigenstate {
        n: usize,
    },
    PlaneWave {
        k: f64,
    },
    StandingWave {
        k: f64,
        shape: StandingShape,
    },
    Superposition {
        terms: Vec<Term>,
    },
    Bloch {
        theta: f64,
        phi: f64,
    },
    Amplitudes {
        re: Vec<f64>,
        #[serde(default)]
        im: Option<Vec<f64>>,
    },
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StandingShape {
    Cos,
    Sin,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    pub state: InitialSpec,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsBlock {
    pub dt: f64,
    pub n_steps: usize,
    #[serde(default)]
    pub solver: SolverKind,
    /// Most negative density the canonical integrator accepts before aborting.
    #[serde(default)]
    pub negativity_tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    #[default]
    Canonical,
    Schrodinger,
    Both,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintBlock {
    pub kind: ConstraintName,
    #[serde(default)]
    pub tolerance: Option<f64>,
    /// Monitoring horizon (time units).
    pub horizon: f64,
    /// Index sets of a diagonal projector family (`projection` only).
    #[serde(default)]
    pub projectors: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintName {
    MomentumDensity,
    SpinGeodesic,
    Classicality,
    Projection,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    #[serde(default)]
    pub dir: Option<String>,
    #[serde(default = "default_csv")]
    pub csv: String,
    #[serde(default = "default_json")]
    pub json: String,
    #[serde(default = "one_usize")]
    pub stride: usize,
    #[serde(default)]
    pub format: Option<Format>,
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self { dir: None, csv: default_csv(), json: default_json(), stride: 1, format: None }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    #[default]
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Self::Csv | Self::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, Self::Json | Self::Both)
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CaseBlock {
    pub label: String,
    #[serde(default)]
    pub system: Option<SystemBlock>,
    #[serde(default)]
    pub initial: Option<InitialSpec>,
    #[serde(default)]
    pub horizon: Option<f64>,
}

fn one() -> f64 {
    1.0
}

fn one_usize() -> usize {
    1
}

fn default_csv() -> String {
    "rows.csv".into()
}

fn default_json() -> String {
    "result.json".into()
}

/// Parses TOML text. Syntax errors carry line/column; schema errors carry the
/// dotted path of the offending key.
pub fn parse_scenario(text: &str, origin: &str) -> Result<ScenarioFile, CliError> {
    let table: toml::Table = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map(|s| line_column(text, s.start)).unwrap_or((1, 1));
        CliError::Parse { origin: origin.to_string(), line, column, message: e.message().to_string() }
    })?;
    serde_path_to_error::deserialize(toml::Value::Table(table)).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner().message().to_string();
        let (field, message) = describe_schema_error(&path, &inner);
        CliError::Validation { origin: origin.to_string(), field, message }
    })
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Turns serde's "missing field `dt`" at path `dynamics` into `dynamics.dt`.
fn describe_schema_error(path: &str, message: &str) -> (String, String) {
    let parent = if path == "." { "" } else { path };
    let join = |name: &str| if parent.is_empty() { name.to_string() } else { format!("{parent}.{name}") };
    let quoted = message.split('`').nth(1);
    if let (Some(name), true) = (quoted, message.starts_with("missing field")) {
        (join(name), "required key is missing".into())
    } else if let (Some(name), true) = (quoted, message.starts_with("unknown field")) {
        // the path already ends at the offending key
        let field = if parent.rsplit('.').next() == Some(name) { parent.to_string() } else { join(name) };
        (field, format!("unknown key ({message})"))
    } else {
        (if parent.is_empty() { "<root>".into() } else { parent.to_string() }, message.to_string())
    }
}
