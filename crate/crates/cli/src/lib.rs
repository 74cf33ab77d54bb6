//! `ensemblelab`: declarative scenarios for canonical ensemble experiments.
//!
//! A scenario (TOML) names a continuous or discrete system, an initial state,
//! the dynamics and optionally a constraint with alternative cases. Running it
//! yields sampled diagnostics rows and a report, written as CSV and/or JSON.

pub mod cli;
pub mod config;
pub mod emit;
pub mod error;
pub mod presets;
pub mod run;
pub mod scenario;

pub use config::{parse_scenario, Format, ScenarioFile};
pub use error::CliError;
pub use run::{run, RunResult};
pub use scenario::{build, Scenario};

/// Parses and validates a scenario from TOML text.
pub fn load_str(text: &str, origin: &str) -> Result<Scenario, CliError> {
    build(parse_scenario(text, origin)?).map_err(|e| e.with_origin(origin))
}

/// Loads a config file, or a built-in preset when `target` is not a file.
pub fn load(target: &str) -> Result<Scenario, CliError> {
    let path = std::path::Path::new(target);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        return load_str(&text, target);
    }
    match presets::find(target) {
        Some(p) => load_str(p.source, &format!("preset {}", p.name)),
        None => Err(CliError::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such config file or built-in preset"),
        )),
    }
}
