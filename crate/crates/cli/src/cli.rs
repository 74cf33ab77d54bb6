//! Command-line front end. Exit codes: 0 ok, 2 parse, 3 validation,
//! 4 solver abort, 5 I/O.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};

use crate::config::Format;
use crate::error::CliError;
use crate::presets::{self, PRESETS};
use crate::run::RunResult;
use crate::{emit, load, run, Scenario};

pub const DEFAULT_OUT_DIR: &str = "ensemblelab-out";

#[derive(Debug, Parser)]
#[command(name = "ensemblelab", version, about = "Run canonical ensemble scenarios")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one or more scenarios (config files or preset names).
    Run {
        #[arg(required = true, value_name = "CONFIG|PRESET")]
        targets: Vec<String>,
        /// Base output directory; each scenario writes to DIR/<name>/.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Scenarios run concurrently.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
    },
    /// List the built-in presets.
    Presets,
    /// Parse and validate a config (or preset) without running it.
    Validate {
        #[arg(value_name = "CONFIG|PRESET")]
        path: String,
    },
}

pub fn main<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match args.command {
        Command::Presets => {
            for p in PRESETS {
                println!("{:<26}{}", p.name, presets::description(p));
            }
            0
        }
        Command::Validate { path } => match load(&path) {
            Ok(s) => {
                println!("{}: ok ({})", path, s.name());
                0
            }
            Err(e) => report_error(&e),
        },
        Command::Run { targets, out, format, jobs } => run_batch(&targets, out.as_deref(), format, jobs as usize),
    }
}

fn report_error(e: &CliError) -> u8 {
    eprintln!("error: {e}");
    e.exit_code()
}

/// Output directory of one scenario: `<base>/<name>`.
pub fn output_dir(s: &Scenario, out: Option<&Path>) -> PathBuf {
    let base = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(s.output().dir.as_deref().unwrap_or(DEFAULT_OUT_DIR)));
    base.join(s.name())
}

/// Runs a validated scenario and writes its outputs. Partial results are
/// written before a solver abort is reported.
pub fn execute(s: &Scenario, out: Option<&Path>, format: Option<Format>) -> Result<(RunResult, Vec<PathBuf>), CliError> {
    let result = run(s);
    let format = format.or(s.output().format).unwrap_or_default();
    let written = emit::write(&output_dir(s, out), &s.file, &result, format)?;
    if let Some(reason) = result.aborted() {
        return Err(CliError::Abort { scenario: s.name().to_string(), rows: result.rows.len(), message: reason.to_string() });
    }
    Ok((result, written))
}

fn run_batch(targets: &[String], out: Option<&Path>, format: Option<Format>, jobs: usize) -> u8 {
    let mut scenarios = Vec::with_capacity(targets.len());
    let mut names = BTreeSet::new();
    for t in targets {
        match load(t) {
            Ok(s) if !names.insert(s.name().to_string()) => {
                let e = CliError::Validation {
                    origin: t.clone(),
                    field: "name".into(),
                    message: format!("scenario name `{}` appears twice in this batch", s.name()),
                };
                return report_error(&e);
            }
            Ok(s) => scenarios.push(s),
            Err(e) => return report_error(&e),
        }
    }

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<String, CliError>>>> = Mutex::new((0..scenarios.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(scenarios.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(s) = scenarios.get(i) else { break };
                let r = execute(s, out, format).map(|(res, files)| summary(s, &res, &files));
                results.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });

    let mut code = 0;
    for r in results.into_inner().expect("no worker panicked").into_iter().flatten() {
        match r {
            Ok(text) => print!("{text}"),
            Err(e) => {
                let c = report_error(&e);
                if code == 0 {
                    code = c;
                }
            }
        }
    }
    code
}

fn summary(s: &Scenario, r: &RunResult, files: &[PathBuf]) -> String {
    use std::fmt::Write as _;
    let rep = &r.report;
    let mut t = String::new();
    let _ = writeln!(t, "{}: {} rows to t = {}, energy drift {:e}", s.name(), rep.rows, rep.final_time, rep.energy_drift);
    if let Some(c) = &rep.comparison {
        let _ = writeln!(t, "  canonical vs reference: max |dP| = {:e}", c.max_linf_p);
    }
    if let Some(tr) = &rep.translation {
        let _ = writeln!(t, "  rigid translation: max |dP| = {:e} over {} samples", tr.max_linf, tr.compared_samples);
    }
    if let Some(h) = &rep.homogeneity {
        let _ = writeln!(t, "  homogeneity: scaling {:e}, identity {:e}", h.scaling_defect, h.identity_defect);
    }
    if let Some(rt) = &rep.rates {
        let _ = writeln!(t, "  rates vs canonical dP: {:e}, |sum dP| <= {:e}", rt.max_rate_vs_canonical, rt.max_abs_total_rate);
    }
    if let Some(c) = &rep.constraint {
        for case in &c.cases {
            let _ = writeln!(t, "  {} [{}]: {} (max residual {:e})", case.label, c.name, case.verdict, case.residual_max);
        }
    }
    for f in files {
        let _ = writeln!(t, "  wrote {}", f.display());
    }
    t
}
