//! The `gridspectra` command line.
//!
//! Exit codes: 0 success, 1 a map failed verification, 2 unreadable or
//! malformed input, 3 resource cap, 4 inapplicable move.

mod report;

pub use report::{
    halves, ComplexStats, EndReport, GridEcho, HomologyEntry, HomologyReport, InvariantReport, ObstructOutput,
    PageEntry, SignReport, Timing, VerifyOutput, VerifyRun, VerifyStep, ALEXANDER_CONVENTION,
};

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::complex::{
    build_complex_with, graded_homology_dims, reduce, BuildOptions, DEFAULT_MAX_STATES, DEFAULT_REDUCE_THRESHOLD,
};
use crate::error::{ComplexError, GridError, MapError};
use crate::grid::{GridDiagram, Sign};
use crate::maps::{parse_script, run_script, verify_map, Move};
use crate::spectral::{check_obstruction, compute_verdicts, prepare, verdict_for, EngineOptions};

#[derive(Parser, Debug, Clone)]
#[command(name = "gridspectra", version, about = "Spectral GRID invariants of Legendrian links")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Restrict to one canonical generator (`+` or `-`).
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_sign)]
    pub sign: Option<Sign>,
    /// Refuse to build complexes with more generators than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: u64,
    /// Skip cancellation of the complex before solving.
    #[arg(long, global = true)]
    pub no_reduce: bool,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse()
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// n and the λ pages of both canonical generators.
    Invariants { grid: PathBuf },
    /// Graded dimensions of the homology of the associated graded complex.
    Homology { grid: PathBuf },
    /// Obstructions to a decomposable cobordism from the first grid up to the second.
    Obstruct { minus: PathBuf, plus: PathBuf },
    /// Build and check the chain map of every move of a script.
    Verify { grid: PathBuf, script: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: GridError },
    #[error("{0}")]
    Resource(ComplexError),
    #[error("step {step} (`{mv}`): {msg}")]
    Inapplicable { step: usize, mv: String, msg: String },
    #[error("{0}")]
    Internal(String),
    #[error("verification failed")]
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed | CliError::Internal(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Resource(_) => 3,
            CliError::Inapplicable { .. } => 4,
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Capacity { .. } | ComplexError::TooLarge(_) => CliError::Resource(e),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl Flags {
    fn engine(&self) -> EngineOptions {
        EngineOptions {
            max_states: self.max_states,
            reduce_threshold: (!self.no_reduce).then_some(DEFAULT_REDUCE_THRESHOLD),
            full: false,
        }
    }

    fn signs(&self) -> Vec<Sign> {
        match self.sign {
            Some(s) => vec![s],
            None => vec![Sign::Plus, Sign::Minus],
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn load_grid(path: &Path) -> Result<GridDiagram, CliError> {
    GridDiagram::parse(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn load_script(path: &Path) -> Result<Vec<Move>, CliError> {
    parse_script(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn timing(start: Instant) -> Timing {
    Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 }
}

pub fn invariants(g: &GridDiagram, flags: &Flags) -> Result<InvariantReport, CliError> {
    let start = Instant::now();
    let signs = flags.signs();
    let probs = prepare(g, &signs, flags.engine())?;
    let verdicts = signs.iter().zip(&probs).map(|(&s, p)| verdict_for(g, s, p)).collect::<Result<Vec<_>, _>>()?;
    let (tb, rot) = g.tb_rot();
    let c = &probs[0].complex;
    Ok(InvariantReport {
        alexander: ALEXANDER_CONVENTION.into(),
        grid: g.into(),
        components: g.num_components(),
        tb,
        rot,
        signs: verdicts.iter().map(Into::into).collect(),
        complex: ComplexStats { generators: c.len(), reduced: c.is_reduced(), filtration_width: c.filtration_width() },
        timing: timing(start),
    })
}

pub fn homology(g: &GridDiagram, flags: &Flags) -> Result<HomologyReport, CliError> {
    let start = Instant::now();
    let mut c = build_complex_with(g, BuildOptions { window: None, max_states: flags.max_states })?;
    if !flags.no_reduce {
        c = reduce(&c);
    }
    let entries: Vec<HomologyEntry> = graded_homology_dims(&c)
        .into_iter()
        .map(|((maslov, alex2), dim)| HomologyEntry { maslov, alex2, dim })
        .collect();
    Ok(HomologyReport {
        alexander: ALEXANDER_CONVENTION.into(),
        grid: g.into(),
        components: g.num_components(),
        total: entries.iter().map(|e| e.dim).sum(),
        entries,
        timing: timing(start),
    })
}

/// `minus` is the bottom end `Λ₋`, `plus` the top end `Λ₊`.
pub fn obstruct(minus: &GridDiagram, plus: &GridDiagram, flags: &Flags) -> Result<ObstructOutput, CliError> {
    let start = Instant::now();
    let (pb, mb) = compute_verdicts(minus, flags.engine())?;
    let (pt, mt) = compute_verdicts(plus, flags.engine())?;
    let report = check_obstruction(&pt, &mt, &pb, &mb);
    Ok(ObstructOutput {
        alexander: ALEXANDER_CONVENTION.into(),
        minus: EndReport::new(minus, &pb, &mb),
        plus: EndReport::new(plus, &pt, &mt),
        report,
        timing: timing(start),
    })
}

fn step_error(e: MapError, moves: &[Move]) -> CliError {
    match e {
        MapError::Step { step, source } => match *source {
            MapError::Complex(c) => c.into(),
            other => CliError::Inapplicable {
                step,
                mv: moves.get(step).map(ToString::to_string).unwrap_or_default(),
                msg: other.to_string(),
            },
        },
        MapError::Complex(c) => c.into(),
        other => CliError::Internal(other.to_string()),
    }
}

pub fn verify(g: &GridDiagram, moves: &[Move], flags: &Flags) -> Result<VerifyOutput, CliError> {
    let start = Instant::now();
    let mut runs = Vec::new();
    let mut result = g.clone();
    for sign in flags.signs() {
        let steps = run_script(g, moves, sign).map_err(|e| step_error(e, moves))?;
        let mut out = Vec::with_capacity(steps.len());
        let mut composite: Option<crate::maps::ChainMapRecord> = None;
        for s in &steps {
            let report = verify_map(&s.record);
            out.push(VerifyStep {
                step: s.line,
                inserted: s.inserted,
                mv: s.mv.to_string(),
                kind: s.record.kind,
                shift: s.record.shift,
                passed: report.passed(),
                report,
            });
            composite = Some(match composite {
                None => s.record.clone(),
                Some(c) => c.then(&s.record).map_err(|e| CliError::Internal(e.to_string()))?,
            });
        }
        let composite = match composite {
            Some(c) => {
                result = c.target.grid().clone();
                verify_map(&c)
            }
            None => return Err(CliError::Internal("empty script".into())),
        };
        let passed = out.iter().all(|s| s.passed) && composite.passed();
        runs.push(VerifyRun { sign, steps: out, composite, passed });
    }
    Ok(VerifyOutput {
        alexander: ALEXANDER_CONVENTION.into(),
        grid: g.into(),
        result: (&result).into(),
        passed: runs.iter().all(|r| r.passed),
        runs,
        timing: timing(start),
    })
}

fn emit<T: Serialize + std::fmt::Display>(v: &T, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let text = if json {
        serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))? + "\n"
    } else {
        v.to_string()
    };
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

/// Run a parsed command, writing its report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let f = &cli.flags;
    match &cli.command {
        Command::Invariants { grid } => emit(&invariants(&load_grid(grid)?, f)?, f.json, out),
        Command::Homology { grid } => emit(&homology(&load_grid(grid)?, f)?, f.json, out),
        Command::Obstruct { minus, plus } => {
            let (gm, gp) = (load_grid(minus)?, load_grid(plus)?);
            emit(&obstruct(&gm, &gp, f)?, f.json, out)
        }
        Command::Verify { grid, script } => {
            let g = load_grid(grid)?;
            let moves = load_script(script)?;
            if moves.is_empty() {
                return Err(CliError::Parse {
                    path: script.display().to_string(),
                    source: GridError::Parse { line: 1, msg: "script has no moves".into() },
                });
            }
            let v = verify(&g, &moves, f)?;
            emit(&v, f.json, out)?;
            if v.passed {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
    }
}

/// Size the global thread pool from `GRIDSPECTRA_THREADS`, if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("GRIDSPECTRA_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("GRIDSPECTRA_THREADS: `{v}` is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// Parse `args`, run, and return the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
