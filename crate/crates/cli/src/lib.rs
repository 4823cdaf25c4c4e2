//! Configuration-driven experiments on ELW quantum games.
//!
//! The binary `elw-lab` is a thin wrapper around [`execute`].

pub mod commands;
pub mod config;
pub mod report;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use commands::{Command, Outcome};
pub use config::{ExperimentConfig, Format, LoadedConfig};

/// Environment variable capping worker threads (0 = auto).
pub const THREADS_ENV: &str = "ELW_LAB_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        message: String,
    },
    #[error(transparent)]
    Engine(#[from] elw_core::Error),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Engine(_) => 3,
            CliError::Output(_) => 1,
        }
    }
}

/// Options taken from the command line.
#[derive(Debug, Clone, Default)]
pub struct Invocation {
    pub config: PathBuf,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub threads: usize,
}

/// A finished run: the rendered report plus where it should go.
#[derive(Debug)]
pub struct Rendered {
    pub format: Format,
    pub body: Vec<u8>,
    /// Provenance sidecar written next to CSV output.
    pub provenance: Option<Vec<u8>>,
    pub path: Option<PathBuf>,
    pub summary: Option<String>,
}

pub fn parse_threads(value: Option<&str>) -> Result<usize, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => v.parse().map_err(|_| CliError::Config {
            line: None,
            message: format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"),
        }),
    }
}

/// Loads the config, applies command-line overrides and renders the report.
pub fn render(cmd: Command, inv: &Invocation) -> Result<Rendered, CliError> {
    let mut cfg = LoadedConfig::load(&inv.config)?;
    if let Some(seed) = inv.seed {
        cfg.config.solver.seed = seed;
    }
    if let Some(out) = &inv.out {
        cfg.config.output.path = Some(out.to_string_lossy().into_owned());
    }
    let format = cfg.config.output.format.unwrap_or(match cmd {
        Command::SweepEntropy => Format::Csv,
        _ => Format::Json,
    });
    cfg.config.output.format = Some(format);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(inv.threads)
        .build()
        .map_err(|e| CliError::Output(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| commands::run(cmd, &cfg))?;

    let config = &cfg.config;
    let (body, provenance) = match format {
        Format::Json => (
            json(&report::Envelope {
                engine: report::engine_version(),
                command: cmd.name(),
                config,
                result: &outcome,
            })?,
            None,
        ),
        Format::Csv => (
            outcome
                .table()
                .to_csv()
                .map_err(|e| CliError::Output(e.to_string()))?,
            Some(json(&report::Provenance {
                engine: report::engine_version(),
                command: cmd.name(),
                config,
            })?),
        ),
    };
    Ok(Rendered {
        format,
        body,
        provenance,
        path: config.output.path.as_ref().map(PathBuf::from),
        summary: outcome.summary().map(str::to_owned),
    })
}

/// Sidecar path holding the provenance of a CSV report.
pub fn provenance_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Renders and writes the report; stdout is used when no path is configured.
pub fn execute(cmd: Command, inv: &Invocation) -> Result<Rendered, CliError> {
    let rendered = render(cmd, inv)?;
    if let Some(path) = &rendered.path {
        let write = |p: &Path, bytes: &[u8]| {
            std::fs::write(p, bytes).map_err(|e| CliError::Output(format!("{}: {e}", p.display())))
        };
        write(path, &rendered.body)?;
        if let Some(meta) = &rendered.provenance {
            write(&provenance_path(path), meta)?;
        }
    }
    Ok(rendered)
}

fn json<S: serde::Serialize>(v: &S) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}
