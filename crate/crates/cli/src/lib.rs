//! Command-line surface: `table1`, `fig1`, `deficit` and `classical-scan`.

pub mod commands;
pub mod config;
pub mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::commands::{
    classical_scan, deficit, fig1, render_deficit_csv, render_deficit_text, render_fig1_csv,
    render_scan_csv, render_table1_csv, render_table1_text, table1,
};
use crate::config::{Format, Job, RunConfig};

pub use config::Cli;

/// Exit status for malformed input.
pub const EXIT_BAD_INPUT: i32 = 2;
/// Exit status when the numerics fail (eigensolver non-convergence).
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),
    #[error(transparent)]
    Core(#[from] qdeficit::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numeric_failure() => EXIT_NUMERIC,
            _ => EXIT_BAD_INPUT,
        }
    }
}

/// Main document plus an optional JSON summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub main: String,
    pub summary: Option<String>,
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
}

fn table_unsupported(what: &str) -> CliError {
    CliError::BadInput(format!("--format table is not available for {what}"))
}

pub fn render(config: &RunConfig) -> Result<Rendered, CliError> {
    let (main, summary) = match &config.job {
        Job::Table1 => {
            let rows = table1(config.base)?;
            let main = match config.format {
                Format::Table => render_table1_text(&rows),
                Format::Csv => render_table1_csv(&rows),
                Format::Json => json(&rows),
            };
            (main, None)
        }
        Job::Fig1 { grid, powers } => {
            let f = fig1(grid, powers, config.base, config.n_max)?;
            match config.format {
                Format::Csv => (render_fig1_csv(&f), Some(json(&f.summary))),
                Format::Json => (json(&f), None),
                Format::Table => return Err(table_unsupported("fig1")),
            }
        }
        Job::Deficit { spec } => {
            let d = deficit(spec, config.base, config.n_max)?;
            let main = match config.format {
                Format::Json => json(&d),
                Format::Csv => render_deficit_csv(&d),
                Format::Table => render_deficit_text(&d),
            };
            (main, None)
        }
        Job::ClassicalScan { source } => {
            let s = classical_scan(source, config.base, config.n_max)?;
            match config.format {
                Format::Csv => (render_scan_csv(&s), Some(json(&s.summary))),
                Format::Json => (json(&s), None),
                Format::Table => return Err(table_unsupported("classical-scan")),
            }
        }
    };
    Ok(Rendered { main, summary })
}

/// Where the summary of a CSV run goes when `--out` is given.
pub fn summary_path(out: &Path) -> PathBuf {
    let mut name = out.file_stem().unwrap_or_default().to_os_string();
    name.push(".summary.json");
    out.with_file_name(name)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Renders and writes: main output to `--out` (or stdout); a summary next to
/// it as `<stem>.summary.json` (or to stderr).
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let rendered = render(config)?;
    match &config.out {
        Some(path) => {
            write_file(path, &rendered.main)?;
            if let Some(summary) = &rendered.summary {
                write_file(&summary_path(path), summary)?;
            }
        }
        None => {
            let io = |source| CliError::Io {
                path: "<stdout>".into(),
                source,
            };
            std::io::stdout().write_all(rendered.main.as_bytes()).map_err(io)?;
            if let Some(summary) = &rendered.summary {
                std::io::stderr().write_all(summary.as_bytes()).map_err(io)?;
            }
        }
    }
    Ok(())
}
