//! Command-line front end emitting solver tables as CSV or JSON.
//!
//! Five subcommands cover the standard artifacts: `eigen` (spectrum plus
//! Airy-transform data), `wavefunction` (one normalized eigenfunction on a
//! uniform grid), `forces` (halved wall forces per state), `validate`
//! (analytic against finite-difference, with tolerance gates suitable for
//! CI) and `sweep` (long-format spectrum and force table over several tilt
//! strengths).
//!
//! Exit codes: 0 success, 2 argument error, 3 solver failure, 4 validation
//! failure. Output is deterministic byte for byte: CSV rows carry 15
//! significant digits in scientific notation with a period decimal
//! separator; JSON carries the same table as
//! `{"columns": [...], "rows": [[...]]}` with full round-trip numbers and
//! `null` for fields that do not apply (for instance the Airy-transform
//! columns of the flat box). `--output` writes through a temporary file and
//! an atomic rename, so readers never observe a half-written table.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analytic::{self, FieldProblem};
use crate::error::{Error, Result};
use crate::fd;
use crate::gauss::{self, GaussRule};

/// Quadrature order override for the cross-check command.
const GAUSS_ORDER_ENV: &str = "AIRYBOX_GAUSS_ORDER";

/// Largest analytic/finite-difference eigenvalue gap `validate` accepts.
const VALIDATE_ABS_LIMIT: f64 = 5e-4;

/// Largest relative mismatch between the quadrature and boundary-data
/// normalization integrals `validate` accepts.
const VALIDATE_REL_LIMIT: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "airybox",
    version,
    about = "Bound states of a particle in a box under a uniform field"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table to this file (atomically) instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Lowest eigenvalues with their Airy-transform data.
    Eigen {
        /// Tilt strength.
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Number of states, lowest first.
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// One normalized eigenfunction sampled on a uniform grid.
    Wavefunction {
        /// Tilt strength.
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// 1-based state index.
        #[arg(long)]
        k: usize,
        /// Number of samples, both walls included.
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Halved wall forces per state.
    Forces {
        /// Tilt strength.
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Number of states, lowest first.
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Cross-check the analytic solver against the finite-difference one.
    Validate {
        /// Tilt strength (must be positive).
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Finite-difference grid panels.
        #[arg(long, default_value_t = 4000)]
        grid: usize,
        /// Number of states to compare.
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// Eigenvalues and halved wall forces over several tilt strengths.
    Sweep {
        /// Comma-separated tilt strengths.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        alphas: Vec<f64>,
        /// Number of states per tilt strength.
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// One table field: an index, a number, or not-applicable (empty in CSV,
/// `null` in JSON).
#[derive(Debug)]
enum Cell {
    Int(usize),
    Num(f64),
    Empty,
}

/// A rectangular result table; every command produces one.
#[derive(Debug)]
struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "ragged table row");
        self.rows.push(row);
    }
}

/// Parses the command line, runs it, and returns the process exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Argument problems exit 2; solver failures exit 3. Anything tagged with a
/// state index is a solver failure — the arguments were fine, the search for
/// that state was not — and its message names the failing k.
fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Domain(_) | Error::InvalidInput(_) => 2,
        Error::NonConvergence { .. } | Error::State { .. } => 3,
    }
}

fn execute(cli: Cli) -> Result<u8> {
    let (table, code) = match cli.command {
        Command::Eigen { alpha, count } => (cmd_eigen(alpha, count)?, 0),
        Command::Wavefunction { alpha, k, points } => (cmd_wavefunction(alpha, k, points)?, 0),
        Command::Forces { alpha, count } => (cmd_forces(alpha, count)?, 0),
        Command::Validate { alpha, grid, count } => cmd_validate(alpha, grid, count)?,
        Command::Sweep { alphas, count } => (cmd_sweep(&alphas, count)?, 0),
    };
    let rendered = match cli.format {
        Format::Csv => render_csv(&table),
        Format::Json => render_json(&table),
    };
    match &cli.output {
        None => std::io::stdout()
            .lock()
            .write_all(rendered.as_bytes())
            .map_err(|e| Error::InvalidInput(format!("cannot write to standard output: {e}")))?,
        Some(path) => write_atomic(path, &rendered)?,
    }
    Ok(code)
}

fn require(condition: bool, message: &str) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::InvalidInput(message.to_owned()))
    }
}

fn cmd_eigen(alpha: f64, count: usize) -> Result<Table> {
    require(count >= 1, "--count must be at least 1")?;
    let problem = FieldProblem::new(alpha)?;
    let states = analytic::eigenvalues(&problem, count)?;
    let mut table = Table::new(&["k", "beta", "eta_hat", "eta_bar", "w", "J", "residual"]);
    for state in &states {
        let row = match &state.airy {
            // The Airy transformation does not exist for the flat box.
            None => vec![
                Cell::Int(state.k),
                Cell::Num(state.beta),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ],
            Some(form) => vec![
                Cell::Int(state.k),
                Cell::Num(state.beta),
                Cell::Num(form.eta_hat),
                Cell::Num(form.eta_bar),
                Cell::Num(form.w),
                Cell::Num(form.j_norm),
                Cell::Num(analytic::characteristic(&problem, state.beta)?),
            ],
        };
        table.push(row);
    }
    Ok(table)
}

fn cmd_wavefunction(alpha: f64, k: usize, points: usize) -> Result<Table> {
    require(k >= 1, "--k must be at least 1")?;
    require(points >= 2, "--points must be at least 2")?;
    let problem = FieldProblem::new(alpha)?;
    let state = analytic::eigenvalues(&problem, k)?[k - 1];
    let mut table = Table::new(&["xi", "psi"]);
    let steps = (points - 1) as f64;
    for i in 0..points {
        // i/steps is exact at both ends, so the walls are hit exactly.
        let xi = -1.0 + 2.0 * (i as f64 / steps);
        table.push(vec![
            Cell::Num(xi),
            Cell::Num(analytic::eigenfunction(&problem, &state, xi)?),
        ]);
    }
    Ok(table)
}

fn cmd_forces(alpha: f64, count: usize) -> Result<Table> {
    require(count >= 1, "--count must be at least 1")?;
    let problem = FieldProblem::new(alpha)?;
    let mut table = Table::new(&[
        "k",
        "beta",
        "force_left_half",
        "force_right_half",
        "difference_half",
    ]);
    for forces in analytic::force_sweep(&problem, count)? {
        table.push(vec![
            Cell::Int(forces.k),
            Cell::Num(forces.beta),
            Cell::Num(forces.half_left()),
            Cell::Num(forces.half_right()),
            Cell::Num(forces.half_difference()),
        ]);
    }
    Ok(table)
}

fn cmd_validate(alpha: f64, grid: usize, count: usize) -> Result<(Table, u8)> {
    require(alpha > 0.0, "--alpha must be positive for validation")?;
    require(grid >= 16, "--grid must be at least 16 panels")?;
    require(count >= 1, "--count must be at least 1")?;
    let order = parse_gauss_order(std::env::var(GAUSS_ORDER_ENV).ok().as_deref())?;
    let rule = GaussRule::new(order)?;

    let problem = FieldProblem::new(alpha)?;
    let analytic_states = analytic::eigenvalues(&problem, count)?;
    let fd_states = fd::spectrum(&problem, grid, count)?;

    let mut table = Table::new(&[
        "k",
        "beta_analytic",
        "beta_fd",
        "abs_diff",
        "j_quad",
        "j_analytic",
        "rel_diff",
    ]);
    let mut code = 0;
    for (a, d) in analytic_states.iter().zip(fd_states.iter()) {
        let abs_diff = (a.beta - d.beta).abs();
        let j_closed = analytic::j_analytic(a);
        let j_quad = analytic::j_quadrature(a, &rule);
        let rel_diff = (j_quad - j_closed).abs() / j_closed;
        if abs_diff >= VALIDATE_ABS_LIMIT {
            eprintln!(
                "validation failed at k = {}: |beta_analytic - beta_fd| = {abs_diff:.6e} \
                 exceeds {VALIDATE_ABS_LIMIT:.1e}",
                a.k
            );
            code = 4;
        }
        if rel_diff >= VALIDATE_REL_LIMIT {
            eprintln!(
                "validation failed at k = {}: normalization integrals disagree by \
                 {rel_diff:.6e} (limit {VALIDATE_REL_LIMIT:.1e})",
                a.k
            );
            code = 4;
        }
        table.push(vec![
            Cell::Int(a.k),
            Cell::Num(a.beta),
            Cell::Num(d.beta),
            Cell::Num(abs_diff),
            Cell::Num(j_quad),
            Cell::Num(j_closed),
            Cell::Num(rel_diff),
        ]);
    }
    Ok((table, code))
}

fn cmd_sweep(alphas: &[f64], count: usize) -> Result<Table> {
    require(!alphas.is_empty(), "--alphas must list at least one value")?;
    require(count >= 1, "--count must be at least 1")?;
    let mut table = Table::new(&["alpha", "k", "beta", "force_left_half", "force_right_half"]);
    for &alpha in alphas {
        let problem = FieldProblem::new(alpha)?;
        for forces in analytic::force_sweep(&problem, count)? {
            table.push(vec![
                Cell::Num(alpha),
                Cell::Int(forces.k),
                Cell::Num(forces.beta),
                Cell::Num(forces.half_left()),
                Cell::Num(forces.half_right()),
            ]);
        }
    }
    Ok(table)
}

/// Quadrature order for the cross-check, from the environment override.
///
/// `None` (unset) gives [`gauss::DEFAULT_ORDER`]; anything that is not an
/// integer in the supported range is an argument error.
fn parse_gauss_order(raw: Option<&str>) -> Result<usize> {
    match raw {
        None => Ok(gauss::DEFAULT_ORDER),
        Some(text) => text.trim().parse().map_err(|_| {
            Error::InvalidInput(format!(
                "{GAUSS_ORDER_ENV} must be an integer quadrature order, got {text:?}"
            ))
        }),
    }
}

/// CSV with a header row; numbers carry 15 significant digits.
fn render_csv(table: &Table) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in &table.rows {
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match cell {
                Cell::Int(k) => out.push_str(&k.to_string()),
                Cell::Num(x) => out.push_str(&format!("{x:.14e}")),
                Cell::Empty => {}
            }
        }
        out.push('\n');
    }
    out
}

/// Compact JSON document `{"columns": [...], "rows": [[...]]}`.
fn render_json(table: &Table) -> String {
    let columns: Vec<serde_json::Value> = table
        .columns
        .iter()
        .map(|&c| serde_json::Value::from(c))
        .collect();
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            serde_json::Value::Array(
                row.iter()
                    .map(|cell| match cell {
                        Cell::Int(k) => serde_json::Value::from(*k as u64),
                        Cell::Num(x) => serde_json::Value::from(*x),
                        Cell::Empty => serde_json::Value::Null,
                    })
                    .collect(),
            )
        })
        .collect();
    let mut out = serde_json::json!({ "columns": columns, "rows": rows }).to_string();
    out.push('\n');
    out
}

/// Writes through a sibling temporary file and an atomic rename.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let describe = |action: &str, e: &dyn std::fmt::Display| {
        Error::InvalidInput(format!("cannot {action} {}: {e}", path.display()))
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).map_err(|e| describe("stage output near", &e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| describe("write output for", &e))?;
    tmp.persist(path)
        .map_err(|e| describe("finalize output at", &e))?;
    Ok(())
}
