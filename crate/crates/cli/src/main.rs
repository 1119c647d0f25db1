//! Command-line front end: spectra, structural reports, eigenvalue
//! comparisons, and edge subdivision for metric-graph files.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain/validation error.

mod render;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use qglap::comparison::{
    check_mu_conditions_for_graph, verify_domination, window_check_count, DEFAULT_TOLERANCE,
};
use qglap::format::{graph_to_json, parse_graph_json};
use qglap::secular::spectrum_via_secular;
use qglap::spectrum::{Truncation, VertexConditions};
use qglap::{EigenvalueList, MetricGraph};
use render::OutputFormat;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qglap",
    version,
    about = "Spectra of standard and anti-standard Laplace operators on metric graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConditionsArg {
    /// Standard (Kirchhoff) vertex conditions.
    St,
    /// Anti-standard (anti-Kirchhoff) vertex conditions.
    Ast,
}

impl From<ConditionsArg> for VertexConditions {
    fn from(value: ConditionsArg) -> Self {
        match value {
            ConditionsArg::St => VertexConditions::Standard,
            ConditionsArg::Ast => VertexConditions::AntiStandard,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Closed form via the transition matrix; needs an equilateral graph.
    Transition,
    /// Secular-equation root finding; works on any graph.
    Secular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Table => OutputFormat::Table,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Laplace spectrum of a graph file.
    Spectrum {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ConditionsArg::St)]
        conditions: ConditionsArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Transition)]
        method: MethodArg,
        /// Keep the first COUNT eigenvalues (with multiplicity).
        #[arg(long)]
        count: Option<usize>,
        /// Keep eigenvalues with sqrt(lambda) up to KMAX.
        #[arg(long)]
        kmax: Option<f64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Check the shifted eigenvalue domination between the two condition
    /// families on a non-bipartite graph.
    Compare {
        input: PathBuf,
        /// Number of indices to check (default: one period window for
        /// equilateral inputs, 100 otherwise).
        #[arg(long)]
        count: Option<usize>,
        /// Comparison tolerance on eigenvalues and transition eigenvalues.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Evaluate the transition-eigenvalue inequality families on a
    /// non-bipartite graph.
    CheckConditions {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Subdivide each edge and print the resulting graph file.
    Subdivide {
        input: PathBuf,
        /// Comma-separated parts per edge, e.g. 3,4,5.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// Report structural properties of a graph file.
    Structure {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn domain(msg: impl std::fmt::Display) -> CliError {
    CliError::Domain(msg.to_string())
}

fn load_graph(path: &Path) -> Result<MetricGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse_graph_json(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

/// kmax large enough that the secular root search yields at least
/// `flat_target` eigenvalues: Weyl count plus a 2N safety margin.
fn weyl_kmax(g: &MetricGraph, flat_target: usize) -> f64 {
    PI * (flat_target + 2 * g.edge_count() + 6) as f64 / g.total_length()
}

/// Keeps whole entries until `count` eigenvalues (with multiplicity) are
/// covered.
fn trim_to_count(list: &mut EigenvalueList, count: usize) -> Result<(), CliError> {
    let mut covered = 0usize;
    let mut keep = 0usize;
    for e in &list.entries {
        keep += 1;
        covered += e.multiplicity;
        if covered >= count {
            break;
        }
    }
    if covered < count {
        return Err(CliError::Domain(format!(
            "secular search produced only {covered} of the {count} requested eigenvalues"
        )));
    }
    list.entries.truncate(keep);
    list.truncation = Truncation::ByCount(count);
    Ok(())
}

fn run_spectrum(
    input: &Path,
    conditions: VertexConditions,
    method: MethodArg,
    count: Option<usize>,
    kmax: Option<f64>,
    format: OutputFormat,
) -> Result<String, CliError> {
    if count.is_some() && kmax.is_some() {
        return Err(usage("choose either --count or --kmax, not both"));
    }
    if let Some(0) = count {
        return Err(usage("--count must be at least 1"));
    }
    if let Some(k) = kmax {
        if !(k.is_finite() && k > 0.0) {
            return Err(usage("--kmax must be positive and finite"));
        }
    }
    let g = load_graph(input)?;
    let list = match method {
        MethodArg::Transition => {
            let truncation = match (count, kmax) {
                (Some(c), None) => Truncation::ByCount(c),
                (None, Some(k)) => Truncation::ByKmax(k),
                _ => Truncation::ByCount(20),
            };
            qglap::equilateral::spectrum(&g, conditions, truncation).map_err(domain)?
        }
        MethodArg::Secular => match (count, kmax) {
            (None, Some(k)) => spectrum_via_secular(&g, conditions, k).map_err(domain)?,
            (c, None) => {
                let target = c.unwrap_or(20);
                let mut list =
                    spectrum_via_secular(&g, conditions, weyl_kmax(&g, target)).map_err(domain)?;
                trim_to_count(&mut list, target)?;
                list
            }
            _ => unreachable!("flag conflict rejected above"),
        },
    };
    let method_name = match method {
        MethodArg::Transition => "transition",
        MethodArg::Secular => "secular",
    };
    Ok(render::spectrum(&list, method_name, format))
}

fn run_compare(
    input: &Path,
    count: Option<usize>,
    tolerance: f64,
    format: OutputFormat,
) -> Result<String, CliError> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(usage("--tolerance must be positive and finite"));
    }
    if let Some(0) = count {
        return Err(usage("--count must be at least 1"));
    }
    let g = load_graph(input)?;
    let conditions = check_mu_conditions_for_graph(&g, tolerance).map_err(domain)?;
    let shift = conditions.shift;
    let equilateral = g.equilateral_length().is_some();
    let k_count = match count {
        Some(k) => k,
        None if equilateral => window_check_count(&g).map_err(domain)?.max(1),
        None => 100,
    };
    let needed = k_count + shift + 2;
    let (st, ast) = if equilateral {
        (
            qglap::equilateral::standard_spectrum(&g, Truncation::ByCount(needed))
                .map_err(domain)?,
            qglap::equilateral::antistandard_spectrum(&g, Truncation::ByCount(needed))
                .map_err(domain)?,
        )
    } else {
        let kmax = weyl_kmax(&g, needed);
        (
            spectrum_via_secular(&g, VertexConditions::Standard, kmax).map_err(domain)?,
            spectrum_via_secular(&g, VertexConditions::AntiStandard, kmax).map_err(domain)?,
        )
    };
    let domination = verify_domination(&st, &ast, shift, k_count, tolerance).map_err(domain)?;
    Ok(render::comparison(&conditions, &domination, format))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Spectrum {
            input,
            conditions,
            method,
            count,
            kmax,
            format,
        } => run_spectrum(
            &input,
            conditions.into(),
            method,
            count,
            kmax,
            format.into(),
        ),
        Command::Compare {
            input,
            count,
            tolerance,
            format,
        } => run_compare(&input, count, tolerance, format.into()),
        Command::CheckConditions {
            input,
            tolerance,
            format,
        } => {
            if !(tolerance.is_finite() && tolerance > 0.0) {
                return Err(usage("--tolerance must be positive and finite"));
            }
            let g = load_graph(&input)?;
            let report = check_mu_conditions_for_graph(&g, tolerance).map_err(domain)?;
            Ok(render::conditions(&report, format.into()))
        }
        Command::Subdivide { input, parts } => {
            let g = load_graph(&input)?;
            let fine = g.subdivide(&parts).map_err(domain)?;
            Ok(graph_to_json(&fine) + "\n")
        }
        Command::Structure { input, format } => {
            let g = load_graph(&input)?;
            let report = g.structure();
            Ok(render::structure(&g, &report, format.into()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
