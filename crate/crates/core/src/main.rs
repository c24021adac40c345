use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use guesswork::closed_form::{polygon_value, polyhedron_reference_for};
use guesswork::io::{load_ensemble, PolygonReport, PolyhedronRow, SolutionReport, VerifyReport};
use guesswork::score::{
    certified_value, check_condition, evaluate_measurement, helstrom_measurement, is_decreasing, marginal,
    score_operator, DEFAULT_CAP, DEFAULT_CONDITION_TOL,
};
use guesswork::solver::DECREASING_TOL;
use guesswork::{solve, Ensemble, Error, Method, Polyhedron, SolveConfig};

/// Agreement required between a polyhedron row and its reference value.
const TABLE_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "guesswork", version, about = "Minimum guesswork of quantum ensembles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an ensemble file.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the regular polygon ensemble and compare with its closed form.
    Polygon {
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Solve a regular polyhedron ensemble.
    Polyhedron {
        #[arg(long)]
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce the regular polyhedron table.
    Table1 {
        #[command(flatten)]
        common: Common,
    },
    /// Check the certificate at a given ordering.
    Verify {
        input: PathBuf,
        /// Comma-separated labels, rank 1 first.
        #[arg(long, value_delimiter = ',', required = true)]
        ordering: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, default_value = "auto")]
    method: Method,
    /// Largest ensemble for full enumeration.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Number of sweep start directions.
    #[arg(long)]
    starts: Option<usize>,
    /// PSD tolerance of the certificate check.
    #[arg(long, default_value_t = DEFAULT_CONDITION_TOL)]
    tolerance: f64,
    /// Worker threads; 0 uses all available.
    #[arg(long, env = "GUESSWORK_THREADS", default_value_t = 0)]
    threads: usize,
    /// Allow enumerations that take minutes or more.
    #[arg(long)]
    long_running: bool,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

impl Common {
    fn config(&self) -> SolveConfig {
        SolveConfig {
            cap: self.cap,
            starts: self.starts,
            tolerance: self.tolerance,
            long_running: self.long_running,
            ..SolveConfig::default()
        }
    }
}

enum Failure {
    Error(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn emit<T: Serialize>(format: OutputFormat, value: &T, text: impl FnOnce(&T) -> String) {
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(value).expect("report serializes")),
        OutputFormat::Text => print!("{}", text(value)),
    }
}

fn solve_report(ensemble: &Ensemble, common: &Common) -> Result<SolutionReport, Error> {
    let solution = solve(ensemble, common.method, &common.config())?;
    Ok(SolutionReport::new(ensemble, &solution))
}

fn polyhedron_row(shape: Polyhedron, common: &Common) -> Result<PolyhedronRow, Error> {
    let solution = solve_report(&Ensemble::polyhedron(shape), common)?;
    let reference = polyhedron_reference_for(shape);
    let difference = (solution.g_min - reference).abs();
    Ok(PolyhedronRow {
        name: shape.name().to_string(),
        vertices: shape.vertex_count(),
        reference,
        difference,
        matches: difference <= TABLE_TOL,
        solution,
    })
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve { input, common } => {
            let report = solve_report(&load_ensemble(&input)?, &common)?;
            emit(common.output, &report, SolutionReport::to_text);
        }
        Command::Polygon { count, common } => {
            let closed_form = polygon_value(count)?;
            let solution = solve_report(&Ensemble::polygon(count)?, &common)?;
            let report = PolygonReport {
                count,
                difference: (solution.g_min - closed_form).abs(),
                closed_form,
                solution,
            };
            emit(common.output, &report, PolygonReport::to_text);
        }
        Command::Polyhedron { name, common } => {
            let row = polyhedron_row(name.parse()?, &common)?;
            emit(common.output, &row, PolyhedronRow::to_text_block);
            if !row.matches {
                return Err(Failure::Mismatch);
            }
        }
        Command::Table1 { common } => {
            let include_dodecahedron = common.long_running || common.method == Method::Sweep;
            let rows = Polyhedron::ALL
                .into_iter()
                .filter(|&s| include_dodecahedron || s != Polyhedron::Dodecahedron)
                .map(|s| polyhedron_row(s, &common))
                .collect::<Result<Vec<_>, _>>()?;
            emit(common.output, &rows, |rows| {
                rows.iter().map(|r| r.to_text() + "\n").collect()
            });
            if rows.iter().any(|r| !r.matches) {
                return Err(Failure::Mismatch);
            }
        }
        Command::Verify { input, ordering, common } => {
            let ensemble = load_ensemble(&input)?;
            let n_star = ensemble.ordering_from_labels(&ordering)?;
            let holds = check_condition(&ensemble, &n_star, common.tolerance, common.cap)?;
            let measurement = helstrom_measurement(&ensemble, &n_star)?;
            let q = marginal(&ensemble, &measurement)?;
            let report = VerifyReport {
                ordering: ensemble.ordering_labels(&n_star),
                condition_holds: holds,
                certified_value: if holds { Some(certified_value(&ensemble, &n_star)?) } else { None },
                upper_bound: evaluate_measurement(&ensemble, &measurement)?,
                trace_norm: score_operator(&ensemble, &n_star)?.trace_norm(),
                decreasing: is_decreasing(&q, DECREASING_TOL),
                q_marginal: q,
            };
            emit(common.output, &report, VerifyReport::to_text);
        }
    }
    Ok(())
}

fn threads(command: &Command) -> usize {
    match command {
        Command::Solve { common, .. }
        | Command::Polygon { common, .. }
        | Command::Polyhedron { common, .. }
        | Command::Table1 { common }
        | Command::Verify { common, .. } => common.threads,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads(&cli.command)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => {
            eprintln!("error: value does not match the reference within {TABLE_TOL:e}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capability() { 3 } else { 2 })
        }
    }
}
