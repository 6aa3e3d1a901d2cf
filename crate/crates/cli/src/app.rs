//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 on success (including --help and --version), 1 for usage
//! errors, 2 for data errors (unreadable files, malformed rows, geometry
//! that cannot be built). Logging is controlled by the CONCEPT_HOMOLOGY_LOG
//! environment variable (error, warn, info, debug).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use concept_homology::{
    analyze, build_complex, component_representative, compute_persistence, dedup,
    distance_matrix, max_pairwise_distance, normalize_min_max, rips_filtration, AnalyzeConfig,
    BuildError, ComplexError, FilteredComplex, IndicatorTable, LandmarkSet, MissingPolicy,
    PersistenceError, PipelineError, PointCloud,
};

use crate::input::{read_input, InputData, InputError};
use crate::render::{render_barcode_svg, render_barcode_text, RenderError, RenderSpec};

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Unsupported(String),
}

/// AUTO or an explicit finite value.
#[derive(Debug, Clone, Copy)]
struct AutoOr(Option<f64>);

fn parse_auto(s: &str) -> Result<AutoOr, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(AutoOr(None));
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(AutoOr(Some(v))),
        _ => Err(format!("expected AUTO or a finite number, got '{s}'")),
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MissingArg {
    /// Skip rows with empty cells (logged at warn level).
    DropRow,
    /// Stop with an error on the first empty cell.
    Fail,
}

impl From<MissingArg> for MissingPolicy {
    fn from(arg: MissingArg) -> Self {
        match arg {
            MissingArg::DropRow => MissingPolicy::DropRow,
            MissingArg::Fail => MissingPolicy::Fail,
        }
    }
}

#[derive(Debug, Args)]
struct BuildOpts {
    /// Indicator CSV, or a filtration with `v0 v1 ..., appearance` lines.
    input: PathBuf,
    /// Distance between indicator rows.
    #[arg(long, default_value = "euclidean", value_parser = ["euclidean", "manhattan", "hamming"])]
    metric: String,
    /// Largest simplex dimension to build.
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// Filtration ceiling; AUTO means the largest pairwise distance.
    #[arg(long, default_value = "AUTO", value_parser = parse_auto)]
    r_max: AutoOr,
    /// Rescale every column to [0, 1] before measuring distances.
    #[arg(long)]
    normalize: bool,
    /// What to do with rows that have empty cells.
    #[arg(long, value_enum, default_value_t = MissingArg::DropRow)]
    missing: MissingArg,
}

#[derive(Debug, Args)]
struct AnalyzeCmd {
    #[command(flatten)]
    build: BuildOpts,
    /// Working parameter for the component report; AUTO means the last
    /// parameter at which components merge.
    #[arg(long, default_value = "AUTO", value_parser = parse_auto)]
    at: AutoOr,
    /// Hide finite 2-cycles that persist less than this.
    #[arg(long, default_value_t = 0.0)]
    min_persistence: f64,
    /// Also write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also write the barcode as SVG to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SnapshotCmd {
    #[command(flatten)]
    build: BuildOpts,
    /// Parameter at which to take the snapshot.
    #[arg(long)]
    at: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full pipeline: dedup, filtration, persistence, JSON report to stdout.
    Analyze(AnalyzeCmd),
    /// Betti numbers of the complex at a parameter.
    Betti(SnapshotCmd),
    /// The barcode as text, one visible interval per line.
    Persistence(BuildOpts),
    /// Connected components at a parameter, with representatives.
    Components(SnapshotCmd),
}

#[derive(Debug, Parser)]
#[command(
    name = "concept-homology",
    version,
    about = "Persistent homology over GF(2) for labeled indicator data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Runs the CLI against an argv slice (program name first) and returns the
/// process exit code instead of exiting, so tests can call it in-process.
pub fn cli_main(argv: &[String]) -> i32 {
    let env = env_logger::Env::new().filter("CONCEPT_HOMOLOGY_LOG");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init();

    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Analyze(cmd) => run_analyze(cmd),
        Command::Betti(cmd) => run_betti(cmd),
        Command::Persistence(opts) => run_persistence(opts),
        Command::Components(cmd) => run_components(cmd),
    }
}

/// A table turned into geometry: the Rips complex plus what the component
/// listing needs to label its output.
struct TableBuild {
    complex: FilteredComplex,
    points: PointCloud,
    groups: Vec<Vec<String>>,
}

fn table_complex(table: &IndicatorTable, opts: &BuildOpts) -> Result<TableBuild, AppError> {
    let ded = dedup(table);
    let points = if opts.normalize {
        normalize_min_max(&ded.unique_points)
    } else {
        ded.unique_points.clone()
    };
    let complex = if points.is_empty() {
        build_complex(Vec::new())?
    } else {
        let r_max = match opts.r_max.0 {
            Some(v) => v,
            None => max_pairwise_distance(&points, &opts.metric)?,
        };
        rips_filtration(&points, r_max, opts.max_dim, &opts.metric)?
    };
    Ok(TableBuild {
        complex,
        points,
        groups: ded.groups,
    })
}

fn load_complex(opts: &BuildOpts) -> Result<FilteredComplex, AppError> {
    Ok(match read_input(&opts.input, opts.missing.into())? {
        InputData::Filtration(k) => k,
        InputData::Table(t) => table_complex(&t, opts)?.complex,
    })
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), AppError> {
    std::fs::write(path, contents).map_err(|source| AppError::Write {
        path: path.clone(),
        source,
    })
}

fn run_analyze(cmd: AnalyzeCmd) -> Result<(), AppError> {
    let table = match read_input(&cmd.build.input, cmd.build.missing.into())? {
        InputData::Table(t) => t,
        InputData::Filtration(_) => {
            return Err(AppError::Unsupported(
                "analyze needs a labeled indicator table; this file is a filtration listing"
                    .to_string(),
            ))
        }
    };
    let config = AnalyzeConfig {
        metric: cmd.build.metric.clone(),
        r_max: cmd.build.r_max.0,
        max_dim: cmd.build.max_dim,
        at: cmd.at.0,
        min_persistence: cmd.min_persistence,
        normalize: cmd.build.normalize,
    };
    let report = analyze(&table, &config)?;
    let text = report.document().to_json_string();
    println!("{text}");
    if let Some(path) = &cmd.json {
        write_file(path, &format!("{text}\n"))?;
    }
    if let Some(path) = &cmd.svg {
        write_file(path, &render_barcode_svg(&report.barcode, &RenderSpec::default())?)?;
    }
    Ok(())
}

fn run_betti(cmd: SnapshotCmd) -> Result<(), AppError> {
    let complex = load_complex(&cmd.build)?;
    let (snapshot, _) = complex.snapshot_at(cmd.at);
    println!("{}", concept_homology::betti_numbers(&snapshot, cmd.build.max_dim));
    Ok(())
}

fn run_persistence(opts: BuildOpts) -> Result<(), AppError> {
    let complex = load_complex(&opts)?;
    let barcode = compute_persistence(&complex, opts.max_dim)?;
    print!("{}", render_barcode_text(&barcode));
    Ok(())
}

fn run_components(cmd: SnapshotCmd) -> Result<(), AppError> {
    match read_input(&cmd.build.input, cmd.build.missing.into())? {
        InputData::Filtration(k) => {
            for (i, comp) in concept_homology::components_at(&k, cmd.at).iter().enumerate() {
                let members: Vec<String> = comp.iter().map(|v| format!("v{v}")).collect();
                println!(
                    "component {} ({} points, representative v{}): {}",
                    i + 1,
                    comp.len(),
                    comp[0],
                    members.join(", ")
                );
            }
        }
        InputData::Table(table) => {
            let built = table_complex(&table, &cmd.build)?;
            let comps = concept_homology::components_at(&built.complex, cmd.at);
            if comps.is_empty() {
                return Ok(());
            }
            let landmarks = LandmarkSet::all(built.points.len())?;
            let d = distance_matrix(&built.points, &landmarks, &cmd.build.metric)?;
            for (i, comp) in comps.iter().enumerate() {
                let rep = component_representative(comp, &d, &built.groups);
                let members: Vec<&str> = comp
                    .iter()
                    .flat_map(|&p| built.groups[p].iter().map(String::as_str))
                    .collect();
                println!(
                    "component {} ({} points, representative {}): {}",
                    i + 1,
                    comp.len(),
                    rep,
                    members.join(", ")
                );
            }
        }
    }
    Ok(())
}
