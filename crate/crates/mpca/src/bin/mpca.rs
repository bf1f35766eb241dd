//! Command-line front end: `analyze`, `sweep`, `cluster`, `generate`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mpca::commands::{cmd_analyze, cmd_cluster, cmd_sweep, parse_reference, parse_scale_flag};
use mpca::core::{Dataset, NormalizeMode, ScaleInterval};
use mpca::datagen::{
    gen_line_with_outliers, gen_plane_with_outliers, gen_repeated_pattern, GeneratorKind,
    LineSpec, PlaneSpec, RepeatedPatternSpec,
};
use mpca::error::Result;
use mpca::io::csv::{format_float, ingest_csv, write_matrix_csv};
use mpca::io::report::{table_to_csv, to_text, AnalysisReport};
use mpca::scalespace::{ClusterConfig, Linkage, MedoidMode, DEFAULT_STEP};

#[derive(Parser)]
#[command(name = "mpca", version, about = "Multiscale principal component analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizeArg {
    None,
    Mean,
    Zscore,
}

impl From<NormalizeArg> for NormalizeMode {
    fn from(arg: NormalizeArg) -> Self {
        match arg {
            NormalizeArg::None => NormalizeMode::None,
            NormalizeArg::Mean => NormalizeMode::MeanDivide,
            NormalizeArg::Zscore => NormalizeMode::ZScore,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkageArg {
    Average,
    Single,
    Complete,
}

impl From<LinkageArg> for Linkage {
    fn from(arg: LinkageArg) -> Self {
        match arg {
            LinkageArg::Average => Linkage::Average,
            LinkageArg::Single => Linkage::Single,
            LinkageArg::Complete => Linkage::Complete,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MedoidArg {
    Distance,
    Distortion,
}

impl From<MedoidArg> for MedoidMode {
    fn from(arg: MedoidArg) -> Self {
        match arg {
            MedoidArg::Distance => MedoidMode::Distance,
            MedoidArg::Distortion => MedoidMode::Distortion,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Input CSV file.
    #[arg(long)]
    input: PathBuf,
    /// Treat the first row as a header.
    #[arg(long)]
    has_header: bool,
    /// Column normalization applied before centering.
    #[arg(long, value_enum, default_value = "none")]
    normalize: NormalizeArg,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write each per-scale table as CSV into this directory.
    #[arg(long)]
    csv_tables: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the analysis at a single scale.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Scale interval as l:u.
        #[arg(long)]
        scale: String,
        /// Interpret the scale as fractions of the maximum distance.
        #[arg(long)]
        standard: bool,
        /// Number of components to project onto.
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the scale grid and emit angle / ratio / exempted tables.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        /// Standard-scale grid spacing.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(short, default_value_t = 1)]
        k: usize,
        /// Reference direction for the angle table (defaults to the
        /// full-scale first component).
        #[arg(long)]
        reference: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the grid and cluster the scale plane by projector distance.
    Cluster {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(short, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value = "average")]
        linkage: LinkageArg,
        #[arg(long, value_enum, default_value = "distance")]
        medoid: MedoidArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate a synthetic dataset and write it as CSV with a metadata
    /// sidecar.
    Generate {
        /// line_with_outliers, repeated_pattern, or plane_with_outliers.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inlier count (line and plane kinds).
        #[arg(long)]
        points: Option<usize>,
        /// Outlier count (line and plane kinds).
        #[arg(long)]
        outliers: Option<usize>,
        /// Output CSV path; the sidecar lands next to it as <path>.meta.
        #[arg(long)]
        output: PathBuf,
    },
}

fn load_dataset(input: &InputArgs) -> Result<Dataset> {
    let ingested = ingest_csv(&input.input, input.has_header, input.normalize.into())?;
    Ok(ingested.dataset)
}

fn emit_report(report: &AnalysisReport, output: &OutputArgs, normalize: NormalizeArg) -> Result<()> {
    let mut report = report.clone();
    report.push_meta("normalization", NormalizeMode::from(normalize).name());
    let text = to_text(&report);
    match &output.output {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(dir) = &output.csv_tables {
        std::fs::create_dir_all(dir)?;
        for table in &report.tables {
            std::fs::write(dir.join(format!("{}.csv", table.name)), table_to_csv(table))?;
        }
    }
    Ok(())
}

fn run_generate(
    kind: &str,
    seed: u64,
    points: Option<usize>,
    outliers: Option<usize>,
    output: &PathBuf,
) -> Result<()> {
    let generated = match GeneratorKind::parse(kind)? {
        GeneratorKind::LineWithOutliers => {
            let mut spec = LineSpec {
                seed,
                ..LineSpec::default()
            };
            if let Some(p) = points {
                spec.inliers = p;
            }
            if let Some(o) = outliers {
                spec.outliers = o;
            }
            gen_line_with_outliers(&spec)?
        }
        GeneratorKind::RepeatedPattern => {
            let spec = RepeatedPatternSpec {
                seed,
                ..RepeatedPatternSpec::default()
            };
            gen_repeated_pattern(&spec)?
        }
        GeneratorKind::PlaneWithOutliers => {
            let mut spec = PlaneSpec {
                seed,
                ..PlaneSpec::default()
            };
            if let Some(p) = points {
                spec.points = p;
            }
            if let Some(o) = outliers {
                spec.outliers = o;
            }
            gen_plane_with_outliers(&spec)?
        }
    };
    let mut file = std::fs::File::create(output)?;
    write_matrix_csv(&mut file, &generated.values)?;

    let mut sidecar = String::new();
    sidecar.push_str(&format!("kind = {}\n", generated.kind.name()));
    sidecar.push_str(&format!("seed = {}\n", generated.seed));
    for (i, direction) in generated.directions.iter().enumerate() {
        let cells: Vec<String> = direction.iter().map(|v| format_float(*v)).collect();
        sidecar.push_str(&format!("d{} = {}\n", i + 1, cells.join(",")));
    }
    let mut meta_path = output.clone().into_os_string();
    meta_path.push(".meta");
    std::fs::write(meta_path, sidecar)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            input,
            scale,
            standard,
            k,
            output,
        } => {
            let normalize = input.normalize;
            let data = load_dataset(&input)?;
            let (l, u) = parse_scale_flag(&scale)?;
            let interval = if standard {
                ScaleInterval::standard(l, u)?
            } else {
                ScaleInterval::new(l, u)?
            };
            let report = cmd_analyze(&data, &interval, k)?;
            emit_report(&report, &output, normalize)
        }
        Command::Sweep {
            input,
            step,
            k,
            reference,
            output,
        } => {
            let normalize = input.normalize;
            let data = load_dataset(&input)?;
            let reference = reference.as_deref().map(parse_reference).transpose()?;
            let report = cmd_sweep(&data, step, k, reference)?;
            emit_report(&report, &output, normalize)
        }
        Command::Cluster {
            input,
            step,
            k,
            linkage,
            medoid,
            output,
        } => {
            let normalize = input.normalize;
            let data = load_dataset(&input)?;
            let config = ClusterConfig {
                linkage: linkage.into(),
                medoid: medoid.into(),
                ..ClusterConfig::default()
            };
            let report = cmd_cluster(&data, step, k, &config)?;
            emit_report(&report, &output, normalize)
        }
        Command::Generate {
            kind,
            seed,
            points,
            outliers,
            output,
        } => run_generate(&kind, seed, points, outliers, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
