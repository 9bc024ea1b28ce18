//! saxn: SAX discretization, diagnostics and studies from the shell.
//!
//! Machine-readable output goes to stdout, logs and errors to stderr.
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use saxn::io::{
    acf_plot_csv, format_sig, histogram_plot_csv, read_series, report_json, write_report,
    ColumnSelector, DatasetSpec, ReportFormat,
};
use saxn::sax::{breakpoints, dist_table, mindist, sax_transform, RenormPolicy, SaxWord};
use saxn::stats::{acf, jarque_bera};
use saxn::study::{preset, preset_names, run_study, StudyConfig};
use saxn::TimeSeries;

#[derive(Parser)]
#[command(
    name = "saxn",
    version,
    about = "SAX time-series discretization with PAA shrinkage diagnostics",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a series file into a SAX word
    Sax(SaxArgs),
    /// MINDIST between two SAX words over the same alphabet
    Mindist(MindistArgs),
    /// Run a configured study into a run directory
    Study(StudyArgs),
    /// Diagnostics: ACF plot data, normality test, symbol histogram
    Diag(DiagArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Series file (.dat whitespace-delimited or .csv)
    input: PathBuf,
    /// Column to read: 0-based index or header name
    #[arg(long, default_value = "0")]
    column: String,
    /// Physical lines to drop from the top of the file
    #[arg(long, default_value_t = 0)]
    skip_rows: usize,
    /// Series label; defaults to the file stem
    #[arg(long)]
    name: Option<String>,
}

impl InputArgs {
    fn read(&self) -> Result<TimeSeries, CliError> {
        let column = match self.column.parse::<usize>() {
            Ok(index) => ColumnSelector::Index(index),
            Err(_) => ColumnSelector::Name(self.column.clone()),
        };
        let mut spec = DatasetSpec::new(&self.input).with_column(column);
        spec.skip_rows = self.skip_rows;
        if let Some(name) = &self.name {
            spec = spec.with_name(name.clone());
        }
        Ok(read_series(&spec)?)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RenormMode {
    Never,
    Always,
    Threshold,
}

#[derive(Args)]
struct SaxArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Word length m (segments); n must be divisible by m
    #[arg(short = 'm', long, conflicts_with = "segment_width")]
    word_length: Option<usize>,
    /// Segment width w = n / m; alternative to -m
    #[arg(short = 'w', long)]
    segment_width: Option<usize>,
    /// Alphabet cardinality, 2..=26
    #[arg(short = 'k', long)]
    cardinality: usize,
    /// When to re-normalize the PAA vector before symbolization
    #[arg(long, value_enum, default_value = "never")]
    renorm: RenormMode,
    /// Sigma threshold for --renorm threshold
    #[arg(long, default_value_t = RenormPolicy::DEFAULT_TAU)]
    tau: f64,
    /// Drop trailing samples so the length divides evenly
    #[arg(long)]
    truncate: bool,
    /// Write the transform report as JSON to this path
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct MindistArgs {
    word_a: String,
    word_b: String,
    /// Alphabet cardinality both words use
    #[arg(short = 'k', long)]
    cardinality: usize,
    /// Original series length n the words encode
    #[arg(short = 'n', long)]
    origin_length: usize,
}

#[derive(Args)]
struct StudyArgs {
    /// Study config JSON; alternative to --preset
    config: Option<PathBuf>,
    /// Built-in config: synthetic, real-world or chisq-synthetic
    #[arg(long)]
    preset: Option<String>,
    /// Run directory for the artifacts
    #[arg(long)]
    out: PathBuf,
    /// Root seed override
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("diagnostic").required(true).multiple(false))]
struct DiagArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Emit ACF plot data up to this lag
    #[arg(long, group = "diagnostic", value_name = "LAG")]
    acf: Option<usize>,
    /// Emit the Jarque-Bera normality report
    #[arg(long, group = "diagnostic")]
    jb: bool,
    /// Emit the symbol histogram of the canonical SAX word
    #[arg(
        long,
        group = "diagnostic",
        requires = "cardinality",
        requires = "segment_width"
    )]
    hist: bool,
    #[arg(short = 'k', long)]
    cardinality: Option<usize>,
    #[arg(short = 'w', long)]
    segment_width: Option<usize>,
    /// Drop trailing samples so the length divides evenly
    #[arg(long)]
    truncate: bool,
}

enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl From<saxn::Error> for CliError {
    fn from(e: saxn::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                return 0;
            }
            _ => {
                eprint!("{e}");
                return 1;
            }
        },
    };
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok(())) => 0,
        Ok(Err(CliError::Usage(message))) => {
            eprintln!("error: {message}");
            1
        }
        Ok(Err(CliError::Data(message))) => {
            eprintln!("error: {message}");
            2
        }
        Ok(Err(CliError::Internal(message))) => {
            eprintln!("internal error: {message}");
            3
        }
        Err(_) => {
            eprintln!("internal error: unexpected panic");
            3
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sax(args) => cmd_sax(args),
        Command::Mindist(args) => cmd_mindist(args),
        Command::Study(args) => cmd_study(args),
        Command::Diag(args) => cmd_diag(args),
    }
}

/// Resolves -m / -w (exactly one required) against the series length,
/// truncating first when asked to.
fn resolve_word_length(
    series: TimeSeries,
    word_length: Option<usize>,
    segment_width: Option<usize>,
    truncate: bool,
) -> Result<(TimeSeries, usize), CliError> {
    let block = match (word_length, segment_width) {
        (Some(m), None) => m,
        (None, Some(w)) => w,
        (None, None) => {
            return Err(CliError::Usage(
                "exactly one of --word-length (-m) or --segment-width (-w) is required".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--word-length and --segment-width are mutually exclusive".into(),
            ))
        }
    };
    if block == 0 {
        return Err(CliError::Usage("-m / -w must be at least 1".into()));
    }
    let series = if truncate {
        series.truncated_to_multiple(block)?
    } else {
        series
    };
    let m = match word_length {
        Some(m) => m,
        None => {
            if series.len() % block != 0 {
                return Err(CliError::Data(format!(
                    "segment width {block} does not divide series length {}; \
                     pass --truncate to drop the tail",
                    series.len()
                )));
            }
            series.len() / block
        }
    };
    Ok((series, m))
}

fn cmd_sax(args: SaxArgs) -> Result<(), CliError> {
    let policy = match args.renorm {
        RenormMode::Never => RenormPolicy::Never,
        RenormMode::Always => RenormPolicy::Always,
        RenormMode::Threshold => RenormPolicy::Threshold { tau: args.tau },
    };
    if let Err(e) = policy.validate() {
        return Err(CliError::Usage(e.to_string()));
    }
    let series = args.input.read()?;
    let (series, m) =
        resolve_word_length(series, args.word_length, args.segment_width, args.truncate)?;
    let (word, report) = sax_transform(&series, m, args.cardinality, policy)?;
    println!("{word}");
    if let Some(path) = &args.report {
        write_report(&report, path, ReportFormat::Json)?;
        eprintln!("report written to {}", path.display());
    }
    Ok(())
}

fn cmd_mindist(args: MindistArgs) -> Result<(), CliError> {
    let a = SaxWord::parse(&args.word_a, args.cardinality, args.origin_length)?;
    let b = SaxWord::parse(&args.word_b, args.cardinality, args.origin_length)?;
    let table = dist_table(&breakpoints(args.cardinality)?);
    let distance = mindist(&a, &b, &table)?;
    println!("{}", format_sig(distance));
    Ok(())
}

fn cmd_study(args: StudyArgs) -> Result<(), CliError> {
    let mut config = match (&args.config, &args.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            StudyConfig::from_json(&text)?
        }
        (None, Some(name)) => preset(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown preset {name:?}; available: {}",
                preset_names().join(", ")
            ))
        })?,
        _ => {
            return Err(CliError::Usage(
                "exactly one of a config file or --preset is required".into(),
            ))
        }
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let manifest = run_study(&config, &args.out)?;
    for skipped in &manifest.skipped {
        eprintln!("skipped {}: {}", skipped.name, skipped.reason);
    }
    print!("{}", report_json(&manifest)?);
    Ok(())
}

fn cmd_diag(args: DiagArgs) -> Result<(), CliError> {
    let series = args.input.read()?;
    if let Some(max_lag) = args.acf {
        let result = acf(&series, max_lag)?;
        print!("{}", acf_plot_csv(&result, series.name()));
        return Ok(());
    }
    if args.jb {
        let report = jarque_bera(&series)?;
        print!("{}", report_json(&report)?);
        return Ok(());
    }
    // clap guarantees --hist here, with -k and -w present
    let k = args
        .cardinality
        .ok_or_else(|| CliError::Internal("diagnostic group allowed --hist without -k".into()))?;
    let w = args
        .segment_width
        .ok_or_else(|| CliError::Internal("diagnostic group allowed --hist without -w".into()))?;
    let (series, m) = resolve_word_length(series, None, Some(w), args.truncate)?;
    let (word, _) = sax_transform(&series, m, k, RenormPolicy::Never)?;
    print!(
        "{}",
        histogram_plot_csv(&word.symbol_counts(), series.name())
    );
    Ok(())
}
