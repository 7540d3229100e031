mod commands;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{Report, Status};
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "idegen",
    version,
    about = "Boost limits, curvature invariants and classification of degenerate metrics"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "IDEGEN_FORMAT", value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the 2^k canonical boost vectors.
    Enumerate {
        #[arg(long)]
        k: usize,
    },
    /// Admissible monomial shapes of a, A and B for one boost vector.
    Shapes {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        boost: String,
    },
    /// Equalities d . b = c of every A_ij for all boost vectors of size k.
    #[command(name = "appendix-b")]
    AppendixB {
        #[arg(long)]
        k: usize,
    },
    /// Check that every component lies in the class of a boost vector.
    Validate(MetricBoost),
    /// Type I-V classification with tensorial cross-checks.
    Classify(MetricOnly),
    /// Boost pullback limit at a base point.
    Limit(MetricBoost),
    /// The six curvature invariants.
    Invariants(MetricOnly),
    /// Search for a chain of limits ending in flat space, or replay one.
    Vsi {
        #[command(flatten)]
        input: MetricOnly,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, default_value_t = 8)]
        max_entry: u32,
        /// Certificate file to verify instead of searching.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Constant-invariant certificate.
    Csi(MetricOnly),
    /// Invariants of a metric, of its limit and of finite boosts agree.
    #[command(name = "check-theorem")]
    CheckTheorem {
        /// Metric file; alternatively pass --seed for a random template.
        #[arg(long, required_unless_present = "seed", conflicts_with = "seed")]
        metric: Option<PathBuf>,
        #[arg(long)]
        boost: Option<String>,
        #[arg(long)]
        point: Option<String>,
        /// Instantiate a random template of the class of --boost.
        #[arg(long)]
        seed: Option<u64>,
        /// Transverse dimension of the random template.
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Finite boost parameters.
        #[arg(long, value_delimiter = ',', default_value = "1/2,2,3/5")]
        scales: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct MetricOnly {
    #[arg(long)]
    metric: PathBuf,
    /// Base point as inline JSON or a file; defaults to the metric file's point, then the origin.
    #[arg(long)]
    point: Option<String>,
}

#[derive(Args, Debug)]
struct MetricBoost {
    #[arg(long)]
    metric: PathBuf,
    /// Comma-separated entries; defaults to the metric file's boost.
    #[arg(long)]
    boost: Option<String>,
    #[arg(long)]
    point: Option<String>,
}

fn dispatch(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Enumerate { k } => commands::enumerate(k),
        Command::Shapes { k, boost } => commands::shapes(k, &boost),
        Command::AppendixB { k } => commands::appendix_b(k),
        Command::Validate(a) => commands::validate(&a.metric, a.boost.as_deref()),
        Command::Classify(a) => commands::classify(&a.metric),
        Command::Limit(a) => commands::limit(&a.metric, a.boost.as_deref(), a.point.as_deref()),
        Command::Invariants(a) => commands::invariants(&a.metric, a.point.as_deref()),
        Command::Vsi {
            input,
            max_depth,
            max_entry,
            replay,
        } => match replay {
            Some(cert) => commands::replay(&input.metric, &cert, input.point.as_deref()),
            None => commands::vsi(&input.metric, max_depth, max_entry, input.point.as_deref()),
        },
        Command::Csi(a) => commands::csi(&a.metric),
        Command::CheckTheorem {
            metric,
            boost,
            point,
            seed,
            m,
            scales,
        } => commands::check_theorem(
            metric.as_deref(),
            boost.as_deref(),
            point.as_deref(),
            seed,
            m,
            &scales,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => {
                    let mut s =
                        serde_json::to_string_pretty(&report.json).expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Table => report.table,
            };
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            match report.status {
                Status::Pass => ExitCode::SUCCESS,
                Status::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
