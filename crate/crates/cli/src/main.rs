use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pgcaps::PointFormat;
use pgcaps_cli::commands::{self, Outcome};
use pgcaps_cli::recipe::Settings;
use pgcaps_cli::CliError;

/// Verify, construct and enumerate complete caps in PG(n,2).
///
/// Exit status: 0 verified, 1 verification failed, 2 usage or parse error,
/// 3 search refused at this scale.
#[derive(Debug, Parser)]
#[command(name = "pgcaps", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Normals of K_A and K_B, e.g. `0123,4` or `0x0f,0x10`.
    #[arg(long, global = true)]
    frame: Option<String>,
    /// Point notation in cap files and reports.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output path: the cap file for `construct`, the witness directory for
    /// `spectrum`, the report for `verify` and `examples`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Idx,
    Hex,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a cap file: cap, completeness, vertices and slice decomposition.
    Verify { file: PathBuf },
    /// Build a cap from a recipe such as `c4 n=6 m=1 s=2`.
    Construct {
        #[arg(required = true, num_args = 1..)]
        recipe: Vec<String>,
    },
    /// Sizes of complete caps under constraints such as `n=5 C=3`.
    Spectrum {
        #[arg(required = true, num_args = 1..)]
        constraints: Vec<String>,
    },
    /// Re-derive the facts of the catalogued configurations.
    Examples,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let style = cli.format.map(|f| match f {
        Format::Idx => PointFormat::Index,
        Format::Hex => PointFormat::Hex,
    });
    let frame = cli
        .frame
        .as_deref()
        .map(commands::parse_frame)
        .transpose()?;
    let (outcome, report_to_out) = match &cli.command {
        Command::Verify { file } => (commands::verify(file, frame, style)?, true),
        Command::Construct { recipe } => {
            let settings = Settings {
                frame,
                seed: cli.seed,
                style,
            };
            (
                commands::construct(recipe, &settings, cli.out.as_deref())?,
                false,
            )
        }
        Command::Spectrum { constraints } => (
            commands::spectrum_cmd(constraints, style, cli.out.as_deref())?,
            false,
        ),
        Command::Examples => (commands::examples(), true),
    };
    emit(
        &outcome,
        if report_to_out {
            cli.out.as_deref()
        } else {
            None
        },
    )?;
    Ok(outcome.ok)
}

fn emit(outcome: &Outcome, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, &outcome.json).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{}", outcome.json);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pgcaps: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
