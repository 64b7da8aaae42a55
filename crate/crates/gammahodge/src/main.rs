use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gammahodge::commands::{self, Outcome, PipelineOptions, PoissonOverrides};
use gammahodge::error::exit;
use gammahodge::formats::{BettiInput, ComplexInput, GridSpec, PoissonSpec};
use gammahodge::io::{emit, to_json, Source};
use gammahodge::CliError;
use gammahodge_core::graded_algebra::DEFAULT_WORD_CAP;
use gammahodge_core::hodge::{catalog, SimplicialComplex};
use log::error;
use serde::Serialize;

const WORD_CAP_ENV: &str = "GAMMAHODGE_WORD_CAP";

/// Betti numbers of configuration spaces, with exact and Monte Carlo checks
/// of the identities behind them.
#[derive(Parser, Debug)]
#[command(name = "gammahodge", version)]
struct Cli {
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Configuration-space Betti numbers from a Betti vector.
    Betti {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form dimensions against exact ranks over a grid of small cases.
    AlgebraCheck {
        /// Grid bounds as JSON; defaults apply to omitted fields.
        #[arg(long, value_name = "PATH")]
        grid: Option<String>,
        /// Cap on enumerated words per instance (else $GAMMAHODGE_WORD_CAP).
        #[arg(long)]
        word_cap: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Betti numbers and Hodge decomposition of a simplicial complex.
    Simplicial {
        #[command(flatten)]
        input: ComplexArgs,
        /// Also compare kernels of L_i ⊞ L_j with β_i β_j.
        #[arg(long)]
        kron: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo check of a Poisson identity.
    Poisson {
        #[command(flatten)]
        input: InputArgs,
        /// Overrides the spec's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the spec's sample count.
        #[arg(long)]
        samples: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Simplicial complex to configuration-space Betti numbers.
    Pipeline {
        #[command(flatten)]
        input: ComplexArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Replace β_0 by zero before applying the formula.
        #[arg(long)]
        infinite_volume: bool,
        /// Complex to multiply the base by (JSON path or `-`).
        #[arg(long, value_name = "PATH", conflicts_with = "factor_catalog")]
        factor: Option<String>,
        /// Named catalog complex to multiply the base by.
        #[arg(long, value_name = "NAME")]
        factor_catalog: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// JSON input file, or `-` for stdin.
    #[arg(long, value_name = "PATH")]
    input: Option<String>,
    /// JSON input given inline.
    #[arg(long, value_name = "JSON")]
    json: Option<String>,
}

impl InputArgs {
    fn source(&self) -> Source {
        match (&self.input, &self.json) {
            (Some(p), _) => Source::from_path(p),
            (None, Some(j)) => Source::Inline(j.clone()),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ComplexArgs {
    /// Complex JSON file, or `-` for stdin.
    #[arg(long, value_name = "PATH")]
    input: Option<String>,
    /// Complex JSON given inline.
    #[arg(long, value_name = "JSON")]
    json: Option<String>,
    /// Named complex from the built-in catalog.
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
}

impl ComplexArgs {
    fn load(&self) -> Result<SimplicialComplex, CliError> {
        if let Some(name) = &self.catalog {
            return catalog_complex(name);
        }
        let source = match (&self.input, &self.json) {
            (Some(p), _) => Source::from_path(p),
            (None, Some(j)) => Source::Inline(j.clone()),
            (None, None) => unreachable!("clap requires one input"),
        };
        commands::load_complex(&source.parse::<ComplexInput>()?)
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

fn catalog_complex(name: &str) -> Result<SimplicialComplex, CliError> {
    catalog::by_name(name).ok_or_else(|| {
        let names: Vec<&str> = catalog::all().into_iter().map(|(n, _, _)| n).collect();
        CliError::Input(format!("unknown catalog complex {name:?}; known: {}", names.join(", ")))
    })
}

fn word_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(WORD_CAP_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Input(format!("{WORD_CAP_ENV}={s:?} is not a count"))),
        Err(_) => Ok(DEFAULT_WORD_CAP),
    }
}

fn finish<T: Serialize>(outcome: Outcome<T>, output: &OutputArgs) -> Result<u8, CliError> {
    emit(output.output.as_deref(), &to_json(&outcome.report)?)?;
    for p in &outcome.problems {
        error!("{p}");
    }
    Ok(outcome.exit_code)
}

fn plain<T: Serialize>(report: T, output: &OutputArgs) -> Result<u8, CliError> {
    emit(output.output.as_deref(), &to_json(&report)?)?;
    Ok(exit::OK)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Betti { input, n_max, output } => {
            let v: BettiInput = input.source().parse()?;
            plain(commands::betti(&v, n_max)?, &output)
        }
        Command::AlgebraCheck { grid, word_cap: cap, output } => {
            let grid: GridSpec = match grid {
                Some(p) => Source::from_path(&p).parse()?,
                None => GridSpec::default(),
            };
            finish(commands::algebra_check(&grid, word_cap(cap)?)?, &output)
        }
        Command::Simplicial { input, kron, output } => finish(commands::simplicial(&input.load()?, kron)?, &output),
        Command::Poisson { input, seed, samples, output } => {
            let spec: PoissonSpec = input.source().parse()?;
            finish(commands::poisson(&spec, PoissonOverrides { seed, samples })?, &output)
        }
        Command::Pipeline { input, n_max, infinite_volume, factor, factor_catalog, output } => {
            let factor = match (factor, factor_catalog) {
                (Some(p), _) => Some(commands::load_complex(&Source::from_path(&p).parse()?)?),
                (None, Some(name)) => Some(catalog_complex(&name)?),
                (None, None) => None,
            };
            let options = PipelineOptions { n_max, infinite_volume, factor };
            plain(commands::pipeline(&input.load()?, &options)?, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gammahodge: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
