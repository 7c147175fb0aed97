//! `metakit`: command-line front end for the metakit library.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 for
//! invalid input or usage.

mod commands;
mod source;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Report;
use source::{CoverArgs, DatumArgs};

/// Seed used by every randomized check unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Parser, Debug)]
#[command(name = "metakit", version, about = "Exact computations for metaplectic covers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The lattice Λ, the integers n_α and the dual root datum.
    Dual {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Λ with its dominant elements up to a height bound.
    Lattice {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long, default_value_t = 8)]
        height: i64,
    },
    /// The tame Hilbert symbol (s, t)_n.
    Hilbert {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        cover: CoverArgs,
        /// First argument, e.g. `t`, `3`, `2*t^-1 + 5`.
        #[arg(long)]
        s: String,
        /// Second argument.
        #[arg(long)]
        t: String,
    },
    /// Cocycle, splitting and commutator identities on random inputs.
    CocycleCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Iwahori-Hecke relations and the U-basis structure constants.
    HeckeCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long, default_value_t = 8)]
        height: i64,
        #[arg(long, default_value_t = 6)]
        len: i64,
        /// Random triples for the associativity check.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Satake transform of the spherical Hecke algebra of the SL(2) cover.
    SatakeSl2 {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long, default_value_t = 6)]
        lmax: i64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Skip the convolution product check.
        #[arg(long)]
        skip_products: bool,
    },
    /// Integrand table of the rank-one Iwahori quadratic relation.
    IwahoriSl2 {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        cover: CoverArgs,
        /// Use λ = lα only.
        #[arg(long)]
        l: Option<i64>,
    },
    /// Gindikin-Karpelevich coefficients and the renormalization cocycle.
    GkCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        cover: CoverArgs,
    },
}

fn run(command: &Command) -> anyhow::Result<Report> {
    match command {
        Command::Dual { datum, cover } => commands::dual(datum, cover),
        Command::Lattice { datum, cover, height } => commands::lattice(datum, cover, *height),
        Command::Hilbert { datum, cover, s, t } => commands::hilbert(datum, cover, s, t),
        Command::CocycleCheck { datum, cover, trials, seed } => commands::cocycle(datum, cover, *trials, *seed),
        Command::HeckeCheck { datum, cover, height, len, trials, seed } => {
            commands::hecke(datum, cover, *height, *len, *trials, *seed)
        }
        Command::SatakeSl2 { datum, cover, lmax, seed, skip_products } => {
            commands::satake(datum, cover, *lmax, *seed, !*skip_products)
        }
        Command::IwahoriSl2 { datum, cover, l } => commands::iwahori(datum, cover, *l),
        Command::GkCheck { datum, cover } => commands::gk(datum, cover),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
