//! `ttheta`: batch front end for theta series, identity verification,
//! divisor formulas and excluded-set classification.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ternary_theta::Error;

#[derive(Debug, Parser)]
#[command(name = "ttheta", version, about = "Exact theta series and q-series identities for ternary forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Report elapsed times as 0 so that output is reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the theta series of a ternary form.
    Theta {
        /// Form literal `a,b,c,d,e,f` or a catalogued id such as JP1.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// Truncation order.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Verify registered identities.
    Verify {
        /// Verify every registered identity.
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// Identity name (repeatable).
        #[arg(long, required_unless_present = "all")]
        id: Vec<String>,
        /// Truncation order (defaults to each identity's own).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
    },
    /// List registered identities.
    List,
    /// Closed-form count of representations of n^2.
    Hurwitz {
        /// F111, F112, F113 or PAIR.
        #[arg(long)]
        form: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Also count lattice points and compare.
        #[arg(long)]
        check: bool,
    },
    /// Decide whether n lies in a catalogued form's excluded set.
    Classify {
        /// D111, D112, D113, D118, F_1_3_36, F_3_4_9, JP1 or JP2.
        #[arg(long)]
        form: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Compare an excluded set with lattice counts over 1..=n-max.
    Scan {
        #[arg(long)]
        form: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
    },
    /// Print a congruence-restricted theta sum.
    Restricted {
        /// B10, B20, B30 or ODD.
        #[arg(long)]
        preset: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Only list exponents with a nonzero coefficient.
        #[arg(long)]
        nonzero: bool,
    },
    /// Compare the genus mates x^2+3y^2+36z^2 and 3x^2+4y^2+9z^2 at n.
    Genus {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Check the residue-class relations of the discriminant-16384 forms.
    Lemma {
        /// Largest argument of the forms to check.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
    },
}

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: parse errors and unknown names.
    Usage(String),
    /// A form that is not positive definite.
    Degenerate(String),
    /// At least one check failed; output was still written.
    ChecksFailed,
    /// Overflow and I/O errors.
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Degenerate(_) => 3,
            Failure::ChecksFailed => 4,
            Failure::Internal(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPositiveDefinite(_) => Failure::Degenerate(e.to_string()),
            Error::Parse(_) | Error::InvalidArgument(_) | Error::UnknownIdentity(_) => {
                Failure::Usage(e.to_string())
            }
            Error::Overflow(_) | Error::NotDivisible(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let opts = &cli.global;
    let (text, verdict) = match cli.command {
        Command::Theta { form, n } => commands::theta(opts, &form, n)?,
        Command::Verify { all, id, n } => commands::verify(opts, all, &id, n)?,
        Command::List => commands::list(opts)?,
        Command::Hurwitz { form, n, check } => commands::hurwitz(opts, &form, n, check)?,
        Command::Classify { form, n } => commands::classify(opts, &form, n)?,
        Command::Scan { form, n_max } => commands::scan(opts, &form, n_max)?,
        Command::Restricted { preset, n, nonzero } => commands::restricted(opts, &preset, n, nonzero)?,
        Command::Genus { n } => commands::genus(opts, n)?,
        Command::Lemma { n_max } => commands::lemma(opts, n_max)?,
    };
    match &opts.out {
        Some(path) => File::create(path)?.write_all(text.as_bytes())?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    verdict
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) | Failure::Degenerate(msg) | Failure::Internal(msg) => {
                    eprintln!("error: {msg}");
                }
                Failure::ChecksFailed => {}
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
