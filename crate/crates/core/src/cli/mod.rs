//! The `semicomplete` command line.
//!
//! Exit codes: 0 success or verified, 1 usage error, 2 refuted, 3 identity violation.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::checker::{self, CheckOptions};
use crate::error::Error;
use crate::pell;
use crate::qseries;
use crate::sequences::{self, ArithmeticSpec, HypercubeCutSpec, SequenceSource};

pub use render::{ClassifyOutput, PolyOutput, PolyTerm, Render, SeqOutput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "semicomplete", version, about = "Workbench for semicomplete sequences, q-series and the Pell constant")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: OutputFormat,

    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Shorthand for `--format csv`.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Write the result to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Report elapsed time on stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

impl Cli {
    fn effective_format(&self) -> OutputFormat {
        match (self.json, self.csv) {
            (true, _) => OutputFormat::Json,
            (_, true) => OutputFormat::Csv,
            _ => self.format,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of a sequence.
    Seq {
        #[command(subcommand)]
        kind: SeqKind,
    },
    /// Check semicompleteness for j = 3 ..= jmax.
    Check {
        #[command(subcommand)]
        target: CheckTarget,
    },
    /// Classify arithmetic sequences a + (i-1)b for 1 ≤ a ≤ amax, 0 ≤ b ≤ bmax.
    Classify {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        amax: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        bmax: u64,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(4..))]
        jmax: u64,
    },
    /// Induction certificate for the hypercube-cut sequence of dimension M (1..4).
    Certify {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=4))]
        m: u32,
        #[arg(long)]
        tbase: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
    },
    /// Gaussian binomials, the odd product and the double-sum identity.
    Qseries {
        #[command(subcommand)]
        action: QseriesAction,
    },
    /// Scan the modality of F(q) coefficients at exponents k·j.
    Modality {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
        jmin: u64,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(3..))]
        jmax: u64,
    },
    /// Certified decimal digits of the Pell constant.
    Pell {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=100_000))]
        digits: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeqKind {
    /// a, a+b, a+2b, …
    Arithmetic {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        a: u64,
        b: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// C_M^1, C_M^2, …
    Cut {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
}

#[derive(Debug, Args)]
pub struct CheckFlags {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
    pub jmax: u64,
    /// Include a partition witness for every k.
    #[arg(long)]
    pub witnesses: bool,
}

#[derive(Debug, Subcommand)]
pub enum CheckTarget {
    Arithmetic {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        a: u64,
        b: u64,
        #[command(flatten)]
        flags: CheckFlags,
    },
    Cut {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[command(flatten)]
        flags: CheckFlags,
        /// For M ≤ 4, attach an induction certificate (horizon 10⁴) when valid.
        #[arg(long)]
        certify: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum QseriesAction {
    /// Gaussian binomial [m n]_q.
    Binom { m: u64, n: u64 },
    /// ∏_{n=1}^{j} (1 + q^{2n-1}).
    Product {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        j: u64,
    },
    /// Check that the double sum divided by (1 + q) equals the odd product.
    #[command(name = "verify-theorem3")]
    VerifyDoubleSum {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        j: u64,
    },
    /// Modality of the coefficients at exponents k·j for one j.
    Modality {
        #[arg(value_parser = clap::value_parser!(u64).range(3..))]
        j: u64,
    },
}

struct Outcome {
    body: String,
    exit: i32,
}

fn emit<T: Render + Serialize>(value: &T, format: OutputFormat, exit: i32) -> Result<Outcome, Error> {
    let body = match format {
        OutputFormat::Text => value.text(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => value.csv(),
    };
    Ok(Outcome { body, exit })
}

fn exit_for_error(e: &Error) -> i32 {
    match e {
        Error::IdentityViolation(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let started = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_for_error(&e);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.body),
        None => stdout.write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if cli.verbose {
        let _ = writeln!(stderr, "elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    outcome.exit
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let format = cli.effective_format();
    match &cli.command {
        Command::Seq { kind } => {
            let out = match *kind {
                SeqKind::Arithmetic { a, b, count } => {
                    let spec = ArithmeticSpec::new(a, b)?;
                    SeqOutput {
                        sequence: spec.describe(),
                        terms: (1..=count).map(|i| spec.term(i).into()).collect(),
                    }
                }
                SeqKind::Cut { m, count } => SeqOutput {
                    sequence: HypercubeCutSpec::new(m)?.describe(),
                    terms: sequences::cut_sequence(m, count as usize),
                },
            };
            emit(&out, format, EXIT_OK)
        }
        Command::Check { target } => {
            let report = match target {
                CheckTarget::Arithmetic { a, b, flags } => {
                    let opts = CheckOptions { witnesses: flags.witnesses, ..Default::default() };
                    checker::check_up_to(&ArithmeticSpec::new(*a, *b)?, flags.jmax as usize, opts)?
                }
                CheckTarget::Cut { m, flags, certify } => {
                    let opts = CheckOptions { witnesses: flags.witnesses, ..Default::default() };
                    let mut report = checker::check_up_to(&HypercubeCutSpec::new(*m)?, flags.jmax as usize, opts)?;
                    if *certify {
                        let t_base = checker::certificate_threshold(*m)? + 1;
                        let cert = checker::induction_certificate(*m, t_base, 10_000)?;
                        checker::upgrade_with_certificate(&mut report, cert);
                    }
                    report
                }
            };
            let exit = if report.status.is_refuted() { EXIT_REFUTED } else { EXIT_OK };
            emit(&report, format, exit)
        }
        Command::Classify { amax, bmax, jmax } => {
            let cells = checker::classify_arithmetic(*amax, *bmax, *jmax as usize)?;
            let out = ClassifyOutput::new(*amax, *bmax, *jmax, cells);
            emit(&out, format, EXIT_OK)
        }
        Command::Certify { m, tbase, horizon } => {
            let t_base = match tbase {
                Some(t) => *t,
                None => checker::certificate_threshold(*m)? + 1,
            };
            let cert = checker::induction_certificate(*m, t_base, *horizon)?;
            let exit = if cert.is_valid() { EXIT_OK } else { EXIT_REFUTED };
            emit(&cert, format, exit)
        }
        Command::Qseries { action } => match *action {
            QseriesAction::Binom { m, n } => {
                let p = qseries::gaussian_binomial(m, n);
                emit(&PolyOutput::new(format!("[{m} {n}]_q"), &p)?, format, EXIT_OK)
            }
            QseriesAction::Product { j } => {
                let p = qseries::odd_product(j);
                emit(&PolyOutput::new(format!("prod_(n=1..{j}) (1 + q^(2n-1))"), &p)?, format, EXIT_OK)
            }
            QseriesAction::VerifyDoubleSum { j } => {
                let v = qseries::verify_double_sum(j)?;
                let exit = if v.holds() { EXIT_OK } else { EXIT_VIOLATION };
                emit(&v, format, exit)
            }
            QseriesAction::Modality { j } => emit(&qseries::modality(j)?, format, EXIT_OK),
        },
        Command::Modality { jmin, jmax } => emit(&qseries::modality_scan(*jmin, *jmax)?, format, EXIT_OK),
        Command::Pell { digits } => emit(&pell::pell_digits(*digits)?, format, EXIT_OK),
    }
}
