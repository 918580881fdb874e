//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for malformed flags or invalid input data,
//! 2 for parameters outside their domain. Results go to stdout, diagnostics
//! to stderr.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis::{classify, fixed_point};
use crate::dynamics::{converge, iterate};
use crate::error::Error;
use crate::negators::{negate, NegatorSpec};
use crate::simplex::{entropy, linf_to_uniform, max_entropy, Dist, Tolerance};

#[derive(Debug, Parser)]
#[command(name = "pdneg", version, about = "Negations of finite probability distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Negate a distribution once.
    Negate {
        #[arg(long)]
        negator: String,
        #[arg(long, allow_hyphen_values = true)]
        dist: String,
    },
    /// Print the orbit P, NOT(P), ..., NOT^k(P).
    Iterate {
        #[arg(long)]
        negator: String,
        #[arg(long, allow_hyphen_values = true)]
        dist: String,
        #[arg(short = 'k', long = "steps")]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Negate repeatedly until the orbit reaches the uniform distribution or cycles.
    Converge {
        #[arg(long)]
        negator: String,
        #[arg(long, allow_hyphen_values = true)]
        dist: String,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        #[arg(long = "max-iter", default_value_t = 1000)]
        max_iter: usize,
    },
    /// Classify a negator as contracting, expanding or involutive.
    Classify {
        #[arg(long)]
        negator: String,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Entropy and distance to uniform of a distribution.
    Entropy {
        #[arg(long, allow_hyphen_values = true)]
        dist: String,
    },
    /// Fixed point of a negator at length n.
    FixedPoint {
        #[arg(long)]
        negator: String,
        #[arg(short = 'n', long)]
        n: usize,
    },
}

fn exit_code(e: &Error) -> i32 {
    if e.is_domain() {
        2
    } else {
        1
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    1
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(payload) => match out.write_all(payload.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn parse_dist(text: &str) -> Result<Dist, Error> {
    Dist::parse(text, &Tolerance::default())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

fn execute(cmd: Command) -> Result<String, Error> {
    match cmd {
        Command::Negate { negator, dist } => {
            let spec: NegatorSpec = negator.parse()?;
            let p = parse_dist(&dist)?;
            Ok(to_json(&negate(&spec, &p)?))
        }
        Command::Iterate {
            negator,
            dist,
            steps,
            format,
        } => {
            let spec: NegatorSpec = negator.parse()?;
            let p = parse_dist(&dist)?;
            let trace = iterate(&spec, &p, steps)?;
            Ok(match format {
                Format::Json => to_json(&trace),
                Format::Csv => trace.to_csv(),
            })
        }
        Command::Converge {
            negator,
            dist,
            eps,
            max_iter,
        } => {
            let spec: NegatorSpec = negator.parse()?;
            let p = parse_dist(&dist)?;
            Ok(to_json(&converge(&spec, &p, eps, max_iter)?))
        }
        Command::Classify {
            negator,
            n,
            samples,
            seed,
        } => {
            let spec: NegatorSpec = negator.parse()?;
            Ok(to_json(&classify(&spec, n, samples, seed)?))
        }
        Command::Entropy { dist } => {
            let p = parse_dist(&dist)?;
            Ok(to_json(&json!({
                "entropy": entropy(&p),
                "max_entropy": max_entropy(p.n()),
                "linf": linf_to_uniform(&p),
            })))
        }
        Command::FixedPoint { negator, n } => {
            let spec: NegatorSpec = negator.parse()?;
            let fp = fixed_point(&spec, n)?;
            Ok(to_json(&json!({
                "spec": spec,
                "n": n,
                "fixed_point": fp.value,
                "residual": fp.residual,
                "crossings": fp.crossings,
            })))
        }
    }
}
