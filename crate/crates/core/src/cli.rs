//! Command-line front end. The `punc` binary forwards to [`run`].
//!
//! Exit codes: 0 success, 1 parse or validation failure, 2 usage error,
//! 3 conversion infeasible. The default tolerance is read from
//! `PUNC_TOLERANCE` and falls back to `1e-9`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::circuit::{Circuit, Family};
use crate::format;
use crate::generate::{generate, GeneratorConfig};
use crate::oracle::{self, distributions_equal};
use crate::random::{self, rng_from_seed};
use crate::{Error, Result};

pub const TOLERANCE_ENV: &str = "PUNC_TOLERANCE";
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "punc",
    version,
    about = "Positive unital circuits: validation, inference and conversion"
)]
struct Cli {
    /// Numerical tolerance (overrides PUNC_TOLERANCE).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Accept unknown fields in circuit files.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a circuit file; violations go to standard error.
    Validate { file: PathBuf },
    /// Probability of a complete assignment.
    Prob {
        file: PathBuf,
        /// Comma-separated values, one per variable.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        x: Vec<usize>,
    },
    /// Marginal probability of partial evidence.
    Marginal {
        file: PathBuf,
        /// Comma-separated `var=value` pairs; omitted variables are summed out.
        #[arg(long, value_delimiter = ',')]
        evidence: Vec<String>,
    },
    /// Probability table over all assignments.
    Enumerate { file: PathBuf },
    /// Convert to another family and report the largest probability deviation.
    Convert {
        file: PathBuf,
        #[arg(long)]
        to: String,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a random circuit.
    Random {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        num_vars: usize,
        #[arg(long, default_value_t = 2)]
        cardinality: usize,
        #[arg(long, default_value_t = 2)]
        leaf_dim: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 2)]
        kraus: usize,
        /// Build a D-PUnC whose products split scopes in different ways.
        #[arg(long)]
        unstructured: bool,
        /// Combine tree children by Hadamard product.
        #[arg(long)]
        hadamard: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time random marginal queries.
    Bench {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if help { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if help { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            exit_code(&e)
        }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ConversionInfeasible(_) => EXIT_INFEASIBLE,
        Error::ArityMismatch { .. }
        | Error::ValueOutOfRange { .. }
        | Error::BadPartition(_)
        | Error::InvalidArgument(_)
        | Error::StateSpaceTooLarge { .. } => EXIT_USAGE,
        _ => EXIT_INVALID,
    }
}

fn tolerance(flag: Option<f64>) -> Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOLERANCE_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{}={} is not a number", TOLERANCE_ENV, s))
            })?,
            Err(_) => DEFAULT_TOLERANCE,
        },
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {} must be nonnegative",
            tol
        )));
    }
    Ok(tol)
}

fn family_flag(name: &str) -> Result<Family> {
    name.parse()
        .map_err(|e: Error| Error::InvalidArgument(e.to_string()))
}

fn load(path: &Path, tol: f64, strict: bool) -> Result<Circuit> {
    format::parse(&std::fs::read_to_string(path)?, tol, strict)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `var=value` pairs into a partial assignment over `num_vars` variables.
pub fn parse_evidence(pairs: &[String], num_vars: usize) -> Result<Vec<Option<usize>>> {
    let mut x = vec![None; num_vars];
    for pair in pairs.iter().filter(|p| !p.is_empty()) {
        let bad = || Error::InvalidArgument(format!("evidence `{}` is not var=value", pair));
        let (k, v) = pair.split_once('=').ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let v: usize = v.trim().parse().map_err(|_| bad())?;
        let slot = x.get_mut(k).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "variable {} out of range ({} variables)",
                k, num_vars
            ))
        })?;
        if slot.replace(v).is_some() {
            return Err(Error::InvalidArgument(format!(
                "variable {} given twice",
                k
            )));
        }
    }
    Ok(x)
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let tol = tolerance(cli.tolerance)?;
    let strict = !cli.lenient;
    match cli.command {
        Command::Validate { file } => {
            let c = format::read(&std::fs::read_to_string(file)?, strict)?;
            let report = c.validate(tol);
            if report.is_valid() {
                writeln!(out, "valid {}", c.family())?;
                Ok(EXIT_OK)
            } else {
                writeln!(err, "{}", report)?;
                Ok(EXIT_INVALID)
            }
        }
        Command::Prob { file, x } => {
            let c = load(&file, tol, strict)?;
            writeln!(out, "{:.16e}", c.probability(&x)?)?;
            Ok(EXIT_OK)
        }
        Command::Marginal { file, evidence } => {
            let c = load(&file, tol, strict)?;
            let x = parse_evidence(&evidence, c.num_vars())?;
            writeln!(out, "{:.16e}", c.marginal(&x)?)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { file } => {
            let c = load(&file, tol, strict)?;
            write!(out, "{}", c.distribution()?.to_table())?;
            Ok(EXIT_OK)
        }
        Command::Convert {
            file,
            to,
            out: path,
        } => {
            let to = family_flag(&to)?;
            let c = load(&file, tol, strict)?;
            let converted = c.convert(to, tol)?;
            emit(&format::write(&converted), path.as_deref(), out)?;
            // The report shares standard output only when the circuit went to a file.
            let report: &mut dyn Write = if path.is_some() { out } else { err };
            match oracle::state_count(c.cardinalities()) {
                Ok(_) => {
                    let (_, dev) =
                        distributions_equal(&c.distribution()?, &converted.distribution()?, 0.0)?;
                    writeln!(report, "max deviation {:e}", dev)?;
                }
                Err(_) => writeln!(report, "max deviation not computed: state space too large")?,
            }
            Ok(EXIT_OK)
        }
        Command::Random {
            family,
            seed,
            num_vars,
            cardinality,
            leaf_dim,
            max_dim,
            kraus,
            unstructured,
            hadamard,
            out: path,
        } => {
            let cfg = GeneratorConfig {
                seed,
                num_vars,
                cardinality,
                leaf_dim,
                max_internal_dim: max_dim,
                kraus_count: kraus,
                family: family_flag(&family)?,
                structured: !unstructured,
                hadamard,
            };
            emit(&format::write(&generate(&cfg)?), path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            file,
            queries,
            seed,
        } => {
            let c = load(&file, tol, strict)?;
            let mut rng = rng_from_seed(seed);
            let batch: Vec<Vec<Option<usize>>> = (0..queries)
                .map(|_| {
                    c.cardinalities()
                        .iter()
                        .map(|&k| {
                            (random::uniform_in(0, 1, &mut rng) == 1)
                                .then(|| random::uniform_in(0, k - 1, &mut rng))
                        })
                        .collect()
                })
                .collect();
            let start = Instant::now();
            let mut checksum = 0.0;
            for x in &batch {
                checksum += c.marginal(x)?;
            }
            let total = start.elapsed().as_secs_f64();
            writeln!(out, "queries {}", queries)?;
            writeln!(out, "total_ms {:.3}", total * 1e3)?;
            writeln!(
                out,
                "per_query_us {:.3}",
                total * 1e6 / queries.max(1) as f64
            )?;
            writeln!(out, "checksum {:.6e}", checksum)?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evidence_pairs() {
        let e =
            |s: &[&str]| parse_evidence(&s.iter().map(|x| x.to_string()).collect::<Vec<_>>(), 3);
        assert_eq!(e(&["0=1", "2=0"]).unwrap(), vec![Some(1), None, Some(0)]);
        assert_eq!(e(&[]).unwrap(), vec![None; 3]);
        assert!(e(&["3=0"]).is_err());
        assert!(e(&["0=1", "0=0"]).is_err());
        assert!(e(&["x"]).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::ConversionInfeasible(String::new())),
            EXIT_INFEASIBLE
        );
        assert_eq!(
            exit_code(&Error::ArityMismatch {
                expected: 2,
                got: 1
            }),
            EXIT_USAGE
        );
        assert_eq!(exit_code(&Error::UnknownVersion(9)), EXIT_INVALID);
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["punc", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["punc", "--help"], &mut out, &mut err), EXIT_OK);
    }
}
