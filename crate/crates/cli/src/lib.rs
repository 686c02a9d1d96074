//! Command-line front end for `ratinterp`.

pub mod error;
pub mod expr;
pub mod family;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use ratinterp::divdiff::lemma1_check;
use ratinterp::identities::{verify_by_name, Mode, VerificationReport, VerifyOptions, DEFAULT_SEED, IDENTITY_NAMES};
use ratinterp::interp::{expansion_term, rational_newton_coeffs};
use ratinterp::{Family, InterpolationContext};

use crate::error::CliError;
use crate::expr::parse_expression;
use crate::family::parse_family;

#[derive(Parser, Debug)]
#[command(name = "ratinterp", version, about = "Rational Newton interpolation and q-series identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Points,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the expansion coefficients A_0..A_depth of f(x).
    Coeffs {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "symbolic")]
        x_family: String,
        #[arg(long, default_value = "symbolic")]
        c_family: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Verify one identity, or `all`.
    Verify {
        identity: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        /// A rational like 1/7, or `symbolic`.
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = ratinterp::identities::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, env = "RATINTERP_SEED")]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        json: bool,
    },
    /// Y_n(b_1, X) d_1 ... d_i at B = X.
    Lemma1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// The basis function Y_n(x, X) / (x, C)_n.
    Term {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "symbolic")]
        x_family: String,
        #[arg(long, default_value = "symbolic")]
        c_family: String,
    },
}

fn context(x: &str, c: &str) -> Result<InterpolationContext, CliError> {
    Ok(InterpolationContext::new(parse_family(x, Family::X)?, parse_family(c, Family::C)?))
}

fn verify(identity: &str, opts: &VerifyOptions) -> Result<Vec<VerificationReport>, CliError> {
    if identity == "all" {
        let mut reports = IDENTITY_NAMES
            .par_iter()
            .map(|name| verify_by_name(name, opts))
            .collect::<Result<Vec<_>, _>>()?;
        reports.sort_by(|a, b| a.identity_name.cmp(&b.identity_name));
        Ok(reports)
    } else {
        Ok(vec![verify_by_name(identity, opts)?])
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Usage(e.to_string());
    match cli.command {
        Command::Coeffs { f, x_family, c_family, depth, json } => {
            let f = parse_expression(&f)?.to_ratfun()?;
            let ctx = context(&x_family, &c_family)?;
            let coeffs = rational_newton_coeffs(&f, &ctx, depth)?;
            if json {
                let v: Vec<_> = coeffs.iter().map(|c| json!({"n": c.n, "value": c.value.to_string()})).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io)?;
            } else {
                for c in coeffs {
                    writeln!(out, "A_{} = {}", c.n, c.value).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Verify { identity, n, order, beta, samples, seed, mode, json } => {
            let mut opts = VerifyOptions {
                n,
                order,
                samples,
                seed: seed.unwrap_or(DEFAULT_SEED),
                mode: mode.map(|m| match m {
                    ModeArg::Symbolic => Mode::SymbolicQ,
                    ModeArg::Points => Mode::RationalPoint,
                }),
                ..VerifyOptions::default()
            };
            match beta.as_deref() {
                None => {}
                Some("symbolic") => opts.mode = Some(Mode::SymbolicQ),
                Some(b) => opts.beta = Some(parse_expression(b)?.to_rational()?),
            }
            let reports = verify(&identity, &opts)?;
            if json {
                let text = if identity == "all" {
                    serde_json::to_string_pretty(&reports)
                } else {
                    serde_json::to_string_pretty(&reports[0])
                };
                writeln!(out, "{}", text.unwrap()).map_err(io)?;
            } else {
                for r in &reports {
                    writeln!(out, "{r}").map_err(io)?;
                }
            }
            Ok(if reports.iter().all(|r| r.is_verified()) { 0 } else { 1 })
        }
        Command::Lemma1 { n, i } => {
            writeln!(out, "{}", lemma1_check(n, i)?).map_err(io)?;
            Ok(0)
        }
        Command::Term { n, x_family, c_family } => {
            let ctx = context(&x_family, &c_family)?;
            writeln!(out, "{}", expansion_term(n, &ctx)?).map_err(io)?;
            Ok(0)
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code: 0 on success, 1 on a failed verification, 2 on usage,
/// parse or evaluation errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
