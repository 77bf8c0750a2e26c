//! Command-line front end: argument parsing and subcommand dispatch.

use crate::certify::{factor_residual_report, jnf_diagnostics, specfact_diagnostics, DiagnosticsReport};
use crate::config::{Command, Constants, RunConfig, DEFAULT_BITS, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::frobenius::frobenius_form_gauss;
use crate::io::{self, Input, OutputDoc};
use crate::jnf::{jnf_gauss, jnf_rational, ApproxJnf};
use crate::linalg::{to_gauss, GaussMatrix, RatMatrix};
use crate::roots::approx_roots_with_mults_gauss;
use crate::selftest::selftest;
use crate::specfact::{evaluate_and_check_psd_sample, nonmonic_spectral_factor, spectral_factor, MatrixPolynomial, SpecfactOutcome};
use clap::{Args, Parser, Subcommand};
use log::info;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_PSD: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "jordanforge", version, about = "Certified approximate Jordan forms and spectral factorizations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Approximate Jordan normal form of an integer or rational matrix.
    Jnf(CommonArgs),
    /// Certified roots with multiplicities of an integer polynomial; --bits is b'.
    Roots(CommonArgs),
    /// Exact Frobenius (rational canonical) form.
    Frobenius(CommonArgs),
    /// Spectral factor P = Q*Q of a PSD Hermitian matrix polynomial.
    Specfact {
        #[command(flatten)]
        common: CommonArgs,
        /// Matrix V with V·V* equal to the leading coefficient of P.
        #[arg(long, value_name = "FILE")]
        nonmonic_v: Option<PathBuf>,
    },
    /// Re-check a previous output against its input.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_name = "FILE")]
        result: PathBuf,
    },
    /// Run the built-in instances and print residuals against tolerances.
    Selftest(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = DEFAULT_BITS)]
    pub bits: u32,
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Defaults to stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Attach residual and condition diagnostics.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, default_value_t = Constants::default().bprime)]
    pub bprime_constant: u64,
    #[arg(long, default_value_t = Constants::default().bpp)]
    pub bpp_constant: u64,
    #[arg(long, default_value_t = Constants::default().real_threshold)]
    pub real_threshold_constant: u64,
    #[arg(long, default_value_t = Constants::default().kappa)]
    pub kappa_constant: u64,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let (command, common, nonmonic_v, result) = match self.command {
            CliCommand::Jnf(c) => (Command::Jnf, c, None, None),
            CliCommand::Roots(c) => (Command::Roots, c, None, None),
            CliCommand::Frobenius(c) => (Command::Frobenius, c, None, None),
            CliCommand::Specfact { common, nonmonic_v } => (Command::Specfact, common, nonmonic_v, None),
            CliCommand::Verify { common, result } => (Command::Verify, common, None, Some(result)),
            CliCommand::Selftest(c) => (Command::Selftest, c, None, None),
        };
        RunConfig {
            command,
            bits: common.bits,
            constants: Constants {
                bprime: common.bprime_constant,
                bpp: common.bpp_constant,
                real_threshold: common.real_threshold_constant,
                kappa: common.kappa_constant,
            },
            input: common.input,
            output: common.output,
            result,
            nonmonic_v,
            seed: common.seed,
            check: common.check,
            threads: common.threads,
        }
    }
}

/// Runs `cfg` in a pool of `cfg.threads` workers and returns the exit code.
pub fn run(cfg: &RunConfig) -> Result<i32> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cfg))
}

fn dispatch(cfg: &RunConfig) -> Result<i32> {
    let out = cfg.output.as_deref();
    if cfg.command == Command::Selftest {
        let report = selftest(cfg.seed, cfg.bits, &cfg.constants);
        let table = report.table();
        match out {
            Some(p) => std::fs::write(p, &table)?,
            None => print!("{table}"),
        }
        return Ok(if report.all_pass() { EXIT_OK } else { EXIT_ERROR });
    }
    let input = io::read_input(cfg.input.as_deref().expect("validated"))?;
    let (doc, code) = match cfg.command {
        Command::Jnf => run_jnf(cfg, &input)?,
        Command::Roots => {
            let Input::IntPolynomial(p) = &input else {
                return Err(wrong_kind("roots", "int_polynomial"));
            };
            let clusters = approx_roots_with_mults_gauss(p, cfg.bits)?;
            (OutputDoc::Roots(io::roots_doc(cfg.bits, p.deg(), &clusters)), EXIT_OK)
        }
        Command::Frobenius => {
            let a = integer_matrix(&input, "frobenius")?;
            let f = frobenius_form_gauss(&a)?;
            (OutputDoc::Frobenius(io::frobenius_doc(&f)), EXIT_OK)
        }
        Command::Specfact => run_specfact(cfg, &input)?,
        Command::Verify => {
            let path = cfg.result.as_deref().expect("validated");
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            let report = verify(&input, &io::parse_output(&text)?, cfg)?;
            let code = if report.pass { EXIT_OK } else { EXIT_ERROR };
            (OutputDoc::Diagnostics(io::diagnostics_json(&report)), code)
        }
        Command::Selftest => unreachable!("handled above"),
    };
    io::emit_output(&doc, out)?;
    Ok(code)
}

fn wrong_kind(cmd: &str, want: &str) -> Error {
    Error::InvalidInput(format!("{cmd} expects an input of kind {want}"))
}

fn integer_matrix(input: &Input, cmd: &str) -> Result<GaussMatrix> {
    match input {
        Input::IntMatrix(m) => Ok(to_gauss(m)),
        Input::RatMatrix(m) if m.den == 1 => Ok(m.num.clone()),
        _ => Err(wrong_kind(cmd, "int_matrix")),
    }
}

/// The JNF of an integer or rational input together with the integer matrix
/// whose eigenvalues it carries undivided.
fn jnf_of(input: &Input, cfg: &RunConfig) -> Result<(GaussMatrix, ApproxJnf)> {
    let c = cfg.constants.bprime;
    match input {
        Input::IntMatrix(m) => {
            let a = to_gauss(m);
            let j = jnf_gauss(&a, cfg.bits, c)?;
            Ok((a, j))
        }
        Input::RatMatrix(RatMatrix { num, den }) => Ok((num.clone(), jnf_rational(num, den, cfg.bits, c)?)),
        _ => Err(wrong_kind("jnf", "int_matrix or rat_matrix")),
    }
}

fn run_jnf(cfg: &RunConfig, input: &Input) -> Result<(OutputDoc, i32)> {
    let (a, j) = jnf_of(input, cfg)?;
    info!("jnf: {} blocks, b' = {}", j.blocks.len(), j.working_bits);
    let diag = cfg.check.then(|| jnf_diagnostics(&a, &j, cfg.constants.kappa)).transpose()?;
    let code = check_code(diag.as_ref());
    Ok((OutputDoc::Jnf(io::jnf_doc(&j, diag.as_ref())), code))
}

fn check_code(diag: Option<&DiagnosticsReport>) -> i32 {
    match diag {
        Some(d) if !d.pass => {
            eprintln!("diagnostics failed; see the \"diagnostics\" field of the output");
            EXIT_ERROR
        }
        _ => EXIT_OK,
    }
}

fn matrix_poly<'a>(input: &'a Input, cmd: &str) -> Result<&'a MatrixPolynomial> {
    match input {
        Input::MatrixPoly(p) => Ok(p),
        _ => Err(wrong_kind(cmd, "matrix_poly")),
    }
}

fn run_specfact(cfg: &RunConfig, input: &Input) -> Result<(OutputDoc, i32)> {
    let p = matrix_poly(input, "specfact")?;
    let sf = cfg.constants.specfact();
    let outcome = match (&cfg.nonmonic_v, p.is_monic()) {
        (Some(path), _) => {
            let v = match io::read_input(path)? {
                Input::IntMatrix(m) => RatMatrix::from_int(&m),
                Input::RatMatrix(m) => m,
                _ => return Err(wrong_kind("--nonmonic-v", "int_matrix or rat_matrix")),
            };
            nonmonic_spectral_factor(p, &v, cfg.bits, &sf)?
        }
        (None, true) => spectral_factor(p, cfg.bits, &sf)?,
        (None, false) => {
            return Err(Error::InvalidInput(
                "the leading coefficient is not I; pass --nonmonic-v with V such that V·V* is the leading coefficient".into(),
            ))
        }
    };
    match outcome {
        SpecfactOutcome::Factor(f) => {
            let diag = cfg.check.then(|| specfact_diagnostics(p, &f, cfg.constants.kappa)).transpose()?;
            let code = check_code(diag.as_ref());
            Ok((OutputDoc::SpectralFactor(io::factor_doc(p.n, &f, diag.as_ref())), code))
        }
        SpecfactOutcome::NotPsd(c) => Ok((OutputDoc::NotPsd(io::not_psd_doc(&c)), EXIT_NOT_PSD)),
    }
}

/// Diagnostics for a previous output `doc` computed from `input`.
pub fn verify(input: &Input, doc: &OutputDoc, cfg: &RunConfig) -> Result<DiagnosticsReport> {
    let checked = |pass: bool| DiagnosticsReport {
        residual_is_zero: pass,
        pass,
        ..Default::default()
    };
    match doc {
        OutputDoc::Jnf(d) => {
            let j = io::parse_jnf_doc(d)?;
            let a = match input {
                Input::IntMatrix(m) => to_gauss(m),
                Input::RatMatrix(m) => {
                    if m.den != j.eigen_divisor {
                        return Err(Error::DimensionMismatch("eigenvalue divisor does not match the input".into()));
                    }
                    m.num.clone()
                }
                _ => return Err(wrong_kind("verify", "int_matrix or rat_matrix")),
            };
            if a.rows() != j.n() {
                return Err(Error::DimensionMismatch("result and input sizes differ".into()));
            }
            jnf_diagnostics(&a, &j, cfg.constants.kappa)
        }
        OutputDoc::SpectralFactor(d) => {
            let p = matrix_poly(input, "verify")?;
            factor_residual_report(p, &io::parse_factor_coeffs(d)?, d.accuracy_bits)
        }
        OutputDoc::NotPsd(d) => {
            let p = matrix_poly(input, "verify")?;
            let c = io::parse_not_psd_doc(d)?;
            let pass = match &c.witness {
                Some(w) => {
                    let again = evaluate_and_check_psd_sample(p, &w.x)?;
                    again.has_negative_eigenvalue && again == *w
                }
                None => false,
            };
            Ok(checked(pass))
        }
        OutputDoc::Frobenius(d) => {
            let f = io::parse_frobenius_doc(d)?;
            Ok(checked(f.verify(&integer_matrix(input, "verify")?)?))
        }
        OutputDoc::Roots(d) => {
            let Input::IntPolynomial(p) = input else {
                return Err(wrong_kind("verify", "int_polynomial"));
            };
            let again = approx_roots_with_mults_gauss(p, d.bits)?;
            Ok(checked(io::parse_roots_doc(d)? == again))
        }
        OutputDoc::Diagnostics(_) => Err(Error::InvalidInput("cannot verify a diagnostics report".into())),
    }
}
