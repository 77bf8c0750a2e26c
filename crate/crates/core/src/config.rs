//! Run configuration shared by the command-line tool and the self-test.

use crate::certify::DEFAULT_KAPPA_CONSTANT;
use crate::error::{Error, Result};
use crate::jnf::DEFAULT_BPRIME_CONSTANT;
use crate::specfact::{SpecfactConfig, DEFAULT_BPP_CONSTANT, DEFAULT_REAL_THRESHOLD_CONSTANT};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Jnf,
    Roots,
    Frobenius,
    Specfact,
    Verify,
    Selftest,
}

/// `C_{b'}`, `C_{b''}`, `C_real` and `C_κ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constants {
    pub bprime: u64,
    pub bpp: u64,
    pub real_threshold: u64,
    pub kappa: u64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            bprime: DEFAULT_BPRIME_CONSTANT,
            bpp: DEFAULT_BPP_CONSTANT,
            real_threshold: DEFAULT_REAL_THRESHOLD_CONSTANT,
            kappa: DEFAULT_KAPPA_CONSTANT,
        }
    }
}

impl Constants {
    pub fn specfact(&self) -> SpecfactConfig {
        SpecfactConfig {
            bprime_constant: self.bprime,
            bpp_constant: self.bpp,
            real_threshold_constant: self.real_threshold,
        }
    }
}

pub const DEFAULT_BITS: u32 = 64;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub bits: u32,
    pub constants: Constants,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    /// Prior output consumed by `verify`.
    pub result: Option<PathBuf>,
    /// `V` with `V·V*` equal to the leading coefficient, for non-monic `specfact`.
    pub nonmonic_v: Option<PathBuf>,
    pub seed: u64,
    pub check: bool,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            bits: DEFAULT_BITS,
            constants: Constants::default(),
            input: None,
            output: None,
            result: None,
            nonmonic_v: None,
            seed: DEFAULT_SEED,
            check: false,
            threads: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bits == 0 {
            return Err(Error::InvalidInput("--bits must be at least 1".into()));
        }
        let c = &self.constants;
        for (name, v) in [
            ("--bprime-constant", c.bprime),
            ("--bpp-constant", c.bpp),
            ("--real-threshold-constant", c.real_threshold),
            ("--kappa-constant", c.kappa),
        ] {
            if v == 0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        let needs_input = !matches!(self.command, Command::Selftest);
        if needs_input && self.input.is_none() {
            return Err(Error::InvalidInput("--input is required".into()));
        }
        if self.command == Command::Verify && self.result.is_none() {
            return Err(Error::InvalidInput("verify needs --result".into()));
        }
        if self.nonmonic_v.is_some() && self.command != Command::Specfact {
            return Err(Error::InvalidInput("--nonmonic-v only applies to specfact".into()));
        }
        Ok(())
    }
}
