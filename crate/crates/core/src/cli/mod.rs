//! Command-line front end.
//!
//! Commands read an [`InputDocument`] (from a file or a built-in code),
//! dispatch to the library, and return a [`Report`]. Exit status is 0 on
//! success, 2 when the input or a precondition is rejected, and 1 when an
//! internal consistency check fails.

mod commands;
mod document;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::{run_command, Command, Flags, VerifyOptions};
pub use document::{parse_document, DocumentError, InputDocument, Mode};
pub use report::{digest, emit_report, format_real, Format, Report, SCHEMA, TOOL_VERSION};

use crate::gf::{GfError, Modulus};
use crate::group::GroupError;
use crate::oracle::{OptimizerConfig, OracleError};
use crate::stabilizer::{self, StabilizerError};
use crate::symplectic::SymplecticError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Validation { code: &'static str, message: String },
    #[error("{message}")]
    Internal { code: &'static str, message: String },
    #[error("verification failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Document(DocumentError::Parse { .. }) => "E_PARSE",
            CliError::Document(DocumentError::ExponentOutOfRange { .. }) => "E_EXPONENT_RANGE",
            CliError::Document(DocumentError::DimensionMismatch { .. }) => "E_DIMENSION",
            CliError::Usage(_) => "E_USAGE",
            CliError::Validation { code, .. } | CliError::Internal { code, .. } => code,
            CliError::CheckFailed(_) => "E_CHECK_FAILED",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal { .. } | CliError::CheckFailed(_) => 1,
            _ => 2,
        }
    }

    fn validation(code: &'static str, e: impl ToString) -> Self {
        CliError::Validation {
            code,
            message: e.to_string(),
        }
    }

    fn internal(code: &'static str, e: impl ToString) -> Self {
        CliError::Internal {
            code,
            message: e.to_string(),
        }
    }
}

impl From<StabilizerError> for CliError {
    fn from(e: StabilizerError) -> Self {
        use StabilizerError::*;
        match e {
            NonCommuting(..) => CliError::validation("E_NON_COMMUTING", e),
            DependentGenerators => CliError::validation("E_DEPENDENT", e),
            PhaseViolation => CliError::validation("E_PHASE", e),
            Empty => CliError::validation("E_EMPTY", e),
            BadSubset(_) => CliError::validation("E_BAD_SUBSET", e),
            TooManyBipartitions { .. } => CliError::validation("E_TOO_LARGE", e),
            UnknownCode(_) => CliError::validation("E_UNKNOWN_CODE", e),
            BadParameters(_) => CliError::validation("E_BAD_PARAMETERS", e),
            Internal(_) => CliError::internal("E_INTERNAL", e),
            Pauli(_) => CliError::validation("E_DIMENSION", e),
            Group(g) => g.into(),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        use GroupError::*;
        match e {
            DimensionMismatch(_) | Pauli(_) => CliError::validation("E_DIMENSION", e),
            NotAntisymmetric => CliError::validation("E_NOT_ANTISYMMETRIC", e),
            TooLarge { .. } => CliError::validation("E_TOO_LARGE", e),
            EvenDimension => CliError::validation("E_EVEN_DIMENSION", e),
            InternalParity(_) | Gf(_) => CliError::internal("E_INTERNAL", e),
        }
    }
}

impl From<SymplecticError> for CliError {
    fn from(e: SymplecticError) -> Self {
        match e {
            SymplecticError::NotAntisymmetric => CliError::validation("E_NOT_ANTISYMMETRIC", e),
            _ => CliError::internal("E_INTERNAL", e),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } => CliError::validation("E_TOO_LARGE", e),
            OracleError::EvenDimension => CliError::validation("E_EVEN_DIMENSION", e),
            OracleError::NeedsGenerators => CliError::validation("E_NEEDS_GENERATORS", e),
            OracleError::InvalidConfig(_) => CliError::validation("E_USAGE", e),
            OracleError::Group(g) => g.into(),
            OracleError::Stabilizer(s) => s.into(),
            OracleError::Symplectic(s) => s.into(),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::NotPrime(_) => CliError::validation("E_NOT_PRIME", e),
            _ => CliError::internal("E_INTERNAL", e),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "frustration",
    version,
    about = "Frustration-graph analysis of qudit Pauli groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Generating graph, rank, clique number and bounds.
    Analyze(InputArgs),
    /// Symplectic normal form of the generating graph.
    Canonical(InputArgs),
    /// Geometric entanglement of a stabilizer subspace across every cut.
    Entanglement(InputArgs),
    /// Dense numerical cross-checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input document; omit when using --builtin.
    pub input: Option<PathBuf>,
    /// Built-in code: five_qudit or ghz.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Qudit dimension for built-in codes and input-free checks.
    #[arg(long = "d")]
    pub d: Option<u64>,
    /// Number of sites for built-in codes.
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest commutation graph that is built explicitly.
    #[arg(long, default_value_t = 256)]
    pub cap_vertices: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Check the two-qudit swap identity at dimension --d.
    #[arg(long)]
    pub swap: bool,
    /// Check the single-qudit Lagrange extremum at dimension --d.
    #[arg(long)]
    pub lagrange: bool,
    /// Check the theta-state Pauli sum at dimension --d.
    #[arg(long)]
    pub theta: bool,
}

impl InputArgs {
    fn flags(&self) -> Flags {
        Flags {
            cfg: OptimizerConfig {
                restarts: self.restarts,
                max_iters: self.max_iters,
                tol: self.tol,
                seed: self.seed,
            },
            cap_vertices: self.cap_vertices,
        }
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }

    fn modulus(&self) -> Result<Option<Modulus>, CliError> {
        self.d.map(Modulus::new).transpose().map_err(CliError::from)
    }

    /// Loads the document named by the arguments, if any.
    fn document(&self) -> Result<Option<InputDocument>, CliError> {
        match (&self.input, &self.builtin) {
            (Some(_), Some(_)) => Err(CliError::Usage(
                "give either an input file or --builtin, not both".into(),
            )),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                Ok(Some(parse_document(&text)?))
            }
            (None, Some(name)) => {
                let d = self
                    .modulus()?
                    .ok_or_else(|| CliError::Usage("--builtin needs --d".into()))?;
                let n = self.n.unwrap_or(match name.as_str() {
                    "five_qudit" => 5,
                    _ => 3,
                });
                let code = stabilizer::builtin_code(name, d, n)?;
                Ok(Some(InputDocument {
                    d,
                    n_sites: n,
                    labels: (1..=code.k()).map(|i| format!("g{i}")).collect(),
                    generators: code.generators().to_vec(),
                    mode: Some(Mode::Stabilizer),
                }))
            }
            (None, None) => Ok(None),
        }
    }
}

/// Output of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs one command without touching the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (input, command) = match &cli.command {
        CliCommand::Analyze(a) => (a, Command::Analyze),
        CliCommand::Canonical(a) => (a, Command::Canonical),
        CliCommand::Entanglement(a) => (a, Command::Entanglement),
        CliCommand::Verify(v) => (
            &v.input,
            Command::Verify(VerifyOptions {
                swap: v.swap,
                lagrange: v.lagrange,
                theta: v.theta,
                d: None,
            }),
        ),
    };
    let result = (|| {
        let command = match command {
            Command::Verify(opts) => Command::Verify(VerifyOptions {
                d: input.modulus()?,
                ..opts
            }),
            other => other,
        };
        let doc = input.document()?;
        run_command(&command, doc.as_ref(), &input.flags())
    })();
    match result {
        Ok(report) => {
            let failed = report.payload.get("passed") == Some(&serde_json::Value::Bool(false));
            let stdout = emit_report(&report, input.format());
            if failed {
                let err = CliError::CheckFailed("one or more checks exceeded tolerance".into());
                Outcome {
                    exit_code: err.exit_code(),
                    stdout,
                    stderr: format!("error[{}]: {err}\n", err.code()),
                }
            } else {
                Outcome {
                    exit_code: 0,
                    stdout,
                    stderr: String::new(),
                }
            }
        }
        Err(err) => Outcome {
            exit_code: err.exit_code(),
            stdout: String::new(),
            stderr: format!("error[{}]: {err}\n", err.code()),
        },
    }
}
