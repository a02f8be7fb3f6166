use qst_core::bridge::BridgeError;
use qst_core::generated::GenerateError;
use qst_core::linalg::{MatrixError, ParseRationalError};
use qst_core::spectral::SpectralError;
use qst_core::{CapExceeded, LatticeError, LogicError, PresheafError};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const CAP_EXCEEDED: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Lattice(LatticeError),
    #[error(transparent)]
    Cap(CapExceeded),
    #[error(transparent)]
    Presheaf(PresheafError),
    #[error(transparent)]
    Logic(LogicError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("closure exceeded {limit} elements (partial closure has {partial})")]
    GenerateCap { limit: usize, partial: usize },
    #[error(transparent)]
    Generate(GenerateError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap(_) | CliError::GenerateCap { .. } => exit::CAP_EXCEEDED,
            _ => exit::INVALID_INPUT,
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input(message.into())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::SizeCapExceeded(c) => CliError::Cap(c),
            e => CliError::Lattice(e),
        }
    }
}

impl From<CapExceeded> for CliError {
    fn from(e: CapExceeded) -> Self {
        CliError::Cap(e)
    }
}

impl From<PresheafError> for CliError {
    fn from(e: PresheafError) -> Self {
        match e {
            PresheafError::SizeCapExceeded(c) => CliError::Cap(c),
            e => CliError::Presheaf(e),
        }
    }
}

impl From<LogicError> for CliError {
    fn from(e: LogicError) -> Self {
        match e {
            LogicError::SizeCapExceeded(c) => CliError::Cap(c),
            e => CliError::Logic(e),
        }
    }
}

impl From<GenerateError> for CliError {
    fn from(e: GenerateError) -> Self {
        match e {
            GenerateError::SizeCapExceeded { limit, partial } => {
                CliError::GenerateCap { limit, partial }
            }
            GenerateError::Invalid(LatticeError::SizeCapExceeded(c)) => CliError::Cap(c),
            e => CliError::Generate(e),
        }
    }
}
