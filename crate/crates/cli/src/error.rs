use gupnl_core::GupError;
use thiserror::Error;

/// Process exit statuses. These values are stable.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const DOMAIN: u8 = 3;
    pub const NUMERIC: u8 = 4;
    pub const DEGENERATE: u8 = 5;
    pub const INVARIANT: u8 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] GupError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io(_) => exit::IO,
            CliError::Core(e) => match e {
                GupError::Domain(_) => exit::DOMAIN,
                GupError::Numeric { .. } | GupError::Range(_) => exit::NUMERIC,
                GupError::Degenerate(_) => exit::DEGENERATE,
                GupError::InvariantViolation(_) => exit::INVARIANT,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
