use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed workspace: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0}")]
    Parse(String),
    #[error("bad expression `{src}`: {source}")]
    Expr { src: String, source: ExprError },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] grpscheme::Error),
}

impl CliError {
    /// 2 for unusable input, 1 when a computation itself failed.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(grpscheme::Error::Parse(_)) => 2,
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}
