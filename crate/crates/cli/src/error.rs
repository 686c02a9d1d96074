use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown symbol '{name}' at line {line}, column {col}")]
    UnknownSymbol { name: String, line: usize, col: usize },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] ratinterp::Error),
}

impl CliError {
    pub fn syntax(line: usize, col: usize, msg: impl Into<String>) -> CliError {
        CliError::Syntax { line, col, msg: msg.into() }
    }
}
