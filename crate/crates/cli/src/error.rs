use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at `{path}` (line {line}, column {column}): {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("unknown preset `{name}`; available presets: {}", available.join(", "))]
    UnknownPreset { name: String, available: Vec<String> },
    #[error(transparent)]
    Model(#[from] central_spin::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
