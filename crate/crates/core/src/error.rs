use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown preset `{label}`; known presets: {known}")]
    UnknownPreset { label: String, known: String },

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("inexact division; remainder {remainder}")]
    NotDivisible { remainder: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("parse error: {0}")]
    Parse(String),
}
