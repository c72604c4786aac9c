use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("words come from distinct alphabets")]
    AlphabetMismatch,
    #[error("symbol {symbol} not valid for alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },
    #[error("cannot parse word {0:?}")]
    WordParse(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("precision insufficient: {0}")]
    Precision(String),
    #[error("word not in language: {0}")]
    NotInLanguage(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("specification violated: {0}")]
    SpecificationViolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("edit script does not replay: {0}")]
    ScriptReplay(String),
}
