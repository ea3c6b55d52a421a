use thiserror::Error;

/// Errors raised by the workbench operations.
///
/// Check operations report law failures through [`crate::Report`]; this type
/// is reserved for inputs that cannot be processed at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    CapacityExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("enumeration cap exceeded while enumerating {what} (cap {cap})")]
    EnumerationCapExceeded { what: &'static str, cap: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("connective `{connective}` is not allowed in the {dialect} dialect")]
    Dialect {
        connective: &'static str,
        dialect: &'static str,
    },

    #[error("valuation of `{variable}` is not up-closed: {lower} is in it but {upper} is not")]
    ValuationNotUpClosed {
        variable: String,
        lower: usize,
        upper: usize,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A law that holds by construction failed; this always indicates a defect.
    #[error("internal law violation: {0}")]
    InternalLawViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
