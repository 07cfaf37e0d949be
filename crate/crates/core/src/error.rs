use thiserror::Error;

/// Errors shared across the library. Each variant carries a stable
/// machine-readable code (see [`Error::code`]) used by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("window width {b} exceeds word length {k}")]
    WindowTooWide { b: usize, k: usize },
    #[error("symbol {symbol} out of range for alphabet of size {q}")]
    BadSymbol { symbol: u32, q: u32 },
    #[error("word lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("alphabets differ: q={0} vs q={1}")]
    AlphabetMismatch(u32, u32),
    #[error("pair outside the partition regime 0 < d_H < k-b+2 (d_H={dh}, k={k}, b={b})")]
    OutOfRegime { dh: usize, k: usize, b: usize },
    #[error("argument must be positive")]
    NonPositive,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("closed-form sphere size is only available for b=3")]
    FormulaUnavailable,
    #[error("incomplete function table: {0}")]
    IncompleteTable(String),
    #[error("value {0} is not in the image of the function")]
    ValueNotInImage(u64),
    #[error("duplicate vectors supplied")]
    DuplicateVectors,
    #[error("code size does not match matrix order: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("no code satisfies the distance requirements")]
    Infeasible,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("relaxation parameter D={0} is below the matrix maximum {1}")]
    DBelowMax(u64, u64),
    #[error("function is not locally binary at the required radius")]
    NotLocallyBinary,
    #[error("no base code found: {0}")]
    BaseCodeInfeasible(String),
    #[error("bad weight-distribution parameter T: {0}")]
    BadT(String),
    #[error("component shapes do not match")]
    ShapeMismatch,
    #[error("time limit exceeded")]
    TimedOut,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable identifier for machine-readable CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::WindowTooWide { .. } => "window_too_wide",
            Error::BadSymbol { .. } => "bad_symbol",
            Error::LengthMismatch(..) => "length_mismatch",
            Error::AlphabetMismatch(..) => "alphabet_mismatch",
            Error::OutOfRegime { .. } => "out_of_regime",
            Error::NonPositive => "non_positive",
            Error::BadParams(_) => "bad_params",
            Error::TooLarge(_) => "too_large",
            Error::FormulaUnavailable => "formula_unavailable",
            Error::IncompleteTable(_) => "incomplete_table",
            Error::ValueNotInImage(_) => "value_not_in_image",
            Error::DuplicateVectors => "duplicate_vectors",
            Error::SizeMismatch(..) => "size_mismatch",
            Error::Infeasible => "infeasible",
            Error::PreconditionUnmet(_) => "precondition_unmet",
            Error::DBelowMax(..) => "d_below_max",
            Error::NotLocallyBinary => "not_locally_binary",
            Error::BaseCodeInfeasible(_) => "base_code_infeasible",
            Error::BadT(_) => "bad_t",
            Error::ShapeMismatch => "shape_mismatch",
            Error::TimedOut => "timed_out",
            Error::Parse(_) => "parse_error",
            Error::Io(_) => "io_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
