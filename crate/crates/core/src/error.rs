use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inadmissible symplectic parameters: {0}")]
    InadmissibleParams(String),
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("unsupported plumbing shape: {0}")]
    UnsupportedShape(String),
    #[error("coset enumeration exceeded the budget of {0} cosets")]
    EnumerationBudgetExceeded(usize),
    #[error("combination is not a 2-cycle: boundary coefficient of y{hole} is {coefficient}")]
    NotACycle { hole: usize, coefficient: String },
    #[error("twist curve has an empty hole subset")]
    EmptySubset,
    #[error("hole count mismatch: {0} vs {1}")]
    HoleCountMismatch(usize, usize),
    #[error("hole {hole} is out of range 1..={holes}")]
    BadHole { hole: usize, holes: usize },
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("pattern word does not occur in the target word")]
    PatternNotFound,
    #[error("class {0} pairs to zero with the chamber vector")]
    WallAmbiguity(String),
    #[error("no Kodaira dimension for K.w sign {kw} and K^2 sign {k2}")]
    KodairaUndefined { kw: i8, k2: i8 },
    #[error("syntax error at line {line}, column {column}: {expectation}")]
    SyntaxError {
        line: usize,
        column: usize,
        expectation: String,
    },
    #[error("schema error at `{field}`: {reason}")]
    SchemaError { field: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
