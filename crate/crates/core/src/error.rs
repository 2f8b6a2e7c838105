use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable-count mismatch: expected {expected}, got {got}")]
    VarcountMismatch { expected: usize, got: usize },
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("map is not square ({components} components, {nvars} variables)")]
    NonSquareMap { components: usize, nvars: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Segre extension needs F(0) = 0")]
    SegreNotAtOrigin,
    #[error("composition is not polynomial")]
    NonPolynomialComposition,
    #[error("map is degenerate (Jacobian determinant vanishes identically)")]
    Degenerate,
    #[error("matrix is singular")]
    Singular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("genericity violated: {0}")]
    Genericity(String),
    #[error("retries exhausted: {0}")]
    RetriesExhausted(String),
    #[error("{line}:{column}: {kind}")]
    Parse { line: usize, column: usize, kind: ParseErrorKind },
    #[error("unknown example id `{0}`")]
    UnknownExample(String),
    #[error("malformed document: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    Lexical(char),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("duplicate name `{0}`")]
    Duplicate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
