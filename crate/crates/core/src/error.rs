use thiserror::Error;

/// Source position in a `.cqg` document (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UndeclaredGenerator,
    IncompleteTable,
    RelationOrientationViolation,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CqgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point: {0}")]
    Pole(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("degree {needed} exceeds certified bound ({reason})")]
    DegreeExceedsCertificate { needed: usize, reason: String },
    #[error("degree {needed} exceeds table degree {have}")]
    DegreeExceedsTable { needed: usize, have: usize },
    #[error("{kind:?} at {}:{}: {msg}", pos.line, pos.col)]
    Parse { kind: ParseErrorKind, pos: Pos, msg: String },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("comultiplication does not respect relation {0}")]
    RelationNotPreserved(String),
    #[error("Haar state: {0}")]
    Haar(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("corepresentation check failed: {0}")]
    NotCorep(String),
    #[error("splitting failed: {0}")]
    SplittingFailed(String),
    #[error("not positive definite: {0}")]
    NotPositive(String),
    #[error("orthogonality relations inconsistent: {0}")]
    InconsistentOrthogonality(String),
    #[error("label not in registry: {0}")]
    NotInRegistry(String),
    #[error("registry mismatch: {0}")]
    RegistryMismatch(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("I/O: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, CqgError>;
