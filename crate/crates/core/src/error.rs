use std::fmt;

use thiserror::Error;

/// One violated invariant found while validating a raw algebra description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    ZeroSize,
    DuplicateName(String),
    TableLength {
        op: String,
        got: usize,
        expected: usize,
    },
    EntryOutOfRange {
        op: String,
        position: usize,
        value: usize,
        size: usize,
    },
    TooLarge {
        op: String,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::ZeroSize => write!(f, "size must be at least 1"),
            ValidationIssue::DuplicateName(name) => write!(f, "duplicate operation name `{name}`"),
            ValidationIssue::TableLength { op, got, expected } => {
                write!(f, "operation `{op}`: table length {got} ≠ {expected}")
            }
            ValidationIssue::EntryOutOfRange {
                op,
                position,
                value,
                size,
            } => write!(
                f,
                "operation `{op}`: entry out of range at position {position} ({value} ≥ {size})"
            ),
            ValidationIssue::TooLarge { op } => {
                write!(f, "operation `{op}`: table size overflows")
            }
        }
    }
}

/// Resource ceilings that can be exceeded. Each maps to a [`crate::Limits`] field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    PowerSize,
    Congruences,
    CloneFunctions,
    UnaryUniverse,
    UnaryPolynomials,
    BruteForceSize,
    Subuniverses,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Resource::PowerSize => "power universe size",
            Resource::Congruences => "congruence count",
            Resource::CloneFunctions => "clone function count",
            Resource::UnaryUniverse => "universe size for unary polynomial enumeration",
            Resource::UnaryPolynomials => "unary polynomial count",
            Resource::BruteForceSize => "brute-force partition enumeration size",
            Resource::Subuniverses => "subuniverse count",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra: {}", join_issues(.0))]
    Validation(Vec<ValidationIssue>),
    #[error("resource cap exceeded: {resource} would exceed {limit}")]
    CapExceeded { resource: Resource, limit: usize },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("element {element} is outside the universe of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("partition is not a congruence of `{0}`")]
    NotCongruence(String),
    #[error("empty generating set and no constant operations")]
    EmptyGenerators,
    #[error("map is not a bijection on the given subset")]
    NotBijection,
    #[error("order is not a lattice: {0}")]
    NotALattice(String),
    #[error("({lower}, {upper}) is not a covering pair")]
    NotACover { lower: usize, upper: usize },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("type labels disagree across minimal sets of the same cover: {0}")]
    LabelMismatch(String),
    #[error("malformed input at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Validation(_)
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::SizeMismatch { .. }
                | Error::Config(_)
        )
    }
}

fn join_issues(issues: &[ValidationIssue]) -> String {
    issues
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
