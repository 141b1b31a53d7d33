//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not a prime below `2^31`.
    NotPrime(u64),
    /// Shapes of matrix operands do not match.
    DimensionMismatch(String),
    /// Operands live over different fields.
    FieldMismatch,
    /// Division by zero in a field.
    DivisionByZero,
    /// Matrix inversion of a singular or non-square matrix.
    Singular,
    /// Malformed quiver data (unknown vertex, duplicate id, ...).
    BadQuiver(String),
    /// A relation violates the admissibility requirements.
    BadRelation(String),
    /// No nilpotency bound below the cap; the ideal may not be admissible.
    AdmissibilityCapExceeded { cap: u32 },
    /// Operation requires a certified presentation.
    NotCertified,
    /// A vertex subset is not convex; carries a witness path description.
    NotConvex(String),
    /// Representation data is inconsistent (shape or relation failure).
    BadRepresentation(String),
    /// Morphism data violates naturality or shape constraints.
    BadMorphism(String),
    /// Operands are defined over different presentations.
    PresentationMismatch,
    /// Decomposition requested over the rationals.
    RationalsUnsupported(&'static str),
    /// Search or splitting budget exhausted before a certificate was found.
    BudgetExceeded(String),
    /// Presentation is not special biserial; carries a witness.
    NotSpecialBiserial(String),
    /// String enumeration did not stabilise below the cap, or a band exists.
    RepresentationInfinite(String),
    /// The companion matrix of a band is singular.
    NonInvertibleCompanion,
    /// A window was requested with radius < 1 or turned out empty.
    EmptyWindow,
    /// A support or construction touches the window boundary.
    BoundaryContact(String),
    /// Convex closure exceeded the window budget.
    WindowOverflow(String),
    /// The covering group data is unsupported (torsion quotient, ...).
    UnsupportedGroup(String),
    /// The requested vertex does not exist.
    UnknownVertex(String),
    /// Input module/functor must be indecomposable.
    DecomposableInput,
    /// Operation defined only for non-projective inputs.
    ProjectiveInput(String),
    /// Hypotheses for a classification were not certified.
    HypothesesNotCertified(String),
    /// Degenerate translation data in a mesh.
    DegenerateMesh(String),
    /// Parse error with a 1-based line number.
    Parse { line: usize, msg: String },
    /// I/O error, stringified.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not a prime below 2^31"),
            Error::DimensionMismatch(m) => write!(f, "dimension mismatch: {m}"),
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Singular => write!(f, "matrix is singular or not square"),
            Error::BadQuiver(m) => write!(f, "bad quiver: {m}"),
            Error::BadRelation(m) => write!(f, "bad relation: {m}"),
            Error::AdmissibilityCapExceeded { cap } => {
                write!(f, "no nilpotency bound <= {cap}; ideal may not be admissible")
            }
            Error::NotCertified => write!(f, "presentation has not been certified admissible"),
            Error::NotConvex(w) => write!(f, "vertex set is not convex: {w}"),
            Error::BadRepresentation(m) => write!(f, "bad representation: {m}"),
            Error::BadMorphism(m) => write!(f, "bad morphism: {m}"),
            Error::PresentationMismatch => write!(f, "operands over different presentations"),
            Error::RationalsUnsupported(op) => {
                write!(f, "{op} is not supported over the rationals; use a prime field")
            }
            Error::BudgetExceeded(m) => write!(f, "budget exceeded: {m}"),
            Error::NotSpecialBiserial(w) => write!(f, "not special biserial: {w}"),
            Error::RepresentationInfinite(m) => write!(f, "representation-infinite: {m}"),
            Error::NonInvertibleCompanion => write!(f, "band companion matrix is singular"),
            Error::EmptyWindow => write!(f, "window is empty (radius must be >= 1)"),
            Error::BoundaryContact(m) => write!(f, "support touches the window boundary: {m}"),
            Error::WindowOverflow(m) => write!(f, "window overflow: {m}"),
            Error::UnsupportedGroup(m) => write!(f, "unsupported covering group: {m}"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex: {v}"),
            Error::DecomposableInput => write!(f, "input must be indecomposable"),
            Error::ProjectiveInput(v) => write!(f, "input is projective ({v})"),
            Error::HypothesesNotCertified(m) => write!(f, "hypotheses not certified: {m}"),
            Error::DegenerateMesh(m) => write!(f, "degenerate mesh: {m}"),
            Error::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            Error::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
