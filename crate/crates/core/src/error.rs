use std::fmt;

use thiserror::Error;

/// Position of a token inside DSL input, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    DuplicateName(String),
    UnknownVertex(String),
    EdgeLoopForbidden(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation orders differ: {0} vs {1}")]
    MismatchedOrder(usize, usize),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("{0} does not divide {1}")]
    NotDivisible(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map is not linear over R_{0}")]
    NotLinearOverBase(usize),
    #[error("map is not an endomorphism over its full order")]
    NotEndomorphism,
    #[error("{pos}: {kind}")]
    Parse { pos: Position, kind: ParseErrorKind },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension vector has a negative entry")]
    NegativeDimension,
    #[error("pair requires two distinct vertices")]
    SameVertex,
    #[error("gauge element is not invertible")]
    NotInvertible,
    #[error("top ε-slice of the input is not zero")]
    TopSliceNotZero,
    #[error("matrix is not in the coadjoint orbit")]
    NotInOrbit,
    #[error("level set is empty: s_i(v)_i = {0} < 0")]
    EmptyLevelSet(i64),
    #[error("point is not in the vertex level set")]
    NotInLevelSet,
    #[error("invalid leg: {0}")]
    InvalidLeg(String),
    #[error("invalid orbit spec: {0}")]
    InvalidSpec(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("malformed scalar `{0}`")]
    BadScalar(String),
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::DuplicateName(n) => write!(f, "duplicate name `{n}`"),
            ParseErrorKind::UnknownVertex(n) => write!(f, "unknown vertex `{n}`"),
            ParseErrorKind::EdgeLoopForbidden(n) => write!(f, "edge-loop `{n}` is forbidden"),
        }
    }
}

impl Error {
    /// Stable machine-readable identifier, printed by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MismatchedOrder(..) => "mismatched_order",
            Error::NotAUnit => "not_a_unit",
            Error::NotDivisible(..) => "not_divisible",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::NotLinearOverBase(_) => "not_linear_over_base",
            Error::NotEndomorphism => "not_endomorphism",
            Error::Parse { kind, .. } => match kind {
                ParseErrorKind::Syntax(_) => "syntax_error",
                ParseErrorKind::DuplicateName(_) => "duplicate_name",
                ParseErrorKind::UnknownVertex(_) => "unknown_vertex",
                ParseErrorKind::EdgeLoopForbidden(_) => "edge_loop_forbidden",
            },
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownArrow(_) => "unknown_arrow",
            Error::DuplicateName(_) => "duplicate_name",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::NegativeDimension => "negative_dimension",
            Error::SameVertex => "same_vertex",
            Error::NotInvertible => "not_invertible",
            Error::TopSliceNotZero => "top_slice_not_zero",
            Error::NotInOrbit => "not_in_orbit",
            Error::EmptyLevelSet(_) => "empty_level_set",
            Error::NotInLevelSet => "not_in_level_set",
            Error::InvalidLeg(_) => "invalid_leg",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::UnknownSuite(_) => "unknown_suite",
            Error::BadScalar(_) => "bad_scalar",
            Error::Json(_) => "json_error",
            Error::Io(_) => "io_error",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
