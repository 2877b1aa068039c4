use thiserror::Error;

use crate::linalg::{IntVec3, IntVec4};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot take the primitive vector of the zero vector")]
    ZeroVector,
    #[error("vector {0} is not in the rational span of the basis")]
    NotInSpan(IntVec4),
    #[error("vector {0} has non-integral coordinates in the basis")]
    NotIntegral(IntVec4),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("basis vector e{index} = {vector} is not orthogonal to the weights (a.e = {value})")]
    BasisNotInKernel {
        index: usize,
        vector: IntVec4,
        value: i64,
    },

    #[error("weight a{index} = {value} must be positive")]
    InvalidWeight { index: usize, value: i64 },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("exponent must be a positive integer at position {position}")]
    BadExponent { position: usize },
    #[error("polynomial is not quasihomogeneous: {}", format_degrees(.0))]
    MixedDegrees(Vec<(IntVec4, i64)>),
    #[error("polynomial has weighted degree {degree}, expected d = {expected}")]
    DegreeNotD { degree: i64, expected: i64 },

    #[error("point set is degenerate: affine dimension {0}")]
    Degenerate(usize),
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error("segment between dual vertices {0} and {1} is not an edge of the polar dual")]
    PairingFailure(IntVec3, IntVec3),

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),

    #[error(
        "Newton polytope of F is not contained in the polar dual of the Newton polytope of F'"
    )]
    EmptyRegion,
    #[error("search budget must be at least 1")]
    ZeroBudget,

    #[error("polytope file, line {line}: {message}")]
    PolytopeFormat { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("scenario {field}: {message}")]
    Scenario { field: String, message: String },
}

fn format_degrees(entries: &[(IntVec4, i64)]) -> String {
    entries
        .iter()
        .map(|(m, d)| format!("{m} has degree {d}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
