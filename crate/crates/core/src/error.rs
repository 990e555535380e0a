use alloc::string::String;
use core::fmt;

/// Errors raised by the geometry, topology and construction routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A direction vector was zero.
    DegenerateDirection,
    /// A direction that must be primitive is a proper multiple of a lattice vector.
    NonPrimitiveDirection {
        x: i64,
        y: i64,
    },
    /// Integer arithmetic left the representable range.
    Overflow,
    /// The linear part of an affine map has determinant other than ±1.
    NotUnimodular {
        det: i128,
    },
    InvalidDiagram(String),
    /// Malformed curve data (missing ids, coincident endpoints and the like).
    InvalidCurve(String),
    NonTrivalentVertex {
        vertex: String,
        valence: usize,
    },
    WeightedVertexUnsupported {
        vertex: String,
    },
    WeightedEndUnsupported {
        end: String,
    },
    /// Pairwise wedges at a trivalent vertex disagree.
    UnbalancedVertex {
        vertex: String,
    },
    NonIntegralSelfIntersection {
        m: i64,
    },
    NotABoundaryEnd {
        end: String,
    },
    UnsupportedEndMultiplicity {
        end: String,
        mu: i64,
    },
    MalformedPresentation(String),
    UnsupportedDiagram(String),
    InvalidClass(String),
    DoesNotFit(String),
    DegenerateConstruction(String),
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateDirection => write!(f, "degenerate direction (zero vector)"),
            Error::NonPrimitiveDirection { x, y } => {
                write!(f, "direction ({x},{y}) is not primitive")
            }
            Error::Overflow => write!(f, "integer overflow"),
            Error::NotUnimodular { det } => {
                write!(f, "linear part has determinant {det}, expected 1 or -1")
            }
            Error::InvalidDiagram(msg) => write!(f, "invalid diagram: {msg}"),
            Error::InvalidCurve(msg) => write!(f, "invalid curve: {msg}"),
            Error::NonTrivalentVertex { vertex, valence } => {
                write!(f, "vertex {vertex} has valence {valence}, expected 3")
            }
            Error::WeightedVertexUnsupported { vertex } => {
                write!(f, "vertex {vertex} has an incident edge of weight > 1")
            }
            Error::WeightedEndUnsupported { end } => {
                write!(f, "end {end} has weight > 1")
            }
            Error::UnbalancedVertex { vertex } => write!(f, "vertex {vertex} is not balanced"),
            Error::NonIntegralSelfIntersection { m } => {
                write!(
                    f,
                    "vertex multiplicity m={m} is even, (m-1)/2 is not an integer"
                )
            }
            Error::NotABoundaryEnd { end } => {
                write!(f, "end {end} terminates at a node, not on the boundary")
            }
            Error::UnsupportedEndMultiplicity { end, mu } => {
                write!(f, "end {end} meets the boundary with multiplicity {mu} (only 1 and 2 are supported)")
            }
            Error::MalformedPresentation(msg) => write!(f, "malformed presentation: {msg}"),
            Error::UnsupportedDiagram(msg) => write!(f, "unsupported diagram: {msg}"),
            Error::InvalidClass(msg) => write!(f, "invalid class: {msg}"),
            Error::DoesNotFit(msg) => write!(f, "does not fit: {msg}"),
            Error::DegenerateConstruction(msg) => write!(f, "degenerate construction: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
