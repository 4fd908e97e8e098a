//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by parsing, synthesis and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A gate name that is not part of the supported gate set.
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },

    /// A qubit, vertex or row index outside the valid range.
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    /// A structurally invalid gate (e.g. CNOT with control == target).
    #[error("invalid gate: {0}")]
    InvalidGate(String),

    /// A gate kind that the operation does not accept.
    #[error("unsupported gate {gate} in {context}")]
    UnsupportedGate { gate: String, context: &'static str },

    /// An invalid connectivity graph (self loop, duplicate edge, ...).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// No path between two vertices inside the allowed vertex set.
    #[error("no path from {from} to {to} inside the active vertex set")]
    NoPath { from: usize, to: usize },

    /// Steiner terminals that cannot be joined inside the allowed vertex set.
    #[error("terminals {0:?} are not mutually reachable inside the active vertex set")]
    Disconnected(Vec<usize>),

    /// The left block of a linear transform is not invertible over F2.
    #[error("linear transform is singular over F2")]
    Singular,

    /// Operand sizes do not agree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parity that is not in the span of the given qubit state.
    #[error("parity lies outside the span of the basis")]
    OutsideSpan,

    /// Dense simulation refused because the register is too large.
    #[error("dense simulation limited to {max} qubits, got {n}")]
    TooManyQubits { n: usize, max: usize },

    /// Unknown architecture preset name.
    #[error("unknown preset `{name}`; valid presets: {valid}")]
    UnknownPreset { name: String, valid: String },

    /// Invalid algorithm or mode selector.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
