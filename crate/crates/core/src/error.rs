use thiserror::Error;

/// Errors raised while building graphs or evaluating indices and claims.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("invalid argument `{field}`: {reason}")]
    InvalidArgument { field: &'static str, reason: String },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {vertex}: membership {value} outside [0, 1]")]
    VertexMembership { vertex: usize, value: f64 },

    #[error("edge ({u}, {v}): membership {value} outside [0, min(nu(u), nu(v))] = [0, {bound}]")]
    EdgeMembership {
        u: usize,
        v: usize,
        value: f64,
        bound: f64,
    },

    #[error("edge ({u}, {v}) is not symmetric: {forward} vs {backward}")]
    Asymmetric {
        u: usize,
        v: usize,
        forward: f64,
        backward: f64,
    },

    #[error("self loop at vertex {vertex} with membership {value}")]
    SelfLoop { vertex: usize, value: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl GraphError {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        GraphError::InvalidArgument {
            field,
            reason: reason.into(),
        }
    }
}

/// Errors produced while reading the plain-text graph format.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: {error}")]
    Validation { line: usize, error: GraphError },

    #[error("unexpected end of input: {0}")]
    Truncated(String),
}

impl ParseError {
    /// True when the input was well-formed but described an invalid graph.
    pub fn is_validation(&self) -> bool {
        matches!(self, ParseError::Validation { .. })
    }
}
