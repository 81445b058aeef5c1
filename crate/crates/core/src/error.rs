use std::fmt;

use thiserror::Error;

/// Syntax error in the expression or operator grammar, with a byte offset
/// into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("rewrite budget of {budget} steps exceeded")]
    BudgetExceeded { budget: usize },

    #[error("value not representable over Gaussian rationals: {0}")]
    NotRepresentable(String),

    #[error("operator is not a constant-coefficient differential operator: {0}")]
    NotDifferential(String),

    #[error("boundary basis is not of Cauchy type: {0}")]
    NotCauchyBasis(String),

    #[error("operator is not in Cauchy-Kovalevskaya form")]
    NotCkForm,

    #[error("factor has zero coefficient for D_t")]
    ZeroLeadCoefficient,

    #[error("no variable ordering with nonzero cumulative sums exists")]
    NoOrdering,

    #[error("factorization does not reproduce the operator")]
    FactorizationMismatch,

    #[error("data arity {got} does not match order {expected} (f_i prescribes D_t^(i-1) u at t = 0)")]
    Arity { expected: usize, got: usize },

    #[error("boundary problem is not regular: {0}")]
    NonRegular(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
