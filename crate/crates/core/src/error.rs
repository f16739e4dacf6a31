use thiserror::Error;

use crate::diagram::BettiDiagram;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot render diagram: {0}")]
    Format(String),

    /// The diagram is not a non-negative combination of pure diagrams along
    /// a chain. `remainder` is what was left when the greedy pass stopped.
    #[error("diagram is not in the Betti cone: {reason}")]
    NotInCone {
        reason: String,
        remainder: Box<BettiDiagram>,
    },

    #[error("subtraction leaves a negative entry at (i={i}, j={j})")]
    NonNegativityViolation { i: usize, j: i64 },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("diagram is not supported on the simplex: {0}")]
    NotInSimplex(String),

    #[error("construction failed: {0}")]
    Construction(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn not_in_cone(reason: impl Into<String>, remainder: BettiDiagram) -> Self {
        Error::NotInCone {
            reason: reason.into(),
            remainder: Box::new(remainder),
        }
    }
}
