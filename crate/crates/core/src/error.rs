use thiserror::Error;

use crate::graph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates general position (collinear triple, ray through a vertex, ...).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("invalid instance ({} violation(s)): {}", .0.len(), summarize(.0))]
    Invalid(Vec<Violation>),

    #[error("invalid hugging cycle: {0}")]
    InvalidCycle(String),

    #[error("cycle is not convexly hugging: {0}")]
    NotConvexlyHugging(String),

    #[error("weak dual is not a tree: {0}")]
    DualNotTree(String),

    #[error("graph is not a plane path: {0}")]
    NotAPath(String),

    #[error("vertices are not in convex position; solve it as a path or supply a hugging cycle")]
    NotConvexPosition,

    #[error("path is not pseudoconvex")]
    NotPseudoconvex,

    #[error("unhappy set has odd size {0}")]
    OddUnhappySet(usize),

    #[error("oracle out of budget: {0}")]
    OracleBudget(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("unexpected structure: {0}")]
    Structure(String),
}

fn summarize(violations: &[Violation]) -> String {
    const SHOWN: usize = 5;
    let mut parts: Vec<String> = violations.iter().take(SHOWN).map(|v| v.to_string()).collect();
    if violations.len() > SHOWN {
        parts.push(format!("... and {} more", violations.len() - SHOWN));
    }
    parts.join("; ")
}
