use thiserror::Error;

use crate::hypergraph::ValidationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(ValidationReport),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("coloring has {got} vertices, hypergraph has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("color {color} at vertex {vertex} is not below q = {q}")]
    ColorOutOfRange { vertex: usize, color: u32, q: usize },
    #[error("palette must have at least one color")]
    EmptyPalette,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("generator gave up after {rejections} consecutive rejections with {accepted} of {target} edges")]
    UnreachableTarget { accepted: usize, target: usize, rejections: usize },
    #[error("state space of {states} colorings exceeds the enumeration budget of {budget}")]
    BudgetExceeded { states: u128, budget: u64 },
    #[error("no proper colorings exist")]
    EmptyProperSet,
    #[error("coloring is not good: vertex {vertex}, level {level}")]
    NotGood { vertex: usize, level: usize },
    #[error("distribution is not normalized (total mass {0})")]
    NotNormalized(f64),
    #[error("only {got} qualifying samples collected, need at least {need}")]
    InsufficientSamples { got: usize, need: usize },
}
