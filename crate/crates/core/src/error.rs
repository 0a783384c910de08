use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("dimension n={0} outside the supported range 1..={1}")]
    DimensionRange(u32, u32),
    #[error("generation k={k} outside 1..={n}")]
    Generation { k: u32, n: u32 },
    #[error("vertex {vertex} outside the vertex range 0..{count}")]
    VertexRange { vertex: u64, count: u64 },
    #[error("invalid permutation table: {0}")]
    Permutation(crate::perm::PermViolation),
    #[error("invalid permutation set: {0}")]
    PermutationSet(alloc::string::String),
    #[error("invalid base graph: {0}")]
    BaseGraph(alloc::string::String),
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("{what}: size {size} exceeds the guard limit {limit}")]
    GuardExceeded { what: &'static str, size: u64, limit: u64 },
    #[error("iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}
