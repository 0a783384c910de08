//! Files, command line plumbing and batch experiments for twisted hypercubes.
//!
//! The analyses themselves live in `twistcube-core`; this crate adds the
//! JSON manifest, edge list and DOT export, CSV/JSON result writers, a
//! fast dense eigensolver and the parallel batch runner.

pub mod dense;
pub mod error;
pub mod export;
pub mod manifest;
pub mod output;
pub mod plan;

pub use error::{CliError, Result};
pub use manifest::Manifest;
pub use plan::{ExperimentPlan, Operation};
