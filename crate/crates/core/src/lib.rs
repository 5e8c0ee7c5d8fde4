//! Local-resilience simulator for random geometric graphs.
//!
//! The crate samples geometric graphs on the unit cube or torus, runs
//! adversarial edge-deletion strategies, runs constructive connectivity and
//! cycle builders that emit machine-checkable certificates, and verifies
//! everything with exact oracles at desk scale.
//!
//! Layout:
//! - [`geom`]: metric geometry (distances, ball volumes, tessellations).
//! - [`graph`]: graph representation, subgraph masks, exact oracles.
//! - [`rgg`]: sampling of `G_d(n,r)` / `T_d(n,r)` and the distance-ordered
//!   graph process with hitting times.
//! - [`adversary`]: edge-deletion strategies returning attack reports.
//! - [`builders`]: certificate-producing constructions (closure Hamilton
//!   cycles, two disjoint paths, cell gluing, three-colour long cycles,
//!   square-of-cycle Hamiltonicity, connectivity certification).
//! - [`harness`]: experiment configuration, seeded Monte Carlo orchestration
//!   and persistence.

pub mod adversary;
pub mod builders;
pub mod geom;
pub mod graph;
pub mod harness;
pub mod rgg;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("accuracy budget exceeded: requested tol {tol}, achieved {achieved}")]
    Accuracy { tol: f64, achieved: f64 },
    #[error("oracle scope exceeded: {0}")]
    OracleScope(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
