//! Clustering coefficients for directed graphs built on K22s (two nodes
//! both following the same two nodes) and on triangles.
//!
//! * [`graph`]: CSR digraphs, ingestion, binary cache, degree statistics.
//! * [`exact`]: exact K22 / triangle enumeration and the coefficient report.
//! * [`estimate`]: edge-sampling and Monte-Carlo fork estimators.
//! * [`generator`]: preferential attachment with K22 events.
//! * [`recommend`]: K22 and transitive-triangle link recommendation.

pub mod cli;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod generator;
pub mod graph;
pub mod manifest;
pub mod recommend;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{DirectedGraph, NodeId, UndirectedGraph};
