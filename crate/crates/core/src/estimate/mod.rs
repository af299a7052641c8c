//! Approximate icc and triangle coefficients.
//!
//! Two schemes: keep each arc with probability `p` and rescale the sample's
//! exact counts, or draw forks uniformly and average what closes them.

mod chebyshev;
mod montecarlo;
mod sampling;
mod trace;

pub use chebyshev::{chebyshev_min_probability, measure_overlap, MeasuredOverlap, MinProbability, OverlapProfile, Pattern};
pub use montecarlo::{
    mc_fork_icc, mc_fork_icc_stream, mc_fork_replicates, mc_required_iterations, mc_triangle_cc, Fork,
    ForkSampleConfig, ForkSampler, PrefixSampler, TriangleTarget,
};
pub use sampling::{
    edge_sample, edge_sample_replicate, edge_sample_replicates, estimate_from_sample, parse_probability, quantile,
    EdgeSampleConfig, ReplicateSummary,
};
pub use trace::{Checkpoint, EstimateTrace, Estimator};
