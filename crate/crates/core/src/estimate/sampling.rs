//! Whole-graph arc subsampling.

use rand::Rng;
use rayon::prelude::*;

use super::trace::{Checkpoint, EstimateTrace, Estimator};
use crate::exact::count_k22;
use crate::graph::DirectedGraph;
use crate::rng;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeSampleConfig {
    pub probability: f64,
    pub seed: u64,
    pub replicates: usize,
}

impl EdgeSampleConfig {
    pub fn new(probability: f64, seed: u64, replicates: usize) -> Result<Self> {
        let cfg = EdgeSampleConfig { probability, seed, replicates };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability(self.probability)?;
        if self.replicates == 0 {
            return Err(Error::invalid("replicates must be at least 1"));
        }
        Ok(())
    }
}

fn check_probability(p: f64) -> Result<f64> {
    if p > 0.0 && p <= 1.0 {
        Ok(p)
    } else {
        Err(Error::invalid(format!("sampling probability {p} outside (0, 1]")))
    }
}

/// Parses `"1/1000"` or a decimal such as `"0.001"`.
pub fn parse_probability(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse probability {s:?}"));
    let p = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            a / b
        }
        None => s.parse().map_err(|_| bad())?,
    };
    check_probability(p)
}

/// Keeps each arc independently with probability `p`, drawing from stream
/// `replicate` of `seed`.
pub fn edge_sample_replicate(g: &DirectedGraph, p: f64, seed: u64, replicate: u64) -> DirectedGraph {
    if p >= 1.0 {
        return g.clone();
    }
    let mut r = rng::stream(seed, replicate);
    g.filter_arcs(|_, _| r.gen::<f64>() < p)
}

pub fn edge_sample(g: &DirectedGraph, cfg: &EdgeSampleConfig) -> DirectedGraph {
    edge_sample_replicate(g, cfg.probability, cfg.seed, 0)
}

/// Rescales the sample's K22 counts: `Y = p⁻⁴·X`, `Y_o = p⁻³·X_o`.
pub fn estimate_from_sample(sample: &DirectedGraph, p: f64) -> Result<EstimateTrace> {
    check_probability(p)?;
    let c = count_k22(sample, false);
    let y = c.k22 as f64 / p.powi(4);
    if c.open_k22 == 0 {
        return Err(Error::SampleTooSparse { y });
    }
    let y_open = c.open_k22 as f64 / p.powi(3);
    let estimate = 4.0 * y / y_open;
    Ok(EstimateTrace {
        method: Estimator::EdgeSample,
        seed: 0,
        estimate,
        y,
        y_open,
        iterations: 1,
        probability: Some(p),
        checkpoints: vec![Checkpoint { iteration: 1, estimate, std: 0.0 }],
    })
}

/// Runs every replicate (in parallel, one stream each) and returns them in
/// replicate order.
pub fn edge_sample_replicates(g: &DirectedGraph, cfg: &EdgeSampleConfig) -> Result<Vec<Result<EstimateTrace>>> {
    cfg.validate()?;
    Ok((0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| {
            let sample = edge_sample_replicate(g, cfg.probability, cfg.seed, r);
            estimate_from_sample(&sample, cfg.probability).map(|mut t| {
                t.seed = cfg.seed;
                t
            })
        })
        .collect())
}

/// Five-number summary of a replicate set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReplicateSummary {
    pub defined: usize,
    pub too_sparse: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl ReplicateSummary {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }

    /// `None` when no replicate produced an estimate.
    pub fn of(results: &[Result<EstimateTrace>]) -> Option<Self> {
        let mut z: Vec<f64> = results.iter().filter_map(|r| r.as_ref().ok()).map(|t| t.estimate).collect();
        if z.is_empty() {
            return None;
        }
        z.sort_by(f64::total_cmp);
        Some(ReplicateSummary {
            defined: z.len(),
            too_sparse: results.len() - z.len(),
            min: z[0],
            q1: quantile(&z, 0.25),
            median: quantile(&z, 0.5),
            q3: quantile(&z, 0.75),
            max: z[z.len() - 1],
        })
    }
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}
