//! Monte-Carlo estimators that draw forks instead of arcs.

use rand::Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use super::trace::{is_checkpoint, Checkpoint, EstimateTrace, Estimator, RatioMoments};
use crate::graph::{DirectedGraph, NodeId, UndirectedGraph};
use crate::rng::{self, StreamRng};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForkSampleConfig {
    pub iterations: u64,
    pub seed: u64,
}

impl ForkSampleConfig {
    pub fn new(iterations: u64, seed: u64) -> Result<Self> {
        if iterations == 0 {
            return Err(Error::invalid("iterations must be at least 1"));
        }
        Ok(ForkSampleConfig { iterations, seed })
    }
}

/// Weighted node selection over a prefix-sum table.
#[derive(Clone, Debug)]
pub struct PrefixSampler {
    cumulative: Vec<u64>,
}

impl PrefixSampler {
    pub fn new(weights: impl IntoIterator<Item = u64>) -> Self {
        let mut acc = 0u64;
        let cumulative = weights
            .into_iter()
            .map(|w| {
                acc = acc.checked_add(w).expect("weight total overflows u64");
                acc
            })
            .collect();
        PrefixSampler { cumulative }
    }

    pub fn total(&self) -> u64 {
        self.cumulative.last().copied().unwrap_or(0)
    }

    /// Panics when the total weight is zero.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let r = rng.gen_range(0..self.total());
        self.cumulative.partition_point(|&c| c <= r)
    }
}

/// Two distinct indices in `0..d`, uniform over ordered pairs.
fn two_distinct<R: Rng>(rng: &mut R, d: usize) -> (usize, usize) {
    let i = rng.gen_range(0..d);
    let mut j = rng.gen_range(0..d - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

fn pairs(d: usize) -> u64 {
    let d = d as u64;
    d * d.saturating_sub(1) / 2
}

fn sorted_intersection_excluding(a: &[NodeId], b: &[NodeId], skip: NodeId) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] != skip {
                    c += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// A fork `u1 → top ← u2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fork {
    pub top: NodeId,
    pub u1: NodeId,
    pub u2: NodeId,
}

/// Uniform fork sampler: tops weighted by `C(d⁻, 2)`.
pub struct ForkSampler<'g> {
    g: &'g DirectedGraph,
    tops: PrefixSampler,
}

impl<'g> ForkSampler<'g> {
    pub fn new(g: &'g DirectedGraph) -> Result<Self> {
        let tops = PrefixSampler::new(g.nodes().map(|v| pairs(g.in_degree(v))));
        if tops.total() == 0 {
            return Err(Error::NoForks);
        }
        Ok(ForkSampler { g, tops })
    }

    /// `F`, the number of forks.
    pub fn fork_count(&self) -> u64 {
        self.tops.total()
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> Fork {
        let top = self.tops.sample(rng) as NodeId;
        let ins = self.g.in_neighbors(top);
        let (i, j) = two_distinct(rng, ins.len());
        Fork { top, u1: ins[i], u2: ins[j] }
    }

    /// `(X, X_o)` for one fork: closing tops and open-K22 extensions.
    pub fn observe(&self, f: Fork) -> (u64, u64) {
        let g = self.g;
        let (o1, o2) = (g.out_neighbors(f.u1), g.out_neighbors(f.u2));
        let x = sorted_intersection_excluding(o1, o2, f.top);
        let x_open = (o1.len() as u64 - 1) + (o2.len() as u64 - 1)
            - g.has_arc(f.u1, f.u2) as u64
            - g.has_arc(f.u2, f.u1) as u64;
        (x, x_open)
    }
}

/// icc from `n_it` uniform forks: `Y = F/(2n)·ΣX`, `Y_o = F/n·ΣX_o`,
/// `Z = 4Y/Y_o`.
pub fn mc_fork_icc(g: &DirectedGraph, cfg: &ForkSampleConfig) -> Result<EstimateTrace> {
    mc_fork_icc_stream(g, cfg, 0)
}

pub fn mc_fork_icc_stream(g: &DirectedGraph, cfg: &ForkSampleConfig, stream: u64) -> Result<EstimateTrace> {
    ForkSampleConfig::new(cfg.iterations, cfg.seed)?;
    let owned;
    let g = if g.has_in_adjacency() {
        g
    } else {
        owned = g.clone().with_in_adjacency();
        &owned
    };
    let sampler = ForkSampler::new(g)?;
    let mut r = rng::stream(cfg.seed, stream);
    let n = cfg.iterations;
    let (mut sx, mut sxo) = (0u128, 0u128);
    let mut moments = RatioMoments::default();
    let mut checkpoints = Vec::new();
    for i in 1..=n {
        let (x, xo) = sampler.observe(sampler.draw(&mut r));
        sx += x as u128;
        sxo += xo as u128;
        moments.push(x as f64, xo as f64);
        if is_checkpoint(i, n) && sxo > 0 {
            checkpoints.push(Checkpoint {
                iteration: i,
                estimate: 2.0 * sx as f64 / sxo as f64,
                std: nan_to_zero(moments.ratio_std(2.0)),
            });
        }
    }
    if sxo == 0 {
        return Err(Error::UndefinedEstimate { iterations: n });
    }
    let f = sampler.fork_count() as f64;
    let y = f / (2.0 * n as f64) * sx as f64;
    let y_open = f / n as f64 * sxo as f64;
    Ok(EstimateTrace {
        method: Estimator::ForkMonteCarlo,
        seed: cfg.seed,
        estimate: 4.0 * y / y_open,
        y,
        y_open,
        iterations: n,
        probability: None,
        checkpoints,
    })
}

/// Independent runs on streams `0..replicates`, in parallel.
pub fn mc_fork_replicates(g: &DirectedGraph, cfg: &ForkSampleConfig, replicates: u64) -> Vec<Result<EstimateTrace>> {
    let g = g.clone().with_in_adjacency();
    (0..replicates).into_par_iter().map(|r| mc_fork_icc_stream(&g, cfg, r)).collect()
}

fn nan_to_zero(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x
    }
}

/// Graph and coefficient for [`mc_triangle_cc`].
#[derive(Clone, Copy, Debug)]
pub enum TriangleTarget<'g> {
    Undirected(&'g UndirectedGraph),
    Transitive(&'g DirectedGraph),
    Cyclic(&'g DirectedGraph),
}

enum Drawer<'g> {
    Undirected(&'g UndirectedGraph),
    Directed(&'g DirectedGraph, bool),
}

impl Drawer<'_> {
    fn trial(&self, v: NodeId, r: &mut StreamRng) -> bool {
        match self {
            Drawer::Undirected(ug) => {
                let nb = ug.neighbors(v);
                let (i, j) = two_distinct(r, nb.len());
                ug.has_edge(nb[i], nb[j])
            }
            Drawer::Directed(g, cyclic) => {
                let ins = g.in_neighbors(v);
                let outs = g.out_neighbors(v);
                let u = ins[r.gen_range(0..ins.len())];
                let w = outs[r.gen_range(0..outs.len())];
                // u→v→w with u = w is an open triple that can never close.
                u != w && if *cyclic { g.has_arc(w, u) } else { g.has_arc(u, w) }
            }
        }
    }
}

/// Fraction of closed triples among `n_it` uniform centred triples.
///
/// For directed targets a draw with `u = w` counts as a failure rather than
/// being redrawn, so the fraction converges to the coefficient whose
/// denominator is `Σ d⁻d⁺` (reciprocal pairs included).
pub fn mc_triangle_cc(target: TriangleTarget<'_>, iterations: u64, seed: u64) -> Result<EstimateTrace> {
    ForkSampleConfig::new(iterations, seed)?;
    let owned;
    let (weights, drawer, method): (Vec<u64>, Drawer, Estimator) = match target {
        TriangleTarget::Undirected(ug) => (
            ug.nodes().map(|v| pairs(ug.degree(v))).collect(),
            Drawer::Undirected(ug),
            Estimator::UndirectedTriangles,
        ),
        TriangleTarget::Transitive(g) | TriangleTarget::Cyclic(g) => {
            let g = if g.has_in_adjacency() {
                g
            } else {
                owned = g.clone().with_in_adjacency();
                &owned
            };
            let cyclic = matches!(target, TriangleTarget::Cyclic(_));
            (
                g.nodes().map(|v| (g.in_degree(v) * g.out_degree(v)) as u64).collect(),
                Drawer::Directed(g, cyclic),
                if cyclic { Estimator::CyclicTriangles } else { Estimator::TransitiveTriangles },
            )
        }
    };
    let centres = PrefixSampler::new(weights);
    if centres.total() == 0 {
        return Err(Error::EmptyPopulation(method.name()));
    }
    let mut r = rng::stream(seed, 0);
    let mut hits = 0u64;
    let mut moments = RatioMoments::default();
    let mut checkpoints = Vec::new();
    for i in 1..=iterations {
        let v = centres.sample(&mut r) as NodeId;
        let ok = drawer.trial(v, &mut r);
        hits += ok as u64;
        moments.push(ok as u64 as f64, 1.0);
        if is_checkpoint(i, iterations) {
            checkpoints.push(Checkpoint {
                iteration: i,
                estimate: hits as f64 / i as f64,
                std: nan_to_zero(moments.ratio_std(1.0)),
            });
        }
    }
    let fraction = hits as f64 / iterations as f64;
    let total = centres.total() as f64;
    Ok(EstimateTrace {
        method,
        seed,
        estimate: fraction,
        y: fraction * total,
        y_open: total,
        iterations,
        probability: None,
        checkpoints,
    })
}

/// Iterations for a normal-approximation interval of relative half-width
/// `ε` around a success fraction `p_hat`: `⌈z²(1−p)/(p ε²)⌉`, with `z` the
/// two-sided standard normal quantile for `confidence`.
pub fn mc_required_iterations(p_hat: f64, epsilon: f64, confidence: f64) -> Result<u64> {
    if !(p_hat > 0.0 && p_hat < 1.0) {
        return Err(Error::invalid("p_hat must lie in (0, 1)"));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid("epsilon must be positive"));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::invalid("confidence must lie in (0, 1)"));
    }
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    Ok((z * z * (1.0 - p_hat) / (p_hat * epsilon * epsilon)).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_k22() -> DirectedGraph {
        DirectedGraph::from_arc_list(&[(0, 2), (0, 3), (1, 2), (1, 3)])
    }

    #[test]
    fn closed_k22_is_deterministic() {
        let t = mc_fork_icc(&closed_k22(), &ForkSampleConfig::new(57, 3).unwrap()).unwrap();
        assert_eq!((t.y, t.y_open, t.estimate), (1.0, 4.0, 1.0));
        assert!(t.running_std().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn no_fork_is_an_error() {
        let g = DirectedGraph::from_arc_list(&[(0, 1), (1, 2)]);
        assert!(matches!(mc_fork_icc(&g, &ForkSampleConfig::new(10, 0).unwrap()), Err(Error::NoForks)));
    }

    #[test]
    fn fork_without_extension_is_undefined() {
        let g = DirectedGraph::from_arc_list(&[(0, 2), (1, 2)]);
        assert!(matches!(
            mc_fork_icc(&g, &ForkSampleConfig::new(10, 0).unwrap()),
            Err(Error::UndefinedEstimate { iterations: 10 })
        ));
    }

    #[test]
    fn single_triangles_are_always_closed() {
        let cyc = DirectedGraph::from_arc_list(&[(0, 1), (1, 2), (2, 0)]);
        let t = mc_triangle_cc(TriangleTarget::Cyclic(&cyc), 100, 1).unwrap();
        assert_eq!(t.estimate, 1.0);
        let tr = DirectedGraph::from_arc_list(&[(0, 1), (1, 2), (0, 2)]);
        let t = mc_triangle_cc(TriangleTarget::Transitive(&tr), 100, 1).unwrap();
        assert_eq!(t.estimate, 1.0);
        let path = DirectedGraph::from_arc_list(&[(0, 1)]);
        assert!(mc_triangle_cc(TriangleTarget::Transitive(&path), 100, 1).is_err());
    }

    #[test]
    fn required_iterations() {
        let n = mc_required_iterations(0.019, 0.01, 0.99).unwrap();
        assert!((1_000_000..10_000_000).contains(&n), "{n}");
        let half = mc_required_iterations(0.019, 0.005, 0.99).unwrap();
        assert!((half as f64 / n as f64 - 4.0).abs() < 1e-5);
        let z = 2.5758293035489;
        assert!(mc_required_iterations(0.3, 1.0, 0.99).unwrap() as f64 <= (z * z * 0.7 / 0.3f64).ceil());
    }

    #[test]
    fn prefix_sampler_skips_zero_weights() {
        let s = PrefixSampler::new([0, 3, 0, 1]);
        let mut r = rng::stream(1, 0);
        for _ in 0..200 {
            assert!(matches!(s.sample(&mut r), 1 | 3));
        }
    }
}
