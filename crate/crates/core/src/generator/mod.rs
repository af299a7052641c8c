//! Preferential attachment (Bollobás, Borgs, Chayes, Riordan) extended with
//! K22 events that close an open K22 by a random out/in/out walk.

mod sweep;
mod theory;

pub use sweep::{icc_vs_p_sweep, icc_vs_p_sweep_to, matched_params, SweepPoint, SweepRow, SweepTable};
pub use theory::{feasible_p_interval, solve_delta, theoretical_exponents, TheoreticalExponents};

use rand::Rng;

use crate::graph::{DirectedGraph, NodeId};
use crate::rng::{self, StreamRng};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    /// Probability of a K22 event.
    pub p_k22: f64,
    pub alpha: f64,
    pub beta: f64,
    pub delta_in: f64,
    pub delta_out: f64,
    pub steps: u64,
    pub seed: u64,
    /// `G₀`; `None` means a single closed K22.
    pub seed_graph: Option<DirectedGraph>,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            p_k22: 0.5,
            alpha: 0.4,
            beta: 0.4,
            delta_in: 2.0,
            delta_out: 2.0,
            steps: 10_000,
            seed: 0,
            seed_graph: None,
        }
    }
}

/// `0→2, 0→3, 1→2, 1→3`.
pub fn closed_k22() -> DirectedGraph {
    DirectedGraph::from_arc_list(&[(0, 2), (0, 3), (1, 2), (1, 3)])
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if !unit(self.p_k22) {
            return Err(Error::invalid(format!("p = {} outside [0, 1]", self.p_k22)));
        }
        if !(unit(self.alpha) && unit(self.beta) && self.alpha + self.beta <= 1.0 + 1e-12) {
            return Err(Error::invalid("need alpha, beta >= 0 and alpha + beta <= 1"));
        }
        for (name, d) in [("delta_in", self.delta_in), ("delta_out", self.delta_out)] {
            if !(d.is_finite() && d >= 0.0) {
                return Err(Error::invalid(format!("{name} = {d} must be finite and >= 0")));
            }
        }
        if let Some(g) = &self.seed_graph {
            if g.arc_count() == 0 {
                return Err(Error::invalid("seed graph needs at least one arc"));
            }
        }
        Ok(())
    }

    pub fn initial_graph(&self) -> DirectedGraph {
        self.seed_graph.clone().unwrap_or_else(closed_k22)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenerationStats {
    pub k22_events: u64,
    pub alpha_events: u64,
    pub beta_events: u64,
    pub gamma_events: u64,
    pub initial_nodes: u64,
    pub initial_arcs: u64,
    /// Arcs before clean-up, `steps + initial_arcs`.
    pub raw_arcs: u64,
    pub self_loops_stripped: u64,
    pub multi_arcs_stripped: u64,
}

impl GenerationStats {
    pub fn nodes_added(&self) -> u64 {
        self.alpha_events + self.beta_events
    }

    pub fn stripped(&self) -> u64 {
        self.self_loops_stripped + self.multi_arcs_stripped
    }
}

/// The four nodes of a K22 walk `u1 → v1 ← u2 → v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Walk {
    pub u1: NodeId,
    pub v1: NodeId,
    pub u2: NodeId,
    pub v2: NodeId,
}

/// Multigraph under construction. Arcs are kept in insertion order along
/// with per-node out and in lists (duplicates and loops included).
#[derive(Clone, Debug)]
pub struct GrowingGraph {
    tails: Vec<NodeId>,
    heads: Vec<NodeId>,
    out: Vec<Vec<NodeId>>,
    inc: Vec<Vec<NodeId>>,
    /// External ids of the seed nodes; added nodes are numbered past them.
    seed_ids: Vec<u64>,
}

impl GrowingGraph {
    pub fn from_graph(g: &DirectedGraph) -> Self {
        let n = g.node_count();
        let mut s = GrowingGraph {
            tails: Vec::with_capacity(g.arc_count()),
            heads: Vec::with_capacity(g.arc_count()),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            seed_ids: g.id_map().to_vec(),
        };
        for (u, v) in g.arcs() {
            s.push_arc(u, v);
        }
        s
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len()
    }

    fn add_node(&mut self) -> NodeId {
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        (self.out.len() - 1) as NodeId
    }

    fn push_arc(&mut self, u: NodeId, v: NodeId) {
        self.tails.push(u);
        self.heads.push(v);
        self.out[u as usize].push(v);
        self.inc[v as usize].push(u);
    }

    /// Node drawn with probability proportional to `d⁺ + δ` (`out = true`)
    /// or `d⁻ + δ`.
    fn attach(&self, r: &mut StreamRng, delta: f64, out: bool) -> NodeId {
        let n = self.node_count() as f64;
        let m = self.arc_count() as f64;
        if delta > 0.0 && r.gen::<f64>() * (m + delta * n) < delta * n {
            return r.gen_range(0..self.node_count()) as NodeId;
        }
        let e = r.gen_range(0..self.arc_count());
        if out {
            self.tails[e]
        } else {
            self.heads[e]
        }
    }

    /// One K22 walk: `(u1, v1)` a uniform arc, `u2` uniform in `N⁻(v1)`,
    /// `v2` uniform in `N⁺(u2)`. Needs at least one arc.
    pub fn walk(&self, r: &mut StreamRng) -> Walk {
        let e = r.gen_range(0..self.arc_count());
        let (u1, v1) = (self.tails[e], self.heads[e]);
        let ins = &self.inc[v1 as usize];
        let u2 = ins[r.gen_range(0..ins.len())];
        let outs = &self.out[u2 as usize];
        let v2 = outs[r.gen_range(0..outs.len())];
        Walk { u1, v1, u2, v2 }
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.inc[v as usize].len()
    }

    /// Drops loops and repeated arcs.
    pub fn finish(self, stats: &mut GenerationStats) -> DirectedGraph {
        let n = self.node_count();
        let mut arcs: Vec<(NodeId, NodeId)> = self.tails.into_iter().zip(self.heads).collect();
        let before = arcs.len() as u64;
        arcs.retain(|(u, v)| u != v);
        stats.self_loops_stripped = before - arcs.len() as u64;
        arcs.sort_unstable();
        arcs.dedup();
        stats.multi_arcs_stripped = before - stats.self_loops_stripped - arcs.len() as u64;
        let mut ids = self.seed_ids;
        let next = ids.last().map_or(0, |&x| x + 1);
        let k = ids.len();
        ids.extend((0..(n - k) as u64).map(|i| next + i));
        DirectedGraph::build(ids, arcs, false, false, true)
    }
}

/// Event-level driver; [`generate`] runs it to completion.
pub struct Generator {
    params: ModelParams,
    state: GrowingGraph,
    rng: StreamRng,
    stats: GenerationStats,
    done: u64,
}

impl Generator {
    pub fn new(params: ModelParams) -> Result<Self> {
        Self::with_stream(params, 0)
    }

    /// Like [`Generator::new`] but on random stream `stream` of the seed.
    pub fn with_stream(params: ModelParams, stream: u64) -> Result<Self> {
        params.validate()?;
        let g0 = params.initial_graph();
        let state = GrowingGraph::from_graph(&g0);
        let stats = GenerationStats {
            initial_nodes: g0.node_count() as u64,
            initial_arcs: g0.arc_count() as u64,
            ..Default::default()
        };
        let rng = rng::stream(params.seed, stream);
        Ok(Generator { params, state, rng, stats, done: 0 })
    }

    pub fn state(&self) -> &GrowingGraph {
        &self.state
    }

    pub fn rng(&mut self) -> &mut StreamRng {
        &mut self.rng
    }

    pub fn steps_done(&self) -> u64 {
        self.done
    }

    /// One event. The first uniform picks K22 against Bollobás, the second
    /// picks the Bollobás case.
    pub fn step(&mut self) {
        let p = &self.params;
        let s = &mut self.state;
        let r = &mut self.rng;
        if r.gen::<f64>() < p.p_k22 {
            let w = s.walk(r);
            s.push_arc(w.u1, w.v2);
            self.stats.k22_events += 1;
        } else {
            let c = r.gen::<f64>();
            if c < p.alpha {
                let v = s.attach(r, p.delta_in, false);
                let x = s.add_node();
                s.push_arc(x, v);
                self.stats.alpha_events += 1;
            } else if c < p.alpha + p.beta {
                let u = s.attach(r, p.delta_out, true);
                let x = s.add_node();
                s.push_arc(u, x);
                self.stats.beta_events += 1;
            } else {
                let u = s.attach(r, p.delta_out, true);
                let v = s.attach(r, p.delta_in, false);
                s.push_arc(u, v);
                self.stats.gamma_events += 1;
            }
        }
        self.done += 1;
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }

    pub fn finish(self) -> (DirectedGraph, GenerationStats) {
        let mut stats = self.stats;
        stats.raw_arcs = self.state.arc_count() as u64;
        let g = self.state.finish(&mut stats);
        (g, stats)
    }
}

/// Runs `params.steps` events from `G₀` and returns the simple digraph with
/// its event bookkeeping.
pub fn generate_with_stats(params: &ModelParams) -> Result<(DirectedGraph, GenerationStats)> {
    generate_stream(params, 0)
}

pub fn generate_stream(params: &ModelParams, stream: u64) -> Result<(DirectedGraph, GenerationStats)> {
    let mut g = Generator::with_stream(params.clone(), stream)?;
    g.run(params.steps);
    Ok(g.finish())
}

pub fn generate(params: &ModelParams) -> Result<DirectedGraph> {
    generate_with_stats(params).map(|(g, _)| g)
}
