//! Immutable directed and undirected graphs in compressed sparse row form.
//!
//! Both graph types store neighbour lists as one flat array of targets plus an
//! offset array, every list sorted ascending. Node ids are dense `u32`
//! indices; the external ids seen at ingestion are kept in a sorted side
//! table so that `id_map[dense] == external`.

mod io;
mod powerlaw;

pub use io::{
    load_edge_list, load_path, read_binary, read_edge_list_or_binary, write_binary,
    write_edge_list, LoadOptions, BINARY_MAGIC, BINARY_VERSION,
};
pub use powerlaw::{
    fit_power_law, fit_power_law_with, FitOptions, LogBin, PowerLawFit, DEFAULT_BINS_PER_DECADE,
    DEFAULT_MIN_BIN_NODES,
};

use std::collections::BTreeMap;
use std::fmt;

/// Dense node index.
pub type NodeId = u32;

/// One direction of adjacency: `targets[offsets[v]..offsets[v + 1]]` are the
/// neighbours of `v`, sorted ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct Csr {
    offsets: Vec<u64>,
    targets: Vec<NodeId>,
}

impl Csr {
    /// Builds rows keyed by the first element of each pair. Rows are sorted
    /// but duplicates are kept; callers dedup beforehand when required.
    pub fn from_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Self {
        let mut offsets = vec![0u64; n + 1];
        for &(s, _) in pairs {
            offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill: Vec<u64> = offsets[..n].to_vec();
        let mut targets = vec![0 as NodeId; pairs.len()];
        for &(s, t) in pairs {
            let slot = &mut fill[s as usize];
            targets[*slot as usize] = t;
            *slot += 1;
        }
        for v in 0..n {
            let (a, b) = (offsets[v] as usize, offsets[v + 1] as usize);
            targets[a..b].sort_unstable();
        }
        Csr { offsets, targets }
    }

    pub(crate) fn from_raw(offsets: Vec<u64>, targets: Vec<NodeId>) -> Self {
        Csr { offsets, targets }
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn targets(&self) -> &[NodeId] {
        &self.targets
    }

    /// Iterates `(row, target)` pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId)
            .flat_map(move |v| self.neighbors(v).iter().map(move |&w| (v, w)))
    }

    /// Transposes the relation: row `w` of the result lists every `v` with
    /// `w` in row `v` of `self`.
    pub fn transposed(&self) -> Csr {
        let n = self.node_count();
        let mut offsets = vec![0u64; n + 1];
        for &t in &self.targets {
            offsets[t as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill: Vec<u64> = offsets[..n].to_vec();
        let mut targets = vec![0 as NodeId; self.targets.len()];
        // Rows are visited in ascending order, so every output row ends up sorted.
        for (v, w) in self.pairs() {
            let slot = &mut fill[w as usize];
            targets[*slot as usize] = v;
            *slot += 1;
        }
        Csr { offsets, targets }
    }

    #[inline]
    pub fn contains(&self, v: NodeId, w: NodeId) -> bool {
        self.neighbors(v).binary_search(&w).is_ok()
    }
}

impl fmt::Debug for Csr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Csr")
            .field("nodes", &self.node_count())
            .field("entries", &self.targets.len())
            .finish()
    }
}

/// A directed graph with sorted out- and in-adjacency.
///
/// In-adjacency is optional so that memory-constrained loads can keep a
/// single direction; [`DirectedGraph::with_in_adjacency`] restores it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    out: Csr,
    inc: Option<Csr>,
    id_map: Vec<u64>,
}

impl DirectedGraph {
    /// Builds a graph on `n` nodes with identity external ids. Self-loops and
    /// duplicate arcs are removed.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let id_map = (0..n as u64).collect();
        Self::build(id_map, arcs.into_iter().collect(), true, true, true)
    }

    /// Builds a graph with the smallest `n` that contains every endpoint.
    pub fn from_arc_list(arcs: &[(NodeId, NodeId)]) -> Self {
        let n = arcs
            .iter()
            .map(|&(a, b)| a.max(b) as usize + 1)
            .max()
            .unwrap_or(0);
        Self::from_arcs(n, arcs.iter().copied())
    }

    pub(crate) fn build(
        id_map: Vec<u64>,
        mut arcs: Vec<(NodeId, NodeId)>,
        drop_self_loops: bool,
        dedup: bool,
        both_directions: bool,
    ) -> Self {
        let n = id_map.len();
        if drop_self_loops {
            arcs.retain(|&(a, b)| a != b);
        }
        if dedup {
            arcs.sort_unstable();
            arcs.dedup();
        }
        let out = Csr::from_pairs(n, &arcs);
        drop(arcs);
        let inc = both_directions.then(|| out.transposed());
        DirectedGraph { out, inc, id_map }
    }

    pub(crate) fn from_parts(out: Csr, inc: Option<Csr>, id_map: Vec<u64>) -> Self {
        DirectedGraph { out, inc, id_map }
    }

    /// Empty graph on `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Self::from_arcs(n, std::iter::empty())
    }

    pub fn node_count(&self) -> usize {
        self.out.node_count()
    }

    pub fn arc_count(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn out_neighbors(&self, v: NodeId) -> &[NodeId] {
        self.out.neighbors(v)
    }

    /// # Panics
    /// If the graph was loaded with a single direction.
    #[inline]
    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        self.in_csr().neighbors(v)
    }

    #[inline]
    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out.degree(v)
    }

    #[inline]
    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_csr().degree(v)
    }

    pub fn out_csr(&self) -> &Csr {
        &self.out
    }

    pub fn in_csr(&self) -> &Csr {
        self.inc
            .as_ref()
            .expect("graph was built without in-adjacency; call with_in_adjacency()")
    }

    pub fn has_in_adjacency(&self) -> bool {
        self.inc.is_some()
    }

    /// Returns the graph with in-adjacency present, building it if needed.
    pub fn with_in_adjacency(mut self) -> Self {
        if self.inc.is_none() {
            self.inc = Some(self.out.transposed());
        }
        self
    }

    #[inline]
    pub fn has_arc(&self, u: NodeId, v: NodeId) -> bool {
        self.out.contains(u, v)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.out.pairs()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count() as NodeId
    }

    /// External id of a dense node.
    pub fn external_id(&self, v: NodeId) -> u64 {
        self.id_map[v as usize]
    }

    /// Dense id of an external id, if present.
    pub fn dense_id(&self, external: u64) -> Option<NodeId> {
        self.id_map
            .binary_search(&external)
            .ok()
            .map(|i| i as NodeId)
    }

    pub fn id_map(&self) -> &[u64] {
        &self.id_map
    }

    /// Reverses every arc.
    pub fn transpose(&self) -> DirectedGraph {
        DirectedGraph {
            out: self.in_csr().clone(),
            inc: Some(self.out.clone()),
            id_map: self.id_map.clone(),
        }
    }

    /// Copy of the graph with one extra arc. Used by validation oracles.
    pub fn with_arc(&self, u: NodeId, v: NodeId) -> DirectedGraph {
        let mut arcs: Vec<_> = self.arcs().collect();
        arcs.push((u, v));
        Self::build(self.id_map.clone(), arcs, true, true, true)
    }

    /// Keeps the arcs for which `keep` returns true, on the same node set.
    pub fn filter_arcs(&self, mut keep: impl FnMut(NodeId, NodeId) -> bool) -> DirectedGraph {
        let arcs: Vec<_> = self.arcs().filter(|&(u, v)| keep(u, v)).collect();
        Self::build(self.id_map.clone(), arcs, false, false, true)
    }

    /// Undirected graph of reciprocated arc pairs.
    pub fn mutual_graph(&self) -> UndirectedGraph {
        let edges: Vec<_> = self
            .arcs()
            .filter(|&(u, v)| u < v && self.has_arc(v, u))
            .collect();
        UndirectedGraph::from_edges(self.node_count(), edges)
    }

    /// Undirected graph with every arc's direction dropped.
    pub fn undirected_projection(&self) -> UndirectedGraph {
        let edges: Vec<_> = self.arcs().map(|(u, v)| (u.min(v), u.max(v))).collect();
        UndirectedGraph::from_edges(self.node_count(), edges)
    }

    /// Removes both arcs of every reciprocated pair.
    pub fn strip_bidirectional(&self) -> DirectedGraph {
        self.filter_arcs(|u, v| !self.has_arc(v, u))
    }

    pub fn degree_distribution(&self, direction: Direction) -> DegreeHistogram {
        let degree: Box<dyn Fn(NodeId) -> usize> = match direction {
            Direction::In => Box::new(|v| self.in_degree(v)),
            Direction::Out => Box::new(|v| self.out_degree(v)),
            Direction::Undirected => {
                let und = self.undirected_projection();
                return und.degree_distribution();
            }
        };
        DegreeHistogram::from_degrees(direction, self.nodes().map(|v| degree(v) as u64))
    }

    /// `Σ_v d(v)(d(v)-1)` over out-degrees (`Direction::Out`) or in-degrees.
    pub fn degree_pair_sum(&self, direction: Direction) -> u128 {
        let csr = match direction {
            Direction::In => self.in_csr(),
            _ => &self.out,
        };
        self.nodes()
            .map(|v| {
                let d = csr.degree(v) as u128;
                d * d.saturating_sub(1)
            })
            .sum()
    }
}

/// A simple undirected graph: symmetric sorted adjacency, no loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Csr,
}

impl UndirectedGraph {
    /// Builds from edges given in any orientation; loops and duplicates are
    /// dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
        for (a, b) in edges {
            if a != b {
                pairs.push((a, b));
                pairs.push((b, a));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        UndirectedGraph {
            adj: Csr::from_pairs(n, &pairs),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        self.adj.neighbors(v)
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.adj.degree(v)
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj.contains(u, v)
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count() as NodeId
    }

    /// Each edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.pairs().filter(|&(u, v)| u < v)
    }

    pub fn degree_distribution(&self) -> DegreeHistogram {
        DegreeHistogram::from_degrees(
            Direction::Undirected,
            self.nodes().map(|v| self.degree(v) as u64),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
    Undirected,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::In => "in",
            Direction::Out => "out",
            Direction::Undirected => "undirected",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "in" => Ok(Direction::In),
            "out" => Ok(Direction::Out),
            "undirected" => Ok(Direction::Undirected),
            other => Err(format!("unknown direction '{other}' (expected in, out, undirected)")),
        }
    }
}

/// Number of nodes per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    pub direction: Direction,
    pub counts: BTreeMap<u64, u64>,
}

impl DegreeHistogram {
    pub fn from_degrees(direction: Direction, degrees: impl IntoIterator<Item = u64>) -> Self {
        let mut counts = BTreeMap::new();
        for d in degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        DegreeHistogram { direction, counts }
    }

    pub fn from_counts(direction: Direction, counts: BTreeMap<u64, u64>) -> Self {
        DegreeHistogram { direction, counts }
    }

    pub fn node_count(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `Σ_k k·counts[k]`.
    pub fn degree_mass(&self) -> u128 {
        self.counts
            .iter()
            .map(|(&k, &c)| k as u128 * c as u128)
            .sum()
    }

    pub fn max_degree(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_k22() -> DirectedGraph {
        DirectedGraph::from_arc_list(&[(0, 2), (0, 3), (1, 2), (1, 3)])
    }

    #[test]
    fn adjacency_is_consistent() {
        let g = DirectedGraph::from_arc_list(&[(3, 1), (0, 2), (0, 1), (2, 0), (1, 2)]);
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.arc_count(), 5);
        for v in g.nodes() {
            assert!(g.out_neighbors(v).windows(2).all(|w| w[0] < w[1]));
            assert!(g.in_neighbors(v).windows(2).all(|w| w[0] < w[1]));
            for &w in g.out_neighbors(v) {
                assert!(g.in_neighbors(w).contains(&v));
            }
        }
        assert_eq!(g.in_neighbors(1), &[0, 3]);
    }

    #[test]
    fn mutual_graph_examples() {
        assert_eq!(closed_k22().mutual_graph().edge_count(), 0);
        let g = DirectedGraph::from_arc_list(&[(0, 1), (1, 0), (1, 2)]);
        let m = g.mutual_graph();
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let tri = DirectedGraph::from_arc_list(&[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]);
        assert_eq!(
            tri.mutual_graph().edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2)]
        );
    }

    #[test]
    fn projection_examples() {
        let g = DirectedGraph::from_arc_list(&[(0, 1), (1, 0)]);
        assert_eq!(g.undirected_projection().edge_count(), 1);
        let cycle = closed_k22().undirected_projection();
        assert_eq!(cycle.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(cycle.nodes().all(|v| cycle.degree(v) == 2));
        assert_eq!(DirectedGraph::empty(0).undirected_projection().edge_count(), 0);
    }

    #[test]
    fn strip_bidirectional_examples() {
        let g = DirectedGraph::from_arc_list(&[(0, 1), (1, 0), (1, 2)]);
        assert_eq!(g.strip_bidirectional().arcs().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(closed_k22().strip_bidirectional(), closed_k22());
        let tri = DirectedGraph::from_arc_list(&[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]);
        assert_eq!(tri.strip_bidirectional().arc_count(), 0);
    }

    #[test]
    fn degree_distribution_examples() {
        let g = closed_k22();
        let expected: BTreeMap<u64, u64> = [(0, 2), (2, 2)].into_iter().collect();
        assert_eq!(g.degree_distribution(Direction::In).counts, expected);
        assert_eq!(g.degree_distribution(Direction::Out).counts, expected);
        let cyc = DirectedGraph::from_arc_list(&[(0, 1), (1, 2), (2, 0)]);
        let h = cyc.degree_distribution(Direction::In);
        assert_eq!(h.counts, [(1, 3)].into_iter().collect());
        assert_eq!(h.degree_mass(), 3);
    }

    #[test]
    fn transpose_twice_is_identity() {
        let g = DirectedGraph::from_arc_list(&[(0, 1), (2, 1), (2, 3), (3, 0)]);
        assert_eq!(g.transpose().transpose(), g);
        assert!(g.transpose().has_arc(1, 0));
    }

    #[test]
    fn single_direction_can_be_completed() {
        let g = DirectedGraph::build(vec![0, 1, 2], vec![(0, 1), (1, 2)], true, true, false);
        assert!(!g.has_in_adjacency());
        let g = g.with_in_adjacency();
        assert_eq!(g.in_neighbors(2), &[1]);
    }
}
