//! Exact structure counts and the clustering coefficients built on them.

mod coefficients;
mod k22;
mod local;
mod triangles;

pub use coefficients::{coefficients, Coefficient, CoefficientReport, CoefficientSet, Ratio};
pub use k22::{
    bottom_stats, count_k22, count_k22_with, work_bound, K22Census, K22Options, Orientation,
    PerNodeK22Stats,
};
pub use local::{local_icc_distribution, LocalIccDistribution};
pub use triangles::{
    count_directed_triangles, count_undirected_k22, count_undirected_triangles,
    DirectedTriangles, UndirectedK22, UndirectedTriangles,
};

use serde_json::{json, Value};

use crate::graph::{DirectedGraph, UndirectedGraph};

/// Exact integer tallies for one graph.
///
/// For a directed graph the `und_*` and `connected_triplets` fields describe
/// its undirected projection. For an undirected graph (e.g. the mutual
/// graph) the directed fields are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StructureCounts {
    pub k22: u64,
    pub open_k22: u64,
    pub transitive: u64,
    pub cyclic: u64,
    pub open_directed: u64,
    pub und_triangles: u64,
    pub connected_triplets: u64,
    pub und_k22: u64,
    pub open_und_k22: u64,
}

impl StructureCounts {
    pub fn of_directed(g: &DirectedGraph) -> Self {
        let k = count_k22(g, false);
        let t = count_directed_triangles(g);
        let und = Self::of_undirected(&g.undirected_projection());
        StructureCounts {
            k22: k.k22,
            open_k22: k.open_k22,
            transitive: t.transitive,
            cyclic: t.cyclic,
            open_directed: t.open_directed,
            ..und
        }
    }

    pub fn of_undirected(ug: &UndirectedGraph) -> Self {
        let t = count_undirected_triangles(ug);
        let q = count_undirected_k22(ug);
        StructureCounts {
            und_triangles: t.triangles,
            connected_triplets: t.connected_triplets,
            und_k22: q.k22,
            open_und_k22: q.open_k22,
            ..Default::default()
        }
    }

    pub fn fields(&self) -> [(&'static str, u64); 9] {
        [
            ("k22", self.k22),
            ("open_k22", self.open_k22),
            ("transitive", self.transitive),
            ("cyclic", self.cyclic),
            ("open_directed", self.open_directed),
            ("und_triangles", self.und_triangles),
            ("connected_triplets", self.connected_triplets),
            ("und_k22", self.und_k22),
            ("open_und_k22", self.open_und_k22),
        ]
    }

    /// Checks the orderings every valid count set satisfies.
    pub fn check(&self) -> Result<(), String> {
        if self.open_k22 < 4 * self.k22 {
            return Err(format!("open_k22 {} < 4 * k22 {}", self.open_k22, self.k22));
        }
        if self.open_directed < self.transitive {
            return Err("open_directed < transitive".into());
        }
        if self.open_directed < 3 * self.cyclic {
            return Err("open_directed < 3 * cyclic".into());
        }
        if self.connected_triplets < 3 * self.und_triangles {
            return Err("connected_triplets < 3 * und_triangles".into());
        }
        if self.open_und_k22 < 4 * self.und_k22 {
            return Err("open_und_k22 < 4 * und_k22".into());
        }
        Ok(())
    }

    /// `key = value` lines with a prefix such as `full.` or `mutual.`.
    pub fn render_lines(&self, prefix: &str) -> String {
        self.fields()
            .iter()
            .map(|(k, v)| format!("{prefix}{k} = {v}\n"))
            .collect()
    }

    /// JSON object with counts as decimal strings.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (k, v) in self.fields() {
            map.insert(k.to_string(), json!(v.to_string()));
        }
        Value::Object(map)
    }
}

/// Counts for a graph and its mutual graph together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphCensus {
    pub full: StructureCounts,
    pub mutual: StructureCounts,
}

impl GraphCensus {
    pub fn of(g: &DirectedGraph) -> Self {
        GraphCensus {
            full: StructureCounts::of_directed(g),
            mutual: StructureCounts::of_undirected(&g.mutual_graph()),
        }
    }

    pub fn report(&self) -> crate::Result<CoefficientReport> {
        coefficients(&self.full, &self.mutual)
    }
}
