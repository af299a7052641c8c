//! Directed and undirected triangle counts, plus undirected 4-cycles.

use rayon::prelude::*;

use crate::graph::{DirectedGraph, NodeId, UndirectedGraph};

const CHUNK: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DirectedTriangles {
    /// `u→v, u→x, v→x`, each triangle once.
    pub transitive: u64,
    /// Directed 3-cycles, each once.
    pub cyclic: u64,
    /// In-arc/out-arc pairs meeting at a centre: `Σ_x d⁻(x)·d⁺(x)`.
    pub open_directed: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UndirectedTriangles {
    pub triangles: u64,
    /// `Σ_v C(d(v), 2)`.
    pub connected_triplets: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UndirectedK22 {
    /// 4-cycles on distinct vertices.
    pub k22: u64,
    /// Simple paths with three edges.
    pub open_k22: u64,
}

fn sum_chunks<F>(n: usize, init: impl Fn() -> Vec<NodeId> + Sync + Send, f: F) -> [u128; 3]
where
    F: Fn(&mut Vec<NodeId>, NodeId) -> [u128; 3] + Sync + Send,
{
    let partials: Vec<[u128; 3]> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map_init(&init, |scratch, c| {
            let mut acc = [0u128; 3];
            for x in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let r = f(scratch, x as NodeId);
                for i in 0..3 {
                    acc[i] += r[i];
                }
            }
            acc
        })
        .collect();
    partials.iter().fold([0u128; 3], |mut a, p| {
        for i in 0..3 {
            a[i] += p[i];
        }
        a
    })
}

fn narrow(v: u128) -> u64 {
    u64::try_from(v).unwrap_or_else(|_| panic!("count {v} overflows 64 bits"))
}

/// Transitive triangles are counted at their sink `x` as arcs internal to
/// `N⁻(x)`; cyclic triangles as arcs from `N⁺(x)` back into `N⁻(x)`, which
/// sees each cycle once per vertex.
pub fn count_directed_triangles(g: &DirectedGraph) -> DirectedTriangles {
    let n = g.node_count();
    let [transitive, cyclic3, open] = sum_chunks(
        n,
        || vec![0; n],
        |mark, x| {
            let preds = g.in_neighbors(x);
            let succs = g.out_neighbors(x);
            let open = preds.len() as u128 * succs.len() as u128;
            if preds.is_empty() {
                return [0, 0, 0];
            }
            let stamp = x + 1;
            for &v in preds {
                mark[v as usize] = stamp;
            }
            let mut transitive = 0u128;
            for &v in preds {
                transitive += g
                    .out_neighbors(v)
                    .iter()
                    .filter(|&&w| mark[w as usize] == stamp)
                    .count() as u128;
            }
            let mut cyclic = 0u128;
            for &a in succs {
                cyclic += g
                    .out_neighbors(a)
                    .iter()
                    .filter(|&&b| mark[b as usize] == stamp)
                    .count() as u128;
            }
            [transitive, cyclic, open]
        },
    );
    debug_assert_eq!(cyclic3 % 3, 0);
    DirectedTriangles {
        transitive: narrow(transitive),
        cyclic: narrow(cyclic3 / 3),
        open_directed: narrow(open),
    }
}

/// Triangles counted once at their smallest vertex.
pub fn count_undirected_triangles(ug: &UndirectedGraph) -> UndirectedTriangles {
    let n = ug.node_count();
    let [triangles, triplets, _] = sum_chunks(
        n,
        || vec![0; n],
        |mark, u| {
            let nb = ug.neighbors(u);
            let d = nb.len() as u128;
            let triplets = d * d.saturating_sub(1) / 2;
            let stamp = u + 1;
            for &v in nb {
                mark[v as usize] = stamp;
            }
            let mut t = 0u128;
            for &v in nb.iter().filter(|&&v| v > u) {
                t += ug
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| w > v && mark[w as usize] == stamp)
                    .count() as u128;
            }
            [t, triplets, 0]
        },
    );
    UndirectedTriangles {
        triangles: narrow(triangles),
        connected_triplets: narrow(triplets),
    }
}

/// 4-cycles via common-neighbour tallies over vertex pairs `x < w`; each
/// cycle has two opposite pairs and is seen twice. Three-edge paths are
/// `Σ_{uv} (d(u) - 1)(d(v) - 1)` minus the three closed walks per triangle.
pub fn count_undirected_k22(ug: &UndirectedGraph) -> UndirectedK22 {
    let n = ug.node_count();
    let [twice_cycles, middle, _] = sum_chunks(
        n,
        || vec![0; n],
        |occ, x| {
            let nb = ug.neighbors(x);
            let dx = nb.len() as u128;
            let mut middle = 0u128;
            for &v in nb {
                if v > x {
                    middle += dx.saturating_sub(1) * (ug.degree(v) as u128).saturating_sub(1);
                }
                for &w in ug.neighbors(v) {
                    if w > x {
                        occ[w as usize] += 1;
                    }
                }
            }
            let mut pairs = 0u128;
            for &v in nb {
                for &w in ug.neighbors(v) {
                    if w > x {
                        let c = occ[w as usize] as u128;
                        if c > 0 {
                            pairs += c * (c - 1) / 2;
                            occ[w as usize] = 0;
                        }
                    }
                }
            }
            [pairs, middle, 0]
        },
    );
    let triangles = count_undirected_triangles(ug).triangles as u128;
    UndirectedK22 {
        k22: narrow(twice_cycles / 2),
        open_k22: narrow(middle - 3 * triangles),
    }
}
