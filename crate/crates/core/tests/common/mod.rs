//! Brute-force oracles and random graph helpers shared by the integration
//! tests. Everything here works straight from the definitions over vertex
//! tuples and shares no code with the library's counting paths.

#![allow(dead_code)]

use k22::graph::{DirectedGraph, NodeId, UndirectedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Dense {
    pub n: usize,
    adj: Vec<bool>,
}

impl Dense {
    pub fn of(g: &DirectedGraph) -> Self {
        let n = g.node_count();
        let mut adj = vec![false; n * n];
        for (u, v) in g.arcs() {
            adj[u as usize * n + v as usize] = true;
        }
        Dense { n, adj }
    }

    pub fn of_undirected(ug: &UndirectedGraph) -> Self {
        let n = ug.node_count();
        let mut adj = vec![false; n * n];
        for (u, v) in ug.edges() {
            adj[u as usize * n + v as usize] = true;
            adj[v as usize * n + u as usize] = true;
        }
        Dense { n, adj }
    }

    #[inline]
    pub fn a(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }
}

fn distinct(xs: &[usize]) -> bool {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] == xs[j] {
                return false;
            }
        }
    }
    true
}

/// Closed K22s with the owning (smaller) top of each.
pub fn k22_per_top(d: &Dense) -> Vec<u64> {
    let n = d.n;
    let mut per = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                for e in c + 1..n {
                    if distinct(&[a, b, c, e])
                        && d.a(a, c)
                        && d.a(a, e)
                        && d.a(b, c)
                        && d.a(b, e)
                    {
                        per[c] += 1;
                    }
                }
            }
        }
    }
    per
}

/// Open K22s (fork `a→x, b→x` plus one arc `s→w`, `s ∈ {a, b}`,
/// `w ∉ {x, a, b}`), attributed to the fork top `x`.
pub fn open_k22_per_top(d: &Dense) -> Vec<u64> {
    let n = d.n;
    let mut per = vec![0u64; n];
    for x in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if !distinct(&[x, a, b]) || !d.a(a, x) || !d.a(b, x) {
                    continue;
                }
                for w in 0..n {
                    if !distinct(&[x, a, b, w]) {
                        continue;
                    }
                    per[x] += d.a(a, w) as u64 + d.a(b, w) as u64;
                }
            }
        }
    }
    per
}

pub fn k22(d: &Dense) -> u64 {
    k22_per_top(d).iter().sum()
}

pub fn open_k22(d: &Dense) -> u64 {
    open_k22_per_top(d).iter().sum()
}

pub fn transitive(d: &Dense) -> u64 {
    let n = d.n;
    let mut c = 0;
    for u in 0..n {
        for v in 0..n {
            for x in 0..n {
                if distinct(&[u, v, x]) && d.a(u, v) && d.a(u, x) && d.a(v, x) {
                    c += 1;
                }
            }
        }
    }
    c
}

pub fn cyclic(d: &Dense) -> u64 {
    let n = d.n;
    let mut c = 0;
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if distinct(&[u, v, w]) && d.a(u, v) && d.a(v, w) && d.a(w, u) {
                    c += 1;
                }
            }
        }
    }
    c / 3
}

/// Pairs of arcs `u→x, x→w` (u may equal w).
pub fn open_directed(d: &Dense) -> u64 {
    let n = d.n;
    let mut c = 0;
    for x in 0..n {
        for u in 0..n {
            for w in 0..n {
                if d.a(u, x) && d.a(x, w) {
                    c += 1;
                }
            }
        }
    }
    c
}

pub fn und_triangles(d: &Dense) -> u64 {
    let n = d.n;
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            for e in b + 1..n {
                if d.a(a, b) && d.a(b, e) && d.a(a, e) {
                    c += 1;
                }
            }
        }
    }
    c
}

pub fn connected_triplets(d: &Dense) -> u64 {
    let n = d.n;
    let mut c = 0;
    for v in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if a != v && b != v && d.a(v, a) && d.a(v, b) {
                    c += 1;
                }
            }
        }
    }
    c
}

pub fn und_4cycles(d: &Dense) -> u64 {
    let n = d.n;
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            for e in b + 1..n {
                for f in e + 1..n {
                    for [p, q, r, s] in [[a, b, e, f], [a, b, f, e], [a, e, b, f]] {
                        if d.a(p, q) && d.a(q, r) && d.a(r, s) && d.a(s, p) {
                            c += 1;
                        }
                    }
                }
            }
        }
    }
    c
}

pub fn und_3paths(d: &Dense) -> u64 {
    let n = d.n;
    let mut c = 0;
    for a in 0..n {
        for b in 0..n {
            for e in 0..n {
                for f in 0..n {
                    if distinct(&[a, b, e, f]) && d.a(a, b) && d.a(b, e) && d.a(e, f) {
                        c += 1;
                    }
                }
            }
        }
    }
    c / 2
}

pub fn random_digraph(n: usize, p: f64, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen::<f64>() < p {
                arcs.push((u as NodeId, v as NodeId));
            }
        }
    }
    DirectedGraph::from_arcs(n, arcs)
}

pub fn random_undirected(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u as NodeId, v as NodeId));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges)
}

/// Random digraph with a share of reciprocated pairs, so mutual structures
/// show up.
pub fn random_reciprocal_digraph(n: usize, p: f64, reciprocity: f64, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen::<f64>() < p {
                arcs.push((u as NodeId, v as NodeId));
                if rng.gen::<f64>() < reciprocity {
                    arcs.push((v as NodeId, u as NodeId));
                }
            }
        }
    }
    DirectedGraph::from_arcs(n, arcs)
}

/// Closed K22s that contain arc `x→v2` with `x` as a bottom.
pub fn k22_through_arc(d: &Dense, x: usize, v2: usize) -> u64 {
    let n = d.n;
    let mut c = 0;
    for b in 0..n {
        for v1 in 0..n {
            if distinct(&[x, b, v1, v2]) && d.a(x, v1) && d.a(b, v1) && d.a(b, v2) && d.a(x, v2) {
                c += 1;
            }
        }
    }
    c
}
