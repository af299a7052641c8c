//! K22 and open-K22 enumeration.
//!
//! For every top vertex `x` the kernel walks the out-lists of the
//! in-neighbours of `x` once, tallying how often each later vertex `w > x`
//! shows up (`occ[w]`) and how many arcs stay inside `N⁻(x)`. A K22 with tops
//! `{x, w}` is a pair of common in-neighbours, so `Σ_w C(occ[w], 2)` counts
//! the K22s owned by `x`. Open K22s with their fork at `x` are
//! `Σ_{v ∈ N⁻(x)} (d⁺(v) - 1)(d⁻(x) - 1)` minus the internal arcs.

use rayon::prelude::*;

use crate::graph::{DirectedGraph, Direction, NodeId};

const CHUNK: usize = 256;

/// Which adjacency orientation the enumeration runs on. Reversing every arc
/// maps K22s to K22s and open K22s to open K22s, so totals agree; only the
/// per-node attribution (top vs bottom) differs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Run on whichever orientation has the smaller `Σ d⁺(d⁺ - 1)`.
    #[default]
    Auto,
    Forward,
    Transposed,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct K22Options {
    pub per_node: bool,
    pub orientation: Orientation,
}

/// Per-node tallies. With forward orientation a K22 is owned by its
/// smaller-id top vertex and an open K22 by the top of its fork; with
/// transposed orientation the same rules apply to bottom vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerNodeK22Stats {
    pub k22: Vec<u64>,
    pub open_k22: Vec<u64>,
}

impl PerNodeK22Stats {
    pub fn local_icc(&self, x: NodeId) -> Option<f64> {
        let open = self.open_k22[x as usize];
        (open > 0).then(|| 4.0 * self.k22[x as usize] as f64 / open as f64)
    }

    pub fn node_count(&self) -> usize {
        self.k22.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K22Census {
    pub k22: u64,
    pub open_k22: u64,
    /// Inner-loop iterations performed (both the tally and the reset walk).
    pub work: u64,
    /// Whether the enumeration ran on the reversed graph.
    pub transposed: bool,
    pub per_node: Option<PerNodeK22Stats>,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    k22: u128,
    open: u128,
    work: u64,
}

struct Scratch {
    occ: Vec<u32>,
    mark: Vec<NodeId>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            occ: vec![0; n],
            mark: vec![0; n],
        }
    }
}

/// Tallies for top vertex `x`. `out` and `inc` are the adjacency lists of the
/// orientation being enumerated.
#[inline]
fn tally_top(g: &DirectedGraph, transposed: bool, x: NodeId, s: &mut Scratch) -> Tally {
    let (outs, ins) = if transposed {
        (g.in_csr(), g.out_csr())
    } else {
        (g.out_csr(), g.in_csr())
    };
    let preds = ins.neighbors(x);
    let dx = preds.len() as u128;
    if dx < 2 {
        return Tally::default();
    }
    let stamp = x + 1;
    for &v in preds {
        s.mark[v as usize] = stamp;
    }
    let mut fan_out: u128 = 0;
    let mut internal: u128 = 0;
    let mut work = 0u64;
    for &v in preds {
        let succ = outs.neighbors(v);
        fan_out += succ.len() as u128 - 1;
        work += succ.len() as u64;
        for &w in succ {
            if w == x {
                continue;
            }
            if s.mark[w as usize] == stamp {
                internal += 1;
            }
            if w > x {
                s.occ[w as usize] += 1;
            }
        }
    }
    let mut k22: u128 = 0;
    for &v in preds {
        let succ = outs.neighbors(v);
        work += succ.len() as u64;
        for &w in succ {
            if w > x {
                let c = s.occ[w as usize] as u128;
                if c > 0 {
                    k22 += c * (c - 1) / 2;
                    s.occ[w as usize] = 0;
                }
            }
        }
    }
    Tally {
        k22,
        open: fan_out * (dx - 1) - internal,
        work,
    }
}

fn to_u64(v: u128, what: &str) -> u64 {
    u64::try_from(v).unwrap_or_else(|_| panic!("{what} count {v} overflows 64 bits"))
}

/// Counts K22s and open K22s, optionally with per-node attribution.
pub fn count_k22(g: &DirectedGraph, want_per_node: bool) -> K22Census {
    count_k22_with(
        g,
        K22Options {
            per_node: want_per_node,
            orientation: if want_per_node {
                Orientation::Forward
            } else {
                Orientation::Auto
            },
        },
    )
}

pub fn count_k22_with(g: &DirectedGraph, opts: K22Options) -> K22Census {
    let n = g.node_count();
    let transposed = match opts.orientation {
        Orientation::Forward => false,
        Orientation::Transposed => true,
        Orientation::Auto => g.degree_pair_sum(Direction::In) < g.degree_pair_sum(Direction::Out),
    };
    let chunks = n.div_ceil(CHUNK);

    let run_chunk = |s: &mut Scratch, c: usize, per: Option<(&mut [u64], &mut [u64])>| {
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(n);
        let mut acc = Tally::default();
        let mut per = per;
        for x in lo..hi {
            let t = tally_top(g, transposed, x as NodeId, s);
            if let Some((k, o)) = per.as_mut() {
                k[x - lo] = to_u64(t.k22, "per-node K22");
                o[x - lo] = to_u64(t.open, "per-node open K22");
            }
            acc.k22 += t.k22;
            acc.open += t.open;
            acc.work += t.work;
        }
        acc
    };

    let (partials, per_node): (Vec<Tally>, _) = if opts.per_node {
        let mut k = vec![0u64; n];
        let mut o = vec![0u64; n];
        let partials = k
            .par_chunks_mut(CHUNK)
            .zip(o.par_chunks_mut(CHUNK))
            .enumerate()
            .map_init(
                || Scratch::new(n),
                |s, (c, (kc, oc))| run_chunk(s, c, Some((kc, oc))),
            )
            .collect();
        (
            partials,
            Some(PerNodeK22Stats {
                k22: k,
                open_k22: o,
            }),
        )
    } else {
        let partials = (0..chunks)
            .into_par_iter()
            .map_init(|| Scratch::new(n), |s, c| run_chunk(s, c, None))
            .collect();
        (partials, None)
    };

    // Fixed-order reduction over chunk partials.
    let total = partials.iter().fold(Tally::default(), |a, t| Tally {
        k22: a.k22 + t.k22,
        open: a.open + t.open,
        work: a.work + t.work,
    });
    K22Census {
        k22: to_u64(total.k22, "K22"),
        open_k22: to_u64(total.open, "open K22"),
        work: total.work,
        transposed,
        per_node,
    }
}

/// Per-node stats attributed to bottom vertices: each K22 owned by its
/// smaller-id bottom, each open K22 by the bottom with two arcs in it.
pub fn bottom_stats(g: &DirectedGraph) -> PerNodeK22Stats {
    count_k22_with(
        g,
        K22Options {
            per_node: true,
            orientation: Orientation::Transposed,
        },
    )
    .per_node
    .expect("per-node requested")
}

/// `m + Σ_u d⁺(u)(d⁺(u) - 1)`, the enumeration's iteration bound for the
/// forward orientation.
pub fn work_bound(g: &DirectedGraph) -> u128 {
    g.arc_count() as u128 + g.degree_pair_sum(Direction::Out)
}
