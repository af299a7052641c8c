//! Link recommendation by the number of open K22s (or open transitive
//! triangles) a new arc would close.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::index;
use rayon::prelude::*;

use crate::exact::{count_directed_triangles, count_k22};
use crate::graph::{DirectedGraph, NodeId};
use crate::rng;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    K22,
    Tt,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::K22 => "k22",
            Method::Tt => "tt",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k22" => Ok(Method::K22),
            "tt" => Ok(Method::Tt),
            _ => Err(Error::invalid(format!("unknown method {s:?} (want k22 or tt)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Recommendation {
    pub user: NodeId,
    pub candidate: NodeId,
    pub strength: u64,
    pub rank: usize,
}

fn check_user(g: &DirectedGraph, x: NodeId) -> Result<()> {
    if (x as usize) < g.node_count() {
        Ok(())
    } else {
        Err(Error::NodeOutOfRange { node: x as u64, n: g.node_count() })
    }
}

fn follows(g: &DirectedGraph, x: NodeId, v: NodeId) -> bool {
    g.out_neighbors(x).binary_search(&v).is_ok()
}

/// Every candidate with a positive K22 strength, unordered.
///
/// Walks `x → v1 ← u2 → v2` and counts `v2` once per `(v1, u2)` with
/// `u2 ≠ x`, `v2 ∉ {x, v1}` and `x ↛ v2`: each such walk is one closed K22
/// through the new arc `x → v2`.
pub fn k22_strengths(g: &DirectedGraph, x: NodeId) -> Result<Vec<(NodeId, u64)>> {
    check_user(g, x)?;
    let mut tally: HashMap<NodeId, u64> = HashMap::new();
    for &v1 in g.out_neighbors(x) {
        for &u2 in g.in_neighbors(v1) {
            if u2 == x {
                continue;
            }
            for &v2 in g.out_neighbors(u2) {
                if v2 != v1 && v2 != x && !follows(g, x, v2) {
                    *tally.entry(v2).or_default() += 1;
                }
            }
        }
    }
    Ok(tally.into_iter().collect())
}

/// Every candidate with a positive transitive-triangle strength: the number
/// of 2-paths `x → v → w` with `w ≠ x` and `x ↛ w`.
pub fn tt_strengths(g: &DirectedGraph, x: NodeId) -> Result<Vec<(NodeId, u64)>> {
    check_user(g, x)?;
    let mut tally: HashMap<NodeId, u64> = HashMap::new();
    for &v in g.out_neighbors(x) {
        for &w in g.out_neighbors(v) {
            if w != x && !follows(g, x, w) {
                *tally.entry(w).or_default() += 1;
            }
        }
    }
    Ok(tally.into_iter().collect())
}

pub fn strengths(g: &DirectedGraph, x: NodeId, method: Method) -> Result<Vec<(NodeId, u64)>> {
    match method {
        Method::K22 => k22_strengths(g, x),
        Method::Tt => tt_strengths(g, x),
    }
}

/// Strongest first, ties by ascending candidate id.
fn rank(x: NodeId, mut s: Vec<(NodeId, u64)>, k: usize) -> Vec<Recommendation> {
    s.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    s.into_iter()
        .take(k)
        .enumerate()
        .map(|(i, (candidate, strength))| Recommendation { user: x, candidate, strength, rank: i + 1 })
        .collect()
}

pub fn recommend(g: &DirectedGraph, x: NodeId, k: usize, method: Method) -> Result<Vec<Recommendation>> {
    Ok(rank(x, strengths(g, x, method)?, k))
}

pub fn k22_recommendations(g: &DirectedGraph, x: NodeId, k: usize) -> Result<Vec<Recommendation>> {
    recommend(g, x, k, Method::K22)
}

pub fn tt_recommendations(g: &DirectedGraph, x: NodeId, k: usize) -> Result<Vec<Recommendation>> {
    recommend(g, x, k, Method::Tt)
}

fn check_new_arc(g: &DirectedGraph, x: NodeId, v: NodeId) -> Result<()> {
    check_user(g, x)?;
    check_user(g, v)?;
    if g.has_arc(x, v) {
        return Err(Error::ArcExists(x, v));
    }
    Ok(())
}

/// Closed K22s gained by adding `x → v2`, from two exact counts.
pub fn strength_delta_oracle(g: &DirectedGraph, x: NodeId, v2: NodeId) -> Result<u64> {
    check_new_arc(g, x, v2)?;
    let before = count_k22(g, false).k22;
    let after = count_k22(&g.with_arc(x, v2), false).k22;
    Ok(after - before)
}

/// Transitive triangles gained by adding `x → w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TtDelta {
    /// Triangles where the new arc is the shortcut `x → w` over a 2-path
    /// `x → v → w`. This is what the TT strength counts.
    pub shortcut: u64,
    /// All new triangles, including those where the new arc is one leg of
    /// the 2-path (`x → w → c` with `x → c`, or `a → x → w` with `a → w`).
    pub total: u64,
}

pub fn tt_delta_oracle(g: &DirectedGraph, x: NodeId, w: NodeId) -> Result<TtDelta> {
    check_new_arc(g, x, w)?;
    let h = g.with_arc(x, w);
    let total = count_directed_triangles(&h).transitive - count_directed_triangles(g).transitive;
    // Legs: x→w→c with x→c, and a→x→w with a→w.
    let mut legs = 0u64;
    for &c in h.out_neighbors(w) {
        legs += (c != x && h.has_arc(x, c)) as u64;
    }
    for &a in h.in_neighbors(x) {
        legs += (a != w && h.has_arc(a, w)) as u64;
    }
    Ok(TtDelta { shortcut: total - legs, total })
}

/// Which users a cohort covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohortSpec {
    /// `count` users drawn without replacement among those following
    /// someone (all of them if fewer exist).
    Sample { count: usize, seed: u64 },
    Users(Vec<NodeId>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UserStrengths {
    pub user: NodeId,
    pub k22_max: Option<u64>,
    pub k22_kth: Option<u64>,
    pub tt_max: Option<u64>,
    pub tt_kth: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Panel {
    Max,
    Kth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohortReport {
    pub k: usize,
    pub users: Vec<UserStrengths>,
}

fn top_and_kth(mut s: Vec<u64>, k: usize) -> (Option<u64>, Option<u64>) {
    s.sort_unstable_by(|a, b| b.cmp(a));
    (s.first().copied(), k.checked_sub(1).and_then(|i| s.get(i).copied()))
}

pub fn select_users(g: &DirectedGraph, spec: &CohortSpec) -> Result<Vec<NodeId>> {
    match spec {
        CohortSpec::Users(list) => {
            for &x in list {
                check_user(g, x)?;
            }
            Ok(list.clone())
        }
        CohortSpec::Sample { count, seed } => {
            let eligible: Vec<NodeId> = g.nodes().filter(|&v| g.out_degree(v) > 0).collect();
            if eligible.is_empty() {
                return Err(Error::NoEligibleUsers);
            }
            let take = (*count).min(eligible.len());
            let mut r = rng::stream(*seed, 0);
            let mut users: Vec<NodeId> =
                index::sample(&mut r, eligible.len(), take).into_iter().map(|i| eligible[i]).collect();
            users.sort_unstable();
            Ok(users)
        }
    }
}

/// Max and k-th strength of both methods for every cohort user, computed
/// in parallel.
pub fn cohort_eval(g: &DirectedGraph, spec: &CohortSpec, k: usize) -> Result<CohortReport> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let users = select_users(g, spec)?;
    let rows = users
        .par_iter()
        .map(|&x| {
            let vals = |m| strengths(g, x, m).map(|s| s.into_iter().map(|(_, v)| v).collect::<Vec<_>>());
            let (k22_max, k22_kth) = top_and_kth(vals(Method::K22)?, k);
            let (tt_max, tt_kth) = top_and_kth(vals(Method::Tt)?, k);
            Ok(UserStrengths { user: x, k22_max, k22_kth, tt_max, tt_kth })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CohortReport { k, users: rows })
}

impl CohortReport {
    /// Per-user value; a missing recommendation counts as strength 0.
    pub fn value(&self, u: &UserStrengths, method: Method, panel: Panel) -> u64 {
        match (method, panel) {
            (Method::K22, Panel::Max) => u.k22_max,
            (Method::K22, Panel::Kth) => u.k22_kth,
            (Method::Tt, Panel::Max) => u.tt_max,
            (Method::Tt, Panel::Kth) => u.tt_kth,
        }
        .unwrap_or(0)
    }

    pub fn fraction_at_least(&self, method: Method, panel: Panel, threshold: u64) -> f64 {
        if self.users.is_empty() {
            return 0.0;
        }
        let hits = self.users.iter().filter(|u| self.value(u, method, panel) >= threshold).count();
        hits as f64 / self.users.len() as f64
    }

    /// `strength,k22_users,tt_users,k22_cdf,tt_cdf` where the cdf columns
    /// give the fraction of users at or below `strength`.
    pub fn histogram_csv(&self, panel: Panel) -> String {
        let mut counts: std::collections::BTreeMap<u64, [u64; 2]> = Default::default();
        for u in &self.users {
            counts.entry(self.value(u, Method::K22, panel)).or_default()[0] += 1;
            counts.entry(self.value(u, Method::Tt, panel)).or_default()[1] += 1;
        }
        let n = self.users.len().max(1) as f64;
        let mut s = String::from("strength,k22_users,tt_users,k22_cdf,tt_cdf\n");
        let mut acc = [0u64; 2];
        for (strength, c) in counts {
            acc[0] += c[0];
            acc[1] += c[1];
            let _ = writeln!(s, "{strength},{},{},{},{}", c[0], c[1], acc[0] as f64 / n, acc[1] as f64 / n);
        }
        s
    }

    /// `user,k22_max,k22_kth,tt_max,tt_kth` with external ids and `none` for
    /// absent entries.
    pub fn users_csv(&self, g: &DirectedGraph) -> String {
        let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_else(|| "none".into());
        let mut s = String::from("user,k22_max,k22_kth,tt_max,tt_kth\n");
        for u in &self.users {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                g.external_id(u.user),
                opt(u.k22_max),
                opt(u.k22_kth),
                opt(u.tt_max),
                opt(u.tt_kth)
            );
        }
        s
    }
}

/// `user,rank,candidate,strength,method` rows with external ids.
pub fn recommendations_csv(g: &DirectedGraph, blocks: &[(Method, Vec<Recommendation>)]) -> String {
    let mut s = String::from("user,rank,candidate,strength,method\n");
    for (m, recs) in blocks {
        for r in recs {
            let _ = writeln!(
                s,
                "{},{},{},{},{m}",
                g.external_id(r.user),
                r.rank,
                g.external_id(r.candidate),
                r.strength
            );
        }
    }
    s
}
