//! Minimal arc-sampling probability from Chebyshev's inequality, and a
//! brute-force overlap measurement for small graphs.

use std::collections::HashMap;

use crate::graph::DirectedGraph;
use crate::{Error, Result};

/// `delta_frac[i-1] = |Δ_i| / |A|²`, where `Δ_i` is the set of ordered
/// pattern pairs sharing exactly `i` arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapProfile {
    pub delta_frac: Vec<f64>,
}

impl OverlapProfile {
    pub fn new(delta_frac: Vec<f64>) -> Result<Self> {
        let p = OverlapProfile { delta_frac };
        p.validate()?;
        Ok(p)
    }

    /// Pattern arc count.
    pub fn l(&self) -> usize {
        self.delta_frac.len()
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.l(), 3 | 4) {
            return Err(Error::invalid(format!("overlap profile length {} (want 3 or 4)", self.l())));
        }
        if self.delta_frac.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::invalid("overlap fractions must be finite and non-negative"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MinProbability {
    At(f64),
    Infeasible,
}

impl MinProbability {
    pub fn value(&self) -> Option<f64> {
        match self {
            MinProbability::At(p) => Some(*p),
            MinProbability::Infeasible => None,
        }
    }
}

/// Smallest `p ∈ (0, 1]` with `(k²/ε²)·Σ_i δ_i·p^{2l−i} ≤ p^{2l}`.
///
/// Dividing through by `p^{2l}` leaves `(k²/ε²)·Σ δ_i p^{−i} ≤ 1`, whose left
/// side decreases in `p`, so the root is bracketed by halving from 1 and
/// refined by bisection on `log p` to a relative width of 1e-6.
/// An all-zero profile falls back to the self-overlap term
/// `δ_l = pattern_count_inv`.
pub fn chebyshev_min_probability(
    profile: &OverlapProfile,
    epsilon: f64,
    k: f64,
    pattern_count_inv: f64,
) -> Result<MinProbability> {
    profile.validate()?;
    if !(epsilon > 0.0 && k > 0.0) {
        return Err(Error::invalid("epsilon and k must be positive"));
    }
    let mut delta = profile.delta_frac.clone();
    if delta.iter().all(|&d| d == 0.0) {
        if !(pattern_count_inv > 0.0 && pattern_count_inv.is_finite()) {
            return Err(Error::invalid("all-zero profile needs a positive 1/|A|"));
        }
        *delta.last_mut().unwrap() = pattern_count_inv;
    }
    let c = k * k / (epsilon * epsilon);
    let lhs = |p: f64| -> f64 {
        c * delta
            .iter()
            .enumerate()
            .map(|(i, d)| d * p.powi(-(i as i32 + 1)))
            .sum::<f64>()
    };
    if lhs(1.0) > 1.0 {
        return Ok(MinProbability::Infeasible);
    }
    let mut hi = 1.0f64;
    let mut lo = 0.5f64;
    while lhs(lo) <= 1.0 {
        hi = lo;
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Ok(MinProbability::At(hi));
        }
    }
    while hi / lo - 1.0 > 1e-7 {
        let mid = (lo * hi).sqrt();
        if lhs(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(MinProbability::At(hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    K22,
    OpenK22,
}

impl Pattern {
    pub fn arc_count(&self) -> usize {
        match self {
            Pattern::K22 => 4,
            Pattern::OpenK22 => 3,
        }
    }
}

/// Measured overlap profile plus `|A|`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredOverlap {
    pub profile: OverlapProfile,
    pub pattern_count: u64,
}

/// Enumerates every pattern instance as an arc set and tallies, for each
/// ordered pair, how many arcs the two share. Quadratic in the local pattern
/// density, so meant for graphs with at most a few hundred thousand
/// patterns.
pub fn measure_overlap(g: &DirectedGraph, pattern: Pattern) -> Result<MeasuredOverlap> {
    let g = if g.has_in_adjacency() { g.clone() } else { g.clone().with_in_adjacency() };
    let offsets = g.out_csr().offsets().to_vec();
    let arc_id = |u: u32, v: u32| -> u64 {
        let nb = g.out_neighbors(u);
        offsets[u as usize] + nb.binary_search(&v).expect("arc present") as u64
    };
    let mut patterns: Vec<Vec<u64>> = Vec::new();
    match pattern {
        Pattern::K22 => {
            for c in g.nodes() {
                let ic = g.in_neighbors(c);
                for d in c + 1..g.node_count() as u32 {
                    let common: Vec<u32> = ic.iter().copied().filter(|a| g.has_arc(*a, d)).collect();
                    for i in 0..common.len() {
                        for j in i + 1..common.len() {
                            let (a, b) = (common[i], common[j]);
                            patterns.push(vec![arc_id(a, c), arc_id(a, d), arc_id(b, c), arc_id(b, d)]);
                        }
                    }
                }
            }
        }
        Pattern::OpenK22 => {
            for x in g.nodes() {
                let ix = g.in_neighbors(x);
                for i in 0..ix.len() {
                    for j in i + 1..ix.len() {
                        let (a, b) = (ix[i], ix[j]);
                        for s in [a, b] {
                            for &w in g.out_neighbors(s) {
                                if w != x && w != a && w != b {
                                    patterns.push(vec![arc_id(a, x), arc_id(b, x), arc_id(s, w)]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if patterns.is_empty() {
        return Err(Error::EmptyPopulation(match pattern {
            Pattern::K22 => "k22",
            Pattern::OpenK22 => "open k22",
        }));
    }
    let mut by_arc: HashMap<u64, Vec<u32>> = HashMap::new();
    for (i, p) in patterns.iter().enumerate() {
        for &a in p {
            by_arc.entry(a).or_default().push(i as u32);
        }
    }
    let l = pattern.arc_count();
    let mut delta = vec![0u128; l];
    let mut shared: HashMap<u32, usize> = HashMap::new();
    for p in &patterns {
        shared.clear();
        for a in p {
            for &q in &by_arc[a] {
                *shared.entry(q).or_default() += 1;
            }
        }
        for &s in shared.values() {
            delta[s - 1] += 1;
        }
    }
    let a2 = (patterns.len() as f64).powi(2);
    Ok(MeasuredOverlap {
        profile: OverlapProfile::new(delta.iter().map(|&d| d as f64 / a2).collect())?,
        pattern_count: patterns.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_case_has_a_closed_form() {
        let inv = 1e-6;
        let p = chebyshev_min_probability(&OverlapProfile::new(vec![0.0, 0.0, 0.0, inv]).unwrap(), 0.1, 10.0, inv)
            .unwrap()
            .value()
            .unwrap();
        let expected = (1e4 * inv).powf(0.25);
        assert!((p / expected - 1.0).abs() < 1e-6, "{p} vs {expected}");
        let fallback = chebyshev_min_probability(&OverlapProfile::new(vec![0.0; 4]).unwrap(), 0.1, 10.0, inv)
            .unwrap()
            .value()
            .unwrap();
        assert!((fallback / p - 1.0).abs() < 1e-9);
    }

    #[test]
    fn loose_precision_does_not_raise_the_bound() {
        let prof = OverlapProfile::new(vec![4.3e-8, 1e-16, 3.8e-17, 3.8e-17]).unwrap();
        let a = chebyshev_min_probability(&prof, 0.1, 10.0, 0.0).unwrap().value().unwrap();
        let b = chebyshev_min_probability(&prof, 0.2, 10.0, 0.0).unwrap().value().unwrap();
        assert!(b <= a);
    }

    #[test]
    fn infeasible_when_even_full_graph_fails() {
        let prof = OverlapProfile::new(vec![0.5, 0.0, 0.0, 0.1]).unwrap();
        assert_eq!(chebyshev_min_probability(&prof, 0.1, 10.0, 0.0).unwrap(), MinProbability::Infeasible);
    }

    #[test]
    fn rejects_bad_profiles() {
        assert!(OverlapProfile::new(vec![0.1; 5]).is_err());
        assert!(OverlapProfile::new(vec![-0.1, 0.0, 0.0]).is_err());
    }

    #[test]
    fn single_k22_overlaps_itself_fully() {
        let g = DirectedGraph::from_arc_list(&[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let m = measure_overlap(&g, Pattern::K22).unwrap();
        assert_eq!(m.pattern_count, 1);
        assert_eq!(m.profile.delta_frac, vec![0.0, 0.0, 0.0, 1.0]);
        let o = measure_overlap(&g, Pattern::OpenK22).unwrap();
        assert_eq!(o.pattern_count, 4);
        // Sum over i of |Δ_i| counts every ordered pair sharing an arc.
        let total: f64 = o.profile.delta_frac.iter().sum::<f64>() * 16.0;
        assert!(total > 4.0 - 1e-9);
        assert!((o.profile.delta_frac[2] * 16.0 - 4.0).abs() < 1e-9);
    }
}
