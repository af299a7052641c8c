use super::PerNodeK22Stats;

/// Distribution of the per-node icc over nodes with at least one open K22.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalIccDistribution {
    /// `bins` equal-width bins over `[0, 1]`; the last bin is closed.
    pub histogram: Vec<u64>,
    /// Mean local icc over defined nodes, `None` when no node is defined.
    pub mean: Option<f64>,
    pub defined: u64,
    /// Nodes without open K22s, left out of the histogram.
    pub undefined: u64,
}

impl LocalIccDistribution {
    /// Lower edge of each bin.
    pub fn bin_edges(&self) -> Vec<f64> {
        let b = self.histogram.len() as f64;
        (0..self.histogram.len()).map(|i| i as f64 / b).collect()
    }
}

pub fn local_icc_distribution(stats: &PerNodeK22Stats, bins: usize) -> LocalIccDistribution {
    let bins = bins.max(1);
    let mut histogram = vec![0u64; bins];
    let mut sum = 0.0;
    let mut defined = 0u64;
    let mut undefined = 0u64;
    for x in 0..stats.node_count() {
        match stats.local_icc(x as u32) {
            Some(v) => {
                let idx = ((v * bins as f64) as usize).min(bins - 1);
                histogram[idx] += 1;
                sum += v;
                defined += 1;
            }
            None => undefined += 1,
        }
    }
    LocalIccDistribution {
        histogram,
        mean: (defined > 0).then(|| sum / defined as f64),
        defined,
        undefined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::count_k22;
    use crate::graph::DirectedGraph;

    #[test]
    fn forks_without_closure_give_zero() {
        let g = DirectedGraph::from_arc_list(&[(0, 2), (1, 2), (0, 3), (4, 3)]);
        let stats = count_k22(&g, true).per_node.unwrap();
        let d = local_icc_distribution(&stats, 10);
        assert!(d.defined > 0);
        assert_eq!(d.mean, Some(0.0));
        assert_eq!(d.histogram[0], d.defined);
    }

    #[test]
    fn single_arc_has_no_defined_nodes() {
        let g = DirectedGraph::from_arc_list(&[(0, 1)]);
        let d = local_icc_distribution(&count_k22(&g, true).per_node.unwrap(), 10);
        assert_eq!(d.defined, 0);
        assert_eq!(d.undefined, 2);
        assert_eq!(d.mean, None);
    }
}
