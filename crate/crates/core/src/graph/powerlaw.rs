use super::DegreeHistogram;
use crate::error::{Error, Result};

pub const DEFAULT_BINS_PER_DECADE: u32 = 10;
pub const DEFAULT_MIN_BIN_NODES: u64 = 3;

/// Binning and cut-offs for [`fit_power_law_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitOptions {
    pub bins_per_decade: u32,
    pub tail_start: u64,
    /// Bins holding fewer nodes are left out of the regression. In the far
    /// tail a bin is either empty or holds a node or two, and keeping only
    /// the lucky non-empty ones flattens the fitted slope.
    pub min_bin_nodes: u64,
}

impl FitOptions {
    pub fn new(bins_per_decade: u32, tail_start: u64) -> Self {
        FitOptions { bins_per_decade, tail_start, min_bin_nodes: DEFAULT_MIN_BIN_NODES }
    }
}

/// One logarithmic bin: the integer degrees `lo..=hi` it covers, the nodes it
/// holds, and the mean per-degree frequency over those integers.
#[derive(Clone, Debug, PartialEq)]
pub struct LogBin {
    pub lo: u64,
    pub hi: u64,
    pub nodes: u64,
    pub center: f64,
    pub mean_frequency: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerLawFit {
    /// Power-law exponent estimate (negative for a decaying tail).
    pub slope: f64,
    /// log10 intercept of the fitted line.
    pub intercept: f64,
    pub tail_start: u64,
    pub bins_per_decade: u32,
    pub r_squared: f64,
    pub bins: Vec<LogBin>,
}

impl PowerLawFit {
    pub fn predict(&self, degree: f64) -> f64 {
        10f64.powf(self.intercept + self.slope * degree.log10())
    }
}

fn bin_index(k: u64, per_decade: u32) -> i64 {
    ((k as f64).log10() * per_decade as f64 + 1e-9).floor() as i64
}

fn bin_edge(j: i64, per_decade: u32) -> u64 {
    (10f64.powf(j as f64 / per_decade as f64) - 1e-9).ceil() as u64
}

/// Least-squares fit of `log10(mean frequency)` against `log10(bin centre)`
/// over logarithmic bins holding degrees `>= tail_start`, with the default
/// minimum bin population.
pub fn fit_power_law(
    h: &DegreeHistogram,
    bins_per_decade: u32,
    tail_start: u64,
) -> Result<PowerLawFit> {
    fit_power_law_with(h, FitOptions::new(bins_per_decade, tail_start))
}

/// Frequencies are node fractions; each bin's mass is divided by the number
/// of integer degrees it spans (the first bin starts at `tail_start`).
/// Bins with fewer than `min_bin_nodes` nodes are skipped.
pub fn fit_power_law_with(h: &DegreeHistogram, opts: FitOptions) -> Result<PowerLawFit> {
    let FitOptions { bins_per_decade, tail_start, min_bin_nodes } = opts;
    if bins_per_decade == 0 {
        return Err(Error::invalid("bins_per_decade must be positive"));
    }
    let tail_start = tail_start.max(1);
    let total = h.node_count() as f64;

    let mut bins: Vec<LogBin> = Vec::new();
    let mut current: Option<(i64, u64)> = None;
    let flush = |j: i64, nodes: u64, bins: &mut Vec<LogBin>| {
        let lo = bin_edge(j, bins_per_decade).max(tail_start);
        let hi = bin_edge(j + 1, bins_per_decade) - 1;
        if nodes < min_bin_nodes.max(1) {
            return;
        }
        let width = (hi - lo + 1) as f64;
        bins.push(LogBin {
            lo,
            hi,
            nodes,
            center: ((lo as f64) * (hi as f64)).sqrt(),
            mean_frequency: nodes as f64 / total / width,
        });
    };
    for (&k, &c) in h.counts.range(tail_start..) {
        if c == 0 {
            continue;
        }
        let j = bin_index(k, bins_per_decade);
        match current {
            Some((cj, ref mut acc)) if cj == j => *acc += c,
            Some((cj, acc)) => {
                flush(cj, acc, &mut bins);
                current = Some((j, c));
            }
            None => current = Some((j, c)),
        }
    }
    if let Some((cj, acc)) = current {
        flush(cj, acc, &mut bins);
    }

    if bins.len() < 2 {
        return Err(Error::InsufficientTail {
            usable: bins.len(),
            tail_start,
        });
    }

    let xs: Vec<f64> = bins.iter().map(|b| b.center.log10()).collect();
    let ys: Vec<f64> = bins.iter().map(|b| b.mean_frequency.log10()).collect();
    let (slope, intercept, r_squared) = least_squares(&xs, &ys);
    Ok(PowerLawFit {
        slope,
        intercept,
        tail_start,
        bins_per_decade,
        r_squared,
        bins,
    })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    (slope, intercept, r_squared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Direction;
    use std::collections::BTreeMap;

    fn synthetic(exponent: f64, c: f64, max: u64) -> DegreeHistogram {
        let counts: BTreeMap<u64, u64> = (1..=max)
            .map(|k| (k, (c * (k as f64).powf(-exponent)).round() as u64))
            .collect();
        DegreeHistogram::from_counts(Direction::In, counts)
    }

    #[test]
    fn recovers_exact_law() {
        let h = synthetic(2.5, 1e10, 10_000);
        let fit = fit_power_law(&h, 10, 10).unwrap();
        assert!((fit.slope + 2.5).abs() < 0.05, "slope {}", fit.slope);
        assert!(fit.r_squared > 0.99);
    }

    #[test]
    fn sparse_tail_still_recovers_law() {
        // Small constant: the far tail rounds to zero for most degrees.
        let h = synthetic(2.2, 1e6, 10_000);
        let fit = fit_power_law(&h, 10, 5).unwrap();
        assert!((fit.slope + 2.2).abs() < 0.15, "slope {}", fit.slope);
    }

    #[test]
    fn single_bin_is_an_error() {
        let h = DegreeHistogram::from_counts(Direction::In, [(3, 10)].into_iter().collect());
        assert!(matches!(
            fit_power_law(&h, 10, 1),
            Err(Error::InsufficientTail { usable: 1, .. })
        ));
    }

    #[test]
    fn bin_edges_are_exact_at_decades() {
        assert_eq!(bin_index(10, 10), 10);
        assert_eq!(bin_index(100, 10), 20);
        assert_eq!(bin_index(1000, 10), 30);
        assert_eq!(bin_edge(30, 10), 1000);
        assert_eq!(bin_edge(1, 10), 2);
    }
}
