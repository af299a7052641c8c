use std::fmt::Write as _;

use rayon::prelude::*;

use super::{generate_stream, solve_delta, theoretical_exponents, ModelParams};
use crate::exact::count_k22;
use crate::graph::Direction;
use crate::rng::substream;
use crate::{Error, Result};

/// One generated graph of the sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub replicate: u64,
    /// `None` when the graph has no open K22.
    pub icc: Option<f64>,
    pub nodes: u64,
    pub arcs: u64,
    pub stripped: u64,
}

/// Per-`p` summary over replicates.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub p: f64,
    pub params: ModelParams,
    pub mean_icc: Option<f64>,
    /// Sample standard deviation, absent for a single replicate.
    pub spread: Option<f64>,
    pub min_icc: Option<f64>,
    pub max_icc: Option<f64>,
    pub slope_out: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub target_slope_in: f64,
    pub points: Vec<SweepPoint>,
    /// Bollobás graphs (`p = 0`) with the mean degree and in-exponent of the
    /// matching point.
    pub baseline: Vec<SweepPoint>,
    pub rows: Vec<SweepRow>,
    pub baseline_rows: Vec<SweepRow>,
}

fn rows_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("p,replicate,icc,nodes,arcs,stripped\n");
    for r in rows {
        let icc = r.icc.map(|v| v.to_string()).unwrap_or_else(|| "none".into());
        let _ = writeln!(s, "{},{},{},{},{},{}", r.p, r.replicate, icc, r.nodes, r.arcs, r.stripped);
    }
    s
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        rows_csv(&self.rows)
    }

    /// Baseline rows, `p` naming the point each one is matched to.
    pub fn baseline_csv(&self) -> String {
        rows_csv(&self.baseline_rows)
    }

    pub fn summary_csv(&self) -> String {
        let mut s = String::from("p,model,alpha,beta,delta_in,delta_out,mean_icc,spread,slope_out\n");
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_else(|| "none".into());
        for (model, pts) in [("k22", &self.points), ("bollobas", &self.baseline)] {
            for pt in pts {
                let q = &pt.params;
                let _ = writeln!(
                    s,
                    "{},{model},{},{},{},{},{},{},{}",
                    pt.p,
                    q.alpha,
                    q.beta,
                    q.delta_in,
                    q.delta_out,
                    opt(pt.mean_icc),
                    opt(pt.spread),
                    pt.slope_out
                );
            }
        }
        s
    }
}

/// Parameters of the K22 model at `p` and of its Bollobás twin.
///
/// Both keep `base.alpha`, `base.beta` (scaled by `1 − p` for the twin, so
/// the mean degrees agree) and `base.delta_out`; `delta_in` is solved so the
/// in-exponent equals `target_slope`.
pub fn matched_params(base: &ModelParams, p: f64, target_slope: f64) -> Result<(ModelParams, ModelParams)> {
    let delta_in = solve_delta(target_slope, Direction::In, p, base.alpha, base.beta)?;
    if !delta_in.is_finite() {
        return Err(Error::Infeasible { p, reason: "the target is reached only as delta_in grows without bound".into() });
    }
    let model = ModelParams { p_k22: p, delta_in, ..base.clone() };
    let (ab, bb) = (base.alpha * (1.0 - p), base.beta * (1.0 - p));
    let twin_delta = solve_delta(target_slope, Direction::In, 0.0, ab, bb)
        .map_err(|e| Error::Infeasible { p, reason: format!("baseline: {e}") })?;
    let twin = ModelParams { p_k22: 0.0, alpha: ab, beta: bb, delta_in: twin_delta, ..base.clone() };
    Ok((model, twin))
}

fn summarize(p: f64, params: ModelParams, rows: &[SweepRow]) -> Result<SweepPoint> {
    let v: Vec<f64> = rows.iter().filter_map(|r| r.icc).collect();
    let n = v.len() as f64;
    let mean = (!v.is_empty()).then(|| v.iter().sum::<f64>() / n);
    let spread = match mean {
        Some(m) if v.len() > 1 => Some((v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()),
        _ => None,
    };
    let slope_out = theoretical_exponents(&params)?.slope_out;
    Ok(SweepPoint {
        p,
        params,
        mean_icc: mean,
        spread,
        min_icc: v.iter().copied().reduce(f64::min),
        max_icc: v.iter().copied().reduce(f64::max),
        slope_out,
    })
}

/// icc of the K22 model as a function of `p`, against matched Bollobás
/// graphs. The target in-exponent is the one `base` itself predicts.
/// Graphs are generated in parallel, each on its own random stream.
pub fn icc_vs_p_sweep(base: &ModelParams, p_values: &[f64], replicates: u64) -> Result<SweepTable> {
    let target = theoretical_exponents(base)?.slope_in;
    icc_vs_p_sweep_to(base, p_values, replicates, target)
}

/// Same sweep with an explicit in-exponent; `base.p_k22` and
/// `base.delta_in` are ignored.
pub fn icc_vs_p_sweep_to(base: &ModelParams, p_values: &[f64], replicates: u64, target: f64) -> Result<SweepTable> {
    if replicates == 0 {
        return Err(Error::invalid("replicates must be at least 1"));
    }
    let matched: Vec<(ModelParams, ModelParams)> =
        p_values.iter().map(|&p| matched_params(base, p, target)).collect::<Result<_>>()?;

    let jobs: Vec<(usize, usize, u64)> = (0..p_values.len())
        .flat_map(|i| (0..2).flat_map(move |kind| (0..replicates).map(move |r| (i, kind, r))))
        .collect();
    let rows: Vec<(usize, usize, SweepRow)> = jobs
        .into_par_iter()
        .map(|(i, kind, r)| {
            let params = if kind == 0 { &matched[i].0 } else { &matched[i].1 };
            let (g, stats) = generate_stream(params, substream((2 * i + kind) as u64, r))?;
            let c = count_k22(&g, false);
            let icc = (c.open_k22 > 0).then(|| 4.0 * c.k22 as f64 / c.open_k22 as f64);
            Ok((
                i,
                kind,
                SweepRow {
                    p: p_values[i],
                    replicate: r,
                    icc,
                    nodes: g.node_count() as u64,
                    arcs: g.arc_count() as u64,
                    stripped: stats.stripped(),
                },
            ))
        })
        .collect::<Result<_>>()?;

    let pick = |i: usize, kind: usize| -> Vec<SweepRow> {
        rows.iter().filter(|(j, k, _)| *j == i && *k == kind).map(|(_, _, r)| r.clone()).collect()
    };
    let mut table = SweepTable {
        target_slope_in: target,
        points: Vec::new(),
        baseline: Vec::new(),
        rows: Vec::new(),
        baseline_rows: Vec::new(),
    };
    for (i, (model, twin)) in matched.into_iter().enumerate() {
        let (a, b) = (pick(i, 0), pick(i, 1));
        table.points.push(summarize(p_values[i], model, &a)?);
        table.baseline.push(summarize(p_values[i], twin, &b)?);
        table.rows.extend(a);
        table.baseline_rows.extend(b);
    }
    Ok(table)
}
