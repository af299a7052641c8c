//! Estimate icc from Bernoulli arc samples and compare with the exact value.

use k22::estimate::{edge_sample_replicates, EdgeSampleConfig, ReplicateSummary};
use k22::exact::count_k22;
use k22::generator::{generate, ModelParams};

fn main() -> k22::Result<()> {
    let g = generate(&ModelParams { steps: 200_000, seed: 1, ..Default::default() })?;
    let c = count_k22(&g, false);
    println!("exact icc = {:.5}", 4.0 * c.k22 as f64 / c.open_k22 as f64);

    for p in [1.0, 0.5, 0.25, 0.125] {
        let cfg = EdgeSampleConfig::new(p, 7, 20)?;
        let runs = edge_sample_replicates(&g, &cfg)?;
        match ReplicateSummary::of(&runs) {
            Some(s) => println!("p = {p:<6} median = {:.5} iqr = {:.5} ({} runs)", s.median, s.iqr(), s.defined),
            None => println!("p = {p:<6} every sample too sparse"),
        }
    }
    Ok(())
}
