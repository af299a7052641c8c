//! Monte-Carlo fork sampling: the estimate and its running standard deviation.

use k22::estimate::{mc_fork_icc, ForkSampleConfig};
use k22::exact::count_k22;
use k22::generator::{generate, ModelParams};

fn main() -> k22::Result<()> {
    let g = generate(&ModelParams { steps: 200_000, seed: 2, ..Default::default() })?;
    let c = count_k22(&g, false);
    println!("exact icc = {:.5}", 4.0 * c.k22 as f64 / c.open_k22 as f64);

    let t = mc_fork_icc(&g, &ForkSampleConfig::new(1 << 18, 11)?)?;
    for cp in t.checkpoints.iter().filter(|c| c.iteration >= 1024) {
        println!("{:>7}  {:.5} +- {:.5}", cp.iteration, cp.estimate, cp.std);
    }
    println!("K22s ~ {:.0}, open K22s ~ {:.0}", t.y, t.y_open);
    Ok(())
}
