//! Distribution of the per-node interest clustering coefficient.

use k22::exact::{count_k22, local_icc_distribution};
use k22::generator::{generate, ModelParams};

fn main() -> k22::Result<()> {
    let g = generate(&ModelParams { steps: 50_000, seed: 3, ..Default::default() })?;
    let stats = count_k22(&g, true).per_node.unwrap();
    let d = local_icc_distribution(&stats, 10);

    println!("defined for {} nodes, undefined for {}", d.defined, d.undefined);
    println!("mean local icc = {:.4}", d.mean.unwrap_or(f64::NAN));
    for (lo, c) in d.bin_edges().iter().zip(&d.histogram) {
        println!("[{lo:.1}, {:.1})  {c}", lo + 0.1);
    }
    Ok(())
}
