//! Log-binned power-law fit, bin by bin.

use k22::generator::{generate, ModelParams};
use k22::graph::{fit_power_law_with, Direction, FitOptions};

fn main() -> k22::Result<()> {
    let g = generate(&ModelParams { steps: 500_000, seed: 8, ..Default::default() })?;
    let fit = fit_power_law_with(&g.degree_distribution(Direction::In), FitOptions::new(10, 10))?;
    println!("slope {:.3}, r2 {:.4}", fit.slope, fit.r_squared);
    for b in &fit.bins {
        println!("{:>6}..{:<6} {:>6} nodes  freq {:.3e}  fitted {:.3e}", b.lo, b.hi, b.nodes, b.mean_frequency, fit.predict(b.center));
    }
    Ok(())
}
