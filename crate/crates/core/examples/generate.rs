//! Grow a graph with the K22 model and check its degree exponents.

use k22::generator::{generate_with_stats, theoretical_exponents, ModelParams};
use k22::graph::{fit_power_law_with, Direction, FitOptions};

fn main() -> k22::Result<()> {
    let params = ModelParams { steps: 1_000_000, seed: 1, ..Default::default() };
    let (g, stats) = generate_with_stats(&params)?;
    println!("{} nodes, {} arcs", g.node_count(), g.arc_count());
    println!("{stats:?}");

    let t = theoretical_exponents(&params)?;
    let opts = FitOptions::new(10, 10);
    for (d, want) in [(Direction::In, t.slope_in), (Direction::Out, t.slope_out)] {
        let fit = fit_power_law_with(&g.degree_distribution(d), opts)?;
        println!("{d}-degree slope {:.3} (theory {want:.3})", fit.slope);
    }
    Ok(())
}
