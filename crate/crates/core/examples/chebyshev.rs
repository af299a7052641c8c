//! How small can the arc sampling probability be? The Chebyshev bound from an
//! overlap profile, and the iteration budget for fork sampling.

use k22::estimate::{chebyshev_min_probability, mc_required_iterations, measure_overlap, OverlapProfile, Pattern};
use k22::generator::{generate, ModelParams};

fn main() -> k22::Result<()> {
    let profile = OverlapProfile::new(vec![1e-9, 1e-12, 1e-13, 1e-14])?;
    let p = chebyshev_min_probability(&profile, 0.1, 10.0, 0.0)?;
    println!("given profile: p_s >= {:?}", p.value());

    let g = generate(&ModelParams { steps: 300, seed: 1, ..Default::default() })?;
    let m = measure_overlap(&g, Pattern::K22)?;
    println!("{} K22s, overlap profile {:?}", m.pattern_count, m.profile.delta_frac);
    let p = chebyshev_min_probability(&m.profile, 0.1, 10.0, 1.0 / m.pattern_count.max(1) as f64)?;
    println!("measured profile: p_s >= {:?}", p.value());

    let n = mc_required_iterations(0.019, 0.01, 0.99)?;
    println!("fork samples for 1% relative error at 99%: {n}");
    Ok(())
}
