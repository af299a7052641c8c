//! icc as a function of the K22 share, against Bollobás graphs with the same
//! mean degree and in-degree exponent.

use k22::generator::{icc_vs_p_sweep_to, ModelParams};

fn main() -> k22::Result<()> {
    let base = ModelParams { steps: 200_000, seed: 4, ..Default::default() };
    let table = icc_vs_p_sweep_to(&base, &[0.2, 0.4, 0.6], 3, -2.5)?;
    for (pt, b) in table.points.iter().zip(&table.baseline) {
        println!(
            "p = {:.1}  delta_in = {:.3}  icc = {:.5}  baseline = {:.5}",
            pt.p,
            pt.params.delta_in,
            pt.mean_icc.unwrap_or(f64::NAN),
            b.mean_icc.unwrap_or(f64::NAN)
        );
    }
    print!("{}", table.summary_csv());
    Ok(())
}
