//! Strength of the best and the 10th recommendation over 1000 random users.

use k22::generator::{generate, ModelParams};
use k22::recommend::{cohort_eval, CohortSpec, Method, Panel};

fn main() -> k22::Result<()> {
    let g = generate(&ModelParams { steps: 250_000, seed: 0, ..Default::default() })?;
    let report = cohort_eval(&g, &CohortSpec::Sample { count: 1000, seed: 1 }, 10)?;
    for panel in [Panel::Max, Panel::Kth] {
        for t in [1, 10, 100] {
            println!(
                "{panel:?} >= {t:<3}  k22 {:.3}  tt {:.3}",
                report.fraction_at_least(Method::K22, panel, t),
                report.fraction_at_least(Method::Tt, panel, t)
            );
        }
    }
    Ok(())
}
