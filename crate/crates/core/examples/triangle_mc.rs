//! Triangle coefficients by sampling centred triples, next to the exact ones.

use k22::estimate::{mc_triangle_cc, TriangleTarget};
use k22::exact::GraphCensus;
use k22::generator::{generate, ModelParams};

fn main() -> k22::Result<()> {
    let g = generate(&ModelParams { steps: 100_000, seed: 5, ..Default::default() })?;
    let exact = GraphCensus::of(&g).report()?.full;
    let ug = g.undirected_projection();

    let runs = [
        ("ucc", TriangleTarget::Undirected(&ug), exact.ucc),
        ("tcc", TriangleTarget::Transitive(&g), exact.tcc),
        ("ccc", TriangleTarget::Cyclic(&g), exact.ccc),
    ];
    for (name, target, want) in runs {
        let t = mc_triangle_cc(target, 200_000, 9)?;
        println!("{name}: sampled {:.5}  exact {want}", t.estimate);
    }
    Ok(())
}
