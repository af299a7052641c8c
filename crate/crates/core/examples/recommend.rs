//! Follow suggestions for one user: K22 closures against friends of friends.

use k22::generator::{generate, ModelParams};
use k22::recommend::{recommend, recommendations_csv, Method};

fn main() -> k22::Result<()> {
    let g = generate(&ModelParams { steps: 100_000, seed: 6, ..Default::default() })?;
    let user = g.nodes().find(|&x| (5..=12).contains(&g.out_degree(x))).unwrap();
    println!("user {user} follows {:?}", g.out_neighbors(user));

    let blocks: Vec<_> = [Method::K22, Method::Tt]
        .into_iter()
        .map(|m| recommend(&g, user, 5, m).map(|r| (m, r)))
        .collect::<k22::Result<_>>()?;
    print!("{}", recommendations_csv(&g, &blocks));
    Ok(())
}
