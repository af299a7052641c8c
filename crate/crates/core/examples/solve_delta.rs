//! Which delta keeps the in-degree exponent at -2.5 as the K22 share grows?

use k22::generator::{feasible_p_interval, solve_delta};
use k22::graph::Direction;

fn main() {
    let (alpha, beta) = (0.4, 0.4);
    let (lo, hi) = feasible_p_interval(-2.5, Direction::In, alpha, beta).unwrap();
    println!("feasible p: [{lo:.4}, {hi:.4}]");
    for p in [0.0, 0.1, 1.0 / 6.0, 0.3, 0.5, 0.6, 2.0 / 3.0, 0.7] {
        match solve_delta(-2.5, Direction::In, p, alpha, beta) {
            Ok(d) => println!("p = {p:.3}  delta_in = {d:.4}"),
            Err(e) => println!("p = {p:.3}  {e}"),
        }
    }
}
