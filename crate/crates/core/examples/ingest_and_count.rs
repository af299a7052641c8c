//! Parse an edge list, round-trip it through the binary cache and print the
//! exact coefficient report.

use k22::exact::GraphCensus;
use k22::graph::{load_edge_list, read_binary, write_binary, LoadOptions};

const EDGES: &str = "\
# follower followee
10 20
10 30
11 20
11 30
20 30
30 20
12 20
12 11
";

fn main() -> k22::Result<()> {
    let g = load_edge_list(EDGES.as_bytes(), LoadOptions::default())?;
    println!("{} nodes, {} arcs", g.node_count(), g.arc_count());

    let mut cache = Vec::new();
    write_binary(&g, &mut cache)?;
    let back = read_binary(&cache)?;
    assert_eq!(back, g);
    println!("binary cache: {} bytes", cache.len());

    let census = GraphCensus::of(&g);
    print!("{}", census.full.render_lines(""));
    print!("{}", census.report()?.render_lines());
    Ok(())
}
