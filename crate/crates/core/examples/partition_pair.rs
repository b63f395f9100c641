//! Partition a {2K2, C4}-free graph into classes that each avoid one of
//! H1, H2, J1, J2, and check the result independently.

use hjsplit::graph::named::{cycle, two_k2};
use hjsplit::oracles::verify_partition;
use hjsplit::partition::two_graphs_partition;
use hjsplit::Graph;

fn main() -> hjsplit::Result<()> {
    let h = two_k2();
    let j = cycle(4);
    // A split graph (clique 0..5, stable set 5..9) contains neither.
    let clique = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)));
    let spokes = [(0, 5), (1, 5), (1, 6), (2, 7), (3, 7), (4, 8), (0, 8)];
    let g = Graph::from_edges(9, clique.chain(spokes))?;

    let out = two_graphs_partition(&g, &h, &j)?;
    println!("normalization: {:?}", out.normalization);
    println!("{} classes, bound {}", out.partition.len(), out.bound);
    for class in &out.partition.classes {
        println!("  {:?} {:?}", class.vertices, class.certificate);
    }
    let report = verify_partition(&g, &out.patterns, &out.partition)?;
    println!("independent check: valid = {}", report.valid);
    Ok(())
}
