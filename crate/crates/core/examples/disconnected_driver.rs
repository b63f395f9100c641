//! Classes free of a single component of H or anticomponent of J.

use hjsplit::graph::named::{cycle, path};
use hjsplit::oracles::verify_partition;
use hjsplit::partition::disconnected_partition;

fn main() -> hjsplit::Result<()> {
    // H = 3K2 and J = complement of C6. The complement of C9 avoids both,
    // since C9 has no triangle and no induced C6.
    let k2 = path(2);
    let h = k2.disjoint_union(&k2).disjoint_union(&k2);
    let j = cycle(6).complement();
    let g = cycle(9).complement();

    let out = disconnected_partition(&g, &h, &j)?;
    println!("patterns: {} (components of H first)", out.patterns.len());
    println!("{} classes, bound {}", out.partition.len(), out.class_bound);
    println!("pair runs: {}", out.pair_runs);
    let report = verify_partition(&g, &out.patterns, &out.partition)?;
    println!("valid = {}", report.valid);
    Ok(())
}
