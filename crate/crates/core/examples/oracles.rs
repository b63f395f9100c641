//! Exact oracles: induced containment, splits, and partitions.

use hjsplit::embed::contains_induced;
use hjsplit::graph::named::{complete, cycle, path, stable};
use hjsplit::oracles::{exists_partition, is_split, ClassRule};

fn main() -> hjsplit::Result<()> {
    let c6 = cycle(6);
    println!("C6 contains P4: {:?}", contains_induced(&c6, &path(4)).map(|e| e.map));
    println!("C6 contains C4: {}", contains_induced(&c6, &cycle(4)).is_some());

    // Split graphs are exactly the {K2, 2K1}-split graphs.
    let (k2, s2) = (complete(2), stable(2));
    for (name, g) in [("C4", cycle(4)), ("C5", cycle(5)), ("P4", path(4))] {
        println!("{name} split: {}", is_split(&g, &s2, &k2)?.is_some());
    }

    let p = exists_partition(&cycle(5), &[complete(3)], 1, ClassRule::Free, 1_000_000)?;
    println!("C5 is triangle-free: {}", p.is_some());
    Ok(())
}
