//! Split a graph into an H~-free side and a J~-free side, where H~ and J~ are
//! cographs built from the patterns.

use hjsplit::cograph::{cograph_split, Cotree};
use hjsplit::graph::named::cycle;

fn main() -> hjsplit::Result<()> {
    let k2 = Cotree::complete(2);
    // H = 2K2 (anticonnected), J = C4 (connected).
    let h = Cotree::union(vec![k2.clone(), k2.clone()]);
    let j = Cotree::join(vec![Cotree::stable(2), Cotree::stable(2)]);
    // The 5-wheel: still free of 2K2 and C4.
    let g = cycle(5).join(&hjsplit::graph::named::complete(1));

    let split = cograph_split(&g, &h, &j)?;
    println!("X = {:?}", split.x);
    println!("Y = {:?}", split.y);
    println!(
        "H~ has {} vertices, J~ has {}",
        split.htilde.leaves(),
        split.jtilde.leaves()
    );
    println!("checked: {}", split.check(&g)?);
    Ok(())
}
