//! A connected cograph of height k that no P-partition can make F-free.

use hjsplit::cograph::{is_universal_bruteforce, universal_cograph, Cotree};

fn main() -> hjsplit::Result<()> {
    let triangle = Cotree::complete(3);
    for (p, k) in [(2, 1), (2, 2), (3, 2)] {
        let u = universal_cograph(std::slice::from_ref(&triangle), p, k)?;
        print!("P={p} k={k}: {} vertices, height {}", u.leaves(), u.height());
        if u.leaves() <= 14 {
            let g = u.realize();
            let ok = is_universal_bruteforce(&g, &[triangle.realize()], p, 100_000_000)?;
            print!(", brute force says universal = {ok}");
        }
        println!();
    }
    Ok(())
}
