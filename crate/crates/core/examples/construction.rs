//! Random graph that is {K2, K2}-split on every small set, yet has large
//! sets inducing both patterns.

use hjsplit::construction::{construct, ConstructionParams};
use hjsplit::graph::named::complete;

fn main() -> hjsplit::Result<()> {
    let seed = std::env::var("HJ_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let k2 = complete(2);
    let params = ConstructionParams::new(120, 5, 3, seed);
    let report = construct(&k2, &k2, &params)?;

    println!("r used: {}", report.params.effective_r);
    println!(
        "hyperedges: {} sampled, {} kept; removed {} vertices over {} rounds",
        report.sampled_hyperedges,
        report.hyperedges.len(),
        report.removed.len(),
        report.removal_rounds
    );
    println!(
        "output: {} vertices, {} edges",
        report.graph.n,
        report.graph.edges.len()
    );
    println!(
        "local audit: {} subsets, {} not split",
        report.local_split.checked, report.local_split.counterexamples
    );
    println!("density failure rate: {:.3}", report.density.failure_rate);
    Ok(())
}
