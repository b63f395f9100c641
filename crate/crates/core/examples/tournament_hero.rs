//! Partition a tournament that avoids C3 => C3, then colour it by transitive
//! sets.

use hjsplit::tournament::{hero_color, two_tourn_partition, verify_tournament_partition, Tournament};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hjsplit::Result<()> {
    let c3 = Tournament::cyclic_triangle();
    let pattern = c3.compose(&c3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = loop {
        let t = Tournament::near_transitive(14, 0.1, &mut rng);
        if hjsplit::tournament::contains_subtournament(&t, &pattern).is_none() {
            break t;
        }
    };

    let out = two_tourn_partition(&g, &c3, &c3)?;
    println!(
        "{} classes (bound {}), reversed = {}",
        out.partition.len(),
        out.bound,
        out.reversed
    );
    println!(
        "verified: {:?}",
        verify_tournament_partition(&g, &out.patterns, &out.partition)
    );

    let hero = hero_color(&g, &c3, &c3, 4, 10_000_000)?;
    println!(
        "{} transitive sets, optimal per class = {}",
        hero.classes.len(),
        hero.optimal
    );
    Ok(())
}
