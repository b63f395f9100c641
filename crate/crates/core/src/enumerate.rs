//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs are grown one vertex at a time. Every hereditary class is closed
//! under vertex deletion, so extending each representative on `n - 1`
//! vertices by every possible neighbourhood and discarding duplicates by
//! canonical code reaches every class member on `n` vertices.

use std::collections::{BTreeMap, HashMap};

use crate::embed::contains_induced;
use crate::graph::Graph;

/// Largest order for which a canonical code fits in a `u64`.
pub const MAX_CANONICAL_ORDER: usize = 11;

/// Isomorphism-invariant code of a graph with at most
/// [`MAX_CANONICAL_ORDER`] vertices: the lexicographically largest
/// upper-triangle adjacency word over all orderings compatible with colour
/// refinement.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.order();
    assert!(
        n <= MAX_CANONICAL_ORDER,
        "canonical codes supported up to {MAX_CANONICAL_ORDER} vertices"
    );
    if n <= 1 {
        return 0;
    }
    let colours = refine_colours(g);
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colours.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let slots: Vec<Vec<usize>> = cells.into_values().collect();
    let mut best = 0u64;
    let mut ordering = Vec::with_capacity(n);
    let mut used = vec![false; n];
    best_ordering(g, &slots, 0, &mut ordering, &mut used, 0, &mut best);
    best
}

/// Bits are assigned row by row: pair (i, j), i < j, in order (0,1), (0,2),
/// .., (1,2), ... with the first pair most significant.
fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    let index = i * (2 * n - i - 1) / 2 + (j - i - 1);
    let total = n * (n - 1) / 2;
    (total - 1 - index) as u32
}

fn best_ordering(
    g: &Graph,
    cells: &[Vec<usize>],
    cell: usize,
    ordering: &mut Vec<usize>,
    used: &mut [bool],
    code: u64,
    best: &mut u64,
) {
    let n = g.order();
    if ordering.len() == n {
        *best = (*best).max(code);
        return;
    }
    // Advance past exhausted cells.
    let mut cell = cell;
    let placed_before: usize = cells[..cell].iter().map(Vec::len).sum();
    if ordering.len() == placed_before + cells[cell].len() {
        cell += 1;
    }
    let pos = ordering.len();
    for &v in &cells[cell] {
        if used[v] {
            continue;
        }
        let mut next = code;
        for (i, &u) in ordering.iter().enumerate() {
            if g.has_edge(u, v) {
                next |= 1 << pair_bit(n, i, pos);
            }
        }
        used[v] = true;
        ordering.push(v);
        best_ordering(g, cells, cell, ordering, used, next, best);
        ordering.pop();
        used[v] = false;
    }
}

fn refine_colours(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colours = vec![0usize; n];
    let mut classes = 1;
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|u| colours[u]).collect();
                nb.sort_unstable();
                (colours[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &signatures {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        colours = next;
        if count == classes {
            return colours;
        }
        classes = count;
    }
}

/// All graphs on `0..=max_n` vertices (up to isomorphism) containing none of
/// `forbidden` as an induced subgraph, grouped by order. Within an order,
/// representatives are sorted by canonical code.
pub fn free_graphs(max_n: usize, forbidden: &[Graph]) -> Vec<Vec<Graph>> {
    assert!(max_n <= MAX_CANONICAL_ORDER);
    let is_free = |g: &Graph| forbidden.iter().all(|f| contains_induced(g, f).is_none());
    let null = Graph::new(0);
    let mut levels = vec![if is_free(&null) { vec![null] } else { vec![] }];
    for n in 1..=max_n {
        let mut seen: HashMap<u64, Graph> = HashMap::new();
        for base in &levels[n - 1] {
            for mask in 0u32..(1 << (n - 1)) {
                let mut g = Graph::new(n);
                for (u, v) in base.edges() {
                    g.add_edge(u, v);
                }
                for u in 0..n - 1 {
                    if mask >> u & 1 == 1 {
                        g.add_edge(u, n - 1);
                    }
                }
                let code = canonical_code(&g);
                if seen.contains_key(&code) || !is_free(&g) {
                    continue;
                }
                seen.insert(code, g);
            }
        }
        let mut level: Vec<(u64, Graph)> = seen.into_iter().collect();
        level.sort_by_key(|(c, _)| *c);
        levels.push(level.into_iter().map(|(_, g)| g).collect());
    }
    levels
}

/// Every graph with at most `max_n` vertices, up to isomorphism.
pub fn all_graphs(max_n: usize) -> Vec<Graph> {
    free_graphs(max_n, &[]).into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::is_isomorphic;
    use crate::graph::named::*;

    #[test]
    fn counts_match_known_sequence() {
        // Number of graphs on n unlabelled vertices, n = 0..=6.
        let known = [1, 1, 2, 4, 11, 34, 156];
        let levels = free_graphs(6, &[]);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, known);
    }

    #[test]
    fn code_is_invariant_under_relabelling() {
        let c5 = cycle(5);
        let relabelled = c5.induced_on(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_code(&c5), canonical_code(&relabelled));
        assert_ne!(canonical_code(&c5), canonical_code(&path(5)));
        assert_ne!(canonical_code(&cycle(4)), canonical_code(&two_k2()));
    }

    #[test]
    fn representatives_pairwise_non_isomorphic() {
        let level = &free_graphs(5, &[])[5];
        for i in 0..level.len() {
            for j in i + 1..level.len() {
                assert!(!is_isomorphic(&level[i], &level[j]));
            }
        }
    }

    #[test]
    fn triangle_free_counts() {
        // Triangle-free graphs on n = 0..=6 vertices: 1, 1, 2, 3, 7, 14, 38.
        let levels = free_graphs(6, &[complete(3)]);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, [1, 1, 2, 3, 7, 14, 38]);
    }
}
