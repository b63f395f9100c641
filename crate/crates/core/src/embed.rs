//! Induced subgraph search by backtracking over bitset candidate sets.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// An induced embedding: `map[i]` is the host vertex playing pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn image(&self, capacity: usize) -> VertexSet {
        VertexSet::from_vertices(capacity, self.map.iter().copied())
    }

    /// Checks injectivity and that adjacency and non-adjacency are preserved.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.map.len() != pattern.order() || self.map.iter().any(|&v| v >= host.order()) {
            return false;
        }
        let image = self.image(host.order());
        if image.len() != self.map.len() {
            return false;
        }
        (0..pattern.order()).all(|i| {
            (i + 1..pattern.order()).all(|j| pattern.has_edge(i, j) == host.has_edge(self.map[i], self.map[j]))
        })
    }
}

/// Pattern vertices in search order: ascending degree, then id.
pub(crate) fn search_order(degrees: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..degrees.len()).collect();
    order.sort_by_key(|&v| (degrees[v], v));
    order
}

/// Finds an induced copy of `pattern` in `host`.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    find_induced_within(host, &host.vertices(), pattern)
}

/// Finds an induced copy of `pattern` in `host | within`, mapping into the
/// original host vertex ids.
pub fn find_induced_within(host: &Graph, within: &VertexSet, pattern: &Graph) -> Option<Embedding> {
    let k = pattern.order();
    if k == 0 {
        return Some(Embedding { map: Vec::new() });
    }
    let size = within.len();
    if k > size {
        return None;
    }
    let pdeg: Vec<usize> = (0..k).map(|v| pattern.degree(v)).collect();
    let order = search_order(&pdeg);
    // Host vertices must have enough neighbours and non-neighbours inside `within`.
    let hdeg: Vec<(usize, usize)> = (0..host.order())
        .map(|v| {
            if within.contains(v) {
                let d = host.neighbors(v).intersection_len(within);
                (d, size - 1 - d)
            } else {
                (0, 0)
            }
        })
        .collect();
    let mut map = vec![usize::MAX; k];
    let mut used = VertexSet::new(host.order());
    let mut search = Search {
        host,
        pattern,
        within,
        order: &order,
        pdeg: &pdeg,
        hdeg: &hdeg,
    };
    if search.extend(0, &mut map, &mut used) {
        Some(Embedding { map })
    } else {
        None
    }
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    within: &'a VertexSet,
    order: &'a [usize],
    pdeg: &'a [usize],
    hdeg: &'a [(usize, usize)],
}

impl Search<'_> {
    fn extend(&mut self, depth: usize, map: &mut [usize], used: &mut VertexSet) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let k = self.pattern.order();
        let mut cand = self.within.difference(used);
        for &q in &self.order[..depth] {
            let row = self.host.neighbors(map[q]);
            if self.pattern.has_edge(p, q) {
                cand.intersect_with(row);
            } else {
                cand.difference_with(row);
            }
            if cand.is_empty() {
                return false;
            }
        }
        let need = (self.pdeg[p], k - 1 - self.pdeg[p]);
        for v in cand.iter() {
            let (d, nd) = self.hdeg[v];
            if d < need.0 || nd < need.1 {
                continue;
            }
            map[p] = v;
            used.insert(v);
            if self.extend(depth + 1, map, used) {
                return true;
            }
            used.remove(v);
        }
        map[p] = usize::MAX;
        false
    }
}

/// `true` iff the graphs are isomorphic: equal order and an induced
/// embedding of one into the other.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && contains_induced(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn c5_contains_p4() {
        let e = contains_induced(&cycle(5), &path(4)).expect("P4 in C5");
        assert!(e.is_valid(&path(4), &cycle(5)));
    }

    #[test]
    fn triangle_has_no_non_edge() {
        assert!(contains_induced(&complete(3), &stable(2)).is_none());
    }

    #[test]
    fn null_pattern_embeds_vacuously() {
        let e = contains_induced(&cycle(4), &Graph::new(0)).unwrap();
        assert!(e.map.is_empty());
        assert!(contains_induced(&Graph::new(0), &Graph::new(0)).is_some());
    }

    #[test]
    fn isomorphism_cases() {
        assert!(is_isomorphic(&cycle(4), &complete_bipartite(2, 2)));
        assert!(!is_isomorphic(&complete(3), &path(3)));
        assert!(is_isomorphic(&Graph::new(0), &Graph::new(0)));
    }

    #[test]
    fn within_restricts_host() {
        let g = cycle(5);
        let set = VertexSet::from_vertices(5, [0, 1, 2]);
        assert!(find_induced_within(&g, &set, &path(3)).is_some());
        assert!(find_induced_within(&g, &set, &path(4)).is_none());
        let e = find_induced_within(&g, &set, &complete(2)).unwrap();
        assert!(e.map.iter().all(|v| set.contains(*v)));
    }
}
