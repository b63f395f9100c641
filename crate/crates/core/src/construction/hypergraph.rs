//! Labelled random hypergraphs, their short cycles, and vertex removal.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Refuse to sample when more hyperedges than this are expected.
pub const MAX_EXPECTED_HYPEREDGES: f64 = 5.0e6;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Hyperedge {
    /// Sorted, at least two vertices.
    pub vertices: Vec<usize>,
    /// Pieces that produced this vertex set.
    pub labels: BTreeSet<usize>,
}

/// Distinct vertex subsets of `0..n`, each with one or more piece labels,
/// kept sorted by vertex list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LabeledHypergraph {
    pub n: usize,
    pub hyperedges: Vec<Hyperedge>,
}

impl LabeledHypergraph {
    /// Merges labels of equal vertex sets. Vertex lists are sorted here.
    pub fn from_labeled<I: IntoIterator<Item = (Vec<usize>, usize)>>(n: usize, items: I) -> Result<Self> {
        let mut merged: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
        for (mut vs, label) in items {
            vs.sort_unstable();
            vs.dedup();
            if vs.len() < 2 {
                return Err(Error::input("hyperedges need at least two vertices"));
            }
            if vs.last().is_some_and(|&v| v >= n) {
                return Err(Error::input(format!("hyperedge {vs:?} out of range for n={n}")));
            }
            merged.entry(vs).or_default().insert(label);
        }
        Ok(LabeledHypergraph {
            n,
            hyperedges: merged
                .into_iter()
                .map(|(vertices, labels)| Hyperedge { vertices, labels })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    /// Hyperedges disjoint from `removed`.
    pub fn without(&self, removed: &VertexSet) -> Self {
        LabeledHypergraph {
            n: self.n,
            hyperedges: self
                .hyperedges
                .iter()
                .filter(|e| e.vertices.iter().all(|&v| !removed.contains(v)))
                .cloned()
                .collect(),
        }
    }

    /// Hyperedge ids containing each pair `u < v`.
    fn pair_index(&self) -> HashMap<(usize, usize), Vec<usize>> {
        let mut index: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (id, e) in self.hyperedges.iter().enumerate() {
            for (i, &u) in e.vertices.iter().enumerate() {
                for &v in &e.vertices[i + 1..] {
                    index.entry((u, v)).or_default().push(id);
                }
            }
        }
        index
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The `rank`-th `b`-subset of `0..n` in lexicographic order.
pub(crate) fn unrank_subset(n: usize, b: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(b);
    let mut next = 0usize;
    for pos in 0..b {
        let left = (b - pos - 1) as u64;
        loop {
            let with_next = binomial((n - next - 1) as u64, left);
            if rank < with_next {
                out.push(next);
                next += 1;
                break;
            }
            rank -= with_next;
            next += 1;
        }
    }
    out
}

/// Each `size`-subset of `0..n` independently with probability `p`, by
/// geometric skipping over the lexicographic ranking of subsets.
pub(crate) fn sample_uniform(n: usize, size: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<usize>>> {
    let total = binomial(n as u64, size as u64);
    if total == 0 || p <= 0.0 {
        return Ok(Vec::new());
    }
    let expected = total as f64 * p.min(1.0);
    if expected > MAX_EXPECTED_HYPEREDGES {
        return Err(Error::Budget(format!(
            "about {expected:.0} hyperedges of size {size} expected, above {MAX_EXPECTED_HYPEREDGES:.0}"
        )));
    }
    if p >= 1.0 {
        return Ok((0..total).map(|r| unrank_subset(n, size, r)).collect());
    }
    let log_q = (-p).ln_1p();
    let mut out = Vec::new();
    let mut index: u128 = 0;
    loop {
        let u: f64 = 1.0 - rng.gen::<f64>();
        let skip = (u.ln() / log_q).floor();
        if !skip.is_finite() || skip >= (total - index) as f64 {
            break;
        }
        index += skip as u128;
        out.push(unrank_subset(n, size, index));
        index += 1;
        if index >= total {
            break;
        }
    }
    Ok(out)
}

/// Everything that must be destroyed before realizing the hypergraph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Violations {
    /// Ids of hyperedges carrying more than one label.
    pub multilabel: Vec<usize>,
    /// Pairs lying in two or more hyperedges.
    pub two_cycles: Vec<[usize; 2]>,
    /// For each vertex that is the least vertex of some `t`-cycle with
    /// `3 <= t <= r`, one shortest such cycle starting there.
    pub cycles: Vec<Vec<usize>>,
}

impl Violations {
    pub fn is_clean(&self) -> bool {
        self.multilabel.is_empty() && self.two_cycles.is_empty() && self.cycles.is_empty()
    }

    pub fn count(&self) -> usize {
        self.multilabel.len() + self.two_cycles.len() + self.cycles.len()
    }
}

/// Multilabelled hyperedges, 2-cycles, and representative cycles of length
/// at most `r`. A `t`-cycle is a sequence of distinct vertices where each
/// consecutive pair (cyclically) is exactly the intersection of some
/// hyperedge with the whole sequence.
pub fn find_violations(hg: &LabeledHypergraph, r: usize) -> Violations {
    let multilabel = hg
        .hyperedges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.labels.len() > 1)
        .map(|(i, _)| i)
        .collect();
    let index = hg.pair_index();
    let mut two_cycles: Vec<[usize; 2]> = index
        .iter()
        .filter(|(_, ids)| ids.len() > 1)
        .map(|(&(u, v), _)| [u, v])
        .collect();
    two_cycles.sort_unstable();

    let mut links: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); hg.n];
    for &(u, v) in index.keys() {
        links[u].insert(v);
        links[v].insert(u);
    }
    let links: Vec<Vec<usize>> = links.into_iter().map(|s| s.into_iter().collect()).collect();
    let finder = CycleFinder {
        hg,
        index: &index,
        links: &links,
    };
    let mut cycles = Vec::new();
    for start in 0..hg.n {
        if let Some(c) = (3..=r).find_map(|t| finder.from(start, t)) {
            cycles.push(c);
        }
    }
    Violations {
        multilabel,
        two_cycles,
        cycles,
    }
}

struct CycleFinder<'a> {
    hg: &'a LabeledHypergraph,
    index: &'a HashMap<(usize, usize), Vec<usize>>,
    links: &'a [Vec<usize>],
}

impl CycleFinder<'_> {
    /// Some hyperedge through `u, v` meets `set` in exactly `{u, v}`.
    fn exact_link(&self, u: usize, v: usize, set: &BTreeSet<usize>) -> bool {
        let key = (u.min(v), u.max(v));
        self.index.get(&key).is_some_and(|ids| {
            ids.iter().any(|&id| {
                self.hg.hyperedges[id]
                    .vertices
                    .iter()
                    .all(|w| *w == u || *w == v || !set.contains(w))
            })
        })
    }

    /// A `t`-cycle whose least vertex is `start`.
    fn from(&self, start: usize, t: usize) -> Option<Vec<usize>> {
        let mut path = vec![start];
        let mut set = BTreeSet::from([start]);
        self.extend(t, &mut path, &mut set).then_some(path)
    }

    fn extend(&self, t: usize, path: &mut Vec<usize>, set: &mut BTreeSet<usize>) -> bool {
        let last = *path.last().unwrap();
        if path.len() == t {
            return self.closes(path, set);
        }
        for &w in &self.links[last] {
            if w <= path[0] || set.contains(&w) {
                continue;
            }
            set.insert(w);
            path.push(w);
            // Links already placed must stay exact once w joins.
            if self.prefix_ok(path, set) && self.extend(t, path, set) {
                return true;
            }
            path.pop();
            set.remove(&w);
        }
        false
    }

    fn prefix_ok(&self, path: &[usize], set: &BTreeSet<usize>) -> bool {
        path.windows(2).all(|w| self.exact_link(w[0], w[1], set))
    }

    fn closes(&self, path: &[usize], set: &BTreeSet<usize>) -> bool {
        let (first, last) = (path[0], *path.last().unwrap());
        self.exact_link(last, first, set) && self.prefix_ok(path, set)
    }
}

/// One vertex, the least, from each violation.
pub fn removal_set(violations: &Violations, hg: &LabeledHypergraph) -> VertexSet {
    let mut r = VertexSet::new(hg.n);
    for &id in &violations.multilabel {
        r.insert(hg.hyperedges[id].vertices[0]);
    }
    for pair in &violations.two_cycles {
        r.insert(pair[0]);
    }
    for c in &violations.cycles {
        r.insert(*c.iter().min().unwrap());
    }
    r
}

/// Result of repeated removal.
#[derive(Debug, Clone, Serialize)]
pub struct Cleanup {
    pub removed: VertexSet,
    pub rounds: usize,
    /// Violations before any removal.
    pub initial: Violations,
    #[serde(skip)]
    pub surviving: LabeledHypergraph,
}

/// Removes vertices until no violation of length at most `r` survives.
pub fn remove_until_clean(hg: &LabeledHypergraph, r: usize) -> Cleanup {
    let initial = find_violations(hg, r);
    let mut removed = VertexSet::new(hg.n);
    let mut current = hg.clone();
    let mut violations = initial.clone();
    let mut rounds = 0;
    while !violations.is_clean() {
        rounds += 1;
        removed.union_with(&removal_set(&violations, &current));
        current = hg.without(&removed);
        violations = find_violations(&current, r);
    }
    Cleanup {
        removed,
        rounds,
        initial,
        surviving: current,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn hg(n: usize, edges: &[&[usize]]) -> LabeledHypergraph {
        LabeledHypergraph::from_labeled(n, edges.iter().map(|e| (e.to_vec(), 0))).unwrap()
    }

    #[test]
    fn unranking_is_lexicographic() {
        let all: Vec<Vec<usize>> = (0..10).map(|r| unrank_subset(5, 3, r)).collect();
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[1], vec![0, 1, 3]);
        assert_eq!(all[9], vec![2, 3, 4]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
    }

    #[test]
    fn sampling_with_certainty_takes_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(sample_uniform(4, 2, 1.0, &mut rng).unwrap().len(), 6);
        assert!(sample_uniform(2, 3, 0.5, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn sampling_refuses_huge_expectations() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            sample_uniform(100_000, 2, 0.9, &mut rng),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn labels_merge() {
        let h = LabeledHypergraph::from_labeled(4, [(vec![1, 0], 0), (vec![0, 1], 1), (vec![2, 3], 0)]).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.hyperedges[0].labels.len(), 2);
        assert_eq!(find_violations(&h, 3).multilabel, vec![0]);
    }

    #[test]
    fn two_cycle_from_shared_pair() {
        let h = hg(4, &[&[0, 1, 2], &[0, 1, 3]]);
        let v = find_violations(&h, 3);
        assert_eq!(v.two_cycles, vec![[0, 1]]);
        assert_eq!(removal_set(&v, &h).to_vec(), vec![0]);
    }

    #[test]
    fn triangle_of_pairs_is_a_three_cycle() {
        let h = hg(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let v = find_violations(&h, 3);
        assert_eq!(v.cycles, vec![vec![0, 1, 2]]);
        assert!(find_violations(&h, 2).is_clean());
    }

    #[test]
    fn single_hyperedge_is_clean() {
        assert!(find_violations(&hg(3, &[&[0, 1, 2]]), 6).is_clean());
    }

    #[test]
    fn exact_intersection_is_required() {
        // 0-1 via {0,1,2}: the sequence 0,1,2 meets it in all three vertices.
        let h = hg(3, &[&[0, 1, 2], &[1, 2]]);
        let v = find_violations(&h, 3);
        assert!(v.cycles.is_empty());
        // A 4-cycle through pairs of triples.
        let h = hg(8, &[&[0, 1, 4], &[1, 2, 5], &[2, 3, 6], &[3, 0, 7]]);
        let v = find_violations(&h, 4);
        assert_eq!(v.cycles, vec![vec![0, 1, 2, 3]]);
        assert!(find_violations(&h, 3).is_clean());
    }

    #[test]
    fn removal_reaches_a_fixed_point() {
        let h = hg(6, &[&[0, 1], &[1, 2], &[0, 2], &[2, 3], &[3, 4], &[2, 4], &[4, 5]]);
        let c = remove_until_clean(&h, 3);
        assert!(find_violations(&c.surviving, 3).is_clean());
        assert_eq!(c.removed.to_vec(), vec![0, 2]);
        let none = remove_until_clean(&hg(3, &[&[0, 1]]), 5);
        assert!(none.removed.is_empty());
        assert_eq!(none.rounds, 0);
    }
}
