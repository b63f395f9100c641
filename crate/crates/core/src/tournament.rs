//! Tournaments excluding `H1 => H2`, and colourings by transitive sets.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::piece::{phi, EngineConfig, EngineStats, PieceEngine, Relational};
use crate::SCHEMA_VERSION;

/// A tournament on `0..n`: for each pair exactly one of `u -> v`, `v -> u`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Tournament(n={}, arcs={:?})",
            self.n,
            self.arcs().collect::<Vec<_>>()
        )
    }
}

impl Tournament {
    /// `i -> j` whenever `i < j`.
    pub fn transitive(n: usize) -> Self {
        Self::from_fn(n, |i, j| i < j)
    }

    /// The directed triangle `0 -> 1 -> 2 -> 0`.
    pub fn cyclic_triangle() -> Self {
        Self::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).expect("valid")
    }

    /// Builds the tournament where `beats(i, j)` decides each pair `i < j`.
    pub fn from_fn(n: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Tournament {
            n,
            out: vec![VertexSet::new(n); n],
            inn: vec![VertexSet::new(n); n],
        };
        for i in 0..n {
            for j in i + 1..n {
                if beats(i, j) {
                    t.set_arc(i, j);
                } else {
                    t.set_arc(j, i);
                }
            }
        }
        t
    }

    /// Every pair of distinct vertices must appear exactly once.
    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Result<Self> {
        let mut t = Tournament {
            n,
            out: vec![VertexSet::new(n); n],
            inn: vec![VertexSet::new(n); n],
        };
        let mut count = 0usize;
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::input(format!("arc [{u},{v}] out of range for n={n}")));
            }
            if u == v {
                return Err(Error::input(format!("loop at {u}")));
            }
            if t.out[u].contains(v) || t.out[v].contains(u) {
                return Err(Error::input(format!("pair {{{u},{v}}} given twice")));
            }
            t.set_arc(u, v);
            count += 1;
        }
        if count != n * n.saturating_sub(1) / 2 {
            return Err(Error::input(format!(
                "a tournament on {n} vertices needs {} arcs, got {count}",
                n * n.saturating_sub(1) / 2
            )));
        }
        Ok(t)
    }

    /// Each pair oriented by a fair coin.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::from_fn(n, |_, _| rng.gen_bool(0.5))
    }

    /// A random ordering made transitive, then each arc flipped with
    /// probability `q`.
    pub fn near_transitive<R: Rng + ?Sized>(n: usize, q: f64, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut rank: Vec<usize> = (0..n).collect();
        rank.shuffle(rng);
        Self::from_fn(n, |i, j| (rank[i] < rank[j]) != rng.gen_bool(q))
    }

    fn set_arc(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.inn[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, u: usize) -> &VertexSet {
        &self.out[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &VertexSet {
        &self.inn[u]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Arcs `(u, v)` meaning `u -> v`, sorted.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    /// All arcs reversed.
    pub fn reverse(&self) -> Self {
        Tournament {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// `self => other`: disjoint union with every arc from `self` to `other`.
    pub fn compose(&self, other: &Tournament) -> Self {
        let a = self.n;
        Self::from_fn(a + other.n, |i, j| match (i < a, j < a) {
            (true, true) => self.beats(i, j),
            (false, false) => other.beats(i - a, j - a),
            _ => true,
        })
    }

    /// Subtournament on `set`, relabelled in increasing order, with the map
    /// back to original ids.
    pub fn induced(&self, set: &VertexSet) -> (Tournament, Vec<usize>) {
        let map = set.to_vec();
        (self.induced_on(&map), map)
    }

    pub fn induced_on(&self, vertices: &[usize]) -> Tournament {
        Self::from_fn(vertices.len(), |i, j| self.beats(vertices[i], vertices[j]))
    }

    /// No directed cycle; for a tournament, equivalently all scores differ.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.n];
        for u in 0..self.n {
            let d = self.out[u].len();
            if seen[d] {
                return false;
            }
            seen[d] = true;
        }
        true
    }

    pub fn to_json(&self) -> TournamentJson {
        TournamentJson {
            schema_version: Some(SCHEMA_VERSION),
            n: self.n,
            arcs: self.arcs().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Relational for Tournament {
    fn order(&self) -> usize {
        self.n
    }

    fn out_row(&self, u: usize) -> &VertexSet {
        &self.out[u]
    }

    fn find_within(&self, within: &VertexSet, pattern: &Tournament) -> Option<Vec<usize>> {
        find_subtournament_within(self, within, pattern).map(|e| e.map)
    }
}

/// On-disk format: `{"n": 3, "arcs": [[0,1], ...]}` where `[u, v]` means
/// `u` beats `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl TryFrom<TournamentJson> for Tournament {
    type Error = Error;

    fn try_from(j: TournamentJson) -> Result<Self> {
        Tournament::from_arcs(j.n, j.arcs.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for Tournament {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TournamentJson {
            schema_version: None,
            ..self.to_json()
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tournament {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Tournament::try_from(TournamentJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Direction-preserving injective map of `pattern` into `host`.
pub fn contains_subtournament(host: &Tournament, pattern: &Tournament) -> Option<Embedding> {
    find_subtournament_within(host, &host.vertices(), pattern)
}

pub fn find_subtournament_within(host: &Tournament, within: &VertexSet, pattern: &Tournament) -> Option<Embedding> {
    let k = pattern.order();
    if k > within.len() {
        return None;
    }
    let pout: Vec<usize> = (0..k).map(|v| pattern.out[v].len()).collect();
    let order = crate::embed::search_order(&pout);
    let hout: Vec<(usize, usize)> = (0..host.n)
        .map(|v| {
            if within.contains(v) {
                (
                    host.out[v].intersection_len(within),
                    host.inn[v].intersection_len(within),
                )
            } else {
                (0, 0)
            }
        })
        .collect();
    let mut map = vec![usize::MAX; k];
    let mut used = VertexSet::new(host.n);
    #[allow(clippy::too_many_arguments)]
    fn extend(
        host: &Tournament,
        pattern: &Tournament,
        within: &VertexSet,
        order: &[usize],
        hout: &[(usize, usize)],
        depth: usize,
        map: &mut [usize],
        used: &mut VertexSet,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let mut cand = within.difference(used);
        for &q in &order[..depth] {
            if pattern.beats(p, q) {
                cand.intersect_with(&host.inn[map[q]]);
            } else {
                cand.intersect_with(&host.out[map[q]]);
            }
            if cand.is_empty() {
                return false;
            }
        }
        let need = (pattern.out[p].len(), pattern.inn[p].len());
        for v in cand.iter() {
            if hout[v].0 < need.0 || hout[v].1 < need.1 {
                continue;
            }
            map[p] = v;
            used.insert(v);
            if extend(host, pattern, within, order, hout, depth + 1, map, used) {
                return true;
            }
            used.remove(v);
        }
        map[p] = usize::MAX;
        false
    }
    if extend(host, pattern, within, &order, &hout, 0, &mut map, &mut used) {
        Some(Embedding { map })
    } else {
        None
    }
}

/// Checks injectivity and that every arc keeps its direction.
pub fn is_valid_subtournament(e: &Embedding, pattern: &Tournament, host: &Tournament) -> bool {
    let k = pattern.order();
    if e.map.len() != k || e.map.iter().any(|&v| v >= host.order()) || e.image(host.order()).len() != k {
        return false;
    }
    (0..k).all(|i| (0..k).all(|j| i == j || pattern.beats(i, j) == host.beats(e.map[i], e.map[j])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TCertificate {
    Singleton,
    /// No copy of pattern `i`.
    Avoids(usize),
    /// No directed cycle.
    Transitive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TClass {
    pub vertices: Vec<usize>,
    pub certificate: TCertificate,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentPartition {
    pub classes: Vec<TClass>,
}

impl TournamentPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The first problem with a tournament partition, or `None` if every class
/// honours its certificate and the classes partition `V(g)`.
pub fn verify_tournament_partition(g: &Tournament, patterns: &[Tournament], p: &TournamentPartition) -> Option<String> {
    let n = g.order();
    let mut owner = vec![usize::MAX; n];
    for (ci, class) in p.classes.iter().enumerate() {
        for &v in &class.vertices {
            if v >= n {
                return Some(format!("class {ci} has vertex {v} out of range"));
            }
            if owner[v] != usize::MAX {
                return Some(format!("vertex {v} lies in classes {} and {ci}", owner[v]));
            }
            owner[v] = ci;
        }
        let set = VertexSet::from_vertices(n, class.vertices.iter().copied());
        match class.certificate {
            TCertificate::Singleton if class.vertices.len() != 1 => {
                return Some(format!(
                    "class {ci} is marked singleton but has {} vertices",
                    class.vertices.len()
                ))
            }
            TCertificate::Singleton => {}
            TCertificate::Avoids(i) => {
                let Some(pattern) = patterns.get(i) else {
                    return Some(format!("class {ci} cites unknown pattern {i}"));
                };
                if let Some(e) = find_subtournament_within(g, &set, pattern) {
                    return Some(format!("class {ci} contains pattern {i} at {:?}", e.map));
                }
            }
            TCertificate::Transitive => {
                if !g.induced(&set).0.is_transitive() {
                    return Some(format!("class {ci} is not transitive"));
                }
            }
        }
    }
    owner
        .iter()
        .position(|&o| o == usize::MAX)
        .map(|v| format!("vertex {v} is uncovered"))
}

/// Output of [`two_tourn_partition`].
#[derive(Debug, Clone, Serialize)]
pub struct TournamentPairPartition {
    /// `[H1, H2]` as given by the caller.
    pub patterns: Vec<Tournament>,
    pub partition: TournamentPartition,
    /// The recursion ran on the reversed tournament with `(H2^r, H1^r)`.
    pub reversed: bool,
    pub m: usize,
    /// `2(m+1)^m`.
    pub bound: u64,
    pub stats: EngineStats,
}

/// `r -> s` in `H*`: embed `H1`, whose out-neighbourhood misses `H2`.
/// `s -> r`: embed `H2`, whose in-neighbourhood misses `H1`.
fn tournament_split_rule(s_beats_r: bool) -> (usize, usize) {
    if s_beats_r {
        (1, 0)
    } else {
        (0, 1)
    }
}

/// Partition of an `(H1 => H2)`-free tournament into at most `2(m+1)^m`
/// classes, each a singleton or free of `H1` or of `H2`.
pub fn two_tourn_partition(g: &Tournament, h1: &Tournament, h2: &Tournament) -> Result<TournamentPairPartition> {
    two_tourn_partition_with(g, h1, h2, EngineConfig::default())
}

pub fn two_tourn_partition_with(
    g: &Tournament,
    h1: &Tournament,
    h2: &Tournament,
    config: EngineConfig,
) -> Result<TournamentPairPartition> {
    if let Some(e) = contains_subtournament(g, &h1.compose(h2)) {
        return Err(Error::found("G contains H1 => H2", "H", e.map));
    }
    let reversed = h2.order() > h1.order();
    let (host, patterns, map) = if reversed {
        (g.reverse(), vec![h2.reverse(), h1.reverse()], [1, 0])
    } else {
        (g.clone(), vec![h1.clone(), h2.clone()], [0, 1])
    };
    let m = patterns[0].order();
    let hstar = patterns[0].compose(&Tournament::transitive(1));
    let mut stats = EngineStats::default();
    let classes = if g.order() == 0 {
        Vec::new()
    } else if contains_subtournament(&host, &patterns[0]).is_none() {
        vec![TClass {
            vertices: host.vertices().to_vec(),
            certificate: TCertificate::Avoids(map[0]),
        }]
    } else {
        let mut engine = PieceEngine::new(&host, &hstar, &patterns, 1, tournament_split_rule, config);
        let raw = engine.run()?;
        stats = engine.stats.clone();
        raw.into_iter()
            .map(|(set, cert)| TClass {
                vertices: set.to_vec(),
                certificate: match cert {
                    crate::oracles::Certificate::Singleton => TCertificate::Singleton,
                    crate::oracles::Certificate::Avoids(i) => TCertificate::Avoids(map[i]),
                },
            })
            .collect()
    };
    Ok(TournamentPairPartition {
        patterns: vec![h1.clone(), h2.clone()],
        partition: TournamentPartition { classes },
        reversed,
        m,
        bound: phi(0, m)?,
        stats,
    })
}

/// Partition into transitive sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitiveCover {
    pub classes: Vec<Vec<usize>>,
    /// The count is the minimum possible; `false` when the exhaustive search
    /// ran out of budget and a greedy cover was returned.
    pub optimal: bool,
}

/// Adding `v` to `class` keeps it transitive iff no `a` in the class beaten
/// by `v` beats some `b` in the class that beats `v`.
fn stays_transitive(g: &Tournament, class: &VertexSet, v: usize) -> bool {
    let beaten = g.out[v].intersection(class);
    let beating = g.inn[v].intersection(class);
    beaten.iter().all(|a| g.out[a].is_disjoint(&beating))
}

fn greedy_cover(g: &Tournament) -> Vec<VertexSet> {
    let mut classes: Vec<VertexSet> = Vec::new();
    for v in 0..g.order() {
        match classes.iter_mut().find(|c| stays_transitive(g, c, v)) {
            Some(c) => c.insert(v),
            None => classes.push(VertexSet::from_vertices(g.order(), [v])),
        }
    }
    classes
}

fn cover_with(
    g: &Tournament,
    k: usize,
    classes: &mut Vec<VertexSet>,
    v: usize,
    work: &mut u64,
    budget: u64,
) -> Option<bool> {
    if v == g.order() {
        return Some(true);
    }
    *work += 1;
    if *work > budget {
        return None;
    }
    for i in 0..classes.len() {
        if stays_transitive(g, &classes[i], v) {
            classes[i].insert(v);
            if cover_with(g, k, classes, v + 1, work, budget)? {
                return Some(true);
            }
            classes[i].remove(v);
        }
    }
    if classes.len() < k {
        classes.push(VertexSet::from_vertices(g.order(), [v]));
        if cover_with(g, k, classes, v + 1, work, budget)? {
            return Some(true);
        }
        classes.pop();
    }
    Some(false)
}

/// Fewest transitive sets covering `V(g)`, found exhaustively within
/// `budget` search nodes; otherwise the greedy cover flagged non-optimal.
pub fn transitive_partition(g: &Tournament, budget: u64) -> TransitiveCover {
    let greedy = greedy_cover(g);
    let to_lists = |cs: &[VertexSet]| cs.iter().map(VertexSet::to_vec).collect::<Vec<_>>();
    let mut work = 0u64;
    for k in 1..greedy.len() {
        let mut classes = Vec::new();
        match cover_with(g, k, &mut classes, 0, &mut work, budget) {
            Some(true) => {
                return TransitiveCover {
                    classes: to_lists(&classes),
                    optimal: true,
                }
            }
            Some(false) => {}
            None => {
                return TransitiveCover {
                    classes: to_lists(&greedy),
                    optimal: false,
                }
            }
        }
    }
    TransitiveCover {
        classes: to_lists(&greedy),
        optimal: true,
    }
}

/// Transitive colouring of an `(H1 => H2)`-free tournament.
#[derive(Debug, Clone, Serialize)]
pub struct HeroColoring {
    pub classes: Vec<Vec<usize>>,
    /// Classes of the underlying pair partition.
    pub pair_classes: usize,
    /// Transitive sets used inside each pair class.
    pub per_class: Vec<usize>,
    /// Every per-class count is the exact minimum.
    pub optimal: bool,
    /// `2(m+1)^m * c`.
    pub bound: u64,
}

impl HeroColoring {
    pub fn as_partition(&self) -> TournamentPartition {
        TournamentPartition {
            classes: self
                .classes
                .iter()
                .map(|c| TClass {
                    vertices: c.clone(),
                    certificate: TCertificate::Transitive,
                })
                .collect(),
        }
    }
}

/// Splits with [`two_tourn_partition`], then colours each class by
/// transitive sets. Fails if a class needs more than `c` of them.
pub fn hero_color(g: &Tournament, h1: &Tournament, h2: &Tournament, c: usize, budget: u64) -> Result<HeroColoring> {
    let pair = two_tourn_partition(g, h1, h2)?;
    let mut classes = Vec::new();
    let mut per_class = Vec::new();
    let mut optimal = true;
    for (i, class) in pair.partition.classes.iter().enumerate() {
        let sub = g.induced_on(&class.vertices);
        let cover = transitive_partition(&sub, budget);
        if cover.classes.len() > c {
            return Err(Error::hypothesis(format!(
                "hero budget exceeded: class {i} needs {} transitive sets, more than c = {c}",
                cover.classes.len()
            )));
        }
        optimal &= cover.optimal;
        per_class.push(cover.classes.len());
        classes.extend(
            cover
                .classes
                .into_iter()
                .map(|cl| cl.into_iter().map(|v| class.vertices[v]).collect::<Vec<_>>()),
        );
    }
    Ok(HeroColoring {
        classes,
        pair_classes: pair.partition.len(),
        per_class,
        optimal,
        bound: pair.bound.saturating_mul(c as u64),
    })
}
