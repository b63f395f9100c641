//! Partitions of graphs excluding a pair `{H, J}` where `H` is disconnected
//! and `J` has a disconnected complement.
//!
//! [`two_graphs_partition`] splits `V(G)` into at most `2(m+1)^m` classes,
//! each a singleton or free of one of `H1, H2, J1, J2`.
//! [`disconnected_partition`] applies it repeatedly until every certificate
//! is a single component of `H` or a single anticomponent of `J`.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::embed::{contains_induced, find_induced_within};
use crate::error::{Error, Result};
use crate::graph::{named, Graph};
use crate::oracles::{Certificate, FPartition, PartClass};
use crate::piece::{PieceEngine, Relational, UNMAPPED};

pub use crate::piece::{phi, EngineConfig, EngineStats};

impl Relational for Graph {
    fn order(&self) -> usize {
        Graph::order(self)
    }

    fn out_row(&self, u: usize) -> &VertexSet {
        self.neighbors(u)
    }

    fn find_within(&self, within: &VertexSet, pattern: &Graph) -> Option<Vec<usize>> {
        find_induced_within(self, within, pattern).map(|e| e.map)
    }
}

/// Engine pattern order.
pub const H1: usize = 0;
pub const H2: usize = 1;
pub const J1: usize = 2;
pub const J2: usize = 3;

/// Adjacent `s, r`: embed `H1`, the rest is anticomplete to it and so
/// `H2`-free. Non-adjacent: embed `J1`, the rest is complete to it and so
/// `J2`-free.
fn graph_split_rule(adjacent: bool) -> (usize, usize) {
    if adjacent {
        (H1, H2)
    } else {
        (J1, J2)
    }
}

/// The forbidden pair in the orientation the recursion works in: `|H1| = m`
/// and `H* = H | (V(H1) + h*)`, stored with `H1` on `0..m` and `h*` at `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenPair {
    pub h: Graph,
    pub j: Graph,
    pub h1: Graph,
    pub h2: Graph,
    pub j1: Graph,
    pub j2: Graph,
    pub m: usize,
    pub hstar: Graph,
    /// The vertex of `h2` chosen as `h*`.
    pub hstar_source: usize,
}

impl ForbiddenPair {
    /// `[H1, H2, J1, J2]`.
    pub fn patterns(&self) -> Vec<Graph> {
        vec![self.h1.clone(), self.h2.clone(), self.j1.clone(), self.j2.clone()]
    }

    /// Bound on the number of classes, `2(m+1)^m`.
    pub fn bound(&self) -> Result<u64> {
        phi(0, self.m)
    }
}

/// Which components of `H` form `H1` and which anticomponents of `J` form
/// `J1`; `None` picks the largest one (first on ties).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitChoice {
    pub h1_components: Option<Vec<usize>>,
    pub j1_anticomponents: Option<Vec<usize>>,
}

/// How the caller's `(H, J)` was transformed into the engine's pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationRecord {
    /// The engine ran on `G^c` with the pair `(J^c, H^c)`.
    pub complemented: bool,
    /// The two sides of the engine's `H` were exchanged so the larger
    /// one comes first.
    pub side_swapped: bool,
    pub component_choice: String,
    /// `certificate_map[i]` is the caller-side pattern index (in
    /// `[H1, H2, J1, J2]`) equivalent to engine pattern `i`.
    pub certificate_map: [usize; 4],
}

fn union_of(parts: &[VertexSet], picks: &[usize], n: usize) -> VertexSet {
    let mut s = VertexSet::new(n);
    for &i in picks {
        s.union_with(&parts[i]);
    }
    s
}

fn pick_side(parts: &[VertexSet], choice: Option<&Vec<usize>>, what: &str) -> Result<Vec<usize>> {
    match choice {
        Some(picks) => {
            let mut picks = picks.clone();
            picks.sort_unstable();
            picks.dedup();
            if picks.is_empty() || picks.len() >= parts.len() || picks.iter().any(|&i| i >= parts.len()) {
                return Err(Error::input(format!(
                    "{what} choice must be a nonempty proper subset of 0..{}",
                    parts.len()
                )));
            }
            Ok(picks)
        }
        None => {
            let best = parts.iter().map(VertexSet::len).max().unwrap_or(0);
            Ok(vec![parts.iter().position(|p| p.len() == best).unwrap_or(0)])
        }
    }
}

/// The caller-side patterns `[H1, H2, J1, J2]` for a split choice.
fn caller_patterns(h: &Graph, j: &Graph, choice: &SplitChoice) -> Result<([Graph; 4], String)> {
    let comps = h.components();
    if comps.len() < 2 {
        return Err(Error::hypothesis("H must be disconnected"));
    }
    let acomps = j.anticomponents();
    if acomps.len() < 2 {
        return Err(Error::hypothesis("the complement of J must be disconnected"));
    }
    let hp = pick_side(&comps, choice.h1_components.as_ref(), "H1 component")?;
    let jp = pick_side(&acomps, choice.j1_anticomponents.as_ref(), "J1 anticomponent")?;
    let h1_set = union_of(&comps, &hp, h.order());
    let j1_set = union_of(&acomps, &jp, j.order());
    let h2_set = h.vertices().difference(&h1_set);
    let j2_set = j.vertices().difference(&j1_set);
    let sub = |g: &Graph, s: &VertexSet| g.induced_on(&s.to_vec());
    let desc = format!("H1 = components {hp:?} of H; J1 = anticomponents {jp:?} of J");
    Ok((
        [sub(h, &h1_set), sub(h, &h2_set), sub(j, &j1_set), sub(j, &j2_set)],
        desc,
    ))
}

/// Orients `(H, J)` so that the largest of `H1, H2, J1, J2` becomes the
/// engine's `H1`. When the largest sits on the `J` side the engine works in
/// the complement, where `J^c` is the disconnected graph.
pub fn normalize_pair(h: &Graph, j: &Graph, choice: &SplitChoice) -> Result<(ForbiddenPair, NormalizationRecord)> {
    let ([ch1, ch2, cj1, cj2], desc) = caller_patterns(h, j, choice)?;
    let hmax = ch1.order().max(ch2.order());
    let jmax = cj1.order().max(cj2.order());
    let complemented = jmax > hmax;
    let (side_swapped, engine, map, eh, ej) = if !complemented {
        if ch1.order() >= ch2.order() {
            (false, [ch1, ch2, cj1, cj2], [0, 1, 2, 3], h.clone(), j.clone())
        } else {
            (true, [ch2, ch1, cj1, cj2], [1, 0, 2, 3], h.clone(), j.clone())
        }
    } else {
        let [a, b, c, d] = [cj1.complement(), cj2.complement(), ch1.complement(), ch2.complement()];
        if a.order() >= b.order() {
            (false, [a, b, c, d], [2, 3, 0, 1], j.complement(), h.complement())
        } else {
            (true, [b, a, c, d], [3, 2, 0, 1], j.complement(), h.complement())
        }
    };
    let [h1, h2, j1, j2] = engine;
    let m = h1.order().max(h2.order()).max(j1.order()).max(j2.order());
    debug_assert_eq!(h1.order(), m);
    let hstar = h1.disjoint_union(&named::complete(1));
    let fp = ForbiddenPair {
        h: eh,
        j: ej,
        h1,
        h2,
        j1,
        j2,
        m,
        hstar,
        hstar_source: 0,
    };
    let record = NormalizationRecord {
        complemented,
        side_swapped,
        component_choice: desc,
        certificate_map: map,
    };
    Ok((fp, record))
}

/// A partial embedding of `H*`: `images[x]` is the host vertex of `H*`
/// vertex `x`, for `x` in `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceState {
    pub images: Vec<Option<usize>>,
}

impl PieceState {
    /// The null piece.
    pub fn empty(fp: &ForbiddenPair) -> Self {
        PieceState {
            images: vec![None; fp.m + 1],
        }
    }

    /// `T` as a set of `H*` vertices.
    pub fn domain(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.images.len(),
            self.images
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_some())
                .map(|(x, _)| x),
        )
    }

    fn raw(&self) -> Vec<usize> {
        self.images.iter().map(|v| v.unwrap_or(UNMAPPED)).collect()
    }

    fn check(&self, g: &Graph, fp: &ForbiddenPair) -> Result<()> {
        if self.images.len() != fp.m + 1 {
            return Err(Error::input("piece must list one entry per vertex of H*"));
        }
        let mapped: Vec<(usize, usize)> = self
            .images
            .iter()
            .enumerate()
            .filter_map(|(x, v)| v.map(|v| (x, v)))
            .collect();
        for (i, &(x, gx)) in mapped.iter().enumerate() {
            if gx >= g.order() {
                return Err(Error::input(format!("piece image {gx} out of range")));
            }
            for &(y, gy) in &mapped[i + 1..] {
                if gx == gy || fp.hstar.has_edge(x, y) != g.has_edge(gx, gy) {
                    return Err(Error::input("piece is not an induced embedding"));
                }
            }
        }
        Ok(())
    }
}

fn engine<'a>(
    g: &'a Graph,
    fp: &'a ForbiddenPair,
    patterns: &'a [Graph],
    config: EngineConfig,
) -> PieceEngine<'a, Graph> {
    PieceEngine::new(g, &fp.hstar, patterns, H2, graph_split_rule, config)
}

/// `Y_S(g)`: vertices outside the image of the piece that extend it to an
/// induced embedding of `T + s`.
pub fn corresponding_set(g: &Graph, fp: &ForbiddenPair, piece: &PieceState, s: usize) -> Result<VertexSet> {
    piece.check(g, fp)?;
    if s > fp.m || piece.images[s].is_some() {
        return Err(Error::input(format!("adding vertex {s} of H* does not extend T")));
    }
    let patterns = fp.patterns();
    let eng = engine(g, fp, &patterns, EngineConfig::default());
    Ok(eng.corresponding(&piece.raw(), s))
}

/// For a piece with `T` inside `H1`, returns the `H*` vertex `s` of the
/// chosen extension and a partition of `Y_{T+s}(g)` into at most
/// `phi(|T|)` classes. Certificates index the engine patterns `[H1, H2, J1,
/// J2]`. `g` must already be in the engine's orientation.
pub fn partition_from_piece(
    g: &Graph,
    fp: &ForbiddenPair,
    piece: &PieceState,
    config: EngineConfig,
) -> Result<(usize, FPartition, EngineStats)> {
    piece.check(g, fp)?;
    if piece.images[fp.m].is_some() {
        return Err(Error::input("T must lie inside H1"));
    }
    let patterns = fp.patterns();
    let mut eng = engine(g, fp, &patterns, config);
    let mut raw = piece.raw();
    let t = raw.iter().filter(|&&v| v != UNMAPPED).count();
    let outcome = eng.solve(&mut raw, t)?;
    let partition = FPartition {
        classes: outcome.classes.iter().map(|(s, c)| PartClass::new(s, *c)).collect(),
    };
    Ok((outcome.added, partition, eng.stats.clone()))
}

/// Output of [`two_graphs_partition`].
#[derive(Debug, Clone, Serialize)]
pub struct PairPartition {
    /// `[H1, H2, J1, J2]` on the caller's side.
    pub patterns: Vec<Graph>,
    pub partition: FPartition,
    pub normalization: NormalizationRecord,
    pub m: usize,
    /// `2(m+1)^m`.
    pub bound: u64,
    pub stats: EngineStats,
}

pub(crate) fn check_free(g: &Graph, pattern: &Graph, name: &str) -> Result<()> {
    match contains_induced(g, pattern) {
        Some(e) => Err(Error::found(format!("G contains {name}"), name, e.map)),
        None => Ok(()),
    }
}

/// Partition of an `{H, J}`-free graph with default split choice and
/// configuration.
pub fn two_graphs_partition(g: &Graph, h: &Graph, j: &Graph) -> Result<PairPartition> {
    two_graphs_partition_with(g, h, j, &SplitChoice::default(), EngineConfig::default())
}

pub fn two_graphs_partition_with(
    g: &Graph,
    h: &Graph,
    j: &Graph,
    choice: &SplitChoice,
    config: EngineConfig,
) -> Result<PairPartition> {
    let (fp, record) = normalize_pair(h, j, choice)?;
    check_free(g, h, "H")?;
    check_free(g, j, "J")?;
    let host = if record.complemented { g.complement() } else { g.clone() };
    let patterns = fp.patterns();
    let map = record.certificate_map;
    let back = |c: Certificate| match c {
        Certificate::Avoids(i) => Certificate::Avoids(map[i]),
        Certificate::Singleton => Certificate::Singleton,
    };
    let mut stats = EngineStats::default();
    let classes: Vec<PartClass> = if g.is_null() {
        Vec::new()
    } else if contains_induced(&host, &fp.h1).is_none() {
        vec![PartClass::new(&host.vertices(), back(Certificate::Avoids(H1)))]
    } else {
        let mut eng = engine(&host, &fp, &patterns, config);
        let raw = eng.run()?;
        stats = eng.stats.clone();
        raw.iter().map(|(s, c)| PartClass::new(s, back(*c))).collect()
    };
    let (caller, _) = caller_patterns(h, j, choice)?;
    Ok(PairPartition {
        patterns: caller.to_vec(),
        partition: FPartition { classes },
        normalization: record,
        m: fp.m,
        bound: fp.bound()?,
        stats,
    })
}

/// Output of [`disconnected_partition`].
#[derive(Debug, Clone, Serialize)]
pub struct DriverPartition {
    /// Components of `H` (by least vertex) followed by anticomponents of
    /// `J`.
    pub patterns: Vec<Graph>,
    /// Number of leading entries of `patterns` that are components of `H`.
    pub h_components: usize,
    pub partition: FPartition,
    /// Product of the per-level `2(m+1)^m` bounds along the deepest
    /// refinement chain (saturating).
    pub class_bound: u128,
    /// Calls to [`two_graphs_partition`] made.
    pub pair_runs: usize,
}

struct Driver<'a> {
    g: &'a Graph,
    h: &'a Graph,
    j: &'a Graph,
    comps: Vec<VertexSet>,
    acomps: Vec<VertexSet>,
    config: EngineConfig,
    pair_runs: usize,
}

impl Driver<'_> {
    fn side_graph(whole: &Graph, parts: &[VertexSet], picks: &[usize]) -> Graph {
        whole.induced_on(&union_of(parts, picks, whole.order()).to_vec())
    }

    /// Largest first (ties to the earliest), then the rest.
    fn split(parts: &[VertexSet], picks: &[usize]) -> (usize, Vec<usize>) {
        let best = picks.iter().map(|&i| parts[i].len()).max().unwrap_or(0);
        let big = *picks.iter().find(|&&i| parts[i].len() == best).expect("nonempty");
        (big, picks.iter().copied().filter(|&i| i != big).collect())
    }

    /// Pair-graph sizes for a sub-pair, after doubling a connected `H` or
    /// anticonnected `J`.
    fn pair_m(&self, hc: &[usize], jc: &[usize]) -> usize {
        let side = |parts: &[VertexSet], picks: &[usize]| -> usize {
            if picks.len() == 1 {
                parts[picks[0]].len()
            } else {
                let (big, rest) = Self::split(parts, picks);
                parts[big].len().max(rest.iter().map(|&i| parts[i].len()).sum())
            }
        };
        side(&self.comps, hc).max(side(&self.acomps, jc))
    }

    fn bound(&self, hc: &[usize], jc: &[usize]) -> u128 {
        if hc.len() == 1 && jc.len() == 1 {
            return 1;
        }
        let level = phi(0, self.pair_m(hc, jc)).map(u128::from).unwrap_or(u128::MAX);
        let mut deeper = 1u128;
        if hc.len() > 1 {
            deeper = deeper.max(self.bound(&Self::split(&self.comps, hc).1, jc));
        }
        if jc.len() > 1 {
            deeper = deeper.max(self.bound(hc, &Self::split(&self.acomps, jc).1));
        }
        level.saturating_mul(deeper)
    }

    fn drive(&mut self, class: &VertexSet, hc: &[usize], jc: &[usize], out: &mut Vec<PartClass>) -> Result<()> {
        let offset = self.comps.len();
        if class.is_empty() {
            return Ok(());
        }
        if hc.len() == 1 && jc.len() == 1 {
            out.push(PartClass::new(class, Certificate::Avoids(hc[0])));
            return Ok(());
        }
        let (sub, map) = self.g.induced(class)?;
        // A connected H (anticonnected J) is replaced by two disjoint copies
        // (two joined copies), which the subgraph avoids just as well.
        let (hpair, hbig, hrest) = if hc.len() == 1 {
            let one = Self::side_graph(self.h, &self.comps, hc);
            (one.disjoint_union(&one), hc[0], vec![hc[0]])
        } else {
            let (big, rest) = Self::split(&self.comps, hc);
            (Self::side_graph(self.h, &self.comps, hc), big, rest)
        };
        let (jpair, jbig, jrest) = if jc.len() == 1 {
            let one = Self::side_graph(self.j, &self.acomps, jc);
            (one.join(&one), jc[0], vec![jc[0]])
        } else {
            let (big, rest) = Self::split(&self.acomps, jc);
            (Self::side_graph(self.j, &self.acomps, jc), big, rest)
        };
        let choice = SplitChoice {
            h1_components: Some(vec![if hc.len() == 1 {
                0
            } else {
                hc.iter().position(|&i| i == hbig).unwrap()
            }]),
            j1_anticomponents: Some(vec![if jc.len() == 1 {
                0
            } else {
                jc.iter().position(|&i| i == jbig).unwrap()
            }]),
        };
        let result = two_graphs_partition_with(&sub, &hpair, &jpair, &choice, self.config)?;
        self.pair_runs += 1;
        for pc in result.partition.classes {
            let set = VertexSet::from_vertices(self.g.order(), pc.vertices.iter().map(|&v| map[v]));
            match pc.certificate {
                Certificate::Singleton => out.push(PartClass::new(&set, Certificate::Singleton)),
                Certificate::Avoids(H1) => out.push(PartClass::new(&set, Certificate::Avoids(hbig))),
                Certificate::Avoids(H2) if hrest.len() == 1 => {
                    out.push(PartClass::new(&set, Certificate::Avoids(hrest[0])))
                }
                Certificate::Avoids(H2) => self.drive(&set, &hrest, jc, out)?,
                Certificate::Avoids(J1) => out.push(PartClass::new(&set, Certificate::Avoids(offset + jbig))),
                Certificate::Avoids(J2) if jrest.len() == 1 => {
                    out.push(PartClass::new(&set, Certificate::Avoids(offset + jrest[0])))
                }
                Certificate::Avoids(J2) => self.drive(&set, hc, &jrest, out)?,
                Certificate::Avoids(i) => unreachable!("pair partition cites pattern {i}"),
            }
        }
        Ok(())
    }
}

/// Partition of an `{H, J}`-free graph whose non-singleton classes are each
/// free of one component of `H` or one anticomponent of `J`.
pub fn disconnected_partition(g: &Graph, h: &Graph, j: &Graph) -> Result<DriverPartition> {
    disconnected_partition_with(g, h, j, EngineConfig::default())
}

pub fn disconnected_partition_with(g: &Graph, h: &Graph, j: &Graph, config: EngineConfig) -> Result<DriverPartition> {
    if h.is_null() || j.is_null() {
        return Err(Error::hypothesis("H and J must be non-null"));
    }
    check_free(g, h, "H")?;
    check_free(g, j, "J")?;
    let comps = h.components();
    let acomps = j.anticomponents();
    let mut patterns: Vec<Graph> = comps.iter().map(|c| h.induced_on(&c.to_vec())).collect();
    patterns.extend(acomps.iter().map(|c| j.induced_on(&c.to_vec())));
    let hc: Vec<usize> = (0..comps.len()).collect();
    let jc: Vec<usize> = (0..acomps.len()).collect();
    let mut driver = Driver {
        g,
        h,
        j,
        comps,
        acomps,
        config,
        pair_runs: 0,
    };
    let mut classes = Vec::new();
    driver.drive(&g.vertices(), &hc, &jc, &mut classes)?;
    Ok(DriverPartition {
        h_components: driver.comps.len(),
        class_bound: driver.bound(&hc, &jc),
        pair_runs: driver.pair_runs,
        patterns,
        partition: FPartition { classes },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::oracles::verify_partition;

    fn audit() -> EngineConfig {
        EngineConfig {
            audit: true,
            ..EngineConfig::default()
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(2, 2).unwrap(), 1);
        assert_eq!(phi(0, 2).unwrap(), 18);
        assert_eq!(phi(1, 3).unwrap(), 32);
        assert!(phi(3, 2).is_err());
    }

    #[test]
    fn normalize_equal_sizes_keeps_orientation() {
        let (fp, rec) = normalize_pair(&two_k2(), &cycle(4), &SplitChoice::default()).unwrap();
        assert_eq!(fp.m, 2);
        assert!(!rec.complemented && !rec.side_swapped);
        assert_eq!(rec.certificate_map, [0, 1, 2, 3]);
        assert_eq!(fp.hstar.order(), 3);
        assert_eq!(fp.hstar.edge_count(), 1);
    }

    #[test]
    fn normalize_picks_larger_component() {
        let h = complete(2).disjoint_union(&complete(3));
        let (fp, rec) = normalize_pair(&h, &cycle(4), &SplitChoice::default()).unwrap();
        assert_eq!(fp.m, 3);
        assert_eq!(fp.h1, complete(3));
        assert!(!rec.complemented && !rec.side_swapped);
        // Explicitly choosing the small side forces a swap.
        let choice = SplitChoice {
            h1_components: Some(vec![0]),
            j1_anticomponents: None,
        };
        let (fp, rec) = normalize_pair(&h, &cycle(4), &choice).unwrap();
        assert_eq!(fp.h1, complete(3));
        assert!(rec.side_swapped);
        assert_eq!(rec.certificate_map, [1, 0, 2, 3]);
    }

    #[test]
    fn normalize_complements_when_j_side_is_larger() {
        let j = complete(3).disjoint_union(&complete(3)).complement();
        let (fp, rec) = normalize_pair(&two_k2(), &j, &SplitChoice::default()).unwrap();
        assert!(rec.complemented);
        assert_eq!(fp.m, 3);
        assert_eq!(fp.h1, complete(3));
        assert_eq!(rec.certificate_map, [2, 3, 0, 1]);
    }

    #[test]
    fn normalize_rejects_connected_h() {
        assert!(matches!(
            normalize_pair(&path(3), &cycle(4), &SplitChoice::default()),
            Err(Error::Hypothesis { .. })
        ));
        assert!(matches!(
            normalize_pair(&two_k2(), &cycle(5), &SplitChoice::default()),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn corresponding_set_cases() {
        let (fp, _) = normalize_pair(&two_k2(), &cycle(4), &SplitChoice::default()).unwrap();
        let g = cycle(5);
        let empty = PieceState::empty(&fp);
        for s in 0..=fp.m {
            assert_eq!(corresponding_set(&g, &fp, &empty, s).unwrap(), g.vertices());
        }
        // In K3 nothing is non-adjacent to vertex 0; h* (vertex 2 of H*) is
        // non-adjacent to H1 vertex 0.
        let k3 = complete(3);
        let piece = PieceState {
            images: vec![Some(0), None, None],
        };
        assert!(corresponding_set(&k3, &fp, &piece, 2).unwrap().is_empty());
        // Extending along the H1 edge from an endpoint of P3 gives its neighbours.
        let p3 = path(3);
        let piece = PieceState {
            images: vec![Some(1), None, None],
        };
        assert_eq!(corresponding_set(&p3, &fp, &piece, 1).unwrap().to_vec(), vec![0, 2]);
        let piece = PieceState {
            images: vec![Some(0), None, None],
        };
        assert_eq!(corresponding_set(&p3, &fp, &piece, 1).unwrap().to_vec(), vec![1]);
        assert!(corresponding_set(&p3, &fp, &piece, 0).is_err());
    }

    #[test]
    fn base_case_is_one_class() {
        let (fp, _) = normalize_pair(&two_k2(), &cycle(4), &SplitChoice::default()).unwrap();
        let g = cycle(5);
        // H1 = K2 mapped onto the edge 0-1; the anticomplete vertex is 3.
        let piece = PieceState {
            images: vec![Some(0), Some(1), None],
        };
        let (added, p, stats) = partition_from_piece(&g, &fp, &piece, audit()).unwrap();
        assert_eq!(added, 2);
        assert_eq!(p.len(), 1);
        assert_eq!(p.classes[0].vertices, vec![3]);
        assert_eq!(p.classes[0].certificate, Certificate::Avoids(H2));
        assert_eq!(stats.full_piece_checks, 1);
    }

    #[test]
    fn null_piece_on_c5() {
        let (fp, _) = normalize_pair(&two_k2(), &cycle(4), &SplitChoice::default()).unwrap();
        let g = cycle(5);
        let (_, p, stats) = partition_from_piece(&g, &fp, &PieceState::empty(&fp), audit()).unwrap();
        assert!(p.len() <= 18);
        assert!(verify_partition(&g, &fp.patterns(), &p).unwrap().valid);
        assert!(stats.max_types[0] <= 2 && stats.max_types[1] <= 1);
    }

    #[test]
    fn pair_partition_c5() {
        let r = two_graphs_partition_with(&cycle(5), &two_k2(), &cycle(4), &SplitChoice::default(), audit()).unwrap();
        assert!(r.partition.len() as u64 <= r.bound);
        assert_eq!(r.bound, 18);
        assert!(verify_partition(&cycle(5), &r.patterns, &r.partition).unwrap().valid);
    }

    #[test]
    fn pair_partition_split_graph() {
        // The net: K3 with a pendant edge at each vertex.
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let r = two_graphs_partition_with(&g, &two_k2(), &cycle(4), &SplitChoice::default(), audit()).unwrap();
        assert!(verify_partition(&g, &r.patterns, &r.partition).unwrap().valid);
        // K3 plus one stable vertex adjacent to two clique vertices and
        // another adjacent to one is {2K2, C4}-free.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (4, 0)]).unwrap();
        assert!(contains_induced(&g, &two_k2()).is_none());
        assert!(contains_induced(&g, &cycle(4)).is_none());
        let r = two_graphs_partition_with(&g, &two_k2(), &cycle(4), &SplitChoice::default(), audit()).unwrap();
        assert!(verify_partition(&g, &r.patterns, &r.partition).unwrap().valid);
    }

    #[test]
    fn pair_partition_rejects_c4() {
        let err = two_graphs_partition(&cycle(4), &two_k2(), &cycle(4)).unwrap_err();
        let w = err.witness().expect("witness");
        assert_eq!(w.pattern, "J");
        assert!(crate::embed::Embedding { map: w.map.clone() }.is_valid(&cycle(4), &cycle(4)));
    }

    #[test]
    fn single_vertex_pair_partition() {
        let r = two_graphs_partition(&complete(1), &two_k2(), &cycle(4)).unwrap();
        assert_eq!(r.partition.len(), 1);
        assert_eq!(r.partition.classes[0].vertices, vec![0]);
    }

    #[test]
    fn driver_trivial_cases() {
        let r = disconnected_partition(&complete(1), &two_k2(), &cycle(4)).unwrap();
        assert_eq!(r.partition.len(), 1);
        // H connected, J anticonnected: a single class.
        let r = disconnected_partition(&cycle(5), &complete(3), &stable(3)).unwrap();
        assert_eq!(r.partition.len(), 1);
        assert_eq!(r.partition.classes[0].certificate, Certificate::Avoids(0));
    }

    #[test]
    fn driver_on_three_component_pattern() {
        // H = 3K2 needs two driver levels; J = C4.
        let h = two_k2().disjoint_union(&complete(2));
        let g = cycle(6); // contains no 3K2 and no C4.
        let r = disconnected_partition_with(&g, &h, &cycle(4), audit()).unwrap();
        assert!(verify_partition(&g, &r.patterns, &r.partition).unwrap().valid);
        assert_eq!(r.h_components, 3);
        assert!(r.partition.avoided().all(|i| i < r.patterns.len()));
    }

    #[test]
    fn driver_with_connected_h() {
        // H = P3 is connected, J = C4 is not anticonnected.
        let g = two_k2().disjoint_union(&complete(1));
        let r = disconnected_partition_with(&g, &path(3), &cycle(4), audit()).unwrap();
        assert!(verify_partition(&g, &r.patterns, &r.partition).unwrap().valid);
    }
}
