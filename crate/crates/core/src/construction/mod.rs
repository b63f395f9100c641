//! Random graphs that look `{L, M}`-split on every small vertex set.
//!
//! Random uniform hypergraphs are drawn, one per block of `L` and of `M`,
//! with edge probability `n^-(b-1)+eps` for blocks on `b` vertices. Short
//! hypergraph cycles and multiply-labelled hyperedges are destroyed by
//! deleting vertices, and each surviving hyperedge is replaced by a copy of
//! its block.

pub mod audit;
pub mod hypergraph;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::blocks::blocks;
use crate::embed::is_isomorphic;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphJson};

pub use audit::{audit_density, audit_local_split, exact_partition_check, DensityReport, ExactCheck, LocalSplitReport};
pub use hypergraph::{
    find_violations, removal_set, remove_until_clean, Cleanup, Hyperedge, LabeledHypergraph, Violations,
};

/// Largest block order accepted; keeps `n^-(b-1)` well inside `f64` range.
pub const MAX_BLOCK_ORDER: usize = 8;

/// RNG stream ids; every random step draws from its own stream of the seed.
pub(crate) mod streams {
    pub const REALIZE: u64 = 1;
    pub const LOCAL_AUDIT: u64 = 2;
    pub const DENSITY_AUDIT: u64 = 3;
    pub const SAMPLE_BASE: u64 = 16;
}

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Blocks of `L` and `M`, each list sorted by decreasing order, oriented so
/// that the largest block overall is `L_1`.
#[derive(Debug, Clone, Serialize)]
pub struct BlockLibrary {
    pub l: Graph,
    pub m: Graph,
    pub l_blocks: Vec<Graph>,
    pub m_blocks: Vec<Graph>,
    pub maxblock: usize,
    /// The caller's `L` and `M` were exchanged to put the largest block
    /// first.
    pub swapped: bool,
    /// Vertices of `L` (`M`) lying in no block.
    pub l_isolated: Vec<usize>,
    pub m_isolated: Vec<usize>,
}

impl BlockLibrary {
    /// `(name, block)` for every piece: `L1..`, then `M1..`.
    pub fn pieces(&self) -> Vec<(String, &Graph)> {
        let ls = self
            .l_blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (format!("L{}", i + 1), b));
        let ms = self
            .m_blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (format!("M{}", i + 1), b));
        ls.chain(ms).collect()
    }
}

fn split_blocks(g: &Graph) -> (Vec<Graph>, Vec<usize>) {
    let bs = blocks(g);
    let mut covered = VertexSet::new(g.order());
    let mut graphs: Vec<Graph> = bs
        .iter()
        .map(|b| {
            covered.union_with(b);
            g.induced_on(&b.to_vec())
        })
        .collect();
    graphs.sort_by_key(|b| std::cmp::Reverse(b.order()));
    (graphs, g.vertices().difference(&covered).to_vec())
}

/// Block decomposition of both patterns.
pub fn block_library(l: &Graph, m: &Graph) -> Result<BlockLibrary> {
    if l.edge_count() == 0 || m.edge_count() == 0 {
        return Err(Error::hypothesis("L and M must each have at least one edge"));
    }
    let (lb, li) = split_blocks(l);
    let (mb, mi) = split_blocks(m);
    let largest = lb[0].order().max(mb[0].order());
    if largest > MAX_BLOCK_ORDER {
        return Err(Error::input(format!(
            "blocks on {largest} vertices exceed the supported {MAX_BLOCK_ORDER}"
        )));
    }
    let swapped = mb[0].order() > lb[0].order();
    let lib = if swapped {
        BlockLibrary {
            l: m.clone(),
            m: l.clone(),
            l_blocks: mb,
            m_blocks: lb,
            maxblock: largest,
            swapped,
            l_isolated: mi,
            m_isolated: li,
        }
    } else {
        BlockLibrary {
            l: l.clone(),
            m: m.clone(),
            l_blocks: lb,
            m_blocks: mb,
            maxblock: largest,
            swapped,
            l_isolated: li,
            m_isolated: mi,
        }
    };
    Ok(lib)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionParams {
    pub n: usize,
    /// Local radius; raised to `3 max(|L|, |M|)` when smaller.
    pub r: usize,
    /// Partition size the density audit targets.
    pub k: usize,
    /// Defaults to `1 / (r + 2)` for the effective `r`.
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub local_samples: usize,
    pub density_samples: usize,
}

impl ConstructionParams {
    pub fn new(n: usize, r: usize, k: usize, seed: u64) -> Self {
        ConstructionParams {
            n,
            r,
            k,
            epsilon: None,
            seed,
            local_samples: 1000,
            density_samples: 200,
        }
    }

    /// `max(r, 3|V(L)|, 3|V(M)|)`.
    pub fn effective_r(&self, lib: &BlockLibrary) -> usize {
        self.r.max(3 * lib.l.order()).max(3 * lib.m.order())
    }

    pub fn effective_epsilon(&self, lib: &BlockLibrary) -> Result<f64> {
        let eps = self.epsilon.unwrap_or(1.0 / (self.effective_r(lib) as f64 + 2.0));
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::input(format!("epsilon must lie in (0, 1), got {eps}")));
        }
        Ok(eps)
    }
}

/// `n^-(b-1)+eps`.
pub fn piece_probability(n: usize, block_order: usize, eps: f64) -> f64 {
    (n as f64).powf(-(block_order as f64 - 1.0) + eps).min(1.0)
}

/// One random `|V(B)|`-uniform hypergraph per piece `B`, merged with labels
/// (piece ids in [`BlockLibrary::pieces`] order).
pub fn sample_hypergraph(lib: &BlockLibrary, params: &ConstructionParams) -> Result<LabeledHypergraph> {
    let eps = params.effective_epsilon(lib)?;
    let mut items = Vec::new();
    for (id, (_, block)) in lib.pieces().into_iter().enumerate() {
        let mut rng = stream_rng(params.seed, streams::SAMPLE_BASE + id as u64);
        let p = piece_probability(params.n, block.order(), eps);
        for e in hypergraph::sample_uniform(params.n, block.order(), p, &mut rng)? {
            items.push((e, id));
        }
    }
    LabeledHypergraph::from_labeled(params.n, items)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeSource {
    pub edge: [usize; 2],
    /// Index into the realized hypergraph.
    pub hyperedge: usize,
}

/// A graph assembled from a clean hypergraph.
#[derive(Debug, Clone, Serialize)]
pub struct Realization {
    pub graph: Graph,
    /// One entry per edge, sorted by edge.
    pub provenance: Vec<EdgeSource>,
}

/// Places a copy of each hyperedge's block on its vertex set, block vertex
/// `i` going to the `i`-th vertex of a seeded shuffle.
pub fn realize(hg: &LabeledHypergraph, lib: &BlockLibrary, seed: u64) -> Result<Realization> {
    let v = find_violations(hg, 2);
    if !v.multilabel.is_empty() || !v.two_cycles.is_empty() {
        return Err(Error::hypothesis(
            "hypergraph still has multiply-labelled hyperedges or pairs in two hyperedges",
        ));
    }
    let pieces = lib.pieces();
    let mut rng = stream_rng(seed, streams::REALIZE);
    let mut g = Graph::new(hg.n);
    let mut provenance = Vec::new();
    for (id, e) in hg.hyperedges.iter().enumerate() {
        let label = *e.labels.iter().next().expect("hyperedges carry a label");
        let block = pieces
            .get(label)
            .ok_or_else(|| Error::input(format!("hyperedge {id} has unknown label {label}")))?
            .1;
        if block.order() != e.vertices.len() {
            return Err(Error::input(format!(
                "hyperedge {id} does not match the size of its block"
            )));
        }
        let mut slots = e.vertices.clone();
        slots.shuffle(&mut rng);
        for (a, b) in block.edges() {
            let (u, w) = (slots[a].min(slots[b]), slots[a].max(slots[b]));
            g.add_edge(u, w);
            provenance.push(EdgeSource {
                edge: [u, w],
                hyperedge: id,
            });
        }
    }
    provenance.sort_by_key(|s| s.edge);
    Ok(Realization { graph: g, provenance })
}

/// Structural checks on the realized graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationChecks {
    /// Every edge comes from exactly one hyperedge.
    pub provenance_unique: bool,
    /// Each hyperedge induces a graph isomorphic to its block.
    pub blocks_induced: bool,
    /// Distinct hyperedges share at most one vertex.
    pub intersections_at_most_one: bool,
    pub girth: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurvivingHyperedge {
    /// Vertices in the numbering of the output graph.
    pub vertices: Vec<usize>,
    pub piece: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolvedParams {
    #[serde(flatten)]
    pub given: ConstructionParams,
    pub effective_r: usize,
    pub effective_epsilon: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub schema_version: u32,
    pub params: ResolvedParams,
    pub pieces: Vec<String>,
    pub piece_orders: Vec<usize>,
    pub library_swapped: bool,
    /// Hyperedges drawn, before any removal.
    pub sampled_hyperedges: usize,
    pub initial_violations: ViolationCounts,
    pub removal_rounds: usize,
    /// `R`, in the original `0..n` numbering.
    pub removed: Vec<usize>,
    /// `|R| / (n / ln n)`.
    pub removed_ratio: f64,
    pub post_removal_violations: ViolationCounts,
    /// The output graph on `V \ R`, relabelled in increasing order.
    pub graph: GraphJson,
    /// Original id of each output vertex.
    pub vertex_ids: Vec<usize>,
    pub hyperedges: Vec<SurvivingHyperedge>,
    pub provenance: Vec<EdgeSource>,
    pub checks: RealizationChecks,
    pub local_split: LocalSplitReport,
    pub density: DensityReport,
    pub exact: Option<ExactCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ViolationCounts {
    pub multilabel: usize,
    pub two_cycles: usize,
    pub cycles: usize,
}

impl From<&Violations> for ViolationCounts {
    fn from(v: &Violations) -> Self {
        ViolationCounts {
            multilabel: v.multilabel.len(),
            two_cycles: v.two_cycles.len(),
            cycles: v.cycles.len(),
        }
    }
}

impl ViolationCounts {
    pub fn is_clean(&self) -> bool {
        self.multilabel == 0 && self.two_cycles == 0 && self.cycles == 0
    }
}

fn check_realization(g: &Graph, hg: &LabeledHypergraph, lib: &BlockLibrary, prov: &[EdgeSource]) -> RealizationChecks {
    let provenance_unique = prov.len() == g.edge_count() && prov.windows(2).all(|w| w[0].edge != w[1].edge);
    let pieces = lib.pieces();
    let blocks_induced = hg.hyperedges.iter().all(|e| {
        let label = *e.labels.iter().next().unwrap();
        is_isomorphic(&g.induced_on(&e.vertices), pieces[label].1)
    });
    let sets: Vec<VertexSet> = hg
        .hyperedges
        .iter()
        .map(|e| VertexSet::from_vertices(hg.n, e.vertices.iter().copied()))
        .collect();
    let intersections_at_most_one = sets
        .iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a.intersection_len(b) <= 1));
    RealizationChecks {
        provenance_unique,
        blocks_induced,
        intersections_at_most_one,
        girth: g.girth(),
    }
}

/// The whole pipeline: sample, remove violations, realize, audit.
pub fn construct(l: &Graph, m: &Graph, params: &ConstructionParams) -> Result<ConstructionReport> {
    if params.n == 0 {
        return Err(Error::input("n must be positive"));
    }
    if params.k == 0 {
        return Err(Error::input("k must be positive"));
    }
    let lib = block_library(l, m)?;
    let r = params.effective_r(&lib);
    let eps = params.effective_epsilon(&lib)?;
    let sampled = sample_hypergraph(&lib, params)?;
    let cleanup = remove_until_clean(&sampled, r);
    let post = find_violations(&cleanup.surviving, r);
    if !post.is_clean() {
        return Err(Error::hypothesis("violations survived removal"));
    }
    let full = realize(&cleanup.surviving, &lib, params.seed)?;

    let keep = VertexSet::full(params.n).difference(&cleanup.removed);
    let (graph, vertex_ids) = full.graph.induced(&keep)?;
    let mut new_id = vec![usize::MAX; params.n];
    for (i, &v) in vertex_ids.iter().enumerate() {
        new_id[v] = i;
    }
    let relabel = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|&v| new_id[v]).collect() };
    let surviving = LabeledHypergraph {
        n: graph.order(),
        hyperedges: cleanup
            .surviving
            .hyperedges
            .iter()
            .map(|e| Hyperedge {
                vertices: relabel(&e.vertices),
                labels: e.labels.clone(),
            })
            .collect(),
    };
    let provenance: Vec<EdgeSource> = full
        .provenance
        .iter()
        .map(|s| EdgeSource {
            edge: [new_id[s.edge[0]], new_id[s.edge[1]]],
            hyperedge: s.hyperedge,
        })
        .collect();
    let checks = check_realization(&graph, &surviving, &lib, &provenance);
    let names: Vec<String> = lib.pieces().into_iter().map(|(n, _)| n).collect();

    let local_split = audit_local_split(&graph, &lib.l, &lib.m, r, params.local_samples, params.seed)?;
    let density = audit_density(&graph, &lib.l, &lib.m, params.k, params.density_samples, params.seed)?;
    let exact = exact_partition_check(&graph, &lib.l, &lib.m, params.k, &density)?;
    let n = params.n as f64;
    Ok(ConstructionReport {
        schema_version: crate::SCHEMA_VERSION,
        params: ResolvedParams {
            given: params.clone(),
            effective_r: r,
            effective_epsilon: eps,
        },
        piece_orders: lib.pieces().iter().map(|(_, b)| b.order()).collect(),
        library_swapped: lib.swapped,
        sampled_hyperedges: sampled.len(),
        initial_violations: (&cleanup.initial).into(),
        removal_rounds: cleanup.rounds,
        removed: cleanup.removed.to_vec(),
        removed_ratio: if params.n > 1 {
            cleanup.removed.len() as f64 / (n / n.ln())
        } else {
            0.0
        },
        post_removal_violations: (&post).into(),
        graph: graph.to_json(),
        vertex_ids,
        hyperedges: surviving
            .hyperedges
            .iter()
            .map(|e| SurvivingHyperedge {
                vertices: e.vertices.clone(),
                piece: names[*e.labels.iter().next().unwrap()].clone(),
            })
            .collect(),
        pieces: names,
        provenance,
        checks,
        local_split,
        density,
        exact,
    })
}
