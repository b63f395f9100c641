//! The piece recursion shared by the graph and tournament partition
//! algorithms.
//!
//! A host structure is anything with a binary relation given by bitset
//! rows: adjacency for graphs, "beats" for tournaments. The pattern `H*` has
//! vertices `0..m` forming `H1` and one extra vertex `m` taken from `H2`.
//! A piece maps a subset `T` of `V(H1)` into the host, and a host vertex
//! `v` corresponds to an extension `T + s` when its relation to every image
//! vertex `g(x)` equals the relation of `s` to `x` in `H*`.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::oracles::Certificate;

pub(crate) const UNMAPPED: usize = usize::MAX;

pub(crate) trait Relational {
    fn order(&self) -> usize;
    /// Vertices `v` with `u -> v` (for graphs, the neighbourhood of `u`).
    fn out_row(&self, u: usize) -> &VertexSet;
    fn related(&self, u: usize, v: usize) -> bool {
        self.out_row(u).contains(v)
    }
    /// Host vertices of a copy of `pattern` inside `self | within`.
    fn find_within(&self, within: &VertexSet, pattern: &Self) -> Option<Vec<usize>>;
}

/// `phi(t) = 2(m+1)^(m-t)` for `t < m`, and `1` for `t = m`.
pub fn phi(t: usize, m: usize) -> Result<u64> {
    if t > m {
        return Err(Error::input(format!("phi needs 0 <= t <= m, got t={t}, m={m}")));
    }
    if t == m {
        return Ok(1);
    }
    (m as u64 + 1)
        .checked_pow((m - t) as u32)
        .and_then(|p| p.checked_mul(2))
        .ok_or_else(|| Error::Budget(format!("phi({t}) overflows for m={m}")))
}

/// Counters collected during one run of the recursion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    /// Distinct pieces evaluated (cache misses).
    pub pieces: u64,
    pub cache_hits: u64,
    /// Base-case pieces whose corresponding set was checked against `H2`.
    pub full_piece_checks: u64,
    /// Most distinct vertex types seen at each level `t`.
    pub max_types: Vec<usize>,
    /// Most classes returned at each level `t`.
    pub max_classes: Vec<usize>,
    /// Pieces whose corresponding set was split around an embedded copy.
    pub splits: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct EngineConfig {
    /// Re-check every intermediate step and fail loudly if one breaks.
    pub audit: bool,
    /// Refuse once this many distinct pieces have been evaluated.
    pub max_pieces: u64,
    /// Cap on cached piece outcomes.
    pub cache_limit: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            audit: false,
            max_pieces: 5_000_000,
            cache_limit: 1_000_000,
        }
    }
}

pub(crate) struct PieceOutcome {
    /// The `H*` vertex added to `T` to form the chosen extension.
    pub added: usize,
    /// Partition of the corresponding set of that extension.
    pub classes: Vec<(VertexSet, Certificate)>,
}

/// `rule(related(s, r))` gives the pattern to embed as `B` and the
/// certificate earned by the vertices with the opposite relation to all of
/// `B`.
pub(crate) type SplitRule = fn(bool) -> (usize, usize);

pub(crate) struct PieceEngine<'a, S: Relational> {
    host: &'a S,
    hstar: &'a S,
    patterns: &'a [S],
    m: usize,
    base_certificate: usize,
    split_rule: SplitRule,
    config: EngineConfig,
    cache: HashMap<Vec<usize>, Rc<PieceOutcome>>,
    pub stats: EngineStats,
}

impl<'a, S: Relational> PieceEngine<'a, S> {
    pub fn new(
        host: &'a S,
        hstar: &'a S,
        patterns: &'a [S],
        base_certificate: usize,
        split_rule: SplitRule,
        config: EngineConfig,
    ) -> Self {
        let m = hstar.order() - 1;
        PieceEngine {
            host,
            hstar,
            patterns,
            m,
            base_certificate,
            split_rule,
            config,
            cache: HashMap::new(),
            stats: EngineStats {
                max_types: vec![0; m + 1],
                max_classes: vec![0; m + 1],
                ..EngineStats::default()
            },
        }
    }

    /// Host vertices outside the image that `g`-correspond to `T + s`.
    pub fn corresponding(&self, images: &[usize], s: usize) -> VertexSet {
        let mut set = VertexSet::full(self.host.order());
        for &v in images.iter().filter(|&&v| v != UNMAPPED) {
            set.remove(v);
        }
        for (x, &gx) in images.iter().enumerate() {
            if gx == UNMAPPED {
                continue;
            }
            let row = self.host.out_row(gx);
            if self.hstar.related(x, s) {
                set.intersect_with(row);
            } else {
                set.difference_with(row);
            }
        }
        set
    }

    /// Runs the recursion from the empty piece; the result partitions every
    /// host vertex.
    pub fn run(&mut self) -> Result<Vec<(VertexSet, Certificate)>> {
        let mut images = vec![UNMAPPED; self.m + 1];
        let outcome = self.solve(&mut images, 0)?;
        Ok(outcome.classes.clone())
    }

    /// Partition for the piece described by `images` (indexed by `H*`
    /// vertex, `UNMAPPED` outside `T`). Returns the extension `T + added`
    /// together with a partition of its corresponding set into at most
    /// `phi(t)` classes.
    pub fn solve(&mut self, images: &mut Vec<usize>, t: usize) -> Result<Rc<PieceOutcome>> {
        if let Some(hit) = self.cache.get(images.as_slice()) {
            self.stats.cache_hits += 1;
            return Ok(Rc::clone(hit));
        }
        self.stats.pieces += 1;
        if self.stats.pieces > self.config.max_pieces {
            return Err(Error::Budget(format!(
                "more than {} pieces evaluated",
                self.config.max_pieces
            )));
        }
        let outcome = if t == self.m {
            self.solve_full(images)?
        } else {
            self.solve_partial(images, t)?
        };
        let bound = phi(t, self.m)?;
        self.stats.max_classes[t] = self.stats.max_classes[t].max(outcome.classes.len());
        if self.config.audit {
            if outcome.classes.len() as u64 > bound {
                return Err(Error::hypothesis(format!(
                    "level {t} produced {} classes, above phi = {bound}",
                    outcome.classes.len()
                )));
            }
            let mut covered = VertexSet::new(self.host.order());
            for (set, _) in &outcome.classes {
                if !covered.is_disjoint(set) {
                    return Err(Error::hypothesis(format!("level {t} produced overlapping classes")));
                }
                covered.union_with(set);
            }
            if covered != self.corresponding(images, outcome.added) {
                return Err(Error::hypothesis(format!(
                    "level {t} classes do not cover the corresponding set"
                )));
            }
        }
        let outcome = Rc::new(outcome);
        if self.cache.len() < self.config.cache_limit {
            self.cache.insert(images.clone(), Rc::clone(&outcome));
        }
        Ok(outcome)
    }

    /// `T = V(H1)`: the only extension adds `h*`, and its corresponding set
    /// is free of `H2` whenever the host is free of `H`.
    fn solve_full(&mut self, images: &[usize]) -> Result<PieceOutcome> {
        let hstar_vertex = self.m;
        let y = self.corresponding(images, hstar_vertex);
        if self.config.audit {
            self.stats.full_piece_checks += 1;
            for v in y.iter() {
                for (x, &image) in images.iter().enumerate().take(self.m) {
                    if self.host.related(image, v) != self.hstar.related(x, hstar_vertex)
                        || self.host.related(v, image) != self.hstar.related(hstar_vertex, x)
                    {
                        return Err(Error::hypothesis(format!(
                            "vertex {v} of Y(g) has the wrong relation to image vertex {image}"
                        )));
                    }
                }
            }
            if let Some(copy) = self.host.find_within(&y, &self.patterns[self.base_certificate]) {
                let mut witness: Vec<usize> = images[..self.m].to_vec();
                witness.extend(copy);
                return Err(Error::found("an H1-piece extends to a full copy of H", "H", witness));
            }
        }
        let classes = if y.is_empty() {
            Vec::new()
        } else {
            vec![(y, Certificate::Avoids(self.base_certificate))]
        };
        Ok(PieceOutcome {
            added: hstar_vertex,
            classes,
        })
    }

    fn solve_partial(&mut self, images: &mut Vec<usize>, t: usize) -> Result<PieceOutcome> {
        let s = (0..self.m)
            .find(|&x| images[x] == UNMAPPED)
            .expect("t < m leaves an unmapped H1 vertex");
        let ys = self.corresponding(images, s);

        // Type every vertex of Y_S(g) by the extension its own piece picks.
        let mut zones: BTreeMap<usize, VertexSet> = BTreeMap::new();
        let mut below: HashMap<usize, Rc<PieceOutcome>> = HashMap::new();
        for v in ys.iter() {
            images[s] = v;
            let res = self.solve(images, t + 1);
            images[s] = UNMAPPED;
            let res = res?;
            zones
                .entry(res.added)
                .or_insert_with(|| VertexSet::new(self.host.order()))
                .insert(v);
            below.insert(v, res);
        }
        self.stats.max_types[t] = self.stats.max_types[t].max(zones.len());
        if self.config.audit && zones.len() > self.m - t {
            return Err(Error::hypothesis(format!(
                "{} vertex types at level {t}, more than m - t = {}",
                zones.len(),
                self.m - t
            )));
        }

        let full_zone = zones
            .iter()
            .find(|(_, z)| self.patterns.iter().all(|p| self.host.find_within(z, p).is_some()))
            .map(|(&r, z)| (r, z.clone()));

        let Some((r, zone)) = full_zone else {
            // Every type class misses some pattern.
            let classes = zones
                .values()
                .map(|z| {
                    let missing = self
                        .patterns
                        .iter()
                        .position(|p| self.host.find_within(z, p).is_none())
                        .expect("checked above");
                    (z.clone(), Certificate::Avoids(missing))
                })
                .collect();
            return Ok(PieceOutcome { added: s, classes });
        };

        self.stats.splits += 1;
        let a = self.corresponding(images, r);
        let relation = self.hstar.related(s, r);
        let (b_pattern, rest_certificate) = (self.split_rule)(relation);
        let mut b: Vec<usize> = self
            .host
            .find_within(&zone, &self.patterns[b_pattern])
            .expect("zone contains every pattern");
        b.sort_unstable();
        let b_set = VertexSet::from_vertices(self.host.order(), b.iter().copied());

        // Each remaining vertex of A goes to the first b related to it the
        // way s is related to r; otherwise it lands in A_0.
        let n = self.host.order();
        let mut assigned: Vec<VertexSet> = vec![VertexSet::new(n); b.len()];
        let mut rest = VertexSet::new(n);
        for u in a.difference(&b_set).iter() {
            match b.iter().position(|&bv| self.host.related(bv, u) == relation) {
                Some(i) => assigned[i].insert(u),
                None => rest.insert(u),
            }
        }

        let mut classes: Vec<(VertexSet, Certificate)> = Vec::new();
        for &bv in b.iter().filter(|&&bv| a.contains(bv)) {
            classes.push((VertexSet::from_vertices(n, [bv]), Certificate::Singleton));
        }
        if !rest.is_empty() {
            classes.push((rest, Certificate::Avoids(rest_certificate)));
        }
        for (i, &bv) in b.iter().enumerate() {
            if assigned[i].is_empty() {
                continue;
            }
            let sub = &below[&bv];
            debug_assert_eq!(sub.added, r);
            let mut left = assigned[i].clone();
            for (set, cert) in &sub.classes {
                let piece = set.intersection(&assigned[i]);
                if !piece.is_empty() {
                    left.difference_with(&piece);
                    classes.push((piece, *cert));
                }
            }
            if !left.is_empty() {
                return Err(Error::hypothesis(format!(
                    "vertices {:?} adjacent-pattern to {bv} are missing from its piece partition",
                    left.to_vec()
                )));
            }
        }
        Ok(PieceOutcome { added: r, classes })
    }
}
