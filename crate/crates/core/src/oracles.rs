//! Brute-force ground truth for splits and `(F, P)`-partitions.
//!
//! Everything here is deliberately naive: exhaustive labelings checked with
//! the induced-subgraph search. The constructive algorithms elsewhere in the
//! crate are validated against these functions.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::embed::{find_induced_within, Embedding};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the number of labelings an exhaustive search may visit.
pub const DEFAULT_WORK_BUDGET: u64 = 100_000_000;

/// Largest host accepted by [`is_split`].
pub const MAX_SPLIT_ORDER: usize = 30;

/// Why a class of a partition is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    /// The class has exactly one vertex.
    Singleton,
    /// The class induces no copy of pattern `i` of the accompanying list.
    Avoids(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartClass {
    pub vertices: Vec<usize>,
    pub certificate: Certificate,
}

impl PartClass {
    pub fn new(set: &VertexSet, certificate: Certificate) -> Self {
        PartClass {
            vertices: set.to_vec(),
            certificate,
        }
    }

    pub fn to_set(&self, capacity: usize) -> VertexSet {
        VertexSet::from_vertices(capacity, self.vertices.iter().copied())
    }
}

/// An ordered list of certified classes covering the vertex set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FPartition {
    pub classes: Vec<PartClass>,
}

impl FPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Certificate indices used, in class order.
    pub fn avoided(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().filter_map(|c| match c.certificate {
            Certificate::Avoids(i) => Some(i),
            Certificate::Singleton => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    VertexOutOfRange {
        class: usize,
        vertex: usize,
    },
    Overlap {
        vertex: usize,
        first: usize,
        second: usize,
    },
    Uncovered {
        vertex: usize,
    },
    SingletonSize {
        class: usize,
        size: usize,
    },
    ContainsPattern {
        class: usize,
        pattern: usize,
        embedding: Embedding,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub valid: bool,
    pub first_violation: Option<Violation>,
}

impl PartitionReport {
    fn fail(v: Violation) -> Self {
        PartitionReport {
            valid: false,
            first_violation: Some(v),
        }
    }
}

/// Checks that `p` is a partition of `V(g)` whose classes honour their
/// certificates against `patterns`.
pub fn verify_partition(g: &Graph, patterns: &[Graph], p: &FPartition) -> Result<PartitionReport> {
    for (ci, class) in p.classes.iter().enumerate() {
        if let Certificate::Avoids(i) = class.certificate {
            if i >= patterns.len() {
                return Err(Error::input(format!(
                    "class {ci} cites pattern {i} but only {} patterns were given",
                    patterns.len()
                )));
            }
        }
    }
    let n = g.order();
    let mut owner = vec![usize::MAX; n];
    for (ci, class) in p.classes.iter().enumerate() {
        for &v in &class.vertices {
            if v >= n {
                return Ok(PartitionReport::fail(Violation::VertexOutOfRange {
                    class: ci,
                    vertex: v,
                }));
            }
            if owner[v] != usize::MAX {
                return Ok(PartitionReport::fail(Violation::Overlap {
                    vertex: v,
                    first: owner[v],
                    second: ci,
                }));
            }
            owner[v] = ci;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Ok(PartitionReport::fail(Violation::Uncovered { vertex: v }));
    }
    for (ci, class) in p.classes.iter().enumerate() {
        match class.certificate {
            Certificate::Singleton => {
                if class.vertices.len() != 1 {
                    return Ok(PartitionReport::fail(Violation::SingletonSize {
                        class: ci,
                        size: class.vertices.len(),
                    }));
                }
            }
            Certificate::Avoids(i) => {
                let set = class.to_set(n);
                if let Some(embedding) = find_induced_within(g, &set, &patterns[i]) {
                    return Ok(PartitionReport::fail(Violation::ContainsPattern {
                        class: ci,
                        pattern: i,
                        embedding,
                    }));
                }
            }
        }
    }
    Ok(PartitionReport {
        valid: true,
        first_violation: None,
    })
}

/// A cover `V = X ∪ Y` with `G|X` free of the first pattern and `G|Y` of the
/// second. The witnesses produced here are always disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Exhaustive search for an `{h1, h2}`-split of `g`. The first witness in
/// the order "vertex 0 to X before Y, then vertex 1, ..." is returned.
pub fn is_split(g: &Graph, h1: &Graph, h2: &Graph) -> Result<Option<SplitWitness>> {
    if g.order() > MAX_SPLIT_ORDER {
        return Err(Error::Budget(format!(
            "split search limited to {MAX_SPLIT_ORDER} vertices, got {}",
            g.order()
        )));
    }
    // Every vertex set contains the null graph.
    if h1.is_null() || h2.is_null() {
        return Ok(None);
    }
    let n = g.order();
    let mut sides = [VertexSet::new(n), VertexSet::new(n)];
    let patterns = [h1, h2];
    if split_extend(g, &patterns, 0, &mut sides) {
        Ok(Some(SplitWitness {
            x: sides[0].to_vec(),
            y: sides[1].to_vec(),
        }))
    } else {
        Ok(None)
    }
}

fn split_extend(g: &Graph, patterns: &[&Graph; 2], v: usize, sides: &mut [VertexSet; 2]) -> bool {
    if v == g.order() {
        return true;
    }
    for side in 0..2 {
        sides[side].insert(v);
        if find_induced_within(g, &sides[side], patterns[side]).is_none() && split_extend(g, patterns, v + 1, sides) {
            return true;
        }
        sides[side].remove(v);
    }
    false
}

/// How class certificates may be chosen in [`exists_partition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRule {
    /// At most `k` nonempty classes; each a singleton or free of some pattern.
    Free,
    /// Exactly one (possibly empty) class per pattern, class `i` free of
    /// pattern `i`; singletons get no special treatment.
    PerPattern,
}

/// Exact search for an `(F, k)`-partition of `g`. Refuses with
/// [`Error::Budget`] when `k^n` exceeds `budget`.
pub fn exists_partition(
    g: &Graph,
    patterns: &[Graph],
    k: usize,
    rule: ClassRule,
    budget: u64,
) -> Result<Option<FPartition>> {
    if k == 0 {
        return Err(Error::input("partition size k must be at least 1"));
    }
    if rule == ClassRule::PerPattern && k != patterns.len() {
        return Err(Error::input("per-pattern rule needs one class per pattern"));
    }
    let n = g.order();
    let work = (k as f64).powi(n as i32);
    if work > budget as f64 {
        return Err(Error::Budget(format!(
            "{k}^{n} labelings exceed the budget of {budget}"
        )));
    }
    let mut search = LabelSearch {
        g,
        patterns,
        k,
        rule,
        memo: HashMap::new(),
    };
    let mut classes: Vec<VertexSet> = match rule {
        ClassRule::Free => Vec::new(),
        ClassRule::PerPattern => vec![VertexSet::new(n); k],
    };
    if !search.extend(0, &mut classes) {
        return Ok(None);
    }
    let mut out = FPartition::default();
    for (ci, set) in classes.iter().enumerate() {
        let certificate = match rule {
            ClassRule::PerPattern => {
                if set.is_empty() {
                    continue;
                }
                Certificate::Avoids(ci)
            }
            ClassRule::Free if set.len() == 1 => Certificate::Singleton,
            ClassRule::Free => Certificate::Avoids(search.first_avoided(set).expect("viable class avoids a pattern")),
        };
        out.classes.push(PartClass::new(set, certificate));
    }
    Ok(Some(out))
}

struct LabelSearch<'a> {
    g: &'a Graph,
    patterns: &'a [Graph],
    k: usize,
    rule: ClassRule,
    memo: HashMap<(VertexSet, usize), bool>,
}

impl LabelSearch<'_> {
    fn avoids(&mut self, set: &VertexSet, pattern: usize) -> bool {
        let key = (set.clone(), pattern);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let free = find_induced_within(self.g, set, &self.patterns[pattern]).is_none();
        self.memo.insert(key, free);
        free
    }

    fn first_avoided(&mut self, set: &VertexSet) -> Option<usize> {
        (0..self.patterns.len()).find(|&i| self.avoids(set, i))
    }

    fn viable(&mut self, class: usize, set: &VertexSet) -> bool {
        match self.rule {
            ClassRule::PerPattern => self.avoids(set, class),
            ClassRule::Free => set.len() <= 1 || self.first_avoided(set).is_some(),
        }
    }

    fn extend(&mut self, v: usize, classes: &mut Vec<VertexSet>) -> bool {
        if v == self.g.order() {
            return true;
        }
        for c in 0..classes.len() {
            classes[c].insert(v);
            let set = classes[c].clone();
            if self.viable(c, &set) && self.extend(v + 1, classes) {
                return true;
            }
            classes[c].remove(v);
        }
        if self.rule == ClassRule::Free && classes.len() < self.k {
            let mut fresh = VertexSet::new(self.g.order());
            fresh.insert(v);
            classes.push(fresh);
            if self.extend(v + 1, classes) {
                return true;
            }
            classes.pop();
        }
        false
    }
}
