//! Cotrees, universal cographs, and splits of graphs excluding a pair of
//! cographs.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::embed::contains_induced;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::{Certificate, FPartition};
use crate::partition::{disconnected_partition_with, EngineConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Leaf,
    Union,
    Join,
}

/// Build tree of a cograph. Constructors keep it normalized: no Union
/// directly below a Union, no Join below a Join, and no internal node with
/// a single child.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cotree {
    op: Op,
    children: Vec<Cotree>,
    height: usize,
    leaves: usize,
}

impl Cotree {
    pub fn leaf() -> Self {
        Cotree {
            op: Op::Leaf,
            children: Vec::new(),
            height: 0,
            leaves: 1,
        }
    }

    fn node(op: Op, children: Vec<Cotree>) -> Self {
        assert!(!children.is_empty(), "cotree nodes need at least one child");
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            if c.op == op {
                flat.extend(c.children);
            } else {
                flat.push(c);
            }
        }
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        Cotree {
            op,
            height: 1 + flat.iter().map(|c| c.height).max().unwrap(),
            leaves: flat.iter().map(|c| c.leaves).sum(),
            children: flat,
        }
    }

    /// Disjoint union.
    pub fn union(children: Vec<Cotree>) -> Self {
        Self::node(Op::Union, children)
    }

    /// Disjoint union plus every edge between different children.
    pub fn join(children: Vec<Cotree>) -> Self {
        Self::node(Op::Join, children)
    }

    /// `K_n`, or a leaf for `n = 1`.
    pub fn complete(n: usize) -> Self {
        Self::join(vec![Self::leaf(); n])
    }

    /// `n` isolated vertices.
    pub fn stable(n: usize) -> Self {
        Self::union(vec![Self::leaf(); n])
    }

    pub fn op(&self) -> Op {
        self.op
    }

    pub fn children(&self) -> &[Cotree] {
        &self.children
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of vertices of the realized graph.
    pub fn leaves(&self) -> usize {
        self.leaves
    }

    /// Realized graph is connected (a leaf or a join).
    pub fn is_connected(&self) -> bool {
        self.op != Op::Union
    }

    /// Realized complement is connected (a leaf or a union).
    pub fn is_anticonnected(&self) -> bool {
        self.op != Op::Join
    }

    /// Components of the realized graph, as subtrees.
    pub fn components(&self) -> Vec<Cotree> {
        match self.op {
            Op::Union => self.children.clone(),
            _ => vec![self.clone()],
        }
    }

    /// Anticomponents of the realized graph, as subtrees.
    pub fn anticomponents(&self) -> Vec<Cotree> {
        match self.op {
            Op::Join => self.children.clone(),
            _ => vec![self.clone()],
        }
    }

    pub fn complement(&self) -> Self {
        let op = match self.op {
            Op::Leaf => return Self::leaf(),
            Op::Union => Op::Join,
            Op::Join => Op::Union,
        };
        Cotree {
            op,
            children: self.children.iter().map(Cotree::complement).collect(),
            height: self.height,
            leaves: self.leaves,
        }
    }

    /// A string equal for two cotrees exactly when their realized graphs are
    /// isomorphic.
    pub fn canonical_form(&self) -> String {
        match self.op {
            Op::Leaf => "L".to_string(),
            op => {
                let mut parts: Vec<String> = self.children.iter().map(Cotree::canonical_form).collect();
                parts.sort();
                let tag = if op == Op::Union { 'U' } else { 'J' };
                format!("{tag}({})", parts.join(","))
            }
        }
    }

    /// Leaves are numbered in depth-first order.
    pub fn realize(&self) -> Graph {
        let mut g = Graph::new(self.leaves);
        self.realize_into(&mut g, 0);
        g
    }

    /// [`Cotree::realize`] refusing graphs with more than `limit` vertices.
    pub fn realize_bounded(&self, limit: usize) -> Result<Graph> {
        if self.leaves > limit {
            return Err(Error::Budget(format!(
                "cotree has {} leaves, above the realization limit {limit}",
                self.leaves
            )));
        }
        Ok(self.realize())
    }

    fn realize_into(&self, g: &mut Graph, offset: usize) {
        let mut start = offset;
        let mut spans = Vec::with_capacity(self.children.len());
        for c in &self.children {
            c.realize_into(g, start);
            spans.push(start..start + c.leaves);
            start += c.leaves;
        }
        if self.op == Op::Join {
            for (i, a) in spans.iter().enumerate() {
                for b in &spans[i + 1..] {
                    for u in a.clone() {
                        for v in b.clone() {
                            g.add_edge(u, v);
                        }
                    }
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum CotreeJson {
    Leaf,
    Union { children: Vec<CotreeJson> },
    Join { children: Vec<CotreeJson> },
}

impl From<&Cotree> for CotreeJson {
    fn from(t: &Cotree) -> Self {
        let children = || t.children.iter().map(CotreeJson::from).collect();
        match t.op {
            Op::Leaf => CotreeJson::Leaf,
            Op::Union => CotreeJson::Union { children: children() },
            Op::Join => CotreeJson::Join { children: children() },
        }
    }
}

impl TryFrom<CotreeJson> for Cotree {
    type Error = String;

    fn try_from(j: CotreeJson) -> std::result::Result<Self, String> {
        let convert = |children: Vec<CotreeJson>| -> std::result::Result<Vec<Cotree>, String> {
            if children.is_empty() {
                return Err("cotree node with no children".into());
            }
            children.into_iter().map(Cotree::try_from).collect()
        };
        Ok(match j {
            CotreeJson::Leaf => Cotree::leaf(),
            CotreeJson::Union { children } => Cotree::union(convert(children)?),
            CotreeJson::Join { children } => Cotree::join(convert(children)?),
        })
    }
}

impl Serialize for Cotree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CotreeJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cotree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CotreeJson::deserialize(d)?;
        Cotree::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// A cotree for `g`, or `None` when `g` is null or contains an induced
/// `P4`.
pub fn is_cograph(g: &Graph) -> Option<Cotree> {
    match g.order() {
        0 => None,
        1 => Some(Cotree::leaf()),
        _ => {
            let parts = g.components();
            let op = if parts.len() > 1 {
                Op::Union
            } else {
                let anti = g.anticomponents();
                if anti.len() == 1 {
                    return None;
                }
                return build(g, &anti, Op::Join);
            };
            build(g, &parts, op)
        }
    }
}

fn build(g: &Graph, parts: &[VertexSet], op: Op) -> Option<Cotree> {
    let children = parts
        .iter()
        .map(|p| is_cograph(&g.induced_on(&p.to_vec())))
        .collect::<Option<Vec<_>>>()?;
    Some(Cotree::node(op, children))
}

fn dedup(trees: impl IntoIterator<Item = Cotree>) -> Vec<Cotree> {
    let mut seen = BTreeSet::new();
    trees.into_iter().filter(|t| seen.insert(t.canonical_form())).collect()
}

/// A connected cograph of height `k` with no `(F, P)`-partition: every
/// partition of its vertices into `P` sets has a set inducing a graph that
/// contains every member of `family`.
pub fn universal_cograph(family: &[Cotree], p: usize, k: usize) -> Result<Cotree> {
    if family.is_empty() {
        return Err(Error::input("universal cograph needs at least one pattern"));
    }
    if p == 0 || k == 0 {
        return Err(Error::input("P and k must be positive"));
    }
    for (i, f) in family.iter().enumerate() {
        if !f.is_connected() {
            return Err(Error::hypothesis(format!("pattern {i} is disconnected")));
        }
        if f.height() > k {
            return Err(Error::hypothesis(format!(
                "pattern {i} has height {} above {k}",
                f.height()
            )));
        }
    }
    if k == 1 {
        let m = family.iter().map(Cotree::leaves).max().unwrap();
        // K_1 has height 0; two vertices keep the height at 1.
        return Ok(Cotree::complete((m * p).max(2)));
    }
    let anti = dedup(family.iter().flat_map(Cotree::anticomponents));
    let inverted: Vec<Cotree> = anti.iter().map(Cotree::complement).collect();
    let c = universal_cograph(&inverted, p, k - 1)?.complement();
    let s = family.iter().map(|f| f.anticomponents().len()).max().unwrap();
    let copies = (s - 1) * p + 2;
    Ok(Cotree::join(vec![c; copies]))
}

/// Exhaustive check that every partition of `V(c)` into at most `p` sets
/// has a set whose induced subgraph contains every member of `family`.
/// Refuses when `p^n` exceeds `budget`.
pub fn is_universal_bruteforce(c: &Graph, family: &[Graph], p: usize, budget: u64) -> Result<bool> {
    let n = c.order();
    if p == 0 {
        return Err(Error::input("P must be positive"));
    }
    if n > 64 {
        return Err(Error::Budget(format!("{n} vertices is beyond exhaustive checking")));
    }
    let work = (p as f64).powi(n as i32);
    if work > budget as f64 {
        return Err(Error::Budget(format!("{p}^{n} labelings exceed the budget {budget}")));
    }
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut full = |mask: u64| -> bool {
        *memo.entry(mask).or_insert_with(|| {
            let set = VertexSet::from_vertices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            let (sub, _) = c.induced(&set).expect("mask within range");
            family.iter().all(|f| contains_induced(&sub, f).is_some())
        })
    };
    // Restricted-growth labels: vertex v may open class `used` but no later one.
    let mut labels = vec![0usize; n];
    let mut masks = vec![0u64; p];
    fn rec(
        v: usize,
        used: usize,
        n: usize,
        p: usize,
        labels: &mut [usize],
        masks: &mut [u64],
        full: &mut dyn FnMut(u64) -> bool,
    ) -> bool {
        if v == n {
            return masks.iter().any(|&m| full(m));
        }
        for class in 0..p.min(used + 1) {
            labels[v] = class;
            masks[class] |= 1 << v;
            let ok = rec(v + 1, used.max(class + 1), n, p, labels, masks, full);
            masks[class] &= !(1 << v);
            if !ok {
                return false;
            }
        }
        true
    }
    Ok(rec(0, 0, n, p, &mut labels, &mut masks, &mut full))
}

/// Output of [`cograph_split`].
#[derive(Debug, Clone, Serialize)]
pub struct CographSplit {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Connected, induces nothing in `G|X`.
    pub htilde: Cotree,
    /// Anticonnected, induces nothing in `G|Y`.
    pub jtilde: Cotree,
    /// Number of classes `P` in the underlying partition.
    pub classes: usize,
    pub partition: FPartition,
    /// Components of `H` followed by anticomponents of `J`.
    pub patterns: Vec<Graph>,
}

impl CographSplit {
    /// Whether `G|X` is `htilde`-free, `G|Y` is `jtilde`-free, and `X, Y`
    /// partition `V(G)`.
    pub fn check(&self, g: &Graph) -> Result<bool> {
        let n = g.order();
        let x = VertexSet::from_vertices(n, self.x.iter().copied());
        let y = VertexSet::from_vertices(n, self.y.iter().copied());
        if !x.is_disjoint(&y) || x.union(&y) != g.vertices() {
            return Ok(false);
        }
        Ok(side_free(g, &x, &self.htilde)? && side_free(g, &y, &self.jtilde)?)
    }
}

fn side_free(g: &Graph, side: &VertexSet, pattern: &Cotree) -> Result<bool> {
    if pattern.leaves() > side.len() {
        return Ok(true);
    }
    let (sub, _) = g.induced(side)?;
    Ok(contains_induced(&sub, &pattern.realize()).is_none())
}

/// Splits an `{H, J}`-free graph into `X` and `Y` with `G|X` free of a
/// connected cograph `H~` and `G|Y` free of an anticonnected cograph `J~`,
/// where `H` is an anticonnected cograph and `J` a connected one, each of
/// height at least 2.
pub fn cograph_split(g: &Graph, h: &Cotree, j: &Cotree) -> Result<CographSplit> {
    cograph_split_with(g, h, j, EngineConfig::default())
}

pub fn cograph_split_with(g: &Graph, h: &Cotree, j: &Cotree, config: EngineConfig) -> Result<CographSplit> {
    if !h.is_anticonnected() || h.height() < 2 {
        return Err(Error::hypothesis(
            "H must be an anticonnected cograph of height at least 2",
        ));
    }
    if !j.is_connected() || j.height() < 2 {
        return Err(Error::hypothesis("J must be a connected cograph of height at least 2"));
    }
    let driven = disconnected_partition_with(g, &h.realize(), &j.realize(), config)?;
    let n = g.order();
    let mut x = VertexSet::new(n);
    let mut y = VertexSet::new(n);
    for class in &driven.partition.classes {
        let side = match class.certificate {
            Certificate::Avoids(i) if i >= driven.h_components => &mut y,
            _ => &mut x,
        };
        for &v in &class.vertices {
            side.insert(v);
        }
    }
    let p = driven.partition.len().max(1);
    let htilde = universal_cograph(&dedup(h.components()), p, h.height() - 1)?;
    let inverted: Vec<Cotree> = dedup(j.anticomponents()).iter().map(Cotree::complement).collect();
    let jtilde = universal_cograph(&inverted, p, j.height() - 1)?.complement();
    Ok(CographSplit {
        x: x.to_vec(),
        y: y.to_vec(),
        htilde,
        jtilde,
        classes: driven.partition.len(),
        partition: driven.partition,
        patterns: driven.patterns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::is_isomorphic;
    use crate::graph::named;
    use crate::oracles::DEFAULT_WORK_BUDGET;

    fn l() -> Cotree {
        Cotree::leaf()
    }

    #[test]
    fn realize_small_cotrees() {
        assert_eq!(Cotree::join(vec![l(), l(), l()]).realize(), named::complete(3));
        let two_k2 = Cotree::union(vec![Cotree::join(vec![l(), l()]), Cotree::join(vec![l(), l()])]);
        assert!(is_isomorphic(&two_k2.realize(), &named::two_k2()));
        let c4 = Cotree::join(vec![Cotree::stable(2), Cotree::stable(2)]);
        assert!(is_isomorphic(&c4.realize(), &named::cycle(4)));
    }

    #[test]
    fn heights() {
        assert_eq!(l().height(), 0);
        assert_eq!(Cotree::complete(5).height(), 1);
        assert_eq!(Cotree::join(vec![Cotree::stable(2), Cotree::stable(2)]).height(), 2);
    }

    #[test]
    fn constructors_normalize() {
        let t = Cotree::union(vec![Cotree::union(vec![l(), l()]), l()]);
        assert_eq!(t.children().len(), 3);
        assert_eq!(t.height(), 1);
        assert_eq!(Cotree::join(vec![l()]), l());
    }

    #[test]
    fn recognition() {
        assert!(is_cograph(&named::path(4)).is_none());
        let c4 = is_cograph(&named::cycle(4)).unwrap();
        assert_eq!(c4.height(), 2);
        assert_eq!(c4.op(), Op::Join);
        assert_eq!(is_cograph(&named::complete(1)), Some(l()));
        assert!(is_cograph(&Graph::new(0)).is_none());
        assert!(is_cograph(&named::cycle(5)).is_none());
    }

    #[test]
    fn json_roundtrip() {
        let t = Cotree::join(vec![Cotree::stable(2), l()]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"op":"join","children":[{"op":"union","children":[{"op":"leaf"},{"op":"leaf"}]},{"op":"leaf"}]}"#
        );
        let back: Cotree = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Cotree>(r#"{"op":"join","children":[]}"#).is_err());
        let nested: Cotree = serde_json::from_str(
            r#"{"op":"join","children":[{"op":"join","children":[{"op":"leaf"},{"op":"leaf"}]},{"op":"leaf"}]}"#,
        )
        .unwrap();
        assert_eq!(nested, Cotree::complete(3));
    }

    #[test]
    fn canonical_form_ignores_child_order() {
        let a = Cotree::join(vec![Cotree::stable(2), l()]);
        let b = Cotree::join(vec![l(), Cotree::stable(2)]);
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert_ne!(a.canonical_form(), Cotree::complete(3).canonical_form());
    }

    #[test]
    fn universal_k1_is_complete() {
        let u = universal_cograph(&[Cotree::complete(2)], 2, 1).unwrap();
        assert_eq!(u, Cotree::complete(4));
        let u = universal_cograph(&[Cotree::complete(3)], 2, 1).unwrap();
        assert_eq!(u.realize(), named::complete(6));
        assert_eq!(universal_cograph(&[l()], 1, 1).unwrap().height(), 1);
    }

    #[test]
    fn universal_for_c4() {
        let c4 = Cotree::join(vec![Cotree::stable(2), Cotree::stable(2)]);
        let u = universal_cograph(&[c4], 1, 2).unwrap();
        assert_eq!(u, Cotree::join(vec![Cotree::stable(2); 3]));
        assert_eq!(u.height(), 2);
        assert!(is_universal_bruteforce(&u.realize(), &[named::cycle(4)], 1, DEFAULT_WORK_BUDGET).unwrap());
    }

    #[test]
    fn universal_rejects_bad_patterns() {
        assert!(matches!(
            universal_cograph(&[Cotree::stable(2)], 2, 2),
            Err(Error::Hypothesis { .. })
        ));
        let c4 = Cotree::join(vec![Cotree::stable(2), Cotree::stable(2)]);
        assert!(matches!(universal_cograph(&[c4], 2, 1), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn bruteforce_examples() {
        let b = DEFAULT_WORK_BUDGET;
        assert!(is_universal_bruteforce(&named::complete(4), &[named::complete(2)], 2, b).unwrap());
        assert!(is_universal_bruteforce(&named::complete(3), &[named::complete(2)], 2, b).unwrap());
        assert!(!is_universal_bruteforce(&named::complete(2), &[named::complete(2)], 2, b).unwrap());
        assert!(!is_universal_bruteforce(&named::stable(4), &[named::complete(2)], 1, b).unwrap());
        assert!(matches!(
            is_universal_bruteforce(&named::complete(30), &[named::complete(2)], 3, b),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn split_of_c5() {
        let h = Cotree::union(vec![Cotree::complete(2), Cotree::complete(2)]);
        let j = Cotree::join(vec![Cotree::stable(2), Cotree::stable(2)]);
        let g = named::cycle(5);
        let s = cograph_split(&g, &h, &j).unwrap();
        assert!(s.check(&g).unwrap());
        assert_eq!(s.htilde, Cotree::complete(2 * s.classes));
        assert_eq!(s.jtilde, Cotree::stable(2 * s.classes));
    }

    #[test]
    fn split_single_vertex_and_errors() {
        let h = Cotree::union(vec![Cotree::complete(2), Cotree::complete(2)]);
        let j = Cotree::join(vec![Cotree::stable(2), Cotree::stable(2)]);
        let s = cograph_split(&named::complete(1), &h, &j).unwrap();
        assert_eq!(s.x.len() + s.y.len(), 1);
        let err = cograph_split(&named::cycle(4), &h, &j).unwrap_err();
        assert!(err.witness().is_some());
        assert!(matches!(
            cograph_split(&named::cycle(5), &j, &h),
            Err(Error::Hypothesis { .. })
        ));
    }
}
