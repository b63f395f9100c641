//! Simple undirected graphs on `0..n` with bitset adjacency rows.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::SCHEMA_VERSION;

/// A finite simple graph. Rows are symmetric with an empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_null(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &VertexSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n);
        let adj = (0..self.n)
            .map(|u| {
                let mut row = full.difference(&self.adj[u]);
                row.remove(u);
                row
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// The subgraph induced on `set`, relabelled to `0..|set|` in increasing
    /// order. The returned map sends each new vertex to its original id.
    pub fn induced(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if set.capacity() > self.n && set.iter().any(|v| v >= self.n) {
            return Err(Error::input("vertex set exceeds the graph's vertex range"));
        }
        let map = set.to_vec();
        Ok((self.induced_on(&map), map))
    }

    /// The subgraph induced on the listed vertices, in the order given.
    pub fn induced_on(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Connected components, each as a vertex set, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        components_by(self.n, |u| self.adj[u].clone())
    }

    /// Components of the complement, ordered by least vertex.
    pub fn anticomponents(&self) -> Vec<VertexSet> {
        let full = VertexSet::full(self.n);
        components_by(self.n, |u| {
            let mut row = full.difference(&self.adj[u]);
            row.remove(u);
            row
        })
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_anticonnected(&self) -> bool {
        self.anticomponents().len() == 1
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for v in self.adj[u].iter() {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, v + self.n);
            }
        }
        g
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            schema_version: Some(SCHEMA_VERSION),
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

fn components_by<F: Fn(usize) -> VertexSet>(n: usize, row: F) -> Vec<VertexSet> {
    let mut seen = VertexSet::new(n);
    let mut out = Vec::new();
    for s in 0..n {
        if seen.contains(s) {
            continue;
        }
        let mut comp = VertexSet::new(n);
        comp.insert(s);
        seen.insert(s);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let mut fresh = row(u);
            fresh.difference_with(&seen);
            for v in fresh.iter() {
                seen.insert(v);
                comp.insert(v);
                stack.push(v);
            }
        }
        out.push(comp);
    }
    out
}

/// On-disk graph format: `{"n": 4, "edges": [[0,1], ...]}`, `u < v`, no
/// duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Graph> {
        let mut g = Graph::new(json.n);
        for [u, v] in json.edges {
            if u >= v {
                return Err(Error::input(format!("edge [{u},{v}] must satisfy u < v")));
            }
            if v >= json.n {
                return Err(Error::input(format!("edge [{u},{v}] out of range for n={}", json.n)));
            }
            if g.has_edge(u, v) {
                return Err(Error::input(format!("duplicate edge [{u},{v}]")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let json = GraphJson {
            schema_version: None,
            ..self.to_json()
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = GraphJson::deserialize(d)?;
        Graph::try_from(json).map_err(serde::de::Error::custom)
    }
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `S_n`, the edgeless graph.
    pub fn stable(n: usize) -> Graph {
        Graph::new(n)
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut g = path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// `2K_2`.
    pub fn two_k2() -> Graph {
        complete(2).disjoint_union(&complete(2))
    }

    /// Triangle with a pendant edge at vertex 0.
    pub fn paw() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).expect("static edges")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        stable(a).join(&stable(b))
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn complement_of_triangle_is_stable() {
        assert_eq!(complete(3).complement(), stable(3));
    }

    #[test]
    fn complement_of_c4_is_2k2() {
        let c = cycle(4).complement();
        let edges: Vec<_> = c.edges().collect();
        assert_eq!(edges, vec![(0, 2), (1, 3)]);
        assert_eq!(c.components().len(), 2);
    }

    #[test]
    fn null_graph_operations() {
        let g = Graph::new(0);
        assert_eq!(g.complement(), g);
        assert!(g.components().is_empty());
        assert!(g.anticomponents().is_empty());
        let (h, map) = g.induced(&VertexSet::new(0)).unwrap();
        assert!(h.is_null() && map.is_empty());
    }

    #[test]
    fn induced_four_of_c5_is_p4() {
        let c5 = cycle(5);
        for skip in 0..5 {
            let set = VertexSet::from_vertices(5, (0..5).filter(|&v| v != skip));
            let (h, _) = c5.induced(&set).unwrap();
            assert_eq!(h.edge_count(), 3);
            let mut degrees: Vec<_> = (0..4).map(|v| h.degree(v)).collect();
            degrees.sort();
            assert_eq!(degrees, vec![1, 1, 2, 2]);
            assert!(h.is_connected());
        }
        let (same, _) = c5.induced(&c5.vertices()).unwrap();
        assert_eq!(same, c5);
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let g = path(3);
        let set = VertexSet::from_vertices(5, [0, 4]);
        assert!(matches!(g.induced(&set), Err(Error::Input(_))));
    }

    #[test]
    fn components_and_anticomponents() {
        assert_eq!(two_k2().components().len(), 2);
        assert_eq!(complete(4).components().len(), 1);
        assert_eq!(stable(3).components().len(), 3);
        let ac = cycle(4).anticomponents();
        assert_eq!(ac.len(), 2);
        assert!(ac.iter().all(|c| c.len() == 2));
        assert_eq!(stable(4).anticomponents().len(), 1);
        assert_eq!(complete(3).anticomponents().len(), 3);
    }

    #[test]
    fn girth_values() {
        assert_eq!(cycle(5).girth(), Some(5));
        assert_eq!(path(6).girth(), None);
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(complete_bipartite(3, 3).girth(), Some(4));
    }

    #[test]
    fn json_rejects_malformed_edges() {
        let bad = |s: &str| serde_json::from_str::<Graph>(s).is_err();
        assert!(bad(r#"{"n":3,"edges":[[1,0]]}"#));
        assert!(bad(r#"{"n":3,"edges":[[0,3]]}"#));
        assert!(bad(r#"{"n":3,"edges":[[0,1],[0,1]]}"#));
        let g: Graph = serde_json::from_str(r#"{"schema_version":1,"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g, path(3));
    }
}
