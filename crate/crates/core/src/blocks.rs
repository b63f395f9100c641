//! Block decomposition (biconnected components plus bridges).

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Vertex sets of the blocks of `g`. Isolated vertices lie in no block.
/// Blocks are returned sorted by their vertex lists.
pub fn blocks(g: &Graph) -> Vec<VertexSet> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    let neighbors: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).to_vec()).collect();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // frames: (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(frame) = stack.last_mut() {
            let (u, parent, idx) = *frame;
            if idx < neighbors[u].len() {
                frame.2 += 1;
                let v = neighbors[u][idx];
                if disc[v] == usize::MAX {
                    edge_stack.push((u, v));
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    stack.push((v, u, 0));
                } else if v != parent && disc[v] < disc[u] {
                    edge_stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = VertexSet::new(n);
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (p, u) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out.sort_by_key(|b| b.to_vec());
    out
}
