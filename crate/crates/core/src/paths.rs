//! Path-edge sets via biconnected components.
//!
//! An edge lies on some simple `u`–`v` path exactly when its block lies on
//! the block–cut tree path between `u` and `v`: inside a 2-connected block
//! any edge can be routed through between any two of its vertices.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;

/// Biconnected components of `g` as lists of edge indices (each sorted).
/// Isolated nodes belong to no block.
pub fn biconnected_components(g: &SignedGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (node, edge used to enter it, adjacency cursor)
        let mut frames: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];

        while let Some(frame) = frames.last_mut() {
            let (v, parent_edge, cursor) = *frame;
            if cursor < adj[v].len() {
                frame.2 += 1;
                let (k, w) = adj[v][cursor];
                if Some(k) == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(k);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, Some(k), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(k);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }

            frames.pop();
            let (Some(pk), Some(&(p, _, _))) = (parent_edge, frames.last()) else {
                continue;
            };
            low[p] = low[p].min(low[v]);
            if low[v] >= disc[p] {
                let mut block = Vec::new();
                while let Some(k) = edge_stack.pop() {
                    block.push(k);
                    if k == pk {
                        break;
                    }
                }
                block.sort_unstable();
                blocks.push(block);
            }
        }
    }
    blocks
}

/// Block–cut structure: every node is linked to the blocks containing it.
/// Within one connected component this bipartite graph is a tree.
struct BlockCutTree {
    blocks: Vec<Vec<usize>>,
    /// Tree nodes `0..B` are blocks, `B + v` is graph node `v`.
    adj: Vec<Vec<usize>>,
}

impl BlockCutTree {
    fn new(g: &SignedGraph) -> Self {
        let blocks = biconnected_components(g);
        let b = blocks.len();
        let mut adj = vec![Vec::new(); b + g.node_count()];
        for (i, block) in blocks.iter().enumerate() {
            let mut nodes: Vec<usize> = block
                .iter()
                .flat_map(|&k| {
                    let e = g.edge(k);
                    [e.tail, e.head]
                })
                .collect();
            nodes.sort_unstable();
            nodes.dedup();
            for v in nodes {
                adj[i].push(b + v);
                adj[b + v].push(i);
            }
        }
        Self { blocks, adj }
    }

    /// Blocks on the tree path between graph nodes `u` and `v`.
    fn blocks_between(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let b = self.blocks.len();
        let (src, dst) = (b + u, b + v);
        let mut prev = vec![usize::MAX; self.adj.len()];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            if x == dst {
                break;
            }
            for &y in &self.adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[dst] == usize::MAX {
            return None;
        }
        let mut out = Vec::new();
        let mut x = dst;
        while x != src {
            if x < b {
                out.push(x);
            }
            x = prev[x];
        }
        Some(out)
    }
}

/// For each `(u, v)` query, the sorted indices of edges of `g_plus` lying on
/// at least one simple `u`–`v` path.
pub fn path_edge_sets(g_plus: &SignedGraph, pairs: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    if let Some((k, e)) = g_plus.edges().iter().enumerate().find(|(_, e)| e.weight < 0.0) {
        return Err(Error::NotAllPositive {
            edge: k,
            weight: e.weight,
        });
    }
    let n = g_plus.node_count();
    let tree = BlockCutTree::new(g_plus);
    pairs
        .iter()
        .map(|&(u, v)| {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::InvalidNode {
                        node,
                        node_count: n,
                    });
                }
            }
            if u == v {
                return Ok(Vec::new());
            }
            let blocks = tree
                .blocks_between(u, v)
                .ok_or(Error::Disconnected { u, v })?;
            let mut edges: Vec<usize> = blocks
                .into_iter()
                .flat_map(|i| tree.blocks[i].iter().copied())
                .collect();
            edges.sort_unstable();
            Ok(edges)
        })
        .collect()
}

/// True when no edge appears in two of the sets.
pub fn pairwise_disjoint(sets: &[Vec<usize>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    sets.iter().flatten().all(|k| seen.insert(*k))
}
