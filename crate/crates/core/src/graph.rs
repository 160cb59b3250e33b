//! Signed weighted graphs and their combinatorial decompositions.
//!
//! A [`SignedGraph`] is the single source of truth for every matrix in the
//! crate. Edges are undirected but carry a canonical orientation
//! `tail < head`, which fixes the signs in the incidence matrix.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
}

impl Edge {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.tail, self.head)
    }

    pub fn other(&self, node: usize) -> usize {
        if node == self.tail {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph {
    node_count: usize,
    edges: Vec<Edge>,
}

impl SignedGraph {
    /// Builds a graph from `(u, v, weight)` triples.
    ///
    /// Orientation is normalized to `tail = min(u, v)`, `head = max(u, v)`;
    /// input order defines edge indices. Parallel edges are kept.
    pub fn new(node_count: usize, edge_list: &[(usize, usize, f64)]) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::NoNodes);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for (k, &(u, v, w)) in edge_list.iter().enumerate() {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange {
                        edge: k,
                        node,
                        node_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge: k, node: u });
            }
            if w == 0.0 {
                return Err(Error::ZeroWeight { edge: k });
            }
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight { edge: k, weight: w });
            }
            edges.push(Edge {
                tail: u.min(v),
                head: u.max(v),
                weight: w,
            });
        }
        Ok(Self { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn is_all_positive(&self) -> bool {
        self.edges.iter().all(|e| e.weight > 0.0)
    }

    pub fn negative_edge_indices(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| self.edges[k].weight < 0.0)
            .collect()
    }

    /// Splits into the all-positive subgraph and the negative edges.
    pub fn split_signs(&self) -> SignSplit {
        let mut positive = Vec::new();
        let mut positive_edges = Vec::new();
        let mut negative_edges = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if e.weight > 0.0 {
                positive.push(k);
                positive_edges.push(*e);
            } else {
                negative_edges.push(k);
            }
        }
        SignSplit {
            positive: SignedGraph {
                node_count: self.node_count,
                edges: positive_edges,
            },
            positive_edge_map: positive,
            negative_edges,
        }
    }

    pub fn with_edge(&self, u: usize, v: usize, weight: f64) -> Result<Self> {
        let mut list: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.tail, e.head, e.weight))
            .collect();
        list.push((u, v, weight));
        Self::new(self.node_count, &list)
    }

    pub fn with_weight(&self, k: usize, weight: f64) -> Result<Self> {
        let mut list: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.tail, e.head, e.weight))
            .collect();
        list[k].2 = weight;
        Self::new(self.node_count, &list)
    }

    /// Adjacency lists of `(edge index, neighbor)`, ascending by edge index.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((k, e.head));
            adj[e.head].push((k, e.tail));
        }
        adj
    }

    /// Component label for every node, labels numbered by smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.node_count);
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        uf.labels()
    }

    pub fn component_count(&self) -> usize {
        components_after_edge_removal(self, &[])
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// The Laplacian `E W Eᵀ`, assembled edge by edge.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let n = self.node_count;
        let mut l = DMatrix::zeros(n, n);
        for e in &self.edges {
            let (a, b, w) = (e.tail, e.head, e.weight);
            l[(a, a)] += w;
            l[(b, b)] += w;
            l[(a, b)] -= w;
            l[(b, a)] -= w;
        }
        l
    }
}

#[derive(Debug, Clone)]
pub struct SignSplit {
    /// `G₊`: same node set, positive edges only (in original relative order).
    pub positive: SignedGraph,
    /// Index in the original graph of each edge of `positive`.
    pub positive_edge_map: Vec<usize>,
    /// Original indices of the negative edges.
    pub negative_edges: Vec<usize>,
}

/// `|V| × |E|` incidence matrix in input edge order: column `k` has `-1` at
/// the tail and `+1` at the head of edge `k`.
pub fn incidence_matrix(g: &SignedGraph) -> DMatrix<f64> {
    incidence_columns(g, 0..g.edge_count())
}

fn incidence_columns(g: &SignedGraph, cols: impl IntoIterator<Item = usize>) -> DMatrix<f64> {
    let cols: Vec<usize> = cols.into_iter().collect();
    let mut m = DMatrix::zeros(g.node_count(), cols.len());
    for (j, &k) in cols.iter().enumerate() {
        let e = g.edge(k);
        m[(e.tail, j)] = -1.0;
        m[(e.head, j)] = 1.0;
    }
    m
}

/// Spanning forest `F`, its cycle complement `C`, and the matrices that
/// relate them.
#[derive(Debug, Clone)]
pub struct ForestDecomposition {
    /// Forest edge indices, ascending.
    pub forest_edges: Vec<usize>,
    /// Remaining edge indices, ascending.
    pub cycle_edges: Vec<usize>,
    pub component_count: usize,
    /// `[E_F  E_C]`: forest columns first, then cycle columns.
    pub incidence_full: DMatrix<f64>,
    pub incidence_forest: DMatrix<f64>,
    pub incidence_cycle: DMatrix<f64>,
    /// `T = (E_Fᵀ E_F)⁻¹ E_Fᵀ E_C`.
    pub tree_to_cycle: DMatrix<f64>,
    /// `R = [I  T]`.
    pub cut_basis: DMatrix<f64>,
}

impl ForestDecomposition {
    /// Edge indices in the decomposition's column order (forest, then cycle).
    pub fn edge_order(&self) -> Vec<usize> {
        self.forest_edges
            .iter()
            .chain(self.cycle_edges.iter())
            .copied()
            .collect()
    }

    pub fn forest_size(&self) -> usize {
        self.forest_edges.len()
    }
}

/// Chooses a spanning forest by depth-first search (roots ascending from
/// node 0, lowest edge index first) and builds the cut-space matrices.
pub fn decompose(g: &SignedGraph) -> ForestDecomposition {
    let n = g.node_count();
    let adj = g.adjacency();
    let mut visited = vec![false; n];
    let mut in_forest = vec![false; g.edge_count()];
    let mut components = 0;

    for root in 0..n {
        if visited[root] {
            continue;
        }
        components += 1;
        visited[root] = true;
        // (node, cursor into its adjacency list)
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (node, cursor) = *top;
            if cursor == adj[node].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let (k, next) = adj[node][cursor];
            if !visited[next] {
                visited[next] = true;
                in_forest[k] = true;
                stack.push((next, 0));
            }
        }
    }

    let forest_edges: Vec<usize> = (0..g.edge_count()).filter(|&k| in_forest[k]).collect();
    let cycle_edges: Vec<usize> = (0..g.edge_count()).filter(|&k| !in_forest[k]).collect();

    let incidence_forest = incidence_columns(g, forest_edges.iter().copied());
    let incidence_cycle = incidence_columns(g, cycle_edges.iter().copied());
    let incidence_full = incidence_columns(g, forest_edges.iter().chain(&cycle_edges).copied());

    let f = forest_edges.len();
    let tree_to_cycle = if f == 0 {
        DMatrix::zeros(0, cycle_edges.len())
    } else {
        let gram = incidence_forest.transpose() * &incidence_forest;
        let rhs = incidence_forest.transpose() * &incidence_cycle;
        let mut t = gram
            .cholesky()
            .expect("forest incidence has full column rank")
            .solve(&rhs);
        // Each cycle column is a signed sum of forest columns: T is integral.
        t.apply(|x| {
            let r = x.round();
            if (*x - r).abs() < 1e-9 {
                *x = r;
            }
        });
        t
    };

    let mut cut_basis = DMatrix::zeros(f, g.edge_count());
    cut_basis.view_mut((0, 0), (f, f)).fill_with_identity();
    cut_basis
        .view_mut((0, f), (f, cycle_edges.len()))
        .copy_from(&tree_to_cycle);

    ForestDecomposition {
        forest_edges,
        cycle_edges,
        component_count: components,
        incidence_full,
        incidence_forest,
        incidence_cycle,
        tree_to_cycle,
        cut_basis,
    }
}

/// Number of connected components once the listed edges are deleted.
/// Isolated nodes count as components.
pub fn components_after_edge_removal(g: &SignedGraph, removed: &[usize]) -> usize {
    let mut skip = vec![false; g.edge_count()];
    for &k in removed {
        if k < skip.len() {
            skip[k] = true;
        }
    }
    let mut uf = UnionFind::new(g.node_count());
    let mut count = g.node_count();
    for (k, e) in g.edges().iter().enumerate() {
        if !skip[k] && uf.union(e.tail, e.head) {
            count -= 1;
        }
    }
    count
}

/// Component label per node after deleting the listed edges, labels
/// numbered by smallest member.
pub fn component_labels_after_edge_removal(g: &SignedGraph, removed: &[usize]) -> Vec<usize> {
    let mut uf = UnionFind::new(g.node_count());
    for (k, e) in g.edges().iter().enumerate() {
        if !removed.contains(&k) {
            uf.union(e.tail, e.head);
        }
    }
    uf.labels()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the sets were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    /// Dense labels `0..k`, numbered in order of each set's smallest element.
    pub(crate) fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0;
        for i in 0..n {
            let r = self.find(i);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels.push(root_label[r]);
        }
        labels
    }
}
