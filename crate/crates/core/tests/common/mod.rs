//! Random graph generators and brute-force oracles shared by the
//! integration suites. Nothing here calls into the code paths it checks.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signlap::SignedGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `(lo, hi]`.
pub fn positive_weight(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    hi - (hi - lo) * rng.gen::<f64>()
}

/// 9-node, 8-edge unit tree with `dist(u, v) = 4`: path
/// `0-1-2-3-4` plus one leaf on each of 0, 1, 3, 4.
pub const EXAMPLE_U: usize = 0;
pub const EXAMPLE_V: usize = 4;

pub fn example_tree_edges() -> Vec<(usize, usize, f64)> {
    vec![
        (0, 1, 1.0),
        (1, 2, 1.0),
        (2, 3, 1.0),
        (3, 4, 1.0),
        (0, 5, 1.0),
        (1, 6, 1.0),
        (3, 7, 1.0),
        (4, 8, 1.0),
    ]
}

pub fn example_tree() -> SignedGraph {
    SignedGraph::new(9, &example_tree_edges()).unwrap()
}

pub fn example_graph(w_uv: f64) -> SignedGraph {
    let mut e = example_tree_edges();
    e.push((EXAMPLE_U, EXAMPLE_V, w_uv));
    SignedGraph::new(9, &e).unwrap()
}

pub fn random_tree_edges(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Vec<(usize, usize, f64)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| {
            let parent = order[rng.gen_range(0..i)];
            (parent, order[i], positive_weight(rng, lo, hi))
        })
        .collect()
}

/// Connected, all-positive: random spanning tree plus extra random edges.
pub fn random_connected_positive(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> SignedGraph {
    let mut edges = random_tree_edges(rng, n, lo, hi);
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u, v, positive_weight(rng, lo, hi)));
        }
    }
    SignedGraph::new(n, &edges).unwrap()
}

/// Signed graph with `components` connected pieces, weights in `[-2, 2] \ {0}`.
pub fn random_signed_graph(rng: &mut impl Rng, max_nodes: usize, components: usize) -> SignedGraph {
    let n = rng.gen_range(components.max(2)..=max_nodes.max(components));
    // split nodes into `components` nonempty blocks
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(components - 1).collect();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(n);

    let mut edges = Vec::new();
    let signed = |rng: &mut dyn rand::RngCore| {
        let mag = 2.0 - 2.0 * rng.gen::<f64>();
        if rng.gen_bool(0.5) { mag } else { -mag }
    };
    for b in bounds.windows(2) {
        let (lo, hi) = (b[0], b[1]);
        for v in (lo + 1)..hi {
            let u = rng.gen_range(lo..v);
            edges.push((u, v, signed(rng)));
        }
        let size = hi - lo;
        if size >= 2 {
            for _ in 0..rng.gen_range(0..=size) {
                let u = rng.gen_range(lo..hi);
                let v = rng.gen_range(lo..hi);
                if u != v {
                    edges.push((u, v, signed(rng)));
                }
            }
        }
    }
    SignedGraph::new(n, &edges).unwrap()
}

pub type EdgeList = Vec<(usize, usize, f64)>;

/// Cactus of cycle blocks (length 3..=5) glued at single nodes.
/// Returns node count, edges, and the node lists of each block in cycle order.
pub fn random_cactus(rng: &mut impl Rng, blocks: usize, lo: f64, hi: f64) -> (usize, EdgeList, Vec<Vec<usize>>) {
    let mut n = 1;
    let mut edges = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for _ in 0..blocks {
        let anchor = rng.gen_range(0..n);
        let len = rng.gen_range(3..=5);
        let mut nodes = vec![anchor];
        for _ in 1..len {
            nodes.push(n);
            n += 1;
        }
        for i in 0..len {
            edges.push((nodes[i], nodes[(i + 1) % len], positive_weight(rng, lo, hi)));
        }
        cycles.push(nodes);
    }
    (n, edges, cycles)
}

// ---- oracles ----

/// Edges lying on at least one simple u-v path, by exhaustive enumeration.
pub fn brute_force_path_edges(g: &SignedGraph, u: usize, v: usize) -> BTreeSet<usize> {
    let adj = g.adjacency();
    let mut found = BTreeSet::new();
    let mut on_path = vec![false; g.node_count()];
    let mut stack_edges = Vec::new();
    fn dfs(
        x: usize,
        target: usize,
        adj: &[Vec<(usize, usize)>],
        on_path: &mut [bool],
        stack_edges: &mut Vec<usize>,
        found: &mut BTreeSet<usize>,
    ) {
        if x == target {
            found.extend(stack_edges.iter().copied());
            return;
        }
        on_path[x] = true;
        for &(k, y) in &adj[x] {
            if !on_path[y] {
                stack_edges.push(k);
                dfs(y, target, adj, on_path, stack_edges, found);
                stack_edges.pop();
            }
        }
        on_path[x] = false;
    }
    dfs(u, v, &adj, &mut on_path, &mut stack_edges, &mut found);
    found
}

/// Components by breadth-first search, skipping `removed` edges.
pub fn bfs_components(g: &SignedGraph, removed: &[usize]) -> usize {
    let adj = g.adjacency();
    let mut seen = vec![false; g.node_count()];
    let mut count = 0;
    for s in 0..g.node_count() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &(k, y) in &adj[x] {
                if !removed.contains(&k) && !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
    }
    count
}

/// Sum of `1 / w` along the unique tree path.
pub fn tree_path_resistance(g: &SignedGraph, u: usize, v: usize) -> f64 {
    let adj = g.adjacency();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.node_count()];
    let mut seen = vec![false; g.node_count()];
    seen[u] = true;
    let mut q = VecDeque::from([u]);
    while let Some(x) = q.pop_front() {
        for &(k, y) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, k));
                q.push_back(y);
            }
        }
    }
    let mut r = 0.0;
    let mut x = v;
    while x != u {
        let (p, k) = prev[x].expect("tree is connected");
        r += 1.0 / g.edge(k).weight;
        x = p;
    }
    r
}

/// Dense Laplacian assembled from the adjacency definition `D - A`.
pub fn laplacian_from_adjacency(g: &SignedGraph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut a = DMatrix::zeros(n, n);
    for e in g.edges() {
        a[(e.tail, e.head)] += e.weight;
        a[(e.head, e.tail)] += e.weight;
    }
    let mut l = -a.clone();
    for i in 0..n {
        l[(i, i)] = a.row(i).sum();
    }
    l
}

/// Eigenvalues (ascending) of the symmetric matrix.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut v: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Effective resistance from the pseudo-inverse `(L + J/n)⁻¹ - J/n`
/// (valid for connected graphs with a single zero eigenvalue).
pub fn grounded_resistance(g: &SignedGraph, u: usize, v: usize) -> f64 {
    let n = g.node_count();
    let j = DMatrix::from_element(n, n, 1.0 / n as f64);
    let inv = (laplacian_from_adjacency(g) + &j).try_inverse().unwrap();
    let p = inv - j;
    p[(u, u)] - 2.0 * p[(u, v)] + p[(v, v)]
}

/// `(n₊, n₋, n₀)` from an eigenvalue list at an explicit tolerance.
pub fn count_signs(values: &[f64], tol: f64) -> (usize, usize, usize) {
    let mut out = (0, 0, 0);
    for &x in values {
        if x.abs() <= tol {
            out.2 += 1;
        } else if x > 0.0 {
            out.0 += 1;
        } else {
            out.1 += 1;
        }
    }
    out
}
