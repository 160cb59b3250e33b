//! Linear weighted consensus `ẋ = -L x`: fixed-step simulation, cluster
//! prediction for the single-cycle boundary case, and cluster detection.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{component_labels_after_edge_removal, SignedGraph};
use crate::definiteness::BOUNDARY_REL_TOL;
use crate::resistance::effective_resistance;

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-5;
/// Fraction of the run, measured from the end, inspected for clusters.
pub const FINAL_WINDOW: f64 = 0.1;
/// Final-window state norm above this multiple of `‖x0‖` is divergence.
pub const UNBOUNDED_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub t_final: f64,
    pub step: f64,
    /// Record every `stride`-th step (the final state is always recorded).
    pub stride: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            t_final: 20.0,
            step: 1e-3,
            stride: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterPartition {
    /// Cluster id per node; ids numbered by smallest member node.
    pub assignment: Vec<usize>,
    /// Mean final value per cluster.
    pub values: Vec<f64>,
}

impl ClusterPartition {
    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn members(&self, cluster: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == cluster)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// One row per recorded time, one column per node.
    pub states: DMatrix<f64>,
    pub step_size: f64,
    /// Clusters at the default tolerance; `None` if the run diverged.
    pub final_clusters: Option<ClusterPartition>,
}

impl Trajectory {
    pub fn initial_state(&self) -> DVector<f64> {
        self.states.row(0).transpose()
    }

    pub fn final_state(&self) -> DVector<f64> {
        self.states.row(self.states.nrows() - 1).transpose()
    }

    /// Largest relative change of `𝟙ᵀx(t)` over the run, measured against
    /// `max(|𝟙ᵀx0|, ‖x0‖₁)`.
    pub fn sum_drift(&self) -> f64 {
        let x0 = self.states.row(0);
        let s0 = x0.sum();
        let scale = s0.abs().max(x0.iter().map(|x| x.abs()).sum::<f64>());
        if scale == 0.0 {
            return self.states.row_iter().map(|r| r.sum().abs()).fold(0.0, f64::max);
        }
        self.states
            .row_iter()
            .map(|r| (r.sum() - s0).abs() / scale)
            .fold(0.0, f64::max)
    }

    /// Largest `|x_i - x_j|` in the final recorded state.
    pub fn final_spread(&self) -> f64 {
        let x = self.final_state();
        x.max() - x.min()
    }
}

/// Integrates `ẋ = -L x` with classical fourth-order Runge–Kutta.
///
/// The step is adjusted down so that an integer number of steps lands on
/// `t_final` exactly.
pub fn simulate(g: &SignedGraph, x0: &DVector<f64>, cfg: &SimulationConfig) -> Result<Trajectory> {
    let n = g.node_count();
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x0.len(),
        });
    }
    if !(cfg.t_final > 0.0 && cfg.t_final.is_finite()) {
        return Err(Error::InvalidParameter(format!("t_final must be positive, got {}", cfg.t_final)));
    }
    if !(cfg.step > 0.0 && cfg.step.is_finite()) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {}", cfg.step)));
    }
    if cfg.stride == 0 {
        return Err(Error::InvalidParameter("stride must be at least 1".into()));
    }

    let steps = ((cfg.t_final / cfg.step) - 1e-9).ceil().max(1.0) as usize;
    let h = cfg.t_final / steps as f64;
    let a = -g.laplacian();

    let mut times = vec![0.0];
    let mut rows: Vec<DVector<f64>> = vec![x0.clone()];
    let mut x = x0.clone();
    for i in 1..=steps {
        let k1 = &a * &x;
        let k2 = &a * (&x + &k1 * (h / 2.0));
        let k3 = &a * (&x + &k2 * (h / 2.0));
        let k4 = &a * (&x + &k3 * h);
        x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        if i % cfg.stride == 0 || i == steps {
            times.push(i as f64 * h);
            rows.push(x.clone());
        }
    }

    let states = DMatrix::from_fn(rows.len(), n, |r, c| rows[r][c]);
    let mut traj = Trajectory {
        times,
        states,
        step_size: h,
        final_clusters: None,
    };
    traj.final_clusters = detect_clusters(&traj, DEFAULT_CLUSTER_TOL).ok();
    Ok(traj)
}

/// Groups nodes whose states stay within `tol` of each other over the
/// final window (single linkage).
pub fn detect_clusters(traj: &Trajectory, tol: f64) -> Result<ClusterPartition> {
    let n = traj.states.ncols();
    let rows = traj.states.nrows();
    let t_end = *traj.times.last().expect("trajectory has samples");
    let t_start = traj.times[0];
    let window_start = t_end - FINAL_WINDOW * (t_end - t_start);
    let first = traj
        .times
        .iter()
        .position(|&t| t >= window_start)
        .unwrap_or(rows - 1);

    let limit = UNBOUNDED_FACTOR * traj.states.row(0).norm();
    for r in first..rows {
        let norm = traj.states.row(r).norm();
        if !norm.is_finite() || norm > limit {
            return Err(Error::Unbounded { norm, limit });
        }
    }

    let mut uf = crate::graph::UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let close = (first..rows).all(|r| (traj.states[(r, i)] - traj.states[(r, j)]).abs() <= tol);
            if close {
                uf.union(i, j);
            }
        }
    }
    let assignment = uf.labels();
    let count = assignment.iter().max().map_or(0, |m| m + 1);
    let mut sums = vec![0.0; count];
    let mut sizes = vec![0usize; count];
    for (i, &c) in assignment.iter().enumerate() {
        sums[c] += traj.states[(rows - 1, i)];
        sizes[c] += 1;
    }
    let values = sums.iter().zip(&sizes).map(|(s, &k)| s / k as f64).collect();
    Ok(ClusterPartition { assignment, values })
}

#[derive(Debug, Clone)]
pub struct ClusterPrediction {
    pub q: usize,
    /// Null vector of `L` orthogonal to `𝟙`.
    pub null_vector: DVector<f64>,
    /// Cluster id per node (components after deleting the cycle's edges).
    pub component_map: Vec<usize>,
    /// Edge indices of the unique cycle, ascending.
    pub cycle_edges: Vec<usize>,
    /// `R_uv(G₊)` for the negative edge.
    pub resistance: f64,
    /// Nonzero eigenvalue of `W₊^{-1/2} T Tᵀ W₊^{-1/2}`.
    pub rank_one_eigenvalue: f64,
    /// `‖Eᵀx - W⁻¹[T; -1]‖` of the null-vector solve.
    pub residual: f64,
}

impl ClusterPrediction {
    /// Number of distinct null-vector values among cycle nodes (within
    /// `tol`). Symmetric weightings can make this smaller than the number of
    /// cycle nodes.
    pub fn distinct_cycle_values(&self, g: &SignedGraph, tol: f64) -> usize {
        let mut nodes: Vec<usize> = self
            .cycle_edges
            .iter()
            .flat_map(|&k| [g.edge(k).tail, g.edge(k).head])
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        let mut vals: Vec<f64> = nodes.iter().map(|&i| self.null_vector[i]).collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup_by(|a, b| (*a - *b).abs() <= tol);
        vals.len()
    }
}

/// Cluster structure for a connected graph with one cycle whose single
/// negative edge sits exactly at the resistance threshold.
pub fn predict_clusters(g: &SignedGraph) -> Result<ClusterPrediction> {
    const THEOREM: &str = "single-cycle clustering";
    let n = g.node_count();
    let split = g.split_signs();
    let mut reasons = Vec::new();
    let components = g.component_count();
    if components != 1 {
        reasons.push(format!("graph has {components} components"));
    }
    if g.edge_count() != n {
        reasons.push(format!(
            "exactly one cycle requires |E| = |V|, got |E| = {} and |V| = {n}",
            g.edge_count()
        ));
    }
    if split.negative_edges.len() != 1 {
        reasons.push(format!(
            "exactly one negative edge required, found {}",
            split.negative_edges.len()
        ));
    }
    let plus_components = split.positive.component_count();
    if plus_components != 1 {
        reasons.push(format!("positive subgraph has {plus_components} components"));
    }
    if !reasons.is_empty() {
        return Err(Error::HypothesisViolated { theorem: THEOREM, reasons });
    }

    // G₊ is now a spanning tree and the negative edge closes the cycle.
    let neg = split.negative_edges[0];
    let e_neg = *g.edge(neg);
    let resistance = effective_resistance(&split.positive, e_neg.tail, e_neg.head)?;
    let rel = e_neg.weight.abs() * resistance - 1.0;
    if rel.abs() > BOUNDARY_REL_TOL {
        return Err(Error::HypothesisViolated {
            theorem: THEOREM,
            reasons: vec![format!(
                "|w| = {} is not 1/R_uv = {} (relative gap {rel:e})",
                e_neg.weight.abs(),
                1.0 / resistance
            )],
        });
    }

    let tree = &split.positive;
    let f = tree.edge_count();
    let mut e_tree: DMatrix<f64> = DMatrix::zeros(n, f);
    for (j, e) in tree.edges().iter().enumerate() {
        e_tree[(e.tail, j)] = -1.0;
        e_tree[(e.head, j)] = 1.0;
    }
    let mut e_cyc: DVector<f64> = DVector::zeros(n);
    e_cyc[e_neg.tail] = -1.0;
    e_cyc[e_neg.head] = 1.0;
    let t = (e_tree.transpose() * &e_tree)
        .cholesky()
        .expect("tree incidence has full column rank")
        .solve(&(e_tree.transpose() * &e_cyc));

    let mut cycle_edges: Vec<usize> = (0..f)
        .filter(|&j| t[j].abs() > 0.5)
        .map(|j| split.positive_edge_map[j])
        .collect();
    cycle_edges.push(neg);
    cycle_edges.sort_unstable();

    let component_map = component_labels_after_edge_removal(g, &cycle_edges);
    let q = component_map.iter().max().map_or(0, |m| m + 1);

    // W₊^{-1/2} T Tᵀ W₊^{-1/2} is rank one with eigenvalue Σ T_i² / w_i.
    let scaled = DVector::from_iterator(f, (0..f).map(|j| t[j] / tree.edge(j).weight.sqrt()));
    let rank_one = &scaled * scaled.transpose();
    let rank_one_eigenvalue = SymmetricEigen::new(rank_one)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);

    // Eᵀx = W⁻¹ [T; -1] with E = [E_T  e₋].
    let mut et = DMatrix::zeros(f + 1, n);
    et.view_mut((0, 0), (f, n)).copy_from(&e_tree.transpose());
    et.row_mut(f).copy_from(&e_cyc.transpose());
    let mut rhs = DVector::zeros(f + 1);
    for j in 0..f {
        rhs[j] = t[j] / tree.edge(j).weight;
    }
    rhs[f] = -1.0 / e_neg.weight;

    let svd = et.clone().svd(true, true);
    let mut x = svd
        .solve(&rhs, 1e-12)
        .map_err(|m| Error::InvalidParameter(m.to_string()))?;
    let mean = x.mean();
    x.add_scalar_mut(-mean);

    let residual = (&et * &x - &rhs).norm();
    let limit = 1e-8 * rhs.norm().max(1.0);
    if residual > limit {
        return Err(Error::NullVectorResidual { residual, limit });
    }

    Ok(ClusterPrediction {
        q,
        null_vector: x,
        component_map,
        cycle_edges,
        resistance,
        rank_one_eigenvalue,
        residual,
    })
}
