//! Effective resistance, computed along two independent routes: the
//! eigendecomposition pseudo-inverse of `L`, and the cut-basis formula
//! `(E_Tᴸ)ᵀ (R W Rᵀ)⁻¹ E_Tᴸ`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{decompose, SignedGraph};
use crate::laplacian::{build_bundle, cut_gram_inverse, forest_left_inverse, laplacian_pseudo_inverse};
use crate::spectra::pseudo_inverse_eig;

/// Relative disagreement between the two routes that is reported as an error.
pub const ROUTE_AGREEMENT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct PairResistance {
    pub u: usize,
    pub v: usize,
    pub value: f64,
    pub pseudo_inverse: f64,
    /// `None` when `R W Rᵀ` is singular and the cut-basis route does not apply.
    pub cut_basis: Option<f64>,
    /// False when the graph has negative weights; the resistance is still
    /// computed but lies outside the threshold theorems' setting.
    pub all_positive: bool,
}

fn check_pair(g: &SignedGraph, u: usize, v: usize) -> Result<()> {
    let n = g.node_count();
    for node in [u, v] {
        if node >= n {
            return Err(Error::InvalidNode {
                node,
                node_count: n,
            });
        }
    }
    if u == v {
        return Err(Error::InvalidParameter(format!(
            "effective resistance needs distinct nodes, got {u} twice"
        )));
    }
    let labels = g.component_labels();
    if labels[u] != labels[v] {
        return Err(Error::Disconnected { u, v });
    }
    Ok(())
}

fn quadratic_form(p: &DMatrix<f64>, u: usize, v: usize) -> f64 {
    p[(u, u)] - 2.0 * p[(u, v)] + p[(v, v)]
}

/// `(e_u - e_v)ᵀ L† (e_u - e_v)` with `L†` from eigendecomposition.
pub fn resistance_via_pseudo_inverse(g: &SignedGraph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    let p = pseudo_inverse_eig(&g.laplacian(), None)?;
    Ok(quadratic_form(&p, u, v))
}

/// Effective resistance through the cut-space Gram matrix.
pub fn resistance_via_cut_basis(g: &SignedGraph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    let d = decompose(g);
    let b = build_bundle(g, &d);
    let p = laplacian_pseudo_inverse(&b, &d, None)?;
    Ok(quadratic_form(&p, u, v))
}

/// Both routes, cross-checked.
pub fn effective_resistance_detailed(g: &SignedGraph, u: usize, v: usize) -> Result<PairResistance> {
    let pseudo_inverse = resistance_via_pseudo_inverse(g, u, v)?;
    let cut_basis = match resistance_via_cut_basis(g, u, v) {
        Ok(r) => Some(r),
        Err(Error::SingularCutGram { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(cb) = cut_basis {
        if (cb - pseudo_inverse).abs() > ROUTE_AGREEMENT_TOL * cb.abs().max(1.0) {
            return Err(Error::ResistanceMismatch {
                cut_basis: cb,
                pseudo_inverse,
            });
        }
    }
    Ok(PairResistance {
        u,
        v,
        value: cut_basis.unwrap_or(pseudo_inverse),
        pseudo_inverse,
        cut_basis,
        all_positive: g.is_all_positive(),
    })
}

pub fn effective_resistance(g: &SignedGraph, u: usize, v: usize) -> Result<f64> {
    effective_resistance_detailed(g, u, v).map(|r| r.value)
}

/// `M = E₋ᵀ (E_Tᴸ)ᵀ (R W₊ Rᵀ)⁻¹ E_Tᴸ E₋` for the given node pairs over the
/// all-positive graph `g_plus`, plus its diagonal.
#[derive(Debug, Clone)]
pub struct NegativeEdgeResistance {
    pub full: DMatrix<f64>,
    pub diag: DVector<f64>,
}

impl NegativeEdgeResistance {
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.full.nrows();
        let mut m = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m = m.max(self.full[(i, j)].abs());
                }
            }
        }
        m
    }
}

pub fn resistance_matrix_for_negatives(
    g_plus: &SignedGraph,
    pairs: &[(usize, usize)],
) -> Result<NegativeEdgeResistance> {
    if let Some((k, e)) = g_plus.edges().iter().enumerate().find(|(_, e)| e.weight < 0.0) {
        return Err(Error::NotAllPositive {
            edge: k,
            weight: e.weight,
        });
    }
    for &(u, v) in pairs {
        check_pair(g_plus, u, v)?;
    }
    let components = g_plus.component_count();
    if components != 1 {
        return Err(Error::NotConnected { components });
    }

    let n = g_plus.node_count();
    let mut signed = DMatrix::zeros(n, pairs.len());
    for (j, &(u, v)) in pairs.iter().enumerate() {
        signed[(u.min(v), j)] = -1.0;
        signed[(u.max(v), j)] = 1.0;
    }

    let d = decompose(g_plus);
    let b = build_bundle(g_plus, &d);
    let projected = forest_left_inverse(&b, &d) * signed;
    let inv = cut_gram_inverse(&b, None)?;
    let full = projected.transpose() * inv * &projected;
    let full = (&full + full.transpose()) * 0.5;
    let diag = full.diagonal();
    Ok(NegativeEdgeResistance { full, diag })
}

/// `trace(M)`.
pub fn total_resistance(m: &DMatrix<f64>) -> f64 {
    m.trace()
}

/// Per-negative-edge resistances over `G₊` for a signed graph.
#[derive(Debug, Clone)]
pub struct ResistanceReport {
    /// `(original edge index, u, v, R_k(G₊))`, in edge order.
    pub pairs: Vec<(usize, usize, usize, f64)>,
    pub diag_r: DVector<f64>,
    pub full: DMatrix<f64>,
    pub r_tot: f64,
}

pub fn resistance_report(g: &SignedGraph) -> Result<ResistanceReport> {
    let split = g.split_signs();
    let endpoints: Vec<(usize, usize)> = split
        .negative_edges
        .iter()
        .map(|&k| g.edge(k).endpoints())
        .collect();
    if endpoints.is_empty() {
        return Ok(ResistanceReport {
            pairs: Vec::new(),
            diag_r: DVector::zeros(0),
            full: DMatrix::zeros(0, 0),
            r_tot: 0.0,
        });
    }
    let m = resistance_matrix_for_negatives(&split.positive, &endpoints)?;
    let pairs = split
        .negative_edges
        .iter()
        .zip(&endpoints)
        .zip(m.diag.iter())
        .map(|((&k, &(u, v)), &r)| (k, u, v, r))
        .collect();
    Ok(ResistanceReport {
        pairs,
        r_tot: total_resistance(&m.full),
        diag_r: m.diag,
        full: m.full,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParallelResistance {
    Finite(f64),
    /// Open circuit: the negative resistor exactly cancels the network.
    Infinite,
}

/// Two resistors in parallel, `r₊ r₋ / (r₊ + r₋)`.
pub fn parallel_combination(r_plus: f64, r_minus: f64) -> ParallelResistance {
    let sum = r_plus + r_minus;
    if sum.abs() <= 1e-12 * r_plus.abs().max(r_minus.abs()) {
        ParallelResistance::Infinite
    } else {
        ParallelResistance::Finite(r_plus * r_minus / sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_path() {
        let g = SignedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!((effective_resistance(&g, 0, 2).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_adjacent() {
        let g = SignedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let r = effective_resistance_detailed(&g, 0, 1).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.cut_basis.is_some());
        assert!(r.all_positive);
    }

    #[test]
    fn disconnected_pair() {
        let g = SignedGraph::new(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(effective_resistance(&g, 0, 2), Err(Error::Disconnected { u: 0, v: 2 }));
        // same component of a disconnected graph is fine
        assert!((effective_resistance(&g, 2, 3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn signed_graph_flagged() {
        let g = SignedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, -0.2)]).unwrap();
        let r = effective_resistance_detailed(&g, 0, 2).unwrap();
        assert!(!r.all_positive);
        // 2 in parallel with -5
        assert!((r.value - 2.0 * -5.0 / (2.0 - 5.0)).abs() < 1e-10);
    }

    #[test]
    fn singular_signed_graph_uses_eigen_route() {
        let g = SignedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, -0.5)]).unwrap();
        let r = effective_resistance_detailed(&g, 0, 1).unwrap();
        assert!(r.cut_basis.is_none());
    }

    #[test]
    fn single_negative_matrix() {
        let g = SignedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let m = resistance_matrix_for_negatives(&g, &[(0, 2)]).unwrap();
        assert!((m.full[(0, 0)] - 2.0).abs() < 1e-12);
        assert_eq!(total_resistance(&m.full), m.diag[0]);
    }

    #[test]
    fn empty_negative_set() {
        let g = SignedGraph::new(2, &[(0, 1, 1.0)]).unwrap();
        let r = resistance_report(&g).unwrap();
        assert_eq!(r.r_tot, 0.0);
        assert_eq!(total_resistance(&DMatrix::zeros(0, 0)), 0.0);
    }

    #[test]
    fn parallel_values() {
        assert_eq!(parallel_combination(1.0, 1.0), ParallelResistance::Finite(0.5));
        assert_eq!(parallel_combination(4.0, -4.0), ParallelResistance::Infinite);
        assert_eq!(parallel_combination(4.0, -8.0), ParallelResistance::Finite(8.0));
    }
}
