//! Positive semidefiniteness of signed Laplacians from effective resistance.
//!
//! With negative edges `E₋` and the all-positive remainder `G₊` connected,
//! `L` stays PSD exactly when each `|w_k| <= 1 / R_k(G₊)`, provided the
//! path-edge sets of the negative edges are pairwise disjoint. Every verdict
//! is also checked against the directly computed signature of `L`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::paths::{pairwise_disjoint, path_edge_sets};
use crate::resistance::{effective_resistance, resistance_matrix_for_negatives};
use crate::spectra::{signature, Signature};

/// `| |w|·R - 1 |` at or below this counts as sitting on the threshold.
pub const BOUNDARY_REL_TOL: f64 = 1e-9;

/// Slack in `Σ|w_k|⁻¹ >= R_tot`.
pub const COROLLARY6_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    StrictInterior,
    /// PSD with extra zero eigenvalues.
    Boundary,
    Indefinite,
}

impl Classification {
    pub fn is_psd(self) -> bool {
        !matches!(self, Classification::Indefinite)
    }

    /// Classification read straight off a signature for a graph with
    /// `components` connected components.
    pub fn from_signature(sig: &Signature, components: usize) -> Self {
        if sig.n_minus > 0 {
            Classification::Indefinite
        } else if sig.n_zero > components {
            Classification::Boundary
        } else {
            Classification::StrictInterior
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::StrictInterior => "PSD (strict interior)",
            Classification::Boundary => "PSD (boundary)",
            Classification::Indefinite => "indefinite",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeThreshold {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    /// `|w_k|`.
    pub magnitude: f64,
    /// `R_k(G₊)`.
    pub resistance: f64,
    /// `1 / R_k(G₊)`, the largest admissible magnitude.
    pub threshold: f64,
    /// `1 - |w_k| R_k(G₊)`: positive inside the PSD region.
    pub margin: f64,
}

impl EdgeThreshold {
    fn new(edge: usize, u: usize, v: usize, weight: f64, resistance: f64) -> Self {
        let magnitude = weight.abs();
        Self {
            edge,
            u,
            v,
            magnitude,
            resistance,
            threshold: 1.0 / resistance,
            margin: 1.0 - magnitude * resistance,
        }
    }

    pub fn classification(&self) -> Classification {
        if self.margin.abs() <= BOUNDARY_REL_TOL {
            Classification::Boundary
        } else if self.margin > 0.0 {
            Classification::StrictInterior
        } else {
            Classification::Indefinite
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corollary6 {
    pub satisfied: bool,
    /// `Σ_k |w_k|⁻¹`.
    pub inverse_weight_sum: f64,
    pub r_tot: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefinitenessVerdict {
    pub classification: Classification,
    pub per_edge: Vec<EdgeThreshold>,
    pub disjointness_hypothesis_holds: bool,
    /// False when the verdict had to be read from the spectrum because the
    /// threshold theorem does not apply.
    pub theorem_applied: bool,
    pub corollary6: Corollary6,
    /// `σ(L)` computed directly.
    pub spectrum: Signature,
    /// The spectrum is consistent with the classification.
    pub spectral_agreement: bool,
}

impl DefinitenessVerdict {
    pub fn corollary6_satisfied(&self) -> bool {
        self.corollary6.satisfied
    }
}

fn combine(edges: &[EdgeThreshold]) -> (Classification, usize) {
    let mut on_boundary = 0;
    let mut class = Classification::StrictInterior;
    for e in edges {
        match e.classification() {
            Classification::Indefinite => class = Classification::Indefinite,
            Classification::Boundary => {
                on_boundary += 1;
                if class != Classification::Indefinite {
                    class = Classification::Boundary;
                }
            }
            Classification::StrictInterior => {}
        }
    }
    (class, on_boundary)
}

fn agrees(class: Classification, on_boundary: usize, sig: &Signature, components: usize) -> bool {
    match class {
        Classification::StrictInterior => sig.n_minus == 0 && sig.n_zero == components,
        Classification::Boundary => sig.n_minus == 0 && sig.n_zero == components + on_boundary,
        Classification::Indefinite => sig.n_minus > 0,
    }
}

fn hypothesis(theorem: &'static str, reasons: Vec<String>) -> Error {
    Error::HypothesisViolated { theorem, reasons }
}

/// Single negative edge: PSD iff `|w₋| <= 1 / R_uv(G₊)`.
pub fn single_edge_verdict(g: &SignedGraph, tol: Option<f64>) -> Result<DefinitenessVerdict> {
    const THEOREM: &str = "single-negative-edge threshold";
    let split = g.split_signs();
    let mut reasons = Vec::new();
    if split.negative_edges.len() != 1 {
        reasons.push(format!(
            "exactly one negative edge required, found {}",
            split.negative_edges.len()
        ));
    }
    let components = split.positive.component_count();
    if components != 1 {
        reasons.push(format!("positive subgraph has {components} components"));
    }
    if !reasons.is_empty() {
        return Err(hypothesis(THEOREM, reasons));
    }

    let k = split.negative_edges[0];
    let e = *g.edge(k);
    let r = effective_resistance(&split.positive, e.tail, e.head)?;
    let edge = EdgeThreshold::new(k, e.tail, e.head, e.weight, r);
    let (classification, on_boundary) = combine(std::slice::from_ref(&edge));

    let spectrum = signature(&g.laplacian(), tol)?;
    let corollary6 = corollary6_check(g)?;
    Ok(DefinitenessVerdict {
        classification,
        spectral_agreement: agrees(classification, on_boundary, &spectrum, 1),
        per_edge: vec![edge],
        disjointness_hypothesis_holds: true,
        theorem_applied: true,
        corollary6,
        spectrum,
    })
}

/// Any number of negative edges. Applies the per-edge thresholds when the
/// path-edge sets are pairwise disjoint; otherwise reports the theorem as
/// inapplicable and classifies from `σ(L)`.
pub fn multi_edge_verdict(g: &SignedGraph, tol: Option<f64>) -> Result<DefinitenessVerdict> {
    const THEOREM: &str = "multiple-negative-edge threshold";
    let split = g.split_signs();
    if split.negative_edges.is_empty() {
        return Err(hypothesis(
            THEOREM,
            vec!["at least one negative edge required".into()],
        ));
    }
    let components = split.positive.component_count();
    if components != 1 {
        return Err(Error::NotConnected { components });
    }

    let endpoints: Vec<(usize, usize)> = split
        .negative_edges
        .iter()
        .map(|&k| g.edge(k).endpoints())
        .collect();
    let sets = path_edge_sets(&split.positive, &endpoints)?;
    let disjoint = pairwise_disjoint(&sets);

    let m = resistance_matrix_for_negatives(&split.positive, &endpoints)?;
    let per_edge: Vec<EdgeThreshold> = split
        .negative_edges
        .iter()
        .zip(&endpoints)
        .zip(m.diag.iter())
        .map(|((&k, &(u, v)), &r)| EdgeThreshold::new(k, u, v, g.edge(k).weight, r))
        .collect();

    let spectrum = signature(&g.laplacian(), tol)?;
    let (classification, spectral_agreement) = if disjoint {
        let (class, on_boundary) = combine(&per_edge);
        (class, agrees(class, on_boundary, &spectrum, 1))
    } else {
        (Classification::from_signature(&spectrum, 1), true)
    };

    let inverse_weight_sum = per_edge.iter().map(|e| 1.0 / e.magnitude).sum();
    let r_tot = m.full.trace();
    Ok(DefinitenessVerdict {
        classification,
        per_edge,
        disjointness_hypothesis_holds: disjoint,
        theorem_applied: disjoint,
        corollary6: Corollary6 {
            satisfied: inverse_weight_sum >= r_tot - COROLLARY6_SLACK,
            inverse_weight_sum,
            r_tot,
        },
        spectrum,
        spectral_agreement,
    })
}

/// Necessary condition for PSD: `Σ_k |w_k|⁻¹ >= R_tot`. A `false` result
/// proves `L` indefinite without an eigendecomposition.
pub fn corollary6_check(g: &SignedGraph) -> Result<Corollary6> {
    let split = g.split_signs();
    let components = split.positive.component_count();
    if components != 1 {
        return Err(Error::NotConnected { components });
    }
    if split.negative_edges.is_empty() {
        return Ok(Corollary6 {
            satisfied: true,
            inverse_weight_sum: 0.0,
            r_tot: 0.0,
        });
    }
    let endpoints: Vec<(usize, usize)> = split
        .negative_edges
        .iter()
        .map(|&k| g.edge(k).endpoints())
        .collect();
    let m = resistance_matrix_for_negatives(&split.positive, &endpoints)?;
    let inverse_weight_sum = split
        .negative_edges
        .iter()
        .map(|&k| 1.0 / g.edge(k).weight.abs())
        .sum::<f64>();
    let r_tot = m.full.trace();
    Ok(Corollary6 {
        satisfied: inverse_weight_sum >= r_tot - COROLLARY6_SLACK,
        inverse_weight_sum,
        r_tot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_pair_interior() {
        let g = SignedGraph::new(2, &[(0, 1, 1.0), (0, 1, -0.5)]).unwrap();
        let v = single_edge_verdict(&g, None).unwrap();
        assert_eq!(v.classification, Classification::StrictInterior);
        assert!((v.per_edge[0].threshold - 1.0).abs() < 1e-12);
        assert_eq!(v.spectrum.triple(), (1, 0, 1));
        assert!(v.spectral_agreement);
    }

    #[test]
    fn hypothesis_violations() {
        let none = SignedGraph::new(2, &[(0, 1, 1.0)]).unwrap();
        assert!(matches!(
            single_edge_verdict(&none, None),
            Err(Error::HypothesisViolated { .. })
        ));
        let two = SignedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, -0.1), (0, 1, -0.1)]).unwrap();
        assert!(matches!(
            single_edge_verdict(&two, None),
            Err(Error::HypothesisViolated { .. })
        ));
        let split = SignedGraph::new(3, &[(0, 1, 1.0), (1, 2, -0.1)]).unwrap();
        match single_edge_verdict(&split, None) {
            Err(Error::HypothesisViolated { reasons, .. }) => assert_eq!(reasons.len(), 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            multi_edge_verdict(&split, None),
            Err(Error::NotConnected { components: 2 })
        ));
    }

    #[test]
    fn corollary6_vacuous() {
        let g = SignedGraph::new(2, &[(0, 1, 1.0)]).unwrap();
        let c = corollary6_check(&g).unwrap();
        assert!(c.satisfied);
        assert_eq!((c.inverse_weight_sum, c.r_tot), (0.0, 0.0));
    }

    #[test]
    fn edge_threshold_margin_sign() {
        let e = EdgeThreshold::new(0, 0, 1, -0.2, 4.0);
        assert!((e.margin - 0.2).abs() < 1e-15);
        assert_eq!(e.classification(), Classification::StrictInterior);
        assert_eq!(EdgeThreshold::new(0, 0, 1, -0.25, 4.0).classification(), Classification::Boundary);
        assert_eq!(EdgeThreshold::new(0, 0, 1, -0.3, 4.0).classification(), Classification::Indefinite);
    }
}
