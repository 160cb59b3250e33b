//! Laplacian-family matrices: `L = E W Eᵀ`, edge Laplacians, the cut-space
//! Gram matrix `R W Rᵀ` and the essential edge Laplacian.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{incidence_matrix, ForestDecomposition, SignedGraph};

#[derive(Debug, Clone)]
pub struct LaplacianBundle {
    /// `L = E W Eᵀ`, `|V| × |V|`.
    pub laplacian: DMatrix<f64>,
    /// Edge weights in the decomposition's forest-then-cycle order.
    pub weight_diag: DVector<f64>,
    /// `R W Rᵀ`, `(|V| - c) × (|V| - c)`.
    pub cut_gram: DMatrix<f64>,
    /// `L_e(F) · R W Rᵀ`. Not symmetric in general.
    pub essential: DMatrix<f64>,
    /// `L_e(F) = E_Fᵀ E_F` (unweighted), symmetric positive definite.
    pub forest_edge_laplacian: DMatrix<f64>,
}

pub fn build_bundle(g: &SignedGraph, d: &ForestDecomposition) -> LaplacianBundle {
    let weight_diag = DVector::from_iterator(
        g.edge_count(),
        d.edge_order().into_iter().map(|k| g.edge(k).weight),
    );
    let w = DMatrix::from_diagonal(&weight_diag);
    let laplacian = &d.incidence_full * &w * d.incidence_full.transpose();
    let cut_gram = &d.cut_basis * &w * d.cut_basis.transpose();
    let forest_edge_laplacian = d.incidence_forest.transpose() * &d.incidence_forest;
    let essential = &forest_edge_laplacian * &cut_gram;
    LaplacianBundle {
        laplacian,
        weight_diag,
        cut_gram,
        essential,
        forest_edge_laplacian,
    }
}

#[derive(Debug, Clone)]
pub struct EdgeLaplacian {
    pub matrix: DMatrix<f64>,
    /// `W^{1/2} EᵀE W^{1/2}` when true; the surrogate `W EᵀE` otherwise.
    pub symmetric: bool,
}

/// Weighted edge Laplacian in input edge order.
///
/// For all-positive weights this is the symmetric `W^{1/2} EᵀE W^{1/2}`. With
/// any negative weight the square root is not real, so `W EᵀE` is returned
/// instead; it shares its nonzero spectrum with `L = E W Eᵀ`.
pub fn weighted_edge_laplacian(g: &SignedGraph) -> EdgeLaplacian {
    let e = incidence_matrix(g);
    let ete = e.transpose() * &e;
    let weights = DVector::from_vec(g.weights());
    if g.is_all_positive() {
        let root = DMatrix::from_diagonal(&weights.map(f64::sqrt));
        EdgeLaplacian {
            matrix: &root * ete * &root,
            symmetric: true,
        }
    } else {
        EdgeLaplacian {
            matrix: DMatrix::from_diagonal(&weights) * ete,
            symmetric: false,
        }
    }
}

/// Left inverse `E_F^L = L_e(F)⁻¹ E_Fᵀ` of the forest incidence matrix.
pub fn forest_left_inverse(b: &LaplacianBundle, d: &ForestDecomposition) -> DMatrix<f64> {
    if d.forest_size() == 0 {
        return DMatrix::zeros(0, d.incidence_forest.nrows());
    }
    b.forest_edge_laplacian
        .clone()
        .cholesky()
        .expect("forest edge Laplacian is positive definite")
        .solve(&d.incidence_forest.transpose())
}

/// Inverse of the cut-space Gram matrix, refusing when it is numerically
/// singular (`|λ|min <= tol`). The default tolerance is
/// `dim · ε · max(max|λ|, max|w|)` so that complete cancellation is caught.
pub fn cut_gram_inverse(b: &LaplacianBundle, tol: Option<f64>) -> Result<DMatrix<f64>> {
    let m = &b.cut_gram;
    let n = m.nrows();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let eig = SymmetricEigen::new((m + m.transpose()) * 0.5);
    let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let w_scale = b.weight_diag.amax();
    let tol = tol.unwrap_or_else(|| {
        let max = values.iter().fold(w_scale, |m, x| m.max(x.abs()));
        n as f64 * f64::EPSILON * max
    });
    let min_abs = values.iter().fold(f64::INFINITY, |a, x| a.min(x.abs()));
    if min_abs <= tol {
        return Err(Error::SingularCutGram {
            min_abs_eigenvalue: min_abs,
            tol,
        });
    }
    let inv = DVector::from_iterator(n, values.iter().map(|x| 1.0 / x));
    let v = &eig.eigenvectors;
    let p = v * DMatrix::from_diagonal(&inv) * v.transpose();
    Ok((&p + p.transpose()) * 0.5)
}

/// `L† = (E_F^L)ᵀ (R W Rᵀ)⁻¹ E_F^L`.
///
/// Valid whenever `L` has exactly one zero eigenvalue per component;
/// otherwise `R W Rᵀ` is singular and [`Error::SingularCutGram`] is returned
/// (fall back to [`crate::spectra::pseudo_inverse_eig`]).
pub fn laplacian_pseudo_inverse(
    b: &LaplacianBundle,
    d: &ForestDecomposition,
    tol: Option<f64>,
) -> Result<DMatrix<f64>> {
    let left = forest_left_inverse(b, d);
    let inv = cut_gram_inverse(b, tol)?;
    let p = left.transpose() * inv * &left;
    Ok((&p + p.transpose()) * 0.5)
}

/// Second route to the same pseudo-inverse: `(E_F^L)ᵀ L_ess(F)⁻¹ E_Fᵀ`.
pub fn pseudo_inverse_via_essential(
    b: &LaplacianBundle,
    d: &ForestDecomposition,
) -> Result<DMatrix<f64>> {
    let left = forest_left_inverse(b, d);
    if d.forest_size() == 0 {
        return Ok(DMatrix::zeros(left.ncols(), left.ncols()));
    }
    let rhs = d.incidence_forest.transpose();
    let solved = b
        .essential
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularCutGram {
            min_abs_eigenvalue: 0.0,
            tol: 0.0,
        })?;
    Ok(left.transpose() * solved)
}

/// `S⁻¹ L S` with `S = [E_F  N]`, `N` an orthonormal basis of `null(E_Fᵀ)`
/// (normalized component indicators).
///
/// The result is block diagonal: `R W Rᵀ · L_e(F)` in the leading block and
/// a `c × c` zero block.
pub fn similarity_transform(g: &SignedGraph, b: &LaplacianBundle, d: &ForestDecomposition) -> DMatrix<f64> {
    let n = g.node_count();
    let f = d.forest_size();
    let labels = g.component_labels();
    let c = d.component_count;
    let mut sizes = vec![0usize; c];
    for &l in &labels {
        sizes[l] += 1;
    }
    let mut null = DMatrix::zeros(n, c);
    for (v, &l) in labels.iter().enumerate() {
        null[(v, l)] = 1.0 / (sizes[l] as f64).sqrt();
    }

    let mut s = DMatrix::zeros(n, n);
    s.view_mut((0, 0), (n, f)).copy_from(&d.incidence_forest);
    s.view_mut((0, f), (n, c)).copy_from(&null);

    let left = forest_left_inverse(b, d);
    let mut s_inv = DMatrix::zeros(n, n);
    s_inv.view_mut((0, 0), (f, n)).copy_from(&left);
    s_inv.view_mut((f, 0), (c, n)).copy_from(&null.transpose());

    s_inv * &b.laplacian * s
}
