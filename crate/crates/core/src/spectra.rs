//! Inertia of symmetric matrices under an explicit zero tolerance.

use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Relative asymmetry accepted (and averaged away) by [`signature`].
pub const SYMMETRY_REL_TOL: f64 = 1e-12;

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub tolerance_used: f64,
    /// Some eigenvalue magnitude lies within a factor 10 of the tolerance,
    /// so the zero count may flip under a small perturbation.
    pub near_singular: bool,
}

impl Signature {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.n_plus, self.n_minus, self.n_zero)
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn is_psd(&self) -> bool {
        self.n_minus == 0
    }

    fn from_eigenvalues(values: &[f64], tol: Option<f64>) -> Self {
        let tol = tol.unwrap_or_else(|| default_tolerance(values));
        let mut sig = Signature {
            n_plus: 0,
            n_minus: 0,
            n_zero: 0,
            tolerance_used: tol,
            near_singular: false,
        };
        for &lambda in values {
            let mag = lambda.abs();
            if mag <= tol {
                sig.n_zero += 1;
            } else if lambda > 0.0 {
                sig.n_plus += 1;
            } else {
                sig.n_minus += 1;
            }
            if mag >= tol / 10.0 && mag <= tol * 10.0 {
                sig.near_singular = true;
            }
        }
        sig
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// `dim · ε · max|λ|`, or `ε` when every eigenvalue vanishes.
pub fn default_tolerance(eigenvalues: &[f64]) -> f64 {
    let max = eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 {
        f64::EPSILON
    } else {
        eigenvalues.len() as f64 * f64::EPSILON * max
    }
}

/// Validates near-symmetry and returns the averaged symmetric part.
pub fn symmetrize(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let scale = m.amax();
    let mut asym = 0.0f64;
    for i in 0..rows {
        for j in (i + 1)..rows {
            asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if asym > SYMMETRY_REL_TOL * scale.max(f64::MIN_POSITIVE) && asym > 0.0 {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    Ok((m + m.transpose()) * 0.5)
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let s = symmetrize(m)?;
    if s.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Signature of a symmetric matrix. `tol = None` selects
/// [`default_tolerance`] on the computed spectrum.
pub fn signature(m: &DMatrix<f64>, tol: Option<f64>) -> Result<Signature> {
    let values = symmetric_eigenvalues(m)?;
    Ok(Signature::from_eigenvalues(&values, tol))
}

/// Signature of `pd_factor · sym_factor`, where `pd_factor` is symmetric
/// positive definite, via the congruent form `P^{1/2} S P^{1/2}`.
pub fn signature_of_similar_nonsymmetric(
    pd_factor: &DMatrix<f64>,
    sym_factor: &DMatrix<f64>,
    tol: Option<f64>,
) -> Result<Signature> {
    let n = pd_factor.nrows();
    if sym_factor.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: sym_factor.nrows(),
        });
    }
    let root = sqrt_pd(pd_factor)?;
    let sym = symmetrize(sym_factor)?;
    let congruent = &root * sym * &root;
    signature(&congruent, tol)
}

/// Symmetric square root of a positive definite matrix.
pub fn sqrt_pd(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let s = symmetrize(m)?;
    if s.nrows() == 0 {
        return Ok(s);
    }
    let eig = SymmetricEigen::new(s);
    let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= default_tolerance(&values) {
        return Err(Error::FactorNotPd {
            min_eigenvalue: min,
        });
    }
    let roots = DVector::from_iterator(values.len(), values.iter().map(|x| x.sqrt()));
    let v = &eig.eigenvectors;
    Ok(v * DMatrix::from_diagonal(&roots) * v.transpose())
}

/// Moore–Penrose pseudo-inverse by eigendecomposition, inverting only
/// eigenvalues with `|λ| > tol`.
pub fn pseudo_inverse_eig(m: &DMatrix<f64>, tol: Option<f64>) -> Result<DMatrix<f64>> {
    let s = symmetrize(m)?;
    let n = s.nrows();
    if n == 0 {
        return Ok(s);
    }
    let eig = SymmetricEigen::new(s);
    let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let tol = tol.unwrap_or_else(|| default_tolerance(&values));
    let inv = DVector::from_iterator(
        n,
        values
            .iter()
            .map(|&x| if x.abs() > tol { 1.0 / x } else { 0.0 }),
    );
    let v = &eig.eigenvectors;
    let p = v * DMatrix::from_diagonal(&inv) * v.transpose();
    Ok((&p + p.transpose()) * 0.5)
}
