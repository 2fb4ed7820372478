//! Density states, supports, functional calculus and the Hilbert–Schmidt distance.

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigh, CMatrix};
use num_complex::Complex64;

/// Default support threshold, relative to the largest eigenvalue.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-9;

const HERMITIAN_REL_TOL: f64 = 1e-12;
const ORTHONORMAL_TOL: f64 = 1e-10;

/// A square complex matrix that passed the Hermiticity check.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let residual = m.hermitian_residual();
        let bound = HERMITIAN_REL_TOL * m.max_abs();
        if residual > bound {
            return Err(Error::NonHermitian { residual, bound });
        }
        Ok(HermitianMatrix(m))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        HermitianMatrix(CMatrix::from_real_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_inner(self) -> CMatrix {
        self.0
    }
}

/// Eigendecomposition `H = V·diag(λ)·V†`, eigenvalues descending.
pub fn eig_hermitian(h: &HermitianMatrix) -> (Vec<f64>, CMatrix) {
    jacobi_eigh(h.matrix())
}

/// A density operator stored by its spectral decomposition.
///
/// Eigenvalues are sorted descending, clamped so that tiny values are exactly
/// zero, and sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl DensityState {
    /// Validates a matrix as a density operator and diagonalizes it.
    ///
    /// Eigenvalues below `tol · λ_max` are set to zero; any eigenvalue below
    /// `-tol` is an error.
    pub fn from_matrix(m: &HermitianMatrix, tol: f64) -> Result<Self> {
        let trace = m.matrix().trace().re;
        let (vals, vecs) = eig_hermitian(m);
        let min = vals.last().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        Self::finish(vals, vecs, tol)
    }

    /// Builds a state from a given spectrum and eigenbasis (columns).
    ///
    /// `tol` has the same meaning as in [`DensityState::from_matrix`]; pass
    /// `0.0` to keep every nonnegative eigenvalue.
    pub fn from_spectrum(eigenvalues: Vec<f64>, eigenvectors: CMatrix, tol: f64) -> Result<Self> {
        let n = eigenvalues.len();
        if eigenvectors.rows() != n || eigenvectors.cols() != n {
            return Err(Error::DimMismatch(n, eigenvectors.rows().max(eigenvectors.cols())));
        }
        if n == 0 {
            return Err(Error::InvalidInput("empty state".into()));
        }
        let residual = eigenvectors.gram_residual();
        if residual > ORTHONORMAL_TOL {
            return Err(Error::NonOrthonormal { residual });
        }
        if let Some(&min) = eigenvalues.iter().min_by(|a, b| a.total_cmp(b)) {
            if min < -tol.max(1e-12) || min.is_nan() {
                return Err(Error::NotPsd { min_eigenvalue: min });
            }
        }
        let total: f64 = eigenvalues.iter().sum();
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace: total });
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eigenvalues[b].total_cmp(&eigenvalues[a]));
        let vals = order.iter().map(|&k| eigenvalues[k]).collect();
        Self::finish(vals, eigenvectors.select_columns(&order), tol)
    }

    /// Diagonal state in the standard basis.
    pub fn diagonal(eigenvalues: &[f64]) -> Result<Self> {
        Self::from_spectrum(eigenvalues.to_vec(), CMatrix::identity(eigenvalues.len()), DEFAULT_TOL)
    }

    fn finish(mut vals: Vec<f64>, vecs: CMatrix, tol: f64) -> Result<Self> {
        let max = vals.first().copied().unwrap_or(0.0);
        let cutoff = tol * max;
        for v in vals.iter_mut() {
            if *v <= cutoff || *v < 0.0 {
                *v = 0.0;
            }
        }
        let total: f64 = vals.iter().sum();
        if total <= 0.0 || (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace: total });
        }
        for v in vals.iter_mut() {
            *v /= total;
        }
        Ok(DensityState {
            eigenvalues: vals,
            eigenvectors: vecs,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|&&r| r > 0.0).count()
    }

    /// `Σ rᵢ |uᵢ⟩⟨uᵢ|`.
    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::spectral_sum(&self.eigenvectors, &self.eigenvalues)
    }

    /// Largest eigenvalue, i.e. the operator norm.
    pub fn operator_norm(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// The same spectrum in the basis `W·U`.
    pub fn conjugated(&self, w: &CMatrix) -> Result<Self> {
        let vecs = w.matmul(&self.eigenvectors);
        Self::from_spectrum(self.eigenvalues.clone(), vecs, 0.0)
    }
}

/// Orthonormal basis of the support of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportProjector {
    basis: CMatrix,
}

impl SupportProjector {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// Dense projector `B·B†`.
    pub fn matrix(&self) -> CMatrix {
        self.basis.matmul(&self.basis.adjoint())
    }
}

/// Projector onto `span{uᵢ : rᵢ > tol}`.
pub fn support_projector(s: &DensityState, tol: f64) -> SupportProjector {
    let keep: Vec<usize> = (0..s.dim()).filter(|&i| s.eigenvalues[i] > tol).collect();
    SupportProjector {
        basis: s.eigenvectors.select_columns(&keep),
    }
}

/// `Σ rᵢᵉ |uᵢ⟩⟨uᵢ|`.
///
/// With `pseudo`, the power is taken on the support only and the kernel maps
/// to zero. Without it, a negative power of a singular state is an error and
/// `0⁰ = 1`.
pub fn matrix_power(s: &DensityState, e: f64, pseudo: bool) -> Result<HermitianMatrix> {
    let singular = s.eigenvalues.contains(&0.0);
    if !pseudo && e < 0.0 && singular {
        return Err(Error::SingularPower { exponent: e });
    }
    let weights: Vec<f64> = s
        .eigenvalues
        .iter()
        .map(|&r| {
            if r > 0.0 {
                r.powf(e)
            } else if pseudo || e > 0.0 {
                0.0
            } else {
                1.0
            }
        })
        .collect();
    Ok(HermitianMatrix(CMatrix::spectral_sum(&s.eigenvectors, &weights)))
}

/// Pseudo-logarithm `Σ_{rᵢ>0} log rᵢ |uᵢ⟩⟨uᵢ|`.
pub fn matrix_log(s: &DensityState) -> HermitianMatrix {
    let weights: Vec<f64> = s
        .eigenvalues
        .iter()
        .map(|&r| if r > 0.0 { r.ln() } else { 0.0 })
        .collect();
    HermitianMatrix(CMatrix::spectral_sum(&s.eigenvectors, &weights))
}

/// `‖ρ − σ‖₂² = Σᵢⱼ (rᵢ − sⱼ)² |⟨uᵢ|vⱼ⟩|²`.
pub fn hs_norm_sq_diff(rho: &DensityState, sigma: &DensityState) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let overlaps = rho.eigenvectors.adjoint().matmul(&sigma.eigenvectors);
    let mut total = 0.0;
    for (i, &r) in rho.eigenvalues.iter().enumerate() {
        for (j, &s) in sigma.eigenvalues.iter().enumerate() {
            total += (r - s).powi(2) * overlaps[(i, j)].norm_sqr();
        }
    }
    Ok(total)
}

/// `tr((ρ − σ)²)` from dense matrices; independent of the spectral formula.
pub fn hs_norm_sq_diff_entrywise(rho: &DensityState, sigma: &DensityState) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let d = rho.to_matrix().sub(&sigma.to_matrix());
    Ok(d.frobenius_norm().powi(2))
}

/// Builds a complex number; used by callers assembling matrices by hand.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
