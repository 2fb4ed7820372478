//! Reduction of a pair of density states to a pair of classical distributions.
//!
//! With `ρ = Σ rᵢ|uᵢ⟩⟨uᵢ|` and `σ = Σ sⱼ|vⱼ⟩⟨vⱼ|`, the distributions on
//! index pairs are
//!
//! ```text
//! P(i,j) = rᵢ |⟨uᵢ|vⱼ⟩|²      Q(i,j) = sⱼ |⟨uᵢ|vⱼ⟩|²
//! ```
//!
//! and every Petz–Rényi divergence of `(ρ, σ)` equals the classical Rényi
//! divergence of `(P, Q)` of the same order.

use crate::classical::FiniteDistribution;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::spectral::{support_projector, DensityState};
use std::collections::BTreeMap;

/// Overlaps below this are treated as exact zeros.
pub const OVERLAP_CUTOFF: f64 = 1e-14;

const STOCHASTIC_TOL: f64 = 1e-9;

/// Index of a cell `(i, j)`: eigenvector `i` of ρ against eigenvector `j` of σ.
pub type Cell = (usize, usize);

/// `w[i][j] = |⟨uᵢ|vⱼ⟩|²`, doubly stochastic.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMatrix {
    dim: usize,
    w: Vec<f64>,
}

impl OverlapMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.dim + j]
    }

    /// Largest deviation of a row or column sum from one.
    pub fn stochastic_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for k in 0..n {
            let row: f64 = (0..n).map(|j| self.get(k, j)).sum();
            let col: f64 = (0..n).map(|i| self.get(i, k)).sum();
            worst = worst.max((row - 1.0).abs()).max((col - 1.0).abs());
        }
        worst
    }

    /// Whether cell `(i, j)` counts as a nonzero overlap.
    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.get(i, j) > OVERLAP_CUTOFF
    }
}

pub fn overlap_matrix(rho: &DensityState, sigma: &DensityState) -> Result<OverlapMatrix> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let n = rho.dim();
    let g = rho.eigenvectors().adjoint().matmul(sigma.eigenvectors());
    let w = (0..n * n).map(|k| g[(k / n, k % n)].norm_sqr()).collect();
    let m = OverlapMatrix { dim: n, w };
    let residual = m.stochastic_residual();
    if residual > STOCHASTIC_TOL {
        return Err(Error::InvalidInput(format!(
            "overlap matrix is not doubly stochastic (residual {residual:e})"
        )));
    }
    Ok(m)
}

/// The classical pair `(P, Q)`, stored on cells with nonzero overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPair {
    dim: usize,
    entries: BTreeMap<Cell, (f64, f64)>,
}

impl JointPair {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(p, q)` at a cell; `(0, 0)` for cells with zero overlap.
    pub fn get(&self, cell: Cell) -> (f64, f64) {
        self.entries.get(&cell).copied().unwrap_or((0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, f64, f64)> + '_ {
        self.entries.iter().map(|(&c, &(p, q))| (c, p, q))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn p(&self) -> FiniteDistribution<Cell> {
        FiniteDistribution::new(self.entries.iter().map(|(&c, &(p, _))| (c, p)))
            .expect("P is normalized by construction")
    }

    pub fn q(&self) -> FiniteDistribution<Cell> {
        FiniteDistribution::new(self.entries.iter().map(|(&c, &(_, q))| (c, q)))
            .expect("Q is normalized by construction")
    }

    /// `P ≪ Q` decided cellwise on the clamped spectra.
    pub fn absolutely_continuous(&self) -> bool {
        self.entries.values().all(|&(p, q)| q > 0.0 || p == 0.0)
    }

    /// Whether `P` and `Q` agree cellwise within `tol`.
    pub fn marginals_equal(&self, tol: f64) -> bool {
        self.entries.values().all(|&(p, q)| (p - q).abs() <= tol)
    }
}

pub fn build_joint(rho: &DensityState, sigma: &DensityState) -> Result<JointPair> {
    let w = overlap_matrix(rho, sigma)?;
    Ok(joint_from_overlaps(rho, sigma, &w))
}

pub(crate) fn joint_from_overlaps(rho: &DensityState, sigma: &DensityState, w: &OverlapMatrix) -> JointPair {
    let n = w.dim();
    let mut entries = BTreeMap::new();
    for (i, &r) in rho.eigenvalues().iter().enumerate() {
        for (j, &s) in sigma.eigenvalues().iter().enumerate() {
            let wij = w.get(i, j);
            if wij > OVERLAP_CUTOFF {
                entries.insert((i, j), (r * wij, s * wij));
            }
        }
    }
    JointPair { dim: n, entries }
}

/// `Σᵢⱼ |rᵢ − sⱼ| wᵢⱼ`, the total variation of `(P, Q)` computed from spectra.
pub fn total_variation_spectral(rho: &DensityState, sigma: &DensityState) -> Result<f64> {
    let w = overlap_matrix(rho, sigma)?;
    let mut total = 0.0;
    for (i, &r) in rho.eigenvalues().iter().enumerate() {
        for (j, &s) in sigma.eigenvalues().iter().enumerate() {
            total += (r - s).abs() * w.get(i, j);
        }
    }
    Ok(total)
}

/// Residuals of the measurement built from `Aᵢⱼ = ⟨uᵢ|vⱼ⟩ |uᵢ⟩⟨vⱼ|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmReport {
    /// `‖Σ AᵢⱼAᵢⱼ† − I‖_F`
    pub left_completeness: f64,
    /// `‖Σ Aᵢⱼ†Aᵢⱼ − I‖_F`
    pub right_completeness: f64,
    /// `max |tr(ρ AᵢⱼAᵢⱼ†) − pᵢⱼ|`
    pub p_residual: f64,
    /// `max |tr(σ Aᵢⱼ†Aᵢⱼ) − qᵢⱼ|`
    pub q_residual: f64,
}

impl PovmReport {
    pub fn max_residual(&self) -> f64 {
        self.left_completeness
            .max(self.right_completeness)
            .max(self.p_residual)
            .max(self.q_residual)
    }
}

pub fn povm_check(rho: &DensityState, sigma: &DensityState) -> Result<PovmReport> {
    let joint = build_joint(rho, sigma)?;
    let n = rho.dim();
    let u = rho.eigenvectors();
    let v = sigma.eigenvectors();
    let rho_m = rho.to_matrix();
    let sigma_m = sigma.to_matrix();
    let mut left = CMatrix::zeros(n, n);
    let mut right = CMatrix::zeros(n, n);
    let mut p_res = 0.0_f64;
    let mut q_res = 0.0_f64;
    for i in 0..n {
        let ui = u.column(i);
        for j in 0..n {
            let vj = v.column(j);
            let amp = crate::linalg::inner(&ui, &vj);
            let a = CMatrix::from_fn(n, n, |x, y| amp * ui[x] * vj[y].conj());
            let aa_dag = a.matmul(&a.adjoint());
            let a_dag_a = a.adjoint().matmul(&a);
            let (p, q) = joint.get((i, j));
            p_res = p_res.max((rho_m.matmul(&aa_dag).trace().re - p).abs());
            q_res = q_res.max((sigma_m.matmul(&a_dag_a).trace().re - q).abs());
            left = add(&left, &aa_dag);
            right = add(&right, &a_dag_a);
        }
    }
    let id = CMatrix::identity(n);
    Ok(PovmReport {
        left_completeness: left.sub(&id).frobenius_norm(),
        right_completeness: right.sub(&id).frobenius_norm(),
        p_residual: p_res,
        q_residual: q_res,
    })
}

fn add(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.sub(&b.scale(-1.0))
}

/// `supp ρ ⊆ supp σ`, decided by `‖(I − Π_σ)Π_ρ‖_F ≤ tol·dim`.
pub fn support_included(rho: &DensityState, sigma: &DensityState, tol: f64) -> Result<bool> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let n = rho.dim();
    let pr = support_projector(rho, 0.0).matrix();
    let ps = support_projector(sigma, 0.0).matrix();
    let leak = CMatrix::identity(n).sub(&ps).matmul(&pr);
    Ok(leak.frobenius_norm() <= tol * n as f64)
}

/// `tr Π_ρ σ`.
pub fn support_mass(rho: &DensityState, sigma: &DensityState) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let basis = support_projector(rho, 0.0);
    let b = basis.basis();
    let s = sigma.to_matrix();
    Ok(b.adjoint().matmul(&s).matmul(b).trace().re.max(0.0))
}

/// `supp ρ ⊥ supp σ`, decided by `tr Π_ρ σ ≤ tol`.
pub fn supports_orthogonal(rho: &DensityState, sigma: &DensityState, tol: f64) -> Result<bool> {
    Ok(support_mass(rho, sigma)? <= tol)
}
