//! Petz–Rényi relative entropies of density states.
//!
//! The main entry point, [`petz_renyi`], evaluates `D_α(ρ‖σ)` as the
//! classical Rényi divergence of the reduced pair from
//! [`build_joint`](crate::reduction::build_joint).
//! [`petz_renyi_direct`] computes the same quantity from matrix functions,
//! `(1/(α−1)) log tr ρ^{α/2} σ^{1−α} ρ^{α/2}`, and serves as an independent
//! check.

use crate::classical::{renyi, AlphaOrder};
use crate::error::{Error, Result};
use crate::extended::{ExtendedReal, InfinityReason};
use crate::linalg::{jacobi_eigh, CMatrix};
use crate::reduction::{build_joint, overlap_matrix, support_mass, Cell, OverlapMatrix};
use crate::spectral::{matrix_log, matrix_power, support_projector, DensityState};

/// Mass below which `tr Π_ρ σ` counts as zero.
const ZERO_MASS_PER_CELL: f64 = 1e-14;

fn check_dims(rho: &DensityState, sigma: &DensityState) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    Ok(())
}

/// `D_α(ρ‖σ)` for any order, via the classical reduction. Nats.
pub fn petz_renyi(rho: &DensityState, sigma: &DensityState, order: AlphaOrder) -> Result<ExtendedReal> {
    let joint = build_joint(rho, sigma)?;
    Ok(renyi(&joint.p(), &joint.q(), order))
}

/// Outcome of the domain condition for `α > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Condition1 {
    pub holds: bool,
    /// First cell with `rᵢ > 0`, `sⱼ = 0` and nonzero overlap.
    pub witness: Option<Cell>,
}

/// Whether every `uᵢ` with `rᵢ > 0` lies in the domain of `σ^{1−α}`.
///
/// In finite dimension this is the absence of a cell with `rᵢ > 0`, `sⱼ = 0`
/// and `⟨uᵢ|vⱼ⟩ ≠ 0`, independent of `α > 1`.
pub fn condition1_check(rho: &DensityState, sigma: &DensityState, alpha: f64) -> Result<Condition1> {
    if !(alpha > 1.0) {
        return Err(Error::InvalidOrder(format!(
            "condition 1 applies to α > 1, got {alpha}"
        )));
    }
    let w = overlap_matrix(rho, sigma)?;
    Ok(condition1_from(rho, sigma, &w))
}

fn condition1_from(rho: &DensityState, sigma: &DensityState, w: &OverlapMatrix) -> Condition1 {
    for (i, &r) in rho.eigenvalues().iter().enumerate() {
        if r == 0.0 {
            continue;
        }
        for (j, &s) in sigma.eigenvalues().iter().enumerate() {
            if s == 0.0 && w.is_nonzero(i, j) {
                return Condition1 {
                    holds: false,
                    witness: Some((i, j)),
                };
            }
        }
    }
    Condition1 {
        holds: true,
        witness: None,
    }
}

/// `(1/(α−1)) log tr ρ^{α/2} σ^{1−α} ρ^{α/2}` from dense matrix functions.
pub fn petz_renyi_direct(rho: &DensityState, sigma: &DensityState, alpha: f64) -> Result<ExtendedReal> {
    check_dims(rho, sigma)?;
    let alpha = match AlphaOrder::interior(alpha)? {
        AlphaOrder::Interior(a) => a,
        _ => unreachable!(),
    };
    let n = rho.dim();
    if alpha > 1.0 {
        let c1 = condition1_check(rho, sigma, alpha)?;
        if !c1.holds {
            return Ok(ExtendedReal::PlusInfinity(InfinityReason::DomainViolation));
        }
    } else {
        // tr Π_ρ Π_σ vanishes exactly when the supports are orthogonal.
        let pr = support_projector(rho, 0.0).matrix();
        let ps = support_projector(sigma, 0.0).matrix();
        if pr.matmul(&ps).trace().re <= ZERO_MASS_PER_CELL * (n * n) as f64 {
            return Ok(ExtendedReal::PlusInfinity(InfinityReason::SupportViolation));
        }
    }
    let half = matrix_power(rho, alpha / 2.0, false)?;
    let mid = matrix_power(sigma, 1.0 - alpha, alpha > 1.0)?;
    let t = half.matrix().matmul(mid.matrix()).matmul(half.matrix()).trace().re;
    Ok(ExtendedReal::Finite(t.ln() / (alpha - 1.0)))
}

/// `D_0(ρ‖σ) = −log tr Π_ρ σ`.
pub fn d_zero(rho: &DensityState, sigma: &DensityState) -> Result<ExtendedReal> {
    let mass = support_mass(rho, sigma)?;
    let n = rho.dim() as f64;
    if mass <= ZERO_MASS_PER_CELL * n * n {
        return Ok(ExtendedReal::PlusInfinity(InfinityReason::SupportViolation));
    }
    Ok(ExtendedReal::Finite(-mass.ln()))
}

/// `D_1(ρ‖σ) = D(P‖Q)`, infinite when `supp ρ ⊄ supp σ`.
pub fn d_one(rho: &DensityState, sigma: &DensityState) -> Result<ExtendedReal> {
    petz_renyi(rho, sigma, AlphaOrder::One)
}

/// `tr ρ(log ρ − log σ)` with pseudo-logarithms, or `None` when
/// `supp ρ ⊄ supp σ`.
pub fn von_neumann_trace(rho: &DensityState, sigma: &DensityState) -> Result<Option<f64>> {
    let w = overlap_matrix(rho, sigma)?;
    if !condition1_from(rho, sigma, &w).holds {
        return Ok(None);
    }
    let r = rho.to_matrix();
    let diff = matrix_log(rho).matrix().sub(matrix_log(sigma).matrix());
    Ok(Some(r.matmul(&diff).trace().re))
}

/// `D_∞(ρ‖σ) = log sup{rᵢ/sⱼ : ⟨uᵢ|vⱼ⟩ ≠ 0}` with `0/0 = 0`, `x/0 = ∞`.
pub fn d_infty(rho: &DensityState, sigma: &DensityState) -> Result<ExtendedReal> {
    let w = overlap_matrix(rho, sigma)?;
    Ok(sup_log_ratio(rho, sigma, |i, j| w.is_nonzero(i, j)))
}

/// `log sup{rᵢ/sⱼ : rᵢ ≠ 0}` over all index pairs, overlaps ignored.
pub fn d_infty_unrestricted(rho: &DensityState, sigma: &DensityState) -> Result<ExtendedReal> {
    check_dims(rho, sigma)?;
    Ok(sup_log_ratio(rho, sigma, |_, _| true))
}

fn sup_log_ratio(rho: &DensityState, sigma: &DensityState, admit: impl Fn(usize, usize) -> bool) -> ExtendedReal {
    let mut best = f64::NEG_INFINITY;
    for (i, &r) in rho.eigenvalues().iter().enumerate() {
        if r == 0.0 {
            continue;
        }
        for (j, &s) in sigma.eigenvalues().iter().enumerate() {
            if !admit(i, j) {
                continue;
            }
            if s == 0.0 {
                return ExtendedReal::PlusInfinity(InfinityReason::SupportViolation);
            }
            best = best.max(r.ln() - s.ln());
        }
    }
    if best == f64::NEG_INFINITY {
        // every admitted ratio is 0/x
        return ExtendedReal::MinusInfinity;
    }
    ExtendedReal::Finite(best)
}

/// Cell where `⟨uᵢ|vⱼ⟩ = 0` but `rᵢ ≠ 0`, if any.
pub fn norm_form_hypothesis_violation(rho: &DensityState, sigma: &DensityState) -> Result<Option<Cell>> {
    let w = overlap_matrix(rho, sigma)?;
    for (i, &r) in rho.eigenvalues().iter().enumerate() {
        if r == 0.0 {
            continue;
        }
        for j in 0..sigma.dim() {
            if !w.is_nonzero(i, j) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// `log(‖ρ‖·‖σ⁻¹‖)`, valid as `D_∞` when every zero overlap sits on a zero
/// eigenvalue of ρ. `+∞` for singular σ.
pub fn d_infty_norm_form(rho: &DensityState, sigma: &DensityState) -> Result<ExtendedReal> {
    if let Some((i, j)) = norm_form_hypothesis_violation(rho, sigma)? {
        return Err(Error::HypothesisFailed { i, j });
    }
    let s_min = *sigma.eigenvalues().last().expect("nonempty state");
    if s_min == 0.0 {
        return Ok(ExtendedReal::PlusInfinity(InfinityReason::SupportViolation));
    }
    Ok(ExtendedReal::Finite(rho.operator_norm().ln() - s_min.ln()))
}

/// The chain `D_max ≤ log‖ρ‖ + log‖σ⁻¹‖ ≤ log sup{1/sⱼ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DmaxReport {
    /// `log ‖σ^{−1/2} ρ σ^{−1/2}‖`
    pub d_max: f64,
    /// `log ‖ρ‖ + log ‖σ⁻¹‖`
    pub norm_bound: f64,
    /// `log sup{1/sⱼ}`
    pub inverse_bound: f64,
    /// Whether every zero overlap sits on a zero eigenvalue of ρ.
    pub hypothesis_holds: bool,
    pub chain_holds: bool,
}

const CHAIN_SLACK: f64 = 1e-10;

pub fn d_max_comparison(rho: &DensityState, sigma: &DensityState) -> Result<DmaxReport> {
    check_dims(rho, sigma)?;
    let s_min = *sigma.eigenvalues().last().expect("nonempty state");
    if s_min == 0.0 {
        return Err(Error::SingularSigma);
    }
    let inv_sqrt = matrix_power(sigma, -0.5, false)?;
    let m = inv_sqrt.matrix().matmul(&rho.to_matrix()).matmul(inv_sqrt.matrix());
    let (vals, _) = jacobi_eigh(&m);
    let d_max = vals[0].ln();
    let norm_bound = rho.operator_norm().ln() - s_min.ln();
    let inverse_bound = -s_min.ln();
    Ok(DmaxReport {
        d_max,
        norm_bound,
        inverse_bound,
        hypothesis_holds: norm_form_hypothesis_violation(rho, sigma)?.is_none(),
        chain_holds: d_max <= norm_bound + CHAIN_SLACK && norm_bound <= inverse_bound + CHAIN_SLACK,
    })
}

/// `D_α(ρ‖σ) − (α/2)·‖ρ − σ‖₂⁴` for `0 < α ≤ 1`.
pub fn quantum_pinsker_gap(rho: &DensityState, sigma: &DensityState, alpha: f64) -> Result<ExtendedReal> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidOrder(format!("Pinsker needs 0 < α ≤ 1, got {alpha}")));
    }
    let order = if alpha == 1.0 {
        AlphaOrder::One
    } else {
        AlphaOrder::interior(alpha)?
    };
    let hs = crate::spectral::hs_norm_sq_diff(rho, sigma)?;
    Ok(petz_renyi(rho, sigma, order)?.minus(alpha / 2.0 * hs * hs))
}

/// `D_α` sampled along an ascending grid of orders.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceCurve {
    pub grid: Vec<AlphaOrder>,
    pub values: Vec<ExtendedReal>,
}

impl DivergenceCurve {
    /// Indices `k` where `values[k+1] < values[k] − tol`.
    pub fn monotonicity_violations(&self, tol: f64) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1].to_f64() < w[0].to_f64() - tol)
            .map(|(k, _)| k)
            .collect()
    }

    /// `(1−α)·D_α`, set to `0` at `α = 1` and at `α = ∞` when `D_∞ = 0`.
    pub fn concavity_profile(&self) -> Vec<ExtendedReal> {
        self.grid
            .iter()
            .zip(&self.values)
            .map(|(order, value)| match order {
                AlphaOrder::One => ExtendedReal::Finite(0.0),
                AlphaOrder::Infinity => match value {
                    ExtendedReal::Finite(v) if *v <= 0.0 => ExtendedReal::Finite(0.0),
                    _ => ExtendedReal::MinusInfinity,
                },
                other => value.scale(1.0 - other.value()),
            })
            .collect()
    }

    /// Interior indices where the midpoint inequality fails by more than
    /// `tol`. Only meaningful on uniformly spaced grids.
    pub fn concavity_violations(&self, tol: f64) -> Vec<usize> {
        let f = self.concavity_profile();
        (1..f.len().saturating_sub(1))
            .filter(|&k| {
                let (a, m, b) = (f[k - 1], f[k], f[k + 1]);
                match (a, m, b) {
                    (ExtendedReal::Finite(a), ExtendedReal::Finite(m), ExtendedReal::Finite(b)) => {
                        m < (a + b) / 2.0 - tol
                    }
                    // a finite midpoint can't sit below an average involving −∞
                    (_, ExtendedReal::MinusInfinity, _) => a.is_finite() && b.is_finite(),
                    _ => false,
                }
            })
            .collect()
    }
}

pub fn alpha_scan(rho: &DensityState, sigma: &DensityState, grid: &[AlphaOrder]) -> Result<DivergenceCurve> {
    if grid.windows(2).any(|w| !(w[0].value() < w[1].value())) {
        return Err(Error::InvalidInput("grid must be strictly ascending".into()));
    }
    let joint = build_joint(rho, sigma)?;
    let (p, q) = (joint.p(), joint.q());
    let values = grid.iter().map(|&order| renyi(&p, &q, order)).collect();
    Ok(DivergenceCurve {
        grid: grid.to_vec(),
        values,
    })
}

/// Spectral distribution of `σ^{1−α}` in the state `ρ^α`: atoms at
/// `sⱼ^{1−α}` carrying mass `Σᵢ rᵢ^α |⟨uᵢ|vⱼ⟩|²`, aggregated over equal `sⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuMeasure {
    /// `(location, mass)`, locations ascending.
    pub atoms: Vec<(f64, f64)>,
}

impl MuMeasure {
    /// `∫ x μ(dx)`.
    pub fn first_moment(&self) -> f64 {
        self.atoms.iter().map(|(x, m)| x * m).sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, m)| m).sum()
    }
}

const ATOM_MERGE_REL: f64 = 1e-12;

pub fn mu_measure(rho: &DensityState, sigma: &DensityState, alpha: f64) -> Result<MuMeasure> {
    let alpha = AlphaOrder::interior(alpha)?.value();
    let w = overlap_matrix(rho, sigma)?;
    if alpha > 1.0 {
        if let Some((i, j)) = condition1_from(rho, sigma, &w).witness {
            return Err(Error::DomainViolation { i, j });
        }
    }
    let mut atoms: Vec<(f64, f64)> = Vec::new();
    for (j, &s) in sigma.eigenvalues().iter().enumerate() {
        let location = if s > 0.0 { s.powf(1.0 - alpha) } else { 0.0 };
        let mass: f64 = rho
            .eigenvalues()
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0.0)
            .map(|(i, &r)| r.powf(alpha) * w.get(i, j))
            .sum();
        if s == 0.0 && mass == 0.0 {
            continue;
        }
        match atoms
            .iter_mut()
            .find(|(x, _)| (x - location).abs() <= ATOM_MERGE_REL * x.abs().max(location.abs()))
        {
            Some(atom) => atom.1 += mass,
            None => atoms.push((location, mass)),
        }
    }
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(MuMeasure { atoms })
}

/// `tr ρ^{α/2} σ^{1−α} ρ^{α/2}` as a dense trace; oracle for [`MuMeasure::first_moment`].
pub fn petz_trace(rho: &DensityState, sigma: &DensityState, alpha: f64) -> Result<f64> {
    check_dims(rho, sigma)?;
    let half = matrix_power(rho, alpha / 2.0, false)?;
    let mid = matrix_power(sigma, 1.0 - alpha, alpha > 1.0)?;
    Ok(half.matrix().matmul(mid.matrix()).matmul(half.matrix()).trace().re)
}

/// Dense matrix `ρ^{α/2} σ^{1−α} ρ^{α/2}`.
pub fn petz_operator(rho: &DensityState, sigma: &DensityState, alpha: f64) -> Result<CMatrix> {
    check_dims(rho, sigma)?;
    let half = matrix_power(rho, alpha / 2.0, false)?;
    let mid = matrix_power(sigma, 1.0 - alpha, alpha > 1.0)?;
    Ok(half.matrix().matmul(mid.matrix()).matmul(half.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{c64, DEFAULT_TOL};
    use std::f64::consts::LN_2;

    fn diag(v: &[f64]) -> DensityState {
        DensityState::diagonal(v).unwrap()
    }

    fn rotated(v: &[f64]) -> DensityState {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let h = CMatrix::from_rows(&[vec![c64(r, 0.), c64(r, 0.)], vec![c64(r, 0.), c64(-r, 0.)]]).unwrap();
        DensityState::from_spectrum(v.to_vec(), h, DEFAULT_TOL).unwrap()
    }

    fn flipped_pure() -> DensityState {
        DensityState::from_spectrum(
            vec![1.0, 0.0],
            CMatrix::from_rows(&[vec![c64(0., 0.), c64(1., 0.)], vec![c64(1., 0.), c64(0., 0.)]]).unwrap(),
            DEFAULT_TOL,
        )
        .unwrap()
    }

    #[test]
    fn petz_renyi_examples() {
        let a = rotated(&[0.6, 0.4]);
        assert!(petz_renyi(&a, &a, AlphaOrder::Interior(0.7)).unwrap().to_f64().abs() < 1e-14);
        let v = petz_renyi(
            &diag(&[2. / 3., 1. / 3.]),
            &diag(&[0.5, 0.5]),
            AlphaOrder::Interior(2.0),
        )
        .unwrap();
        assert!((v.to_f64() - (10.0f64 / 9.0).ln()).abs() < 1e-15);
        let v = petz_renyi(&diag(&[1., 0.]), &flipped_pure(), AlphaOrder::Interior(0.5)).unwrap();
        assert_eq!(v, ExtendedReal::PlusInfinity(InfinityReason::SupportViolation));
    }

    #[test]
    fn direct_examples() {
        let a = rotated(&[0.6, 0.4]);
        for alpha in [0.3, 0.5, 1.5, 3.0] {
            assert!(petz_renyi_direct(&a, &a, alpha).unwrap().to_f64().abs() < 1e-14);
        }
        let rho = diag(&[2. / 3., 1. / 3.]);
        let sigma = diag(&[0.5, 0.5]);
        let want = -2.0 * ((1.0f64 / 3.0).sqrt() + (1.0f64 / 6.0).sqrt()).ln();
        let direct = petz_renyi_direct(&rho, &sigma, 0.5).unwrap().to_f64();
        let reduced = petz_renyi(&rho, &sigma, AlphaOrder::Interior(0.5)).unwrap().to_f64();
        assert!((direct - want).abs() < 1e-14 && (reduced - want).abs() < 1e-14);

        let v = petz_renyi_direct(&diag(&[1., 0.]), &diag(&[0., 1.]), 2.0).unwrap();
        assert_eq!(v, ExtendedReal::PlusInfinity(InfinityReason::DomainViolation));
    }

    #[test]
    fn condition1_examples() {
        assert!(
            condition1_check(&diag(&[0.3, 0.7]), &diag(&[0.5, 0.5]), 2.0)
                .unwrap()
                .holds
        );
        let c = condition1_check(&diag(&[1., 0.]), &diag(&[0., 1.]), 2.0).unwrap();
        assert!(!c.holds);
        // σ is sorted descending, so its zero eigenvalue sits at index 1
        // with eigenvector e₀.
        assert_eq!(c.witness, Some((0, 1)));
        assert!(condition1_check(&diag(&[1., 0.]), &diag(&[0., 1.]), 0.5).is_err());
    }

    #[test]
    fn d_zero_examples() {
        assert_eq!(
            d_zero(&diag(&[0.5, 0.5]), &diag(&[1., 0.])).unwrap(),
            ExtendedReal::Finite(0.0)
        );
        assert!((d_zero(&diag(&[1., 0.]), &diag(&[0.5, 0.5])).unwrap().to_f64() - LN_2).abs() < 1e-15);
        assert!(d_zero(&diag(&[1., 0.]), &flipped_pure()).unwrap().is_plus_infinity());
    }

    #[test]
    fn d_one_examples() {
        let rho = diag(&[2. / 3., 1. / 3.]);
        let sigma = diag(&[0.5, 0.5]);
        assert_eq!(d_one(&rho, &rho).unwrap(), ExtendedReal::Finite(0.0));
        let want = 2. / 3. * (4.0f64 / 3.0).ln() + 1. / 3. * (2.0f64 / 3.0).ln();
        assert!((d_one(&rho, &sigma).unwrap().to_f64() - want).abs() < 1e-15);
        assert!((von_neumann_trace(&rho, &sigma).unwrap().unwrap() - want).abs() < 1e-15);
        assert!(d_one(&sigma, &diag(&[1., 0.])).unwrap().is_plus_infinity());
        assert_eq!(von_neumann_trace(&sigma, &diag(&[1., 0.])).unwrap(), None);
    }

    #[test]
    fn d_infty_two_thirds_example() {
        let s = diag(&[2. / 3., 1. / 3.]);
        assert_eq!(d_infty(&s, &s).unwrap().in_base(crate::LogBase::Two).to_f64(), 0.0);
        let unrestricted = d_infty_unrestricted(&s, &s)
            .unwrap()
            .in_base(crate::LogBase::Two)
            .to_f64();
        assert!((unrestricted - 1.0).abs() < 1e-12);
        assert!(matches!(d_infty_norm_form(&s, &s), Err(Error::HypothesisFailed { .. })));
        assert!(d_infty(&diag(&[1., 0.]), &flipped_pure()).unwrap().is_plus_infinity());
    }

    #[test]
    fn norm_form_on_rotated_pair() {
        let rho = diag(&[0.7, 0.3]);
        let sigma = rotated(&[0.6, 0.4]);
        let nf = d_infty_norm_form(&rho, &sigma).unwrap().to_f64();
        assert!((nf - (0.7f64 * 2.5).ln()).abs() < 1e-14);
        assert!((d_infty(&rho, &sigma).unwrap().to_f64() - nf).abs() < 1e-14);
        let singular = rotated(&[1.0, 0.0]);
        assert!(d_infty_norm_form(&rho, &singular).unwrap().is_plus_infinity());
    }

    #[test]
    fn d_max_examples() {
        let a = rotated(&[0.6, 0.4]);
        let r = d_max_comparison(&a, &a).unwrap();
        assert!(r.d_max.abs() < 1e-14 && r.chain_holds);

        let r = d_max_comparison(&diag(&[0.7, 0.3]), &rotated(&[0.6, 0.4])).unwrap();
        assert!(r.chain_holds && r.hypothesis_holds);
        assert!(r.d_max <= r.norm_bound && r.norm_bound <= r.inverse_bound);

        let r = d_max_comparison(&diag(&[0.5, 0.5]), &diag(&[0.9, 0.1])).unwrap();
        assert!((r.inverse_bound - 10f64.ln()).abs() < 1e-14);
        assert!((r.d_max - 5f64.ln()).abs() < 1e-14);
        assert!(r.chain_holds);
        assert!(matches!(
            d_max_comparison(&a, &diag(&[1., 0.])),
            Err(Error::SingularSigma)
        ));
    }

    #[test]
    fn pinsker_examples() {
        let a = diag(&[2. / 3., 1. / 3.]);
        assert!(quantum_pinsker_gap(&a, &a, 0.5).unwrap().to_f64().abs() < 1e-15);
        assert!(quantum_pinsker_gap(&diag(&[1., 0.]), &flipped_pure(), 0.5)
            .unwrap()
            .is_plus_infinity());
        let kl = 2. / 3. * (4.0f64 / 3.0).ln() + 1. / 3. * (2.0f64 / 3.0).ln();
        let gap = quantum_pinsker_gap(&a, &diag(&[0.5, 0.5]), 1.0).unwrap().to_f64();
        assert!((gap - (kl - 0.5 / 324.0)).abs() < 1e-15);
        assert!(gap >= 0.0);
    }

    #[test]
    fn scan_of_identical_states_is_flat() {
        let a = rotated(&[0.6, 0.4]);
        let grid: Vec<_> = (0..9)
            .map(|k| AlphaOrder::from_value(k as f64 * 0.25).unwrap())
            .collect();
        let c = alpha_scan(&a, &a, &grid).unwrap();
        assert!(c.values.iter().all(|v| v.to_f64().abs() < 1e-14));
        assert!(alpha_scan(&a, &a, &[AlphaOrder::One, AlphaOrder::Zero]).is_err());
    }

    #[test]
    fn scan_of_support_violating_pair() {
        let grid = [
            AlphaOrder::Zero,
            AlphaOrder::Interior(0.5),
            AlphaOrder::One,
            AlphaOrder::Interior(2.0),
            AlphaOrder::Infinity,
        ];
        let c = alpha_scan(&diag(&[0.5, 0.5]), &diag(&[1.0, 0.0]), &grid).unwrap();
        assert!(c.values[0].is_finite() && c.values[1].is_finite());
        assert!(c.values[2..].iter().all(ExtendedReal::is_plus_infinity));
        assert!(c.monotonicity_violations(1e-12).is_empty());
    }

    #[test]
    fn mu_measure_examples() {
        let half = diag(&[0.5, 0.5]);
        let mu = mu_measure(&half, &half, 2.0).unwrap();
        assert_eq!(mu.atoms.len(), 1);
        assert!((mu.atoms[0].0 - 2.0).abs() < 1e-15);
        assert!((mu.atoms[0].1 - 0.5).abs() < 1e-15);
        assert!((mu.first_moment() - petz_trace(&half, &half, 2.0).unwrap()).abs() < 1e-14);

        let mu = mu_measure(&diag(&[0.7, 0.3]), &diag(&[0.6, 0.4]), 1.5).unwrap();
        // atoms ascend: 0.6^{-1/2} < 0.4^{-1/2}
        assert!((mu.atoms[1].0 - 0.4f64.powf(-0.5)).abs() < 1e-15);
        assert!((mu.atoms[1].1 - 0.3f64.powf(1.5)).abs() < 1e-15);

        let rho = diag(&[0.7, 0.3]);
        let sigma = rotated(&[0.6, 0.4]);
        let mu = mu_measure(&rho, &sigma, 0.5).unwrap();
        let mut oracle = 0.0;
        for r in [0.7f64, 0.3] {
            for s in [0.6f64, 0.4] {
                oracle += r.sqrt() * s.sqrt() * 0.5;
            }
        }
        assert!((mu.first_moment() - oracle).abs() < 1e-14);

        assert!(matches!(
            mu_measure(&diag(&[1., 0.]), &diag(&[0., 1.]), 2.0),
            Err(Error::DomainViolation { .. })
        ));
    }
}
