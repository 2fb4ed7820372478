//! Seeded random states for property checks.

use crate::linalg::{complete_basis, inner, CMatrix};
use crate::spectral::{DensityState, HermitianMatrix, DEFAULT_TOL};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed unitary from Gram–Schmidt on a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let proj = inner(c, &v);
                for (x, ci) in v.iter_mut().zip(c) {
                    *x -= proj * ci;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    complete_basis(&cols, n)
}

/// `G·G† / tr` for an `n × rank` Ginibre matrix `G`, run through the full
/// validation and eigendecomposition path.
pub fn random_density(rng: &mut impl Rng, n: usize, rank: usize) -> DensityState {
    let rank = rank.clamp(1, n);
    let g = CMatrix::from_fn(n, rank, |_, _| gaussian(rng));
    density_from_factor(&g)
}

/// Random state whose support lies inside the column span of `basis`.
pub fn random_density_in(rng: &mut impl Rng, basis: &CMatrix, rank: usize) -> DensityState {
    let k = basis.cols();
    let rank = rank.clamp(1, k);
    let x = CMatrix::from_fn(k, rank, |_, _| gaussian(rng));
    density_from_factor(&basis.matmul(&x))
}

fn density_from_factor(g: &CMatrix) -> DensityState {
    let m = g.matmul(&g.adjoint());
    let t = m.trace().re;
    let m = m.scale(1.0 / t);
    let n = m.rows();
    // Re-symmetrize exactly; the product is Hermitian only up to rounding.
    let m = CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let h = HermitianMatrix::new(m).expect("Gram matrix is Hermitian");
    DensityState::from_matrix(&h, DEFAULT_TOL).expect("Gram matrix is a density operator")
}

/// Random probability vector with a few exact ties.
pub fn random_spectrum(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    v
}

/// How the two states of a random pair relate to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    FullRank,
    RankDeficient,
    /// `supp σ ⊆ supp ρ`
    SigmaInsideRho,
    /// `supp ρ ⊆ supp σ`
    RhoInsideSigma,
    Orthogonal,
    /// `ρ = σ`, with the eigenbasis of σ re-drawn inside degenerate eigenspaces.
    Equal,
}

impl PairKind {
    pub const ALL: [PairKind; 6] = [
        PairKind::FullRank,
        PairKind::RankDeficient,
        PairKind::SigmaInsideRho,
        PairKind::RhoInsideSigma,
        PairKind::Orthogonal,
        PairKind::Equal,
    ];
}

pub fn random_pair(rng: &mut impl Rng, n: usize, kind: PairKind) -> (DensityState, DensityState) {
    if n == 1 {
        let s = DensityState::diagonal(&[1.0]).expect("1-dim state");
        return (s.clone(), s);
    }
    match kind {
        PairKind::FullRank => (random_density(rng, n, n), random_density(rng, n, n)),
        PairKind::RankDeficient => {
            let ra = rng.gen_range(1..n);
            let rb = rng.gen_range(1..=n);
            (random_density(rng, n, ra), random_density(rng, n, rb))
        }
        PairKind::SigmaInsideRho => {
            let rank = rng.gen_range(1..n);
            let rho = random_density(rng, n, rank);
            let basis = support_basis(&rho);
            let sub = rng.gen_range(1..=basis.cols());
            let sigma = random_density_in(rng, &basis, sub);
            (rho, sigma)
        }
        PairKind::RhoInsideSigma => {
            let rank = rng.gen_range(1..n);
            let sigma = random_density(rng, n, rank);
            let basis = support_basis(&sigma);
            let sub = rng.gen_range(1..=basis.cols());
            let rho = random_density_in(rng, &basis, sub);
            (rho, sigma)
        }
        PairKind::Orthogonal => {
            let u = random_unitary(rng, n);
            let split = rng.gen_range(1..n);
            let left = u.select_columns(&(0..split).collect::<Vec<_>>());
            let right = u.select_columns(&(split..n).collect::<Vec<_>>());
            let ra = rng.gen_range(1..=left.cols());
            let rb = rng.gen_range(1..=right.cols());
            (random_density_in(rng, &left, ra), random_density_in(rng, &right, rb))
        }
        PairKind::Equal => {
            let spectrum = degenerate_spectrum(rng, n);
            let u = random_unitary(rng, n);
            let rho = DensityState::from_spectrum(spectrum.clone(), u.clone(), DEFAULT_TOL).expect("valid spectrum");
            let sigma = remix_degenerate(rng, &rho);
            (rho, sigma)
        }
    }
}

fn support_basis(s: &DensityState) -> CMatrix {
    let keep: Vec<usize> = (0..s.dim()).filter(|&i| s.eigenvalues()[i] > 0.0).collect();
    s.eigenvectors().select_columns(&keep)
}

/// Spectrum with at least one repeated eigenvalue when `n ≥ 2`.
pub fn degenerate_spectrum(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut v = random_spectrum(rng, n);
    if n >= 2 {
        let k = rng.gen_range(2..=n.min(3));
        let shared = v[..k].iter().sum::<f64>() / k as f64;
        v[..k].iter_mut().for_each(|x| *x = shared);
    }
    v
}

/// The same operator with its eigenbasis rotated by a random unitary inside
/// every eigenspace.
pub fn remix_degenerate(rng: &mut impl Rng, s: &DensityState) -> DensityState {
    let vals = s.eigenvalues();
    let n = s.dim();
    let mut w = CMatrix::identity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && vals[end] == vals[start] {
            end += 1;
        }
        let block = random_unitary(rng, end - start);
        for a in 0..end - start {
            for b in 0..end - start {
                w[(start + a, start + b)] = block[(a, b)];
            }
        }
        start = end;
    }
    let vecs = s.eigenvectors().matmul(&w);
    DensityState::from_spectrum(vals.to_vec(), vecs, 0.0).expect("rotation inside eigenspaces keeps validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{support_included, supports_orthogonal};
    use crate::spectral::hs_norm_sq_diff_entrywise;

    #[test]
    fn unitary_is_unitary() {
        let mut r = rng(7);
        for n in 1..6 {
            assert!(random_unitary(&mut r, n).gram_residual() < 1e-13);
        }
    }

    #[test]
    fn pair_kinds_have_their_relations() {
        let mut r = rng(11);
        for _ in 0..20 {
            let (a, b) = random_pair(&mut r, 5, PairKind::SigmaInsideRho);
            assert!(support_included(&b, &a, 1e-10).unwrap());
            let (a, b) = random_pair(&mut r, 5, PairKind::RhoInsideSigma);
            assert!(support_included(&a, &b, 1e-10).unwrap());
            let (a, b) = random_pair(&mut r, 5, PairKind::Orthogonal);
            assert!(supports_orthogonal(&a, &b, 1e-10).unwrap());
            let (a, b) = random_pair(&mut r, 5, PairKind::Equal);
            assert!(hs_norm_sq_diff_entrywise(&a, &b).unwrap() < 1e-24);
            assert!(a.eigenvectors().sub(b.eigenvectors()).frobenius_norm() > 1e-6);
        }
    }

    #[test]
    fn rank_deficient_states_have_exact_zeros() {
        let mut r = rng(3);
        let s = random_density(&mut r, 6, 2);
        assert_eq!(s.rank(), 2);
        assert!(s.eigenvalues()[2..].iter().all(|&x| x == 0.0));
    }
}
