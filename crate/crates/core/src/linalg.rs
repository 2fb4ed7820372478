//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian input.

use num_complex::Complex64;
use std::ops::{Index, IndexMut};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(CMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> CMatrix {
        CMatrix::from_fn(self.rows, cols.len(), |i, k| self[(i, cols[k])])
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: f64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `max |a_ij − conj(a_ji)|`.
    pub fn hermitian_residual(&self) -> f64 {
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `‖V†V − I‖_F` for the columns of `self`.
    pub fn gram_residual(&self) -> f64 {
        let g = self.adjoint().matmul(self);
        g.sub(&CMatrix::identity(self.cols)).frobenius_norm()
    }

    /// `V · diag(d) · V†`.
    pub fn spectral_sum(vectors: &CMatrix, weights: &[f64]) -> CMatrix {
        assert_eq!(vectors.cols, weights.len());
        let n = vectors.rows;
        let mut out = CMatrix::zeros(n, n);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = vectors[(i, k)] * w;
                for j in 0..n {
                    out.data[i * n + j] += vi * vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `⟨a|b⟩`, conjugate-linear in the first slot.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposes a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Returns eigenvalues in descending order and the unitary whose columns are
/// the matching eigenvectors. The input is assumed Hermitian; only its upper
/// triangle and real diagonal are trusted.
pub fn jacobi_eigh(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert!(h.is_square(), "jacobi_eigh needs a square matrix");
    let n = h.rows;
    // Symmetrize from the upper triangle so small input asymmetry is ignored.
    let mut a = CMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => h[(i, j)],
        std::cmp::Ordering::Equal => Complex64::new(h[(i, i)].re, 0.0),
        std::cmp::Ordering::Greater => h[(j, i)].conj(),
    });
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= f64::EPSILON * 1e-2 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(y, y)].re.total_cmp(&a[(x, x)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    (values, v.select_columns(&order))
}

/// One Jacobi step annihilating `a[p][q]`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let g = b.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip rotations that cannot change the diagonal in floating point.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = b / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // Column transform G = diag(1, conj(phase)) · [[c, s], [-s, c]].
    let gpp = Complex64::new(c, 0.0);
    let gpq = Complex64::new(s, 0.0);
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

/// Completes the given orthonormal columns to a full orthonormal basis
/// of `C^n` by Gram–Schmidt against the standard basis.
pub fn complete_basis(columns: &[Vec<Complex64>], n: usize) -> CMatrix {
    let mut basis: Vec<Vec<Complex64>> = columns.to_vec();
    for e in 0..n {
        if basis.len() == n {
            break;
        }
        let mut cand = vec![Complex64::new(0.0, 0.0); n];
        cand[e] = Complex64::new(1.0, 0.0);
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for b in &basis {
                let proj = inner(b, &cand);
                for (c, bi) in cand.iter_mut().zip(b) {
                    *c -= proj * bi;
                }
            }
        }
        let norm = cand.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(cand.into_iter().map(|c| c / norm).collect());
        }
    }
    CMatrix::from_fn(n, basis.len(), |i, k| basis[k][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual(h: &CMatrix, vals: &[f64], vecs: &CMatrix) -> f64 {
        let hv = h.matmul(vecs);
        let vd = vecs.matmul(&CMatrix::from_real_diagonal(vals));
        hv.sub(&vd).frobenius_norm()
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let (vals, vecs) = jacobi_eigh(&CMatrix::identity(3));
        assert_eq!(vals, vec![1.0, 1.0, 1.0]);
        assert!(vecs.gram_residual() < 1e-14);
    }

    #[test]
    fn diagonal_input_is_already_solved() {
        let h = CMatrix::from_real_diagonal(&[1.0 / 3.0, 2.0 / 3.0]);
        let (vals, vecs) = jacobi_eigh(&h);
        assert_eq!(vals, vec![2.0 / 3.0, 1.0 / 3.0]);
        assert!(residual(&h, &vals, &vecs) < 1e-15);
    }

    #[test]
    fn pauli_x() {
        let h = CMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]).unwrap();
        let (vals, vecs) = jacobi_eigh(&h);
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] + 1.0).abs() < 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        // (1,1)/√2 up to a global phase
        let overlap = inner(&vecs.column(0), &[c(r, 0.), c(r, 0.)]).norm();
        assert!((overlap - 1.0).abs() < 1e-14);
        assert!(residual(&h, &vals, &vecs) < 1e-14);
    }

    #[test]
    fn complex_off_diagonal() {
        // Pauli-Y: eigenvalues ±1
        let h = CMatrix::from_rows(&[vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]]).unwrap();
        let (vals, vecs) = jacobi_eigh(&h);
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] + 1.0).abs() < 1e-15);
        assert!(residual(&h, &vals, &vecs) < 1e-14);
        assert!(vecs.gram_residual() < 1e-14);
    }

    #[test]
    fn completes_a_single_vector() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let u = vec![c(r, 0.), c(0., r), c(0., 0.)];
        let b = complete_basis(std::slice::from_ref(&u), 3);
        assert_eq!(b.cols(), 3);
        assert!(b.gram_residual() < 1e-14);
        assert_eq!(b.column(0), u);
    }
}
