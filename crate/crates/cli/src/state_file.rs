//! JSON state files.
//!
//! Either a full matrix
//!
//! ```json
//! { "dim": 2, "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]] }
//! ```
//!
//! or a spectral form whose `eigenvectors[k]` is the eigenvector of
//! `eigenvalues[k]`:
//!
//! ```json
//! { "dim": 2, "eigenvalues": [0.7, 0.3], "eigenvectors": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]] }
//! ```
//!
//! Complex entries are `[re, im]` pairs.

use crate::error::{CliError, Result};
use num_complex::Complex64;
use petz::{CMatrix, DensityState, HermitianMatrix};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vec<[f64; 2]>>>,
}

fn complex_rows(rows: &[Vec<[f64; 2]>], dim: usize, what: &str) -> std::result::Result<Vec<Vec<Complex64>>, String> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(format!("{what} must be {dim} × {dim} to match \"dim\""));
    }
    Ok(rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect())
}

impl StateFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let matrix = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        StateFile {
            dim: m.rows(),
            matrix: Some(matrix),
            eigenvalues: None,
            eigenvectors: None,
        }
    }

    pub fn from_spectrum(eigenvalues: &[f64], eigenvectors: &CMatrix) -> Self {
        let n = eigenvalues.len();
        let vecs = (0..n)
            .map(|k| eigenvectors.column(k).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        StateFile {
            dim: n,
            matrix: None,
            eigenvalues: Some(eigenvalues.to_vec()),
            eigenvectors: Some(vecs),
        }
    }

    /// Validates the shape and builds the state with support tolerance `tol`.
    pub fn to_state(&self, tol: f64) -> std::result::Result<DensityState, StateError> {
        let dim = self.dim;
        if dim == 0 {
            return Err(StateError::Shape("\"dim\" must be at least 1".into()));
        }
        match (&self.matrix, &self.eigenvalues, &self.eigenvectors) {
            (Some(m), None, None) => {
                let rows = complex_rows(m, dim, "\"matrix\"").map_err(StateError::Shape)?;
                let m = CMatrix::from_rows(&rows).ok_or_else(|| StateError::Shape("ragged \"matrix\"".into()))?;
                let h = HermitianMatrix::new(m).map_err(StateError::Invalid)?;
                DensityState::from_matrix(&h, tol).map_err(StateError::Invalid)
            }
            (None, Some(vals), Some(vecs)) => {
                if vals.len() != dim {
                    return Err(StateError::Shape(format!("\"eigenvalues\" must have {dim} entries")));
                }
                let vecs = complex_rows(vecs, dim, "\"eigenvectors\"").map_err(StateError::Shape)?;
                let basis = CMatrix::from_fn(dim, dim, |i, k| vecs[k][i]);
                DensityState::from_spectrum(vals.clone(), basis, tol).map_err(StateError::Invalid)
            }
            _ => Err(StateError::Shape(
                "exactly one of \"matrix\" or the pair \"eigenvalues\"/\"eigenvectors\" must be present".into(),
            )),
        }
    }
}

#[derive(Debug)]
pub enum StateError {
    Shape(String),
    Invalid(petz::Error),
}

pub fn load_state(path: &Path, tol: f64) -> Result<DensityState> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    let file: StateFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.into(),
        source,
    })?;
    file.to_state(tol).map_err(|e| match e {
        StateError::Shape(reason) => CliError::StateFile {
            path: path.into(),
            reason,
        },
        StateError::Invalid(source) => CliError::InvalidState {
            path: path.into(),
            source,
        },
    })
}

pub fn save_state(path: &Path, file: &StateFile) -> Result<()> {
    let text = serde_json::to_string_pretty(file).expect("state files always serialize");
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.into(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use petz::DEFAULT_TOL;

    #[test]
    fn matrix_form_round_trip() {
        let s = DensityState::diagonal(&[0.7, 0.3]).unwrap();
        let f = StateFile::from_matrix(&s.to_matrix());
        let json = serde_json::to_string(&f).unwrap();
        let back: StateFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_state(DEFAULT_TOL).unwrap().eigenvalues(), &[0.7, 0.3]);
    }

    #[test]
    fn spectral_form() {
        let f: StateFile = serde_json::from_str(
            r#"{ "dim": 2, "eigenvalues": [0.25, 0.75], "eigenvectors": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]] }"#,
        )
        .unwrap();
        let s = f.to_state(DEFAULT_TOL).unwrap();
        assert_eq!(s.eigenvalues(), &[0.75, 0.25]);
    }

    #[test]
    fn rejects_both_forms_and_bad_shapes() {
        let both: StateFile = serde_json::from_str(
            r#"{ "dim": 1, "matrix": [[[1, 0]]], "eigenvalues": [1], "eigenvectors": [[[1, 0]]] }"#,
        )
        .unwrap();
        assert!(matches!(both.to_state(DEFAULT_TOL), Err(StateError::Shape(_))));
        let short: StateFile = serde_json::from_str(r#"{ "dim": 2, "matrix": [[[1, 0]]] }"#).unwrap();
        assert!(matches!(short.to_state(DEFAULT_TOL), Err(StateError::Shape(_))));
    }

    #[test]
    fn rejects_invalid_states() {
        let neg: StateFile =
            serde_json::from_str(r#"{ "dim": 2, "matrix": [[[1.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]] }"#).unwrap();
        assert!(matches!(
            neg.to_state(DEFAULT_TOL),
            Err(StateError::Invalid(petz::Error::NotPsd { .. }))
        ));
        let trace: StateFile = serde_json::from_str(r#"{ "dim": 1, "matrix": [[[2, 0]]] }"#).unwrap();
        assert!(matches!(
            trace.to_state(DEFAULT_TOL),
            Err(StateError::Invalid(petz::Error::TraceNotOne { .. }))
        ));
    }
}
