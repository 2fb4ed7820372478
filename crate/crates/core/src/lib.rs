//! Petz–Rényi relative entropies of density operators.
//!
//! Quantum divergences are evaluated by reducing a pair of states
//! `ρ = Σ rᵢ|uᵢ⟩⟨uᵢ|`, `σ = Σ sⱼ|vⱼ⟩⟨vⱼ|` to two classical distributions on
//! index pairs, `P(i,j) = rᵢ|⟨uᵢ|vⱼ⟩|²` and `Q(i,j) = sⱼ|⟨uᵢ|vⱼ⟩|²`, and taking
//! their classical Rényi divergence. The crate also covers:
//!
//! - the limiting orders 0, 1 and ∞, with the zero-weight conventions;
//! - a dense matrix-function route for cross-checking the reduction;
//! - infinite-dimensional states given by closed-form spectra, with exact
//!   convergence certificates for the series involved ([`sequence`]);
//! - the relative-modular-operator counter-example ([`araki`]).
//!
//! All logarithms are natural; use [`ExtendedReal::in_base`] to report bits.

pub mod araki;
pub mod classical;
pub mod error;
pub mod extended;
pub mod linalg;
pub mod petz;
pub mod random;
pub mod reduction;
pub mod sequence;
pub mod spectral;
pub mod verify;

pub use classical::{AlphaOrder, FiniteDistribution};
pub use error::{Error, Result};
pub use extended::{ExtendedReal, InfinityReason, LogBase};
pub use linalg::CMatrix;
pub use petz::{petz_renyi, petz_renyi_direct};
pub use reduction::{build_joint, JointPair, OverlapMatrix};
pub use spectral::{DensityState, HermitianMatrix, SupportProjector, DEFAULT_TOL};
