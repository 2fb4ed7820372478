//! The relative modular operator of the counterexample pair.
//!
//! For `σ = Σ 2^{−j}|v_j⟩⟨v_j|` and `ρ = |u⟩⟨u|` with `|⟨u|v_j⟩|² = c/j²`,
//! `Δ_{ρ,σ}` has eigenvalues `2^j` and the spectral measure of `√ρ` puts mass
//! `c/j²` on `2^j`. Araki's entropy `Σ_j log(2^j)·c/j²` is then `c·ln2·H_N` in
//! the limit, which diverges, while the trace expression built from
//! `−log σ` is degenerate and evaluates to 0.

use crate::error::{Error, Result};
use crate::extended::{ExtendedReal, InfinityReason};
use crate::sequence::{
    classify, counterexample_pair, kl_series, ConvergenceCertificate, PairKind, SeqTerm, INVERSE_BASEL,
};
use std::f64::consts::LN_2;

/// `c = 6/π²`.
pub const ARAKI_C: f64 = INVERSE_BASEL;

/// Atoms `(2^j, c/j²)` for `j ≤ N` and the mass left on the kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularSpectrum {
    pub atoms: Vec<(f64, f64)>,
    pub kernel_mass: f64,
    pub c: f64,
}

fn weight(j: u64) -> f64 {
    ARAKI_C / (j as f64 * j as f64)
}

pub fn modular_spectrum(n: u64) -> Result<ModularSpectrum> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if n > 1023 {
        return Err(Error::InvalidInput("2^N overflows for N > 1023".into()));
    }
    let atoms: Vec<(f64, f64)> = (1..=n).map(|j| (2f64.powi(j as i32), weight(j))).collect();
    let carried: f64 = atoms.iter().map(|a| a.1).sum();
    Ok(ModularSpectrum {
        atoms,
        kernel_mass: 1.0 - carried,
        c: ARAKI_C,
    })
}

/// `log(2^j)·c/j²`, the `j`-th term of the Araki integral.
pub fn araki_term(j: u64) -> f64 {
    j as f64 * LN_2 * weight(j)
}

/// `Σ_{j≤N} log(2^j)·c/j² = c·ln2·H_N`.
pub fn araki_partial_sum(n: u64) -> f64 {
    araki_partial_sums(n).last().copied().unwrap_or(0.0)
}

/// Running sums for `N = 1..=n`.
pub fn araki_partial_sums(n: u64) -> Vec<f64> {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    (1..=n)
        .map(|j| {
            let x = araki_term(j);
            let t = sum + x;
            comp += if sum.abs() >= x.abs() {
                (sum - t) + x
            } else {
                (x - t) + sum
            };
            sum = t;
            sum + comp
        })
        .collect()
}

/// `c·ln2 / j`, the symbolic Araki integrand.
pub fn araki_series_term() -> SeqTerm {
    SeqTerm::new(ARAKI_C * LN_2).poly(-1.0)
}

/// First `N` with `araki_partial_sum(N) > m`.
pub fn araki_threshold(m: f64) -> u64 {
    // H_N > ln N, so this N always suffices.
    let cap = (m / (ARAKI_C * LN_2)).exp().ceil() as u64 + 1;
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for j in 1..=cap {
        let x = araki_term(j);
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
        if sum + comp > m {
            return j;
        }
    }
    cap
}

/// Why the trace expression evaluates to 0: `u ∉ D(−log σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainCertificate {
    pub reason: InfinityReason,
    /// `|log₂ σ_j|²·w_j`, constant `c`.
    pub series: SeqTerm,
    pub certificate: ConvergenceCertificate,
}

impl DomainCertificate {
    /// `|log₂ 2^{−j}|²·c/j²`, evaluated numerically.
    pub fn term(&self, j: u64) -> f64 {
        let l = (2f64.powi(-(j as i32))).log2();
        l * l * weight(j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItValue {
    pub value: ExtendedReal,
    pub domain: DomainCertificate,
}

/// `tr ρ^{1/2}(−log σ)ρ^{1/2} − tr ρ^{1/2}(−log ρ)ρ^{1/2}` on the degenerate
/// domain: exactly 0.
pub fn it_relative_entropy_value() -> ItValue {
    let series = SeqTerm::new(ARAKI_C);
    let certificate = classify(&series);
    ItValue {
        value: ExtendedReal::Finite(0.0),
        domain: DomainCertificate {
            reason: InfinityReason::DomainViolation,
            series,
            certificate,
        },
    }
}

/// Largest disagreement over `j ≤ N` between the Araki integrand, the KL
/// term `P log(P/Q)` of the reduced pair, and the symbolic KL series.
pub fn kl_term_compare(n: u64) -> Result<f64> {
    if n == 0 || n > 1000 {
        return Err(Error::InvalidInput("kl_term_compare needs 1 ≤ N ≤ 1000".into()));
    }
    let pair = counterexample_pair();
    let PairKind::RankOneVsDiagonal { overlap, s } = pair.kind else {
        unreachable!("counterexample is rank-one vs diagonal")
    };
    let series = kl_series(&pair)?;
    let mut worst = 0.0f64;
    for j in 1..=n {
        let p = overlap.value(j);
        let q = s.value(j) * p;
        let kl = p * (p / q).ln();
        let araki = araki_term(j);
        let symbolic = series.term(j);
        worst = worst.max((kl - araki).abs()).max((symbolic - araki).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArakiReport {
    pub partial_sums: Vec<f64>,
    pub certificate: ConvergenceCertificate,
    pub threshold: f64,
    pub threshold_n: u64,
    pub it_value: ItValue,
    /// Araki entropy infinite while the trace expression is finite.
    pub mismatch: bool,
}

pub fn araki_report(n: u64, threshold: f64) -> ArakiReport {
    let certificate = classify(&araki_series_term());
    let it_value = it_relative_entropy_value();
    ArakiReport {
        partial_sums: araki_partial_sums(n),
        certificate,
        threshold,
        threshold_n: araki_threshold(threshold),
        mismatch: !certificate.converges() && it_value.value.is_finite(),
        it_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Rule;

    #[test]
    fn spectrum_atoms() {
        let m = modular_spectrum(1).unwrap();
        assert_eq!(
            m.atoms,
            vec![(2.0, 6.0 / (std::f64::consts::PI * std::f64::consts::PI))]
        );
        let m = modular_spectrum(3).unwrap();
        for (k, want) in [1.0, 0.25, 1.0 / 9.0].iter().enumerate() {
            assert!((m.atoms[k].1 - ARAKI_C * want).abs() < 1e-16);
        }
        assert!(m.kernel_mass > 0.0);
        assert!(modular_spectrum(0).is_err());
    }

    #[test]
    fn partial_sums_follow_harmonic_numbers() {
        assert!((araki_partial_sum(1) - 0.421_382_956_636_097).abs() < 1e-15);
        let sums = araki_partial_sums(1000);
        let mut h = 0.0;
        for (k, s) in sums.iter().enumerate() {
            h += 1.0 / (k + 1) as f64;
            assert!((s - ARAKI_C * LN_2 * h).abs() < 1e-12);
        }
        assert!(sums.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn threshold_is_first_crossing() {
        let n = araki_threshold(1.0);
        assert!(araki_partial_sum(n) > 1.0);
        assert!(araki_partial_sum(n - 1) <= 1.0);
    }

    #[test]
    fn it_value_is_zero_with_divergent_domain_series() {
        let it = it_relative_entropy_value();
        assert_eq!(it.value, ExtendedReal::Finite(0.0));
        assert_eq!(it.domain.reason, InfinityReason::DomainViolation);
        assert!(!it.domain.certificate.converges());
        assert_eq!(it.domain.certificate.rule, Rule::PSeries);
        for j in [1, 2, 50, 1000] {
            assert!((it.domain.term(j) - ARAKI_C).abs() <= 1e-14);
        }
    }

    #[test]
    fn kl_terms_match_araki_terms() {
        assert!(kl_term_compare(1000).unwrap() <= 1e-14);
        assert!((araki_term(7) - ARAKI_C * LN_2 / 7.0).abs() < 1e-16);
    }

    #[test]
    fn report_flags_mismatch() {
        let r = araki_report(100, 1.0);
        assert!(r.mismatch);
        assert_eq!(r.partial_sums.len(), 100);
    }
}
