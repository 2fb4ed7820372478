//! Infinite-dimensional states with closed-form spectra.
//!
//! Every sequence handled here has the shape
//!
//! ```text
//! t_j = c · 2^{a·j²} · 2^{b·j} · j^p · (ln j)^q,    j ≥ j₀
//! ```
//!
//! which is closed under the pointwise products and powers appearing in
//! `Σ r_j^α s_j^{1−α} w_j`. Products are formed on the exponents, so the
//! convergence verdict of any such series is exact:
//!
//! | exponents                  | verdict   | rule              |
//! |----------------------------|-----------|-------------------|
//! | `a < 0` / `a > 0`          | conv/div  | QuadraticExponent |
//! | `a = 0`, `b < 0` / `b > 0` | conv/div  | Geometric         |
//! | `a = b = 0`, `p ≠ −1`      | `p < −1`  | PSeries           |
//! | `a = b = 0`, `p = −1`      | `q < −1`  | LogPSeries        |
//!
//! (`q = 0` with `p = −1` is the harmonic series and is reported as PSeries.)

use crate::classical::AlphaOrder;
use crate::error::{Error, Result};
use crate::extended::{ExtendedReal, InfinityReason};
use crate::linalg::{complete_basis, CMatrix};
use crate::spectral::DensityState;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::f64::consts::{LN_2, PI};

/// Exponents closer to zero than this are treated as exactly zero.
const EXPONENT_SNAP: f64 = 1e-12;

/// Default relative accuracy of [`certified_sum`].
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Hard cap on the number of terms summed explicitly.
pub const MAX_TERMS: u64 = 10_000_000;

fn snap(x: f64) -> f64 {
    if x.abs() < EXPONENT_SNAP {
        0.0
    } else {
        x
    }
}

/// One closed-form sequence term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeqTerm {
    pub coeff: f64,
    /// `a` in `2^{a·j²}`
    pub quad_log2: f64,
    /// `b` in `2^{b·j}`
    pub geo_log2: f64,
    pub poly_pow: f64,
    pub log_pow: f64,
    /// First index `j₀`.
    pub start: u64,
}

impl SeqTerm {
    pub fn new(coeff: f64) -> Self {
        assert!(coeff > 0.0 && coeff.is_finite(), "coefficient must be positive");
        SeqTerm {
            coeff,
            quad_log2: 0.0,
            geo_log2: 0.0,
            poly_pow: 0.0,
            log_pow: 0.0,
            start: 1,
        }
    }

    pub fn quadratic(mut self, a: f64) -> Self {
        self.quad_log2 = a;
        self
    }

    pub fn geometric(mut self, b: f64) -> Self {
        self.geo_log2 = b;
        self
    }

    pub fn poly(mut self, p: f64) -> Self {
        self.poly_pow = p;
        self
    }

    /// Sets the log power; the start index is raised to 2 since `ln 1 = 0`.
    pub fn log(mut self, q: f64) -> Self {
        self.log_pow = q;
        if q != 0.0 {
            self.start = self.start.max(2);
        }
        self
    }

    pub fn starting_at(mut self, j: u64) -> Self {
        self.start = j.max(if self.log_pow != 0.0 { 2 } else { 1 });
        self
    }

    pub fn scaled(mut self, k: f64) -> Self {
        assert!(k > 0.0 && k.is_finite(), "scale must be positive");
        self.coeff *= k;
        self
    }

    /// Pointwise product; exponents add.
    pub fn mul(&self, other: &SeqTerm) -> SeqTerm {
        SeqTerm {
            coeff: self.coeff * other.coeff,
            quad_log2: snap(self.quad_log2 + other.quad_log2),
            geo_log2: snap(self.geo_log2 + other.geo_log2),
            poly_pow: snap(self.poly_pow + other.poly_pow),
            log_pow: snap(self.log_pow + other.log_pow),
            start: self.start.max(other.start),
        }
    }

    /// Pointwise power `t_j^e`.
    pub fn powf(&self, e: f64) -> SeqTerm {
        SeqTerm {
            coeff: self.coeff.powf(e),
            quad_log2: snap(self.quad_log2 * e),
            geo_log2: snap(self.geo_log2 * e),
            poly_pow: snap(self.poly_pow * e),
            log_pow: snap(self.log_pow * e),
            start: self.start,
        }
    }

    /// `ln t_j`, `-∞` before the start index.
    pub fn ln_value(&self, j: u64) -> f64 {
        if j < self.start {
            return f64::NEG_INFINITY;
        }
        let x = j as f64;
        let mut v = self.coeff.ln() + (self.quad_log2 * x * x + self.geo_log2 * x) * LN_2;
        if self.poly_pow != 0.0 {
            v += self.poly_pow * x.ln();
        }
        if self.log_pow != 0.0 {
            v += self.log_pow * x.ln().ln();
        }
        v
    }

    pub fn value(&self, j: u64) -> f64 {
        if j < self.start {
            return 0.0;
        }
        self.ln_value(j).exp()
    }

    /// Exponent tuple `(a, b, p, q)`, ordered by asymptotic growth.
    fn growth(&self) -> [f64; 4] {
        [
            snap(self.quad_log2),
            snap(self.geo_log2),
            snap(self.poly_pow),
            snap(self.log_pow),
        ]
    }

    fn same_shape(&self, other: &SeqTerm) -> bool {
        self.growth() == other.growth() && self.start == other.start
    }
}

fn compare_growth(a: &SeqTerm, b: &SeqTerm) -> Ordering {
    a.growth()
        .iter()
        .zip(b.growth().iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converges,
    Diverges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Geometric,
    QuadraticExponent,
    PSeries,
    LogPSeries,
}

/// Exact convergence verdict for `Σ_j t_j`, with the exponents that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceCertificate {
    pub verdict: Verdict,
    pub rule: Rule,
    pub quad_log2: f64,
    pub geo_log2: f64,
    pub poly_pow: f64,
    pub log_pow: f64,
}

impl ConvergenceCertificate {
    pub fn converges(&self) -> bool {
        self.verdict == Verdict::Converges
    }
}

pub fn classify(t: &SeqTerm) -> ConvergenceCertificate {
    let [a, b, p, q] = t.growth();
    let (verdict, rule) = if a != 0.0 {
        (
            if a < 0.0 { Verdict::Converges } else { Verdict::Diverges },
            Rule::QuadraticExponent,
        )
    } else if b != 0.0 {
        (
            if b < 0.0 { Verdict::Converges } else { Verdict::Diverges },
            Rule::Geometric,
        )
    } else if p != -1.0 || q == 0.0 {
        (
            if p < -1.0 {
                Verdict::Converges
            } else {
                Verdict::Diverges
            },
            Rule::PSeries,
        )
    } else {
        (
            if q < -1.0 {
                Verdict::Converges
            } else {
                Verdict::Diverges
            },
            Rule::LogPSeries,
        )
    };
    ConvergenceCertificate {
        verdict,
        rule,
        quad_log2: a,
        geo_log2: b,
        poly_pow: p,
        log_pow: q,
    }
}

/// A certified value: the true sum lies within `tail_bound` of `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedSum {
    pub value: f64,
    pub tail_bound: f64,
    /// Number of terms summed explicitly.
    pub terms: u64,
}

/// Compensated running sum.
#[derive(Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `Σ_{j=j₀}^{n} t_j`.
pub fn partial_sum(t: &SeqTerm, n: u64) -> f64 {
    let mut acc = Neumaier::default();
    for j in t.start..=n {
        acc.add(t.value(j));
    }
    acc.total()
}

/// Sums a convergent series to relative accuracy `rel_tol`.
///
/// Geometric-type series use the ratio bound `t_{N+1}/(1 − R_N)`, where `R_N`
/// bounds every later ratio `t_{k+1}/t_k`. Series with `a = b = 0` use the
/// convex-integral bracket
/// `∫_{N+1}^∞ t + t_{N+1}/2 ≤ Σ_{k>N} t_k ≤ ∫_{N+½}^∞ t`, available in closed
/// form when `q = 0` or `p = −1`.
pub fn certified_sum(t: &SeqTerm, rel_tol: f64) -> Result<CertifiedSum> {
    let cert = classify(t);
    if !cert.converges() {
        return Err(Error::DivergentSeries);
    }
    match cert.rule {
        Rule::QuadraticExponent | Rule::Geometric => geometric_sum(t, rel_tol),
        Rule::PSeries | Rule::LogPSeries => integral_sum(t, rel_tol),
    }
}

/// Upper bound on `t_{k+1}/t_k` for every `k ≥ n`, given `a ≤ 0`.
fn ratio_bound(t: &SeqTerm, n: u64) -> f64 {
    let x = n as f64;
    let mut ln_r = (t.quad_log2 * (2.0 * x + 1.0) + t.geo_log2) * LN_2;
    if t.poly_pow > 0.0 {
        ln_r += t.poly_pow * (1.0 / x).ln_1p();
    }
    if t.log_pow > 0.0 {
        ln_r += t.log_pow * ((x + 1.0).ln() / x.ln()).ln();
    }
    ln_r.exp()
}

fn geometric_sum(t: &SeqTerm, rel_tol: f64) -> Result<CertifiedSum> {
    let mut acc = Neumaier::default();
    let mut j = t.start;
    let mut last_bound = f64::INFINITY;
    while j - t.start < MAX_TERMS {
        acc.add(t.value(j));
        let r = ratio_bound(t, j.max(2));
        if r < 1.0 {
            let tail = t.value(j + 1) / (1.0 - r);
            last_bound = tail;
            let s = acc.total();
            if tail <= rel_tol * s || tail == 0.0 {
                return Ok(CertifiedSum {
                    value: s,
                    tail_bound: tail,
                    terms: j - t.start + 1,
                });
            }
        }
        j += 1;
    }
    Err(Error::TailBoundNotMet {
        terms: MAX_TERMS,
        bound: last_bound,
    })
}

/// `∫_x^∞ t`, for the closed-form families.
fn tail_integral(t: &SeqTerm, x: f64) -> Result<f64> {
    let (p, q) = (t.poly_pow, t.log_pow);
    if q == 0.0 && p < -1.0 {
        Ok(t.coeff * x.powf(p + 1.0) / -(p + 1.0))
    } else if p == -1.0 && q < -1.0 {
        Ok(t.coeff * x.ln().powf(q + 1.0) / -(q + 1.0))
    } else {
        Err(Error::UnsupportedTail(format!("j^{p} (ln j)^{q}")))
    }
}

fn integral_sum(t: &SeqTerm, rel_tol: f64) -> Result<CertifiedSum> {
    tail_integral(t, 2.0)?;
    let mut acc = Neumaier::default();
    let mut j = t.start;
    let mut next_check = t.start + 8;
    let mut last_bound = f64::INFINITY;
    while j - t.start < MAX_TERMS {
        acc.add(t.value(j));
        if j >= next_check {
            let x = j as f64;
            let lower = tail_integral(t, x + 1.0)? + t.value(j + 1) / 2.0;
            let upper = tail_integral(t, x + 0.5)?;
            let value = acc.total() + (lower + upper) / 2.0;
            let bound = (upper - lower).abs() / 2.0;
            last_bound = bound;
            if bound <= rel_tol * value {
                return Ok(CertifiedSum {
                    value,
                    tail_bound: bound,
                    terms: j - t.start + 1,
                });
            }
            next_check = j + (j - t.start) / 4 + 1;
        }
        j += 1;
    }
    Err(Error::TailBoundNotMet {
        terms: MAX_TERMS,
        bound: last_bound,
    })
}

/// `ln N` for an index `N` at which the partial sums of a divergent,
/// eventually decreasing series are certain to exceed `m`.
///
/// Uses `Σ_{j=j₀}^N t_j ≥ ∫_{j₀}^{N+1} t`. Only available for decreasing
/// terms with `a = b = 0`, `p ∈ [−1, 0]`, and `q = 0` unless `p = −1` with
/// `−1 ≤ q ≤ 0`.
pub fn divergence_threshold_ln(t: &SeqTerm, m: f64) -> Option<f64> {
    let [a, b, p, q] = t.growth();
    if a != 0.0 || b != 0.0 || classify(t).converges() {
        return None;
    }
    let c = t.coeff;
    let s = t.start as f64;
    let ln_n1 = if q == 0.0 && p == -1.0 {
        m / c + s.ln()
    } else if q == 0.0 && p > -1.0 && p <= 0.0 {
        ((m * (p + 1.0) / c + s.powf(p + 1.0)).ln()) / (p + 1.0)
    } else if p == -1.0 && q == -1.0 {
        (m / c + s.ln().ln()).exp()
    } else if p == -1.0 && q > -1.0 && q <= 0.0 {
        ((m * (q + 1.0) / c + s.ln().powf(q + 1.0)).ln() / (q + 1.0)).exp()
    } else {
        return None;
    };
    Some(ln_n1)
}

/// First `N` (up to [`MAX_TERMS`]) with `Σ_{j≤N} t_j > m`, by direct summation.
pub fn first_exceeding(t: &SeqTerm, m: f64) -> Option<u64> {
    let mut acc = Neumaier::default();
    for j in t.start..t.start + MAX_TERMS {
        acc.add(t.value(j));
        if acc.total() > m {
            return Some(j);
        }
    }
    None
}

/// A signed combination `Σ_k w_k · t^{(k)}_j` of closed-form terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SeqSeries {
    pub parts: Vec<(f64, SeqTerm)>,
}

impl SeqSeries {
    pub fn push(&mut self, weight: f64, term: SeqTerm) {
        if weight == 0.0 {
            return;
        }
        match self.parts.iter_mut().find(|(_, t)| t.same_shape(&term)) {
            Some((w, t)) => {
                let combined = *w * t.coeff + weight * term.coeff;
                *w = combined;
                t.coeff = 1.0;
            }
            None => self.parts.push((weight, term)),
        }
        self.parts.retain(|(w, _)| *w != 0.0);
    }

    /// The asymptotically largest part.
    pub fn dominant(&self) -> Option<&(f64, SeqTerm)> {
        self.parts.iter().max_by(|a, b| compare_growth(&a.1, &b.1))
    }

    pub fn term(&self, j: u64) -> f64 {
        self.parts.iter().map(|(w, t)| w * t.value(j)).sum()
    }

    /// Certified sum, or a signed infinity decided by the dominant part.
    pub fn evaluate(&self, rel_tol: f64) -> Result<(ExtendedReal, Option<ConvergenceCertificate>, f64)> {
        let Some((w, dom)) = self.dominant() else {
            return Ok((ExtendedReal::Finite(0.0), None, 0.0));
        };
        let cert = classify(dom);
        if !cert.converges() {
            let v = if *w > 0.0 {
                ExtendedReal::PlusInfinity(InfinityReason::DivergentSum)
            } else {
                ExtendedReal::MinusInfinity
            };
            return Ok((v, Some(cert), 0.0));
        }
        let mut value = 0.0;
        let mut bound = 0.0;
        for (w, t) in &self.parts {
            let s = certified_sum(t, rel_tol)?;
            value += w * s.value;
            bound += w.abs() * s.tail_bound;
        }
        Ok((ExtendedReal::Finite(value), Some(cert), bound))
    }
}

/// `Σ r·ln(r/s)` split into closed-form parts. The two sequences must share
/// the log power.
fn log_ratio_series(weight: &SeqTerm, num: &SeqTerm, den: &SeqTerm) -> Result<SeqSeries> {
    if snap(num.log_pow - den.log_pow) != 0.0 {
        return Err(Error::UnsupportedTail("log-log factor in a log ratio".into()));
    }
    let mut s = SeqSeries::default();
    let unit = SeqTerm::new(1.0);
    s.push((num.coeff / den.coeff).ln(), *weight);
    s.push((num.quad_log2 - den.quad_log2) * LN_2, weight.mul(&unit.poly(2.0)));
    s.push((num.geo_log2 - den.geo_log2) * LN_2, weight.mul(&unit.poly(1.0)));
    s.push(num.poly_pow - den.poly_pow, weight.mul(&unit.log(1.0)));
    Ok(s)
}

/// A sum normalized to one, with the accuracy of its normalizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub raw_sum: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairKind {
    /// `ρ = Σ r_j|u_j⟩⟨u_j|`, `σ = Σ s_j|u_j⟩⟨u_j|` in one basis.
    Diagonal { r: SeqTerm, s: SeqTerm },
    /// `ρ = |u⟩⟨u|` with `|⟨u|v_j⟩|² = w_j`, `σ = Σ s_j|v_j⟩⟨v_j|`.
    RankOneVsDiagonal { overlap: SeqTerm, s: SeqTerm },
}

/// A pair of infinite-dimensional states with normalized spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct SequencePair {
    pub kind: PairKind,
    pub normalizations: Vec<Normalization>,
}

fn normalize(t: SeqTerm) -> Result<(SeqTerm, Normalization)> {
    let s = certified_sum(&t, DEFAULT_REL_TOL)?;
    Ok((
        t.scaled(1.0 / s.value),
        Normalization {
            raw_sum: s.value,
            tail_bound: s.tail_bound,
        },
    ))
}

/// Normalizer from a known closed-form sum.
fn normalize_exact(t: SeqTerm, sum: f64) -> (SeqTerm, Normalization) {
    (
        t.scaled(1.0 / sum),
        Normalization {
            raw_sum: sum,
            tail_bound: 0.0,
        },
    )
}

impl SequencePair {
    pub fn diagonal(r: SeqTerm, s: SeqTerm) -> Result<Self> {
        let (r, nr) = normalize(r)?;
        let (s, ns) = normalize(s)?;
        Ok(SequencePair {
            kind: PairKind::Diagonal { r, s },
            normalizations: vec![nr, ns],
        })
    }

    pub fn rank_one_vs_diagonal(overlap: SeqTerm, s: SeqTerm) -> Result<Self> {
        let (overlap, nw) = normalize(overlap)?;
        let (s, ns) = normalize(s)?;
        Ok(SequencePair {
            kind: PairKind::RankOneVsDiagonal { overlap, s },
            normalizations: vec![nw, ns],
        })
    }
}

/// `D_α` of a sequence pair with the certificate that decided finiteness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeqDivergence {
    pub value: ExtendedReal,
    pub certificate: Option<ConvergenceCertificate>,
    /// Bound on the error of a finite `value`'s underlying sum.
    pub tail_bound: f64,
}

impl SeqDivergence {
    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

/// Series `Σ_j r_j^α s_j^{1−α} w_j` whose logarithm gives `D_α`.
pub fn renyi_series_term(pair: &SequencePair, alpha: f64) -> SeqTerm {
    match pair.kind {
        PairKind::Diagonal { r, s } => r.powf(alpha).mul(&s.powf(1.0 - alpha)),
        PairKind::RankOneVsDiagonal { overlap, s } => s.powf(1.0 - alpha).mul(&overlap),
    }
}

pub fn seq_divergence(pair: &SequencePair, order: AlphaOrder) -> Result<SeqDivergence> {
    match order {
        AlphaOrder::Interior(alpha) => {
            let term = renyi_series_term(pair, alpha);
            let cert = classify(&term);
            if !cert.converges() {
                // Hölder keeps the sum ≤ 1 below α = 1, so this is the α > 1 branch.
                let value = if alpha > 1.0 {
                    ExtendedReal::PlusInfinity(InfinityReason::DivergentSum)
                } else {
                    ExtendedReal::MinusInfinity
                };
                return Ok(SeqDivergence {
                    value,
                    certificate: Some(cert),
                    tail_bound: 0.0,
                });
            }
            let s = certified_sum(&term, DEFAULT_REL_TOL)?;
            Ok(SeqDivergence {
                value: ExtendedReal::Finite(s.value.ln() / (alpha - 1.0)),
                certificate: Some(cert),
                tail_bound: s.tail_bound,
            })
        }
        AlphaOrder::Zero => {
            let mass = match pair.kind {
                // every r_j > 0, so Q is charged everywhere P is
                PairKind::Diagonal { s, .. } => s,
                PairKind::RankOneVsDiagonal { overlap, s } => s.mul(&overlap),
            };
            let cert = classify(&mass);
            let sum = certified_sum(&mass, DEFAULT_REL_TOL)?;
            Ok(SeqDivergence {
                value: ExtendedReal::Finite(-sum.value.ln().min(0.0)),
                certificate: Some(cert),
                tail_bound: sum.tail_bound,
            })
        }
        AlphaOrder::One => {
            let series = kl_series(pair)?;
            let (value, certificate, tail_bound) = series.evaluate(DEFAULT_REL_TOL)?;
            Ok(SeqDivergence {
                value,
                certificate,
                tail_bound,
            })
        }
        AlphaOrder::Infinity => {
            let ratio = match pair.kind {
                PairKind::Diagonal { r, s } => r.mul(&s.powf(-1.0)),
                PairKind::RankOneVsDiagonal { s, .. } => s.powf(-1.0),
            };
            Ok(sup_of(&ratio))
        }
    }
}

/// `D(P‖Q)` as a signed series of closed-form parts.
pub fn kl_series(pair: &SequencePair) -> Result<SeqSeries> {
    match pair.kind {
        PairKind::Diagonal { r, s } => log_ratio_series(&r, &r, &s),
        PairKind::RankOneVsDiagonal { overlap, s } => {
            // w_j · ln(w_j / (s_j w_j)) = w_j · ln(1/s_j)
            log_ratio_series(&overlap, &SeqTerm::new(1.0).log(s.log_pow), &s)
        }
    }
}

const SUP_SCAN: u64 = 10_000;

fn sup_of(ratio: &SeqTerm) -> SeqDivergence {
    let growth = ratio.growth();
    let rising = growth.iter().find(|&&x| x != 0.0).is_some_and(|&x| x > 0.0);
    if rising {
        return SeqDivergence {
            value: ExtendedReal::PlusInfinity(InfinityReason::DivergentSum),
            certificate: None,
            tail_bound: 0.0,
        };
    }
    let best = (ratio.start..ratio.start + SUP_SCAN)
        .map(|j| ratio.ln_value(j))
        .fold(f64::NEG_INFINITY, f64::max);
    SeqDivergence {
        value: ExtendedReal::Finite(best),
        certificate: None,
        tail_bound: 0.0,
    }
}

/// Domain condition for `α > 1`: `Σ_j s_j^{2(1−α)} |⟨u|v_j⟩|² < ∞`.
///
/// `None` for diagonal pairs, where each sum has a single term.
pub fn seq_condition1(pair: &SequencePair, alpha: f64) -> Option<ConvergenceCertificate> {
    match pair.kind {
        PairKind::Diagonal { .. } => None,
        PairKind::RankOneVsDiagonal { overlap, s } => Some(classify(&s.powf(2.0 * (1.0 - alpha)).mul(&overlap))),
    }
}

/// `6/π² = (Σ 1/j²)^{-1}`.
pub const INVERSE_BASEL: f64 = 6.0 / (PI * PI);

fn halving() -> (SeqTerm, Normalization) {
    normalize_exact(SeqTerm::new(1.0).geometric(-1.0), 1.0)
}

/// `ρ = Σ 2^{−j}|u_j⟩⟨u_j|`, `σ ∝ Σ 2^{−j²}|u_j⟩⟨u_j|`: `D_1` finite,
/// `D_α = ∞` for every `α > 1`.
pub fn example_finite_d1() -> SequencePair {
    let (r, nr) = halving();
    let (s, ns) = normalize(SeqTerm::new(1.0).quadratic(-1.0)).expect("convergent");
    SequencePair {
        kind: PairKind::Diagonal { r, s },
        normalizations: vec![nr, ns],
    }
}

/// `σ ∝ Σ 2^{−2j}|u_j⟩⟨u_j|`: finite for `1 < α < 2`, infinite at `α = 2`.
pub fn example_boundary_2() -> SequencePair {
    let (r, nr) = halving();
    let (s, ns) = normalize_exact(SeqTerm::new(1.0).geometric(-2.0), 1.0 / 3.0);
    SequencePair {
        kind: PairKind::Diagonal { r, s },
        normalizations: vec![nr, ns],
    }
}

/// `σ ∝ Σ j²2^{−2j}|u_j⟩⟨u_j|`: finite at `α = 2`, infinite for `α > 2`.
pub fn example_at_2() -> SequencePair {
    let (r, nr) = halving();
    let (s, ns) = normalize_exact(SeqTerm::new(1.0).geometric(-2.0).poly(2.0), 20.0 / 27.0);
    SequencePair {
        kind: PairKind::Diagonal { r, s },
        normalizations: vec![nr, ns],
    }
}

/// `σ = Σ 2^{−j}|v_j⟩⟨v_j|` and `ρ = |u⟩⟨u|` with `|⟨u|v_j⟩|² = (6/π²)/j²`.
pub fn counterexample_pair() -> SequencePair {
    let overlap = SeqTerm::new(INVERSE_BASEL).poly(-2.0);
    let (s, ns) = halving();
    SequencePair {
        kind: PairKind::RankOneVsDiagonal { overlap, s },
        normalizations: vec![
            Normalization {
                raw_sum: PI * PI / 6.0,
                tail_bound: 0.0,
            },
            ns,
        ],
    }
}

/// `r_i ∝ 1/(i (ln i)²)` for `i ≥ 2`: a state of infinite entropy.
pub fn infty_minus_infty_state() -> SeqTerm {
    normalize(SeqTerm::new(1.0).poly(-1.0).log(-2.0)).expect("convergent").0
}

/// `−r_j ln r_j` split into closed-form parts plus the weight of the
/// `r_j · ln ln j` remainder.
pub fn entropy_series(r: &SeqTerm) -> (SeqSeries, f64) {
    let mut s = SeqSeries::default();
    let unit = SeqTerm::new(1.0);
    s.push(-r.coeff.ln(), *r);
    s.push(-r.quad_log2 * LN_2, r.mul(&unit.poly(2.0)));
    s.push(-r.geo_log2 * LN_2, r.mul(&unit.poly(1.0)));
    s.push(-r.poly_pow, r.mul(&unit.log(1.0)));
    (s, -r.log_pow)
}

/// Verdict for `−Σ r_j ln r_j`.
///
/// The `ln ln j` remainder grows slower than `ln j`; when its weight is
/// nonnegative it cannot cancel a divergent dominant part.
pub fn entropy_certificate(r: &SeqTerm) -> Result<ConvergenceCertificate> {
    let (series, loglog_weight) = entropy_series(r);
    let (w, dom) = series
        .dominant()
        .ok_or_else(|| Error::InvalidInput("empty entropy series".into()))?;
    let cert = classify(dom);
    if cert.converges() && loglog_weight != 0.0 {
        return Err(Error::UnsupportedTail(
            "convergent entropy with a ln ln remainder".into(),
        ));
    }
    if !cert.converges() && (*w < 0.0 || loglog_weight < 0.0) {
        return Err(Error::UnsupportedTail(
            "divergent entropy part with negative weight".into(),
        ));
    }
    Ok(cert)
}

/// `−Σ_{j≤n} r_j ln r_j`.
pub fn entropy_partial_sum(r: &SeqTerm, n: u64) -> f64 {
    let mut acc = Neumaier::default();
    for j in r.start..=n {
        let ln_r = r.ln_value(j);
        acc.add(-ln_r.exp() * ln_r);
    }
    acc.total()
}

/// `N`-dimensional truncation, each spectrum renormalized to one.
pub fn truncate_to_density(pair: &SequencePair, n: usize) -> Result<(DensityState, DensityState)> {
    if n < 2 {
        return Err(Error::InvalidInput("truncation needs N ≥ 2".into()));
    }
    let take = |t: &SeqTerm| -> Vec<f64> {
        let v: Vec<f64> = (1..=n as u64).map(|j| t.value(j)).collect();
        let total: f64 = v.iter().sum();
        v.into_iter().map(|x| x / total).collect()
    };
    match pair.kind {
        PairKind::Diagonal { r, s } => {
            let rho = DensityState::from_spectrum(take(&r), CMatrix::identity(n), 0.0)?;
            let sigma = DensityState::from_spectrum(take(&s), CMatrix::identity(n), 0.0)?;
            Ok((rho, sigma))
        }
        PairKind::RankOneVsDiagonal { overlap, s } => {
            let w = take(&overlap);
            let u: Vec<Complex64> = w.iter().map(|x| Complex64::new(x.sqrt(), 0.0)).collect();
            let norm = u.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let u: Vec<Complex64> = u.into_iter().map(|x| x / norm).collect();
            let basis = complete_basis(&[u], n);
            let mut spectrum = vec![0.0; n];
            spectrum[0] = 1.0;
            let rho = DensityState::from_spectrum(spectrum, basis, 0.0)?;
            let sigma = DensityState::from_spectrum(take(&s), CMatrix::identity(n), 0.0)?;
            Ok((rho, sigma))
        }
    }
}

/// Expected finiteness of one order of a built-in example.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedVerdict {
    pub order: AlphaOrder,
    pub finite: bool,
}

/// A named infinite-dimensional example with its known finiteness pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct BuiltinExample {
    pub name: &'static str,
    pub description: &'static str,
    pub pair: Option<SequencePair>,
    pub expected: Vec<ExpectedVerdict>,
}

pub const EXAMPLE_NAMES: [&str; 5] = [
    "ex1-finite-d1",
    "ex2-boundary-2",
    "ex3-at-2",
    "counterexample",
    "infty-minus-infty",
];

fn expect(orders: &[f64], finite: bool) -> Vec<ExpectedVerdict> {
    orders
        .iter()
        .map(|&a| ExpectedVerdict {
            order: AlphaOrder::from_value(a).expect("valid order"),
            finite,
        })
        .collect()
}

pub fn builtin(name: &str) -> Option<BuiltinExample> {
    let ex = match name {
        "ex1-finite-d1" => BuiltinExample {
            name: "ex1-finite-d1",
            description: "r_j = 2^-j, s_j ∝ 2^-j²: D_1 finite, D_α = ∞ for all α > 1",
            pair: Some(example_finite_d1()),
            expected: [expect(&[0.5, 1.0], true), expect(&[1.1, 1.5, 2.0, 3.0], false)].concat(),
        },
        "ex2-boundary-2" => BuiltinExample {
            name: "ex2-boundary-2",
            description: "r_j = 2^-j, s_j ∝ 2^-2j: finite for 1 < α < 2, ∞ at α = 2",
            pair: Some(example_boundary_2()),
            expected: [expect(&[0.5, 1.0, 1.25, 1.5, 1.9], true), expect(&[2.0], false)].concat(),
        },
        "ex3-at-2" => BuiltinExample {
            name: "ex3-at-2",
            description: "r_j = 2^-j, s_j ∝ j²2^-2j: finite at α = 2, ∞ for α > 2",
            pair: Some(example_at_2()),
            expected: [expect(&[0.5, 1.0, 1.5, 2.0], true), expect(&[2.1, 3.0], false)].concat(),
        },
        "counterexample" => BuiltinExample {
            name: "counterexample",
            description: "ρ = |u⟩⟨u|, |⟨u|v_j⟩|² = (6/π²)/j², σ = Σ 2^-j|v_j⟩⟨v_j|: D_1 = ∞",
            pair: Some(counterexample_pair()),
            expected: [expect(&[0.25, 0.5, 0.75], true), expect(&[1.0, 1.5, 2.0], false)].concat(),
        },
        "infty-minus-infty" => BuiltinExample {
            name: "infty-minus-infty",
            description: "r_i ∝ 1/(i ln² i), i ≥ 2: normalizable with infinite entropy",
            pair: None,
            expected: Vec::new(),
        },
        _ => return None,
    };
    Some(ex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_classifications() {
        // 2^{(α−2)j} at α = 1.5 and α = 2
        let c = classify(&SeqTerm::new(1.0).geometric(1.5 - 2.0));
        assert_eq!((c.verdict, c.rule), (Verdict::Converges, Rule::Geometric));
        let c = classify(&SeqTerm::new(1.0).geometric(2.0 - 2.0));
        assert_eq!((c.verdict, c.rule), (Verdict::Diverges, Rule::PSeries));
        // j^{-2} · j log 2 = log 2 / j
        let c = classify(&SeqTerm::new(1.0).poly(-2.0).mul(&SeqTerm::new(LN_2).poly(1.0)));
        assert_eq!(
            (c.verdict, c.rule, c.poly_pow),
            (Verdict::Diverges, Rule::PSeries, -1.0)
        );
    }

    #[test]
    fn classification_table() {
        let t = SeqTerm::new(1.0);
        assert!(classify(&t.quadratic(-0.1).geometric(50.0).poly(9.0)).converges());
        assert!(!classify(&t.quadratic(0.1).geometric(-50.0)).converges());
        assert!(classify(&t.geometric(-0.01).poly(40.0).log(3.0)).converges());
        assert!(!classify(&t.geometric(0.01).poly(-40.0)).converges());
        assert!(classify(&t.poly(-1.01)).converges());
        assert!(!classify(&t.poly(-0.99).log(-5.0)).converges());
        assert!(classify(&t.poly(-1.0).log(-1.01)).converges());
        assert!(!classify(&t.poly(-1.0).log(-1.0)).converges());
        assert_eq!(classify(&t.poly(-1.0).log(-2.0)).rule, Rule::LogPSeries);
    }

    #[test]
    fn geometric_sum() {
        let s = certified_sum(&SeqTerm::new(1.0).geometric(-1.0), DEFAULT_REL_TOL).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!(s.tail_bound <= 1e-12);
    }

    #[test]
    fn basel_sum() {
        let s = certified_sum(&SeqTerm::new(1.0).poly(-2.0), DEFAULT_REL_TOL).unwrap();
        assert!((s.value - PI * PI / 6.0).abs() < 1e-10, "{}", s.value);
        assert!((s.value - PI * PI / 6.0).abs() <= s.tail_bound + 1e-13);
    }

    #[test]
    fn harmonic_sum_is_rejected() {
        assert_eq!(
            certified_sum(&SeqTerm::new(1.0).poly(-1.0), DEFAULT_REL_TOL),
            Err(Error::DivergentSeries)
        );
    }

    #[test]
    fn unsupported_tail_is_reported() {
        let t = SeqTerm::new(1.0).poly(-2.0).log(1.0);
        assert!(classify(&t).converges());
        assert!(matches!(
            certified_sum(&t, DEFAULT_REL_TOL),
            Err(Error::UnsupportedTail(_))
        ));
    }

    #[test]
    fn harmonic_threshold() {
        let t = SeqTerm::new(1.0).poly(-1.0);
        let ln_n = divergence_threshold_ln(&t, 5.0).unwrap();
        let n = ln_n.exp().ceil() as u64;
        assert!(partial_sum(&t, n) > 5.0);
        assert!(first_exceeding(&t, 5.0).unwrap() <= n);
    }

    #[test]
    fn product_adds_exponents() {
        let a = SeqTerm::new(2.0).geometric(-1.0).poly(1.5);
        let b = SeqTerm::new(3.0).quadratic(-1.0).poly(-0.5).log(2.0);
        let p = a.mul(&b);
        for j in 2..20 {
            let want = a.value(j) * b.value(j);
            assert!((p.value(j) - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn kl_series_reproduces_direct_terms() {
        let pair = example_finite_d1();
        let PairKind::Diagonal { r, s } = pair.kind else {
            unreachable!()
        };
        let series = kl_series(&pair).unwrap();
        for j in 1..25 {
            let direct = r.value(j) * (r.ln_value(j) - s.ln_value(j));
            assert!(
                (series.term(j) - direct).abs() <= 1e-12 * direct.abs().max(1e-300),
                "j={j}"
            );
        }
    }

    #[test]
    fn counterexample_kl_diverges_harmonically() {
        let d = seq_divergence(&counterexample_pair(), AlphaOrder::One).unwrap();
        assert_eq!(d.value, ExtendedReal::PlusInfinity(InfinityReason::DivergentSum));
        let c = d.certificate.unwrap();
        assert_eq!((c.rule, c.poly_pow, c.log_pow), (Rule::PSeries, -1.0, 0.0));
        let series = kl_series(&counterexample_pair()).unwrap();
        for j in [1u64, 7, 100] {
            let want = INVERSE_BASEL * LN_2 / j as f64;
            assert!((series.term(j) - want).abs() < 1e-15);
        }
    }

    #[test]
    fn counterexample_condition1_fails_above_one() {
        for alpha in [1.01, 1.5, 3.0] {
            assert!(!seq_condition1(&counterexample_pair(), alpha).unwrap().converges());
        }
        let c = seq_condition1(&counterexample_pair(), 1.5).unwrap();
        assert_eq!(c.rule, Rule::Geometric);
    }

    #[test]
    fn infinite_entropy_state() {
        let r = infty_minus_infty_state();
        let norm = classify(&SeqTerm::new(1.0).poly(-1.0).log(-2.0));
        assert_eq!((norm.verdict, norm.rule), (Verdict::Converges, Rule::LogPSeries));
        let e = entropy_certificate(&r).unwrap();
        assert_eq!((e.verdict, e.poly_pow, e.log_pow), (Verdict::Diverges, -1.0, -1.0));
        let mut prev = 0.0;
        for n in [10u64, 100, 1000, 10_000] {
            let s = entropy_partial_sum(&r, n);
            assert!(s > prev);
            prev = s;
        }
    }

    #[test]
    fn truncations_are_valid_states() {
        for pair in [
            example_finite_d1(),
            example_boundary_2(),
            example_at_2(),
            counterexample_pair(),
        ] {
            let (rho, sigma) = truncate_to_density(&pair, 2).unwrap();
            assert_eq!((rho.dim(), sigma.dim()), (2, 2));
        }
        assert!(truncate_to_density(&counterexample_pair(), 1).is_err());
    }

    #[test]
    fn closed_form_normalizers_match_certified_sums() {
        for (t, exact) in [
            (SeqTerm::new(1.0).geometric(-1.0), 1.0),
            (SeqTerm::new(1.0).geometric(-2.0), 1.0 / 3.0),
            (SeqTerm::new(1.0).geometric(-2.0).poly(2.0), 20.0 / 27.0),
        ] {
            let s = certified_sum(&t, DEFAULT_REL_TOL).unwrap();
            assert!((s.value - exact).abs() <= 1e-12 * exact);
        }
    }

    #[test]
    fn registry_names_resolve() {
        for name in EXAMPLE_NAMES {
            assert_eq!(builtin(name).unwrap().name, name);
        }
        assert!(builtin("nonsuch").is_none());
    }
}
