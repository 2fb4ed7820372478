//! Rényi and Kullback–Leibler divergences of finitely supported distributions.
//!
//! Conventions for zero weights:
//!
//! | expression   | value |
//! |--------------|-------|
//! | `0^{1−α}`, α>1 | `∞` |
//! | `0 · ∞`      | `0`   |
//! | `0 log(0/q)` | `0`   |
//! | `p log(p/0)` | `∞`   |
//! | `0/0`        | `0`   |
//! | `x/0`, x>0   | `∞`   |

use crate::error::{Error, Result};
use crate::extended::{ExtendedReal, InfinityReason};
use std::collections::BTreeMap;
use std::fmt;

const SUM_TOL: f64 = 1e-9;

/// Minimum distance of an interior order from 1.
pub const ORDER_ONE_GUARD: f64 = 1e-12;

/// A probability distribution on finitely many keys. Zero weights are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution<K: Ord> {
    weights: BTreeMap<K, f64>,
}

impl<K: Ord + Clone> FiniteDistribution<K> {
    pub fn new(entries: impl IntoIterator<Item = (K, f64)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        let mut total = 0.0;
        for (k, w) in entries {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "weight {w} is not a nonnegative number"
                )));
            }
            total += w;
            if weights.insert(k, w).is_some() {
                return Err(Error::InvalidDistribution("duplicate key".into()));
            }
        }
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDistribution(format!("weights sum to {total}")));
        }
        weights.retain(|_, w| *w > 0.0);
        Ok(FiniteDistribution { weights })
    }

    /// Weight of `key`, zero when absent.
    pub fn weight(&self, key: &K) -> f64 {
        self.weights.get(key).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.weights.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, f64)> {
        self.weights.iter().map(|(k, &w)| (k, w))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `P ≪ Q`: every key charged by `self` is charged by `other`.
    pub fn absolutely_continuous_wrt(&self, other: &Self) -> bool {
        self.weights.keys().all(|k| other.weights.contains_key(k))
    }

    pub fn mutually_singular(&self, other: &Self) -> bool {
        self.weights.keys().all(|k| !other.weights.contains_key(k))
    }
}

impl FiniteDistribution<usize> {
    pub fn from_slice(p: &[f64]) -> Result<Self> {
        Self::new(p.iter().copied().enumerate())
    }
}

/// Order of a Rényi divergence, including the limiting orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaOrder {
    Zero,
    Interior(f64),
    One,
    Infinity,
}

impl AlphaOrder {
    /// Interior order in `(0,1) ∪ (1,∞)`; values within 1e-12 of 1 are rejected.
    pub fn interior(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidOrder(format!("{alpha} is not a positive finite order")));
        }
        if (alpha - 1.0).abs() < ORDER_ONE_GUARD {
            return Err(Error::InvalidOrder(format!(
                "{alpha} is too close to 1; request order One"
            )));
        }
        Ok(AlphaOrder::Interior(alpha))
    }

    /// Maps `0`, `1`, `+∞` to the limiting orders and everything else to
    /// [`AlphaOrder::interior`].
    pub fn from_value(alpha: f64) -> Result<Self> {
        if alpha == 0.0 {
            Ok(AlphaOrder::Zero)
        } else if alpha == 1.0 {
            Ok(AlphaOrder::One)
        } else if alpha == f64::INFINITY {
            Ok(AlphaOrder::Infinity)
        } else {
            Self::interior(alpha)
        }
    }

    pub fn value(self) -> f64 {
        match self {
            AlphaOrder::Zero => 0.0,
            AlphaOrder::Interior(a) => a,
            AlphaOrder::One => 1.0,
            AlphaOrder::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for AlphaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaOrder::Zero => write!(f, "0"),
            AlphaOrder::Interior(a) => write!(f, "{a}"),
            AlphaOrder::One => write!(f, "1"),
            AlphaOrder::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for AlphaOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "+inf" => Ok(AlphaOrder::Infinity),
            t => {
                let v: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidOrder(format!("cannot parse '{t}'")))?;
                Self::from_value(v)
            }
        }
    }
}

/// Joint view over the union of both supports: `(p, q)` per key.
fn cells<'a, K: Ord + Clone>(
    p: &'a FiniteDistribution<K>,
    q: &'a FiniteDistribution<K>,
) -> impl Iterator<Item = (f64, f64)> + 'a {
    let only_q = q
        .weights
        .iter()
        .filter(|(k, _)| !p.weights.contains_key(*k))
        .map(|(_, &w)| (0.0, w));
    p.weights.iter().map(|(k, &w)| (w, q.weight(k))).chain(only_q)
}

/// `log Σ exp(xᵢ)`, returning `-∞` for an empty input.
pub(crate) fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    if m == f64::INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `D_α(P‖Q)` in nats.
pub fn renyi<K: Ord + Clone>(p: &FiniteDistribution<K>, q: &FiniteDistribution<K>, order: AlphaOrder) -> ExtendedReal {
    match order {
        AlphaOrder::Zero => {
            // Q ≪ P means the mass is all of Q, which is exactly 1.
            if q.absolutely_continuous_wrt(p) {
                return ExtendedReal::Finite(0.0);
            }
            let mass: f64 = p.weights.keys().map(|k| q.weight(k)).sum();
            if mass <= 0.0 {
                ExtendedReal::PlusInfinity(InfinityReason::SupportViolation)
            } else {
                ExtendedReal::Finite(-mass.ln())
            }
        }
        AlphaOrder::One => kl(p, q),
        AlphaOrder::Infinity => {
            let mut best = f64::NEG_INFINITY;
            for (pw, qw) in cells(p, q) {
                if pw == 0.0 {
                    continue;
                }
                if qw == 0.0 {
                    return ExtendedReal::PlusInfinity(InfinityReason::SupportViolation);
                }
                best = best.max(pw.ln() - qw.ln());
            }
            ExtendedReal::Finite(best)
        }
        AlphaOrder::Interior(a) => {
            let mut logs = Vec::with_capacity(p.len());
            for (pw, qw) in cells(p, q) {
                if pw == 0.0 {
                    continue;
                }
                if qw == 0.0 {
                    if a > 1.0 {
                        return ExtendedReal::PlusInfinity(InfinityReason::SupportViolation);
                    }
                    continue;
                }
                // Exactly ln p on cells with p = q.
                let lp = pw.ln();
                logs.push(lp + (1.0 - a) * (qw.ln() - lp));
            }
            let log_sum = log_sum_exp(&logs);
            if log_sum == f64::NEG_INFINITY {
                // Σ p^α q^{1−α} = 0 only when α < 1 and P ⊥ Q.
                return ExtendedReal::PlusInfinity(InfinityReason::SupportViolation);
            }
            // Dividing by Σp cancels its rounding away from 1; both sums
            // round identically when p = q.
            let log_mass = log_sum_exp(&p.weights.values().map(|w| w.ln()).collect::<Vec<_>>());
            ExtendedReal::Finite((log_sum - log_mass) / (a - 1.0))
        }
    }
}

/// `D(P‖Q) = Σ p log(p/q)`.
pub fn kl<K: Ord + Clone>(p: &FiniteDistribution<K>, q: &FiniteDistribution<K>) -> ExtendedReal {
    let mut total = 0.0;
    for (k, pw) in p.iter() {
        let qw = q.weight(k);
        if qw == 0.0 {
            return ExtendedReal::PlusInfinity(InfinityReason::SupportViolation);
        }
        total += pw * (pw.ln() - qw.ln());
    }
    ExtendedReal::Finite(total)
}

/// `V(P,Q) = Σ |p − q|`.
pub fn total_variation<K: Ord + Clone>(p: &FiniteDistribution<K>, q: &FiniteDistribution<K>) -> f64 {
    cells(p, q).map(|(a, b)| (a - b).abs()).sum()
}

/// `D_α − (α/2)·V²`, which is nonnegative for `0 < α ≤ 1`.
pub fn pinsker_gap<K: Ord + Clone>(
    p: &FiniteDistribution<K>,
    q: &FiniteDistribution<K>,
    alpha: f64,
) -> Result<ExtendedReal> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidOrder(format!("Pinsker needs 0 < α ≤ 1, got {alpha}")));
    }
    let order = if alpha == 1.0 {
        AlphaOrder::One
    } else {
        AlphaOrder::interior(alpha)?
    };
    let v = total_variation(p, q);
    Ok(renyi(p, q, order).minus(alpha / 2.0 * v * v))
}

/// `|D_α(P‖Q) − α/(1−α)·D_{1−α}(Q‖P)|` for `0 < α < 1`.
///
/// `None` when either side is infinite.
pub fn skew_symmetry_residual<K: Ord + Clone>(
    p: &FiniteDistribution<K>,
    q: &FiniteDistribution<K>,
    alpha: f64,
) -> Result<Option<f64>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidOrder(format!(
            "skew symmetry needs 0 < α < 1, got {alpha}"
        )));
    }
    let lhs = renyi(p, q, AlphaOrder::interior(alpha)?);
    let rhs = renyi(q, p, AlphaOrder::interior(1.0 - alpha)?);
    Ok(match (lhs, rhs) {
        (ExtendedReal::Finite(l), ExtendedReal::Finite(r)) => Some((l - alpha / (1.0 - alpha) * r).abs()),
        _ => None,
    })
}
