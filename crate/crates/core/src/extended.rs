//! Values on the extended real line, with a reason attached to `+∞`.

use std::cmp::Ordering;
use std::fmt;

/// Why a divergence evaluated to `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfinityReason {
    /// A support mismatch: some cell has `p > 0` and `q = 0`, or the
    /// overlap sum vanishes.
    SupportViolation,
    /// A convergent-looking formula whose series provably diverges.
    DivergentSum,
    /// The operator product is not defined on the relevant vectors.
    DomainViolation,
}

impl InfinityReason {
    pub fn tag(self) -> &'static str {
        match self {
            InfinityReason::SupportViolation => "support",
            InfinityReason::DivergentSum => "divergent",
            InfinityReason::DomainViolation => "domain",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "support" => Some(InfinityReason::SupportViolation),
            "divergent" => Some(InfinityReason::DivergentSum),
            "domain" => Some(InfinityReason::DomainViolation),
            _ => None,
        }
    }
}

/// Logarithm base used when reporting divergences.
///
/// All computations run in nats; the base is applied on output only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    E,
    Two,
}

impl LogBase {
    pub fn scale(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "e" | "E" | "nat" | "nats" => Ok(LogBase::E),
            "2" | "bits" => Ok(LogBase::Two),
            other => Err(format!("unknown log base '{other}' (expected 'e' or '2')")),
        }
    }
}

/// A value in `[-∞, +∞]`. Finite values are never NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    PlusInfinity(InfinityReason),
    MinusInfinity,
}

impl ExtendedReal {
    /// Wraps a float, mapping `±inf` to the infinite variants.
    ///
    /// # Panics
    /// On NaN.
    pub fn from_f64(x: f64, reason: InfinityReason) -> Self {
        assert!(!x.is_nan(), "ExtendedReal cannot hold NaN");
        if x == f64::INFINITY {
            ExtendedReal::PlusInfinity(reason)
        } else if x == f64::NEG_INFINITY {
            ExtendedReal::MinusInfinity
        } else {
            ExtendedReal::Finite(x)
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn is_plus_infinity(&self) -> bool {
        matches!(self, ExtendedReal::PlusInfinity(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            ExtendedReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn reason(&self) -> Option<InfinityReason> {
        match *self {
            ExtendedReal::PlusInfinity(r) => Some(r),
            _ => None,
        }
    }

    /// Lossy view as an IEEE double.
    pub fn to_f64(&self) -> f64 {
        match *self {
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PlusInfinity(_) => f64::INFINITY,
            ExtendedReal::MinusInfinity => f64::NEG_INFINITY,
        }
    }

    pub fn in_base(self, base: LogBase) -> Self {
        match self {
            ExtendedReal::Finite(v) => ExtendedReal::Finite(base.scale(v)),
            other => other,
        }
    }

    /// Multiplication by a finite scalar with `0·∞ = 0`.
    pub fn scale(self, k: f64) -> Self {
        assert!(k.is_finite(), "scale factor must be finite");
        match self {
            ExtendedReal::Finite(v) => ExtendedReal::Finite(k * v),
            _ if k == 0.0 => ExtendedReal::Finite(0.0),
            ExtendedReal::PlusInfinity(r) if k > 0.0 => ExtendedReal::PlusInfinity(r),
            ExtendedReal::PlusInfinity(_) => ExtendedReal::MinusInfinity,
            ExtendedReal::MinusInfinity if k > 0.0 => ExtendedReal::MinusInfinity,
            ExtendedReal::MinusInfinity => ExtendedReal::PlusInfinity(InfinityReason::DivergentSum),
        }
    }

    /// Subtracts a finite amount.
    pub fn minus(self, k: f64) -> Self {
        match self {
            ExtendedReal::Finite(v) => ExtendedReal::Finite(v - k),
            other => other,
        }
    }

    /// Ordering that ignores reason tags.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.to_f64().total_cmp(&other.to_f64())
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        ExtendedReal::from_f64(x, InfinityReason::DivergentSum)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PlusInfinity(r) => write!(f, "+inf:{}", r.tag()),
            ExtendedReal::MinusInfinity => write!(f, "-inf"),
        }
    }
}
