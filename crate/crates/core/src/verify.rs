//! Seeded property suite over random state pairs.
//!
//! Every check compares independently computed quantities; a failing check
//! records enough of the pair (dimension, spectra, overlaps) to rebuild it.

use crate::classical::{pinsker_gap, renyi, total_variation, AlphaOrder};
use crate::error::Result;
use crate::extended::ExtendedReal;
use crate::petz::{alpha_scan, d_zero, petz_renyi, petz_renyi_direct, quantum_pinsker_gap};
use crate::random::{random_pair, random_unitary, remix_degenerate, rng, PairKind};
use crate::reduction::{
    build_joint, overlap_matrix, povm_check, support_included, support_mass, supports_orthogonal,
    total_variation_spectral,
};
use crate::spectral::{hs_norm_sq_diff, hs_norm_sq_diff_entrywise, DensityState};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Tolerance for identities between two computed values.
pub const EQ_TOL: f64 = 1e-9;
/// Slack for one-sided inequalities.
pub const INEQ_TOL: f64 = 1e-10;

const ORACLE_ORDERS: [f64; 6] = [0.25, 0.5, 0.75, 1.5, 2.0, 3.0];
const SKEW_ORDERS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
const SANDWICH_ORDERS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const PINSKER_ORDERS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// Properties in report order.
pub const PROPERTIES: [&str; 21] = [
    "reduction-identity",
    "positivity",
    "zero-iff-equal",
    "d0-zero-iff-support",
    "skew-symmetry",
    "sandwich",
    "monotonicity",
    "concavity",
    "vanishing-small-orders",
    "orthogonal-support-equivalence",
    "quantum-pinsker",
    "classical-pinsker",
    "hs-le-tv",
    "tv-two-paths",
    "hs-two-paths",
    "p-eq-q-iff-equal",
    "support-iff-ac",
    "unitary-invariance",
    "d0-classical",
    "povm",
    "basis-invariance",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub trials: usize,
    /// Dimensions are drawn from `1..=max_dim`.
    pub max_dim: usize,
    pub seed: u64,
    /// Perturbs the reduction path by `1e-6`; self-test of the harness.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub property: &'static str,
    pub trial: usize,
    pub kind: PairKind,
    pub dim: usize,
    pub detail: String,
    pub rho_spectrum: Vec<f64>,
    pub sigma_spectrum: Vec<f64>,
    /// Row-major `|⟨u_i|v_j⟩|²`.
    pub overlaps: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    /// Checks performed per property.
    pub checks: BTreeMap<&'static str, usize>,
    pub violations: Vec<Violation>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation_count(&self, property: &str) -> usize {
        self.violations.iter().filter(|v| v.property == property).count()
    }

    /// Smallest-dimension violation of each failing property.
    pub fn reproductions(&self) -> Vec<&Violation> {
        PROPERTIES
            .iter()
            .filter_map(|p| {
                self.violations
                    .iter()
                    .filter(|v| v.property == *p)
                    .min_by_key(|v| (v.dim, v.trial))
            })
            .collect()
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.17e}")).collect();
    format!("[{}]", items.join(", "))
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "property suite: seed={} trials={} max-dim={}",
            c.seed, c.trials, c.max_dim
        )?;
        for p in PROPERTIES {
            let n = self.checks.get(p).copied().unwrap_or(0);
            writeln!(f, "  {p:<20} checks={n:<7} violations={}", self.violation_count(p))?;
        }
        for v in self.reproductions() {
            writeln!(
                f,
                "violation {}: trial {} kind {:?} dim {}: {}",
                v.property, v.trial, v.kind, v.dim, v.detail
            )?;
            writeln!(f, "  rho spectrum:   {}", fmt_vec(&v.rho_spectrum))?;
            writeln!(f, "  sigma spectrum: {}", fmt_vec(&v.sigma_spectrum))?;
            writeln!(f, "  overlaps:       {}", fmt_vec(&v.overlaps))?;
        }
        if self.passed() {
            write!(f, "result: PASS")
        } else {
            write!(f, "result: FAIL ({} violations)", self.violations.len())
        }
    }
}

struct Trial<'a> {
    index: usize,
    kind: PairKind,
    rho: &'a DensityState,
    sigma: &'a DensityState,
    report: &'a mut SuiteReport,
}

impl Trial<'_> {
    fn check(&mut self, property: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        *self.report.checks.entry(property).or_insert(0) += 1;
        if ok {
            return;
        }
        let n = self.rho.dim();
        let overlaps = match overlap_matrix(self.rho, self.sigma) {
            Ok(w) => (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| w.get(i, j))
                .collect(),
            Err(_) => Vec::new(),
        };
        self.report.violations.push(Violation {
            property,
            trial: self.index,
            kind: self.kind,
            dim: n,
            detail: detail(),
            rho_spectrum: self.rho.eigenvalues().to_vec(),
            sigma_spectrum: self.sigma.eigenvalues().to_vec(),
            overlaps,
        });
    }
}

/// Both infinite with the same sign, or both finite within `tol`.
fn agree(a: ExtendedReal, b: ExtendedReal, tol: f64) -> bool {
    match (a, b) {
        (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => (x - y).abs() <= tol,
        (ExtendedReal::PlusInfinity(_), ExtendedReal::PlusInfinity(_)) => true,
        (ExtendedReal::MinusInfinity, ExtendedReal::MinusInfinity) => true,
        _ => false,
    }
}

fn interior(a: f64) -> AlphaOrder {
    AlphaOrder::interior(a).expect("suite orders are interior")
}

fn monotone_grid() -> Vec<AlphaOrder> {
    let mut g: Vec<AlphaOrder> = vec![AlphaOrder::Zero];
    g.extend((1..10).map(|k| interior(k as f64 / 10.0)));
    g.extend([
        AlphaOrder::One,
        interior(1.5),
        interior(2.0),
        interior(4.0),
        AlphaOrder::Infinity,
    ]);
    g
}

fn uniform_grid() -> Vec<AlphaOrder> {
    (0..=12)
        .map(|k| AlphaOrder::from_value(k as f64 / 4.0).expect("valid order"))
        .collect()
}

fn check_pair(t: &mut Trial<'_>, rng: &mut impl Rng, inject_fault: bool) -> Result<()> {
    let (rho, sigma) = (t.rho, t.sigma);
    let joint = build_joint(rho, sigma)?;
    let (p, q) = (joint.p(), joint.q());
    let hs = hs_norm_sq_diff(rho, sigma)?;
    let equal = hs.sqrt() <= 1e-8;

    for a in ORACLE_ORDERS {
        let mut reduced = petz_renyi(rho, sigma, interior(a))?;
        if inject_fault {
            if let ExtendedReal::Finite(v) = reduced {
                reduced = ExtendedReal::Finite(v + 1e-6);
            }
        }
        let direct = petz_renyi_direct(rho, sigma, a)?;
        t.check("reduction-identity", agree(reduced, direct, EQ_TOL), || {
            format!("alpha {a}: reduction {reduced} vs direct {direct}")
        });
    }

    let curve = alpha_scan(rho, sigma, &monotone_grid())?;
    for (order, value) in curve.grid.iter().zip(&curve.values) {
        t.check("positivity", value.to_f64() >= -INEQ_TOL, || {
            format!("D_{order} = {value}")
        });
    }
    for (order, value) in curve.grid.iter().zip(&curve.values) {
        if *order == AlphaOrder::Zero {
            continue;
        }
        let zero = value.is_finite() && value.to_f64() <= EQ_TOL;
        t.check("zero-iff-equal", zero == equal, || {
            format!("D_{order} = {value}, ‖ρ−σ‖₂² = {hs:e}")
        });
    }
    let d0 = d_zero(rho, sigma)?;
    let sigma_in_rho = support_included(sigma, rho, 1e-8)?;
    t.check(
        "d0-zero-iff-support",
        (d0.is_finite() && d0.to_f64() <= EQ_TOL) == sigma_in_rho,
        || format!("D_0 = {d0}, supp σ ⊆ supp ρ: {sigma_in_rho}"),
    );
    let bad = curve.monotonicity_violations(INEQ_TOL);
    t.check("monotonicity", bad.is_empty(), || {
        format!("decreasing after grid indices {bad:?}")
    });
    let concave = alpha_scan(rho, sigma, &uniform_grid())?;
    let bad = concave.concavity_violations(INEQ_TOL);
    t.check("concavity", bad.is_empty(), || {
        format!("midpoint fails at grid indices {bad:?}")
    });

    for a in SKEW_ORDERS {
        let lhs = petz_renyi(rho, sigma, interior(a))?;
        let rhs = petz_renyi(sigma, rho, interior(1.0 - a))?.scale(a / (1.0 - a));
        t.check("skew-symmetry", agree(lhs, rhs, EQ_TOL), || {
            format!("alpha {a}: {lhs} vs {rhs}")
        });
    }

    for (k, &a) in SANDWICH_ORDERS.iter().enumerate() {
        for &b in &SANDWICH_ORDERS[k..] {
            let da = petz_renyi(rho, sigma, interior(a))?;
            let db = petz_renyi(rho, sigma, interior(b))?;
            let ok = match (da, db) {
                (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => {
                    let lower = (a / b) * ((1.0 - b) / (1.0 - a)) * y;
                    lower <= x + INEQ_TOL && x <= y + INEQ_TOL
                }
                (x, y) => !x.is_finite() && !y.is_finite(),
            };
            t.check("sandwich", ok, || {
                format!("alpha {a}, beta {b}: D_α = {da}, D_β = {db}")
            });
        }
    }

    let n = rho.dim() as f64;
    let mass = support_mass(rho, sigma)?;
    let small = petz_renyi(rho, sigma, interior(1e-8))?;
    let vanishing = [
        sigma_in_rho,
        (mass - 1.0).abs() <= EQ_TOL,
        d0.is_finite() && d0.to_f64() <= EQ_TOL,
        small.is_finite() && small.to_f64() <= 1e-6,
    ];
    t.check(
        "vanishing-small-orders",
        vanishing.iter().all(|&c| c == vanishing[0]),
        || format!("conditions {vanishing:?}"),
    );
    let some = [AlphaOrder::Zero, interior(0.5)]
        .iter()
        .map(|&o| petz_renyi(rho, sigma, o))
        .collect::<Result<Vec<_>>>()?;
    let all = [
        AlphaOrder::Zero,
        interior(0.5),
        AlphaOrder::One,
        interior(2.0),
        AlphaOrder::Infinity,
    ]
    .iter()
    .map(|&o| petz_renyi(rho, sigma, o))
    .collect::<Result<Vec<_>>>()?;
    let orthogonal = [
        supports_orthogonal(rho, sigma, 1e-8)?,
        mass <= 1e-14 * n * n,
        some.iter().any(|v| v.is_plus_infinity()),
        all.iter().all(|v| v.is_plus_infinity()),
    ];
    t.check(
        "orthogonal-support-equivalence",
        orthogonal.iter().all(|&c| c == orthogonal[0]),
        || format!("conditions {orthogonal:?}"),
    );

    for a in PINSKER_ORDERS {
        let g = quantum_pinsker_gap(rho, sigma, a)?;
        t.check("quantum-pinsker", g.to_f64() >= -INEQ_TOL, || {
            format!("alpha {a}: gap {g}")
        });
        let g = pinsker_gap(&p, &q, a)?;
        t.check("classical-pinsker", g.to_f64() >= -INEQ_TOL, || {
            format!("alpha {a}: gap {g}")
        });
    }

    let tv = total_variation(&p, &q);
    t.check("hs-le-tv", hs <= tv + 1e-12, || {
        format!("‖ρ−σ‖₂² = {hs:e} > V(P,Q) = {tv:e}")
    });
    let tv_spec = total_variation_spectral(rho, sigma)?;
    t.check("tv-two-paths", (tv - tv_spec).abs() <= INEQ_TOL, || {
        format!("{tv:e} vs {tv_spec:e}")
    });
    let hs_entry = hs_norm_sq_diff_entrywise(rho, sigma)?;
    t.check("hs-two-paths", (hs - hs_entry).abs() <= INEQ_TOL, || {
        format!("{hs:e} vs {hs_entry:e}")
    });

    let cellwise = joint.marginals_equal(1e-10);
    t.check("p-eq-q-iff-equal", cellwise == equal, || {
        format!("P = Q: {cellwise}, ‖ρ−σ‖₂² = {hs:e}")
    });
    let rho_in_sigma = support_included(rho, sigma, 1e-8)?;
    let ac = joint.absolutely_continuous();
    t.check("support-iff-ac", rho_in_sigma == ac, || {
        format!("supp ρ ⊆ supp σ: {rho_in_sigma}, P ≪ Q: {ac}")
    });

    let w = random_unitary(rng, rho.dim());
    let (rho_w, sigma_w) = (rho.conjugated(&w)?, sigma.conjugated(&w)?);
    for order in [interior(0.5), AlphaOrder::One, interior(2.0)] {
        let a = petz_renyi(rho, sigma, order)?;
        let b = petz_renyi(&rho_w, &sigma_w, order)?;
        t.check("unitary-invariance", agree(a, b, EQ_TOL), || {
            format!("D_{order}: {a} vs {b}")
        });
    }

    let classical0 = renyi(&p, &q, AlphaOrder::Zero);
    t.check("d0-classical", agree(d0, classical0, INEQ_TOL), || {
        format!("{d0} vs {classical0}")
    });

    let povm = povm_check(rho, sigma)?;
    t.check("povm", povm.max_residual() <= EQ_TOL, || {
        format!("residual {:e}", povm.max_residual())
    });

    let remixed = remix_degenerate(rng, sigma);
    for order in uniform_grid() {
        let a = petz_renyi(rho, sigma, order)?;
        let b = petz_renyi(rho, &remixed, order)?;
        t.check("basis-invariance", agree(a, b, EQ_TOL), || {
            format!("D_{order}: {a} vs {b}")
        });
    }
    Ok(())
}

/// Runs every property on `trials` seeded pairs, cycling through the pair kinds.
pub fn run_suite(config: SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        config,
        checks: BTreeMap::new(),
        violations: Vec::new(),
    };
    let mut master = rng(config.seed);
    let max_dim = config.max_dim.max(1);
    for index in 0..config.trials {
        let mut r = rng(master.gen());
        let dim = r.gen_range(1..=max_dim);
        let kind = PairKind::ALL[index % PairKind::ALL.len()];
        let (rho, sigma) = random_pair(&mut r, dim, kind);
        let mut trial = Trial {
            index,
            kind,
            rho: &rho,
            sigma: &sigma,
            report: &mut report,
        };
        check_pair(&mut trial, &mut r, config.inject_fault)?;
    }
    Ok(report)
}
