use petz::classical::{kl, renyi, skew_symmetry_residual, AlphaOrder, FiniteDistribution};
use petz::extended::ExtendedReal;
use petz::linalg::{jacobi_eigh, CMatrix};
use petz::petz::{alpha_scan, d_infty, d_one, d_zero, mu_measure, petz_trace};
use petz::random::{random_pair, random_unitary, rng, PairKind};
use petz::reduction::{build_joint, overlap_matrix};
use petz::spectral::{hs_norm_sq_diff, hs_norm_sq_diff_entrywise, matrix_power, DensityState};
use petz::{petz_renyi, petz_renyi_direct};
use proptest::prelude::*;
use rand_distr::{Distribution, StandardNormal};

/// Probability vector on `0..len` with some exact zeros.
fn distribution(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.01f64..1.0], len).prop_filter_map("all zero", |v| {
        let total: f64 = v.iter().sum();
        (total > 0.0).then(|| v.into_iter().map(|x| x / total).collect())
    })
}

fn distribution_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..=10).prop_flat_map(|n| (distribution(n), distribution(n)))
}

fn dist(v: &[f64]) -> FiniteDistribution<usize> {
    FiniteDistribution::from_slice(v).unwrap()
}

fn order(a: f64) -> AlphaOrder {
    AlphaOrder::from_value(a).unwrap()
}

fn kind() -> impl Strategy<Value = PairKind> {
    prop::sample::select(PairKind::ALL.to_vec())
}

fn state_pair() -> impl Strategy<Value = (DensityState, DensityState)> {
    (any::<u64>(), 1usize..=6, kind()).prop_map(|(seed, n, k)| random_pair(&mut rng(seed), n, k))
}

fn monotone_grid() -> Vec<AlphaOrder> {
    let mut g = vec![AlphaOrder::Zero];
    g.extend((1..10).map(|k| order(k as f64 / 10.0)));
    g.extend([
        AlphaOrder::One,
        order(1.5),
        order(2.0),
        order(4.0),
        AlphaOrder::Infinity,
    ]);
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn classical_monotone_in_order((p, q) in distribution_pair()) {
        let (p, q) = (dist(&p), dist(&q));
        let values: Vec<f64> = monotone_grid().iter().map(|&o| renyi(&p, &q, o).to_f64()).collect();
        for w in values.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-10, "{values:?}");
        }
    }

    #[test]
    fn classical_limit_at_one((p, q) in distribution_pair()) {
        let (p, q) = (dist(&p), dist(&q));
        if let ExtendedReal::Finite(k) = kl(&p, &q) {
            let near = renyi(&p, &q, order(1.0 - 1e-6)).to_f64();
            prop_assert!((near - k).abs() <= 1e-4);
        }
    }

    #[test]
    fn classical_order_zero_matches_small_alpha((p, q) in distribution_pair()) {
        let (p, q) = (dist(&p), dist(&q));
        let zero = renyi(&p, &q, AlphaOrder::Zero);
        let mass: f64 = p.support().map(|k| q.weight(k)).sum();
        match zero {
            ExtendedReal::Finite(z) => {
                let want = if q.absolutely_continuous_wrt(&p) { 0.0 } else { -mass.ln() };
                prop_assert_eq!(z, want);
                prop_assert!((renyi(&p, &q, order(1e-8)).to_f64() - z).abs() <= 1e-4);
            }
            _ => prop_assert_eq!(mass, 0.0),
        }
    }

    #[test]
    fn classical_sandwich((p, q) in distribution_pair(), a in 0.01f64..0.99, b in 0.01f64..0.99) {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let (p, q) = (dist(&p), dist(&q));
        let (da, db) = (renyi(&p, &q, order(a)), renyi(&p, &q, order(b)));
        if let (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) = (da, db) {
            prop_assert!((a / b) * ((1.0 - b) / (1.0 - a)) * y <= x + 1e-10);
            prop_assert!(x <= y + 1e-10);
        } else {
            prop_assert!(!da.is_finite() && !db.is_finite());
        }
    }

    #[test]
    fn classical_support_equivalences((p, q) in distribution_pair()) {
        let (p, q) = (dist(&p), dist(&q));
        let d0 = renyi(&p, &q, AlphaOrder::Zero);
        prop_assert_eq!(q.absolutely_continuous_wrt(&p), d0 == ExtendedReal::Finite(0.0));
        for a in [0.0, 0.3, 0.9] {
            prop_assert_eq!(p.mutually_singular(&q), renyi(&p, &q, order(a)).is_plus_infinity());
        }
    }

    #[test]
    fn classical_skew_symmetry((p, q) in distribution_pair(), a in 0.05f64..0.95) {
        let (p, q) = (dist(&p), dist(&q));
        if let Some(r) = skew_symmetry_residual(&p, &q, a).unwrap() {
            prop_assert!(r <= 1e-9);
        }
    }

    #[test]
    fn classical_concavity((p, q) in distribution_pair()) {
        let s = DensityState::diagonal(&p).unwrap();
        let t = DensityState::diagonal(&q).unwrap();
        let grid: Vec<AlphaOrder> = (0..=16).map(|k| order(k as f64 / 4.0)).collect();
        let curve = alpha_scan(&s, &t, &grid).unwrap();
        prop_assert!(curve.concavity_violations(1e-10).is_empty());
    }

    /// Densities w.r.t. a rescaled counting measure give the same divergence.
    #[test]
    fn dominating_measure_independence((p, q) in distribution_pair(), scale in prop::collection::vec(0.1f64..10.0, 10)) {
        let n = p.len();
        let (fp, fq): (Vec<f64>, Vec<f64>) = (0..n).map(|i| (p[i] / scale[i], q[i] / scale[i])).unzip();
        for a in [0.3, 0.7, 2.0] {
            let direct = renyi(&dist(&p), &dist(&q), order(a));
            let sum: f64 = (0..n)
                .filter(|&i| fp[i] > 0.0 && fq[i] > 0.0)
                .map(|i| scale[i] * fp[i].powf(a) * fq[i].powf(1.0 - a))
                .sum();
            if let ExtendedReal::Finite(d) = direct {
                prop_assert!((d - sum.ln() / (a - 1.0)).abs() <= 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigendecomposition_round_trip(seed in any::<u64>(), n in 1usize..=16) {
        let mut r = rng(seed);
        let g = CMatrix::from_fn(n, n, |_, _| {
            num_complex::Complex64::new(StandardNormal.sample(&mut r), StandardNormal.sample(&mut r))
        });
        let h = CMatrix::from_fn(n, n, |i, j| (g[(i, j)] + g[(j, i)].conj()) * 0.5);
        let (vals, vecs) = jacobi_eigh(&h);
        prop_assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(vecs.gram_residual() <= 1e-12);
        let back = CMatrix::spectral_sum(&vecs, &vals);
        prop_assert!(back.sub(&h).frobenius_norm() <= 1e-10 * h.frobenius_norm());
    }

    #[test]
    fn hs_formulas_agree((rho, sigma) in state_pair()) {
        let a = hs_norm_sq_diff(&rho, &sigma).unwrap();
        let b = hs_norm_sq_diff_entrywise(&rho, &sigma).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn matrix_powers_compose(seed in any::<u64>(), n in 1usize..=6, rank in 1usize..=6) {
        let s = petz::random::random_density(&mut rng(seed), n, rank);
        for a in [0.3, 0.5, 1.0, 2.0] {
            for b in [0.3, 0.5, 1.0, 2.0] {
                let lhs = matrix_power(&s, a, false).unwrap().matrix().matmul(matrix_power(&s, b, false).unwrap().matrix());
                let rhs = matrix_power(&s, a + b, false).unwrap();
                prop_assert!(lhs.sub(rhs.matrix()).max_abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn overlaps_are_doubly_stochastic((rho, sigma) in state_pair()) {
        prop_assert!(overlap_matrix(&rho, &sigma).unwrap().stochastic_residual() <= 1e-12);
    }

    #[test]
    fn reduction_matches_direct_oracle((rho, sigma) in state_pair(), a in prop::sample::select(vec![0.25, 0.5, 0.75, 1.5, 2.0, 3.0])) {
        let reduced = petz_renyi(&rho, &sigma, order(a)).unwrap();
        let direct = petz_renyi_direct(&rho, &sigma, a).unwrap();
        match (reduced, direct) {
            (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => prop_assert!((x - y).abs() <= 1e-9),
            (x, y) => prop_assert!(x.is_plus_infinity() && y.is_plus_infinity(), "{x} vs {y}"),
        }
    }

    #[test]
    fn mu_measure_integrates_to_trace((rho, sigma) in state_pair(), a in prop::sample::select(vec![0.25, 0.5, 0.75, 1.5, 2.0])) {
        match mu_measure(&rho, &sigma, a) {
            Ok(mu) => {
                prop_assert!(mu.atoms.iter().all(|&(_, m)| m >= 0.0));
                let trace = petz_trace(&rho, &sigma, a).unwrap();
                prop_assert!((mu.first_moment() - trace).abs() <= 1e-10 * trace.max(1.0));
            }
            Err(e) => prop_assert!(a > 1.0, "{e}"),
        }
    }

    #[test]
    fn unitary_invariance((rho, sigma) in state_pair(), seed in any::<u64>()) {
        let w = random_unitary(&mut rng(seed), rho.dim());
        let (rw, sw) = (rho.conjugated(&w).unwrap(), sigma.conjugated(&w).unwrap());
        for o in [AlphaOrder::Zero, order(0.5), AlphaOrder::One, order(2.0), AlphaOrder::Infinity] {
            let (x, y) = (petz_renyi(&rho, &sigma, o).unwrap(), petz_renyi(&rw, &sw, o).unwrap());
            match (x, y) {
                (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => prop_assert!((x - y).abs() <= 1e-9),
                _ => prop_assert_eq!(x.is_finite(), y.is_finite()),
            }
        }
    }

    #[test]
    fn trace_path_of_d_one_agrees((rho, sigma) in state_pair()) {
        let one = d_one(&rho, &sigma).unwrap();
        match petz::petz::von_neumann_trace(&rho, &sigma).unwrap() {
            Some(t) => prop_assert!((one.to_f64() - t).abs() <= 1e-9),
            None => prop_assert!(one.is_plus_infinity()),
        }
    }

    #[test]
    fn order_zero_and_infinity_bound_the_family((rho, sigma) in state_pair()) {
        let lo = d_zero(&rho, &sigma).unwrap().to_f64();
        let hi = d_infty(&rho, &sigma).unwrap().to_f64();
        for a in [0.2, 0.8, 1.7, 5.0] {
            let v = petz_renyi(&rho, &sigma, order(a)).unwrap().to_f64();
            prop_assert!(lo <= v + 1e-10 && v <= hi + 1e-10);
        }
    }

    #[test]
    fn joint_marginals_recover_spectra((rho, sigma) in state_pair()) {
        let joint = build_joint(&rho, &sigma).unwrap();
        let n = rho.dim();
        let mut row = vec![0.0; n];
        let mut col = vec![0.0; n];
        for ((i, j), p, q) in joint.iter() {
            row[i] += p;
            col[j] += q;
        }
        for i in 0..n {
            prop_assert!((row[i] - rho.eigenvalues()[i]).abs() <= 1e-12);
            prop_assert!((col[i] - sigma.eigenvalues()[i]).abs() <= 1e-12);
        }
    }
}
