use asymtunnel::dynamics::{self, closed_form, SiteState};
use asymtunnel::model::{hamiltonian_2x2, ModelParams, Site};
use asymtunnel::semiclassical::{self, RatePopulations};
use asymtunnel::spectral::{collinearity, eigensystem_analytic, eigensystem_numeric, metric_operator};
use asymtunnel::sweep::{parse_grid_csv, grid, BetaScale, GridSpec, Quantity};
use asymtunnel::{linalg, Complex64, ComplexMatrix};
use proptest::prelude::*;

fn coupling() -> impl Strategy<Value = f64> {
    prop_oneof![0.1f64..5.0, -5.0f64..-0.1]
}

fn asymmetry() -> impl Strategy<Value = f64> {
    -0.95f64..0.95
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn analytic_and_numeric_spectra_agree(g in coupling(), alpha in asymmetry()) {
        let p = ModelParams::new(g, alpha).unwrap();
        let h = hamiltonian_2x2(&p);
        let ana = eigensystem_analytic(&p);
        let num = eigensystem_numeric(&h).unwrap();
        for k in 0..2 {
            prop_assert!((ana.eigenvalues[k] - num.eigenvalues[k]).norm() < 1e-12 * g.abs().max(1.0));
            prop_assert!((collinearity(&ana.right_vectors[k], &num.right_vectors[k]) - 1.0).abs() < 1e-10);
            prop_assert!((collinearity(&ana.left_vectors[k], &num.left_vectors[k]) - 1.0).abs() < 1e-10);
        }
        for sys in [&ana, &num] {
            prop_assert!(sys.biorthogonality_residual() < 1e-12);
            prop_assert!(sys.completeness_residual() < 1e-12);
            prop_assert!(metric_operator(sys).pseudo_hermiticity_residual(&h) < 1e-12 * g.abs().max(1.0));
        }
        let eta = metric_operator(&ana);
        let want = ComplexMatrix::diagonal(&[Complex64::new(p.beta(), 0.0), Complex64::new(1.0, 0.0)]);
        prop_assert!(eta.matrix.sub(&want).max_abs() < 1e-12 * p.beta().max(1.0));
    }

    #[test]
    fn hermitian_limit_left_is_adjoint_of_right(g in coupling()) {
        let sys = eigensystem_analytic(&ModelParams::new(g, 0.0).unwrap());
        for (r, l) in sys.right_vectors.iter().zip(&sys.left_vectors) {
            for (x, y) in r.iter().zip(l) {
                prop_assert!((x.conj() - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn normalized_probabilities_conserve(g in coupling(), alpha in asymmetry(), t in 0.0f64..30.0) {
        let p = ModelParams::new(g, alpha).unwrap();
        let a = SiteState::localized(Site::A);
        let b = SiteState::localized(Site::B);
        let pab = dynamics::probability(&a, &b, &p, t, true).unwrap();
        let paa = dynamics::probability(&a, &a, &p, t, true).unwrap();
        let pba = dynamics::probability(&b, &a, &p, t, true).unwrap();
        let pbb = dynamics::probability(&b, &b, &p, t, true).unwrap();
        prop_assert!((pab + paa - 1.0).abs() < 1e-12);
        prop_assert!((pba + pbb - 1.0).abs() < 1e-12);
        prop_assert!((pab - closed_form::prob_ab(&p, t)).abs() < 1e-12);
        prop_assert!((pba - closed_form::prob_ba(&p, t)).abs() < 1e-12);
        let na = dynamics::occupation(&a, Site::A, &p, t).unwrap();
        prop_assert!((na - paa).abs() < 1e-12);
    }

    #[test]
    fn probabilities_are_periodic(alpha in asymmetry(), t in 0.0f64..10.0) {
        let p = ModelParams::new(1.0, alpha).unwrap();
        let period = p.probability_period();
        for f in [closed_form::prob_ab, closed_form::prob_ba, closed_form::prob_aa, closed_form::ratio] {
            prop_assert!((f(&p, t) - f(&p, t + period)).abs() < 1e-9);
        }
    }

    #[test]
    fn mirror_swaps_directions(alpha in asymmetry(), t in 0.0f64..10.0) {
        let p = ModelParams::new(1.0, alpha).unwrap();
        let m = p.mirrored();
        prop_assert!((closed_form::prob_ab(&p, t) - closed_form::prob_ba(&m, t)).abs() < 1e-12);
        prop_assert!((closed_form::prob_ba(&p, t) - closed_form::prob_ab(&m, t)).abs() < 1e-12);
    }

    #[test]
    fn rate_rhs_is_antisymmetric(alpha in asymmetry(), n_a in 0.0f64..2.0, n_b in 0.0f64..2.0, tau in 0.0f64..50.0) {
        let p = ModelParams::new(1.0, alpha).unwrap();
        let (da, db) = semiclassical::rate_rhs(&RatePopulations { n_a, n_b, tau }, &p, tau);
        prop_assert_eq!(da + db, 0.0);
    }

    #[test]
    fn propagators_agree(g in coupling(), alpha in asymmetry(), t in -5.0f64..20.0) {
        let p = ModelParams::new(g, alpha).unwrap();
        let exact = linalg::expm(&hamiltonian_2x2(&p).scale(Complex64::new(0.0, -t))).unwrap();
        let spectral = eigensystem_analytic(&p).propagator(t);
        prop_assert!(exact.sub(&spectral).max_abs() < 1e-9 * exact.max_abs().max(1.0));
    }

    #[test]
    fn grid_csv_roundtrip_is_lossless(tau_max in 0.5f64..20.0, lo in 0.05f64..1.0, span in 0.1f64..10.0, log in any::<bool>()) {
        let spec = GridSpec {
            tau_min: 0.0, tau_max, tau_points: 6,
            beta_min: lo, beta_max: lo + span, beta_points: 4,
            beta_scale: if log { BetaScale::Log } else { BetaScale::Linear },
        };
        let res = grid(&spec, Quantity::ProbBA).unwrap();
        let table = parse_grid_csv(&res.to_csv()).unwrap();
        prop_assert_eq!(table.values, res.values);
        prop_assert_eq!(table.beta, spec.beta_nodes());
    }
}

#[test]
fn phase_time_balance() {
    let fraction_high = |beta: f64| {
        let p = ModelParams::from_beta(1.0, beta).unwrap();
        let n = 20_000;
        let period = p.probability_period();
        (0..n)
            .filter(|&k| closed_form::prob_ab(&p, (k as f64 + 0.5) / n as f64 * period) > 0.5)
            .count() as f64
            / n as f64
    };
    assert!(fraction_high(4.0) > 0.5);
    assert!(fraction_high(0.25) < 0.5);
    assert!((fraction_high(1.0) - 0.5).abs() < 1e-3);
}

#[test]
fn unnormalized_norm_is_not_conserved() {
    let p = ModelParams::from_beta(1.0, 4.0).unwrap();
    let a = SiteState::localized(Site::A);
    let b = SiteState::localized(Site::B);
    let t = std::f64::consts::FRAC_PI_4 / p.omega();
    let sum = dynamics::probability(&a, &a, &p, t, false).unwrap() + dynamics::probability(&a, &b, &p, t, false).unwrap();
    assert!((sum - closed_form::norm_a(&p, t)).abs() < 1e-12);
    assert!((sum - 2.5).abs() < 1e-12);
}

#[test]
fn populations_stay_in_range() {
    for beta in [0.25, 0.5, 2.0, 4.0] {
        let p = ModelParams::from_beta(1.0, beta).unwrap();
        let init = RatePopulations::new(0.3, 0.7, 0.0).unwrap();
        let traj = semiclassical::integrate(&init, &p, 50.0, 0.005).unwrap();
        for s in &traj.samples {
            assert!(s.n_a >= -1e-9 && s.n_a <= 1.0 + 1e-9);
            assert!((s.total() - 1.0).abs() < 1e-9);
        }
    }
}
