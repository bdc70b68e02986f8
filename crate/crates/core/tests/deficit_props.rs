use std::f64::consts::PI;

use proptest::prelude::*;
use qdeficit::monogamy::DEFAULT_TOL;
use qdeficit::{
    deficit_report, power_scan, report_for_state, theta_grid, theta_sweep, Complex64, EigenOrder,
    LocalUnitary, LogBase, NamedState, PureState, StateSpec,
};

fn local_unitary() -> impl Strategy<Value = LocalUnitary> {
    (0.0..PI, 0.0..2.0 * PI, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(|(t, a, b, g)| {
        let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
        let e = |phi: f64| Complex64::from_polar(1.0, phi);
        LocalUnitary([[e(g) * c, -e(g + b) * s], [e(g + a) * s, e(g + a + b) * c]])
    })
}

fn pure_state() -> impl Strategy<Value = PureState> {
    prop::collection::vec(-1.0f64..1.0, 16)
        .prop_filter("non-zero", |v| v.iter().any(|x| x.abs() > 1e-3))
        .prop_map(|raw| {
            let mut amps = [Complex64::new(0.0, 0.0); 8];
            for (k, a) in amps.iter_mut().enumerate() {
                *a = Complex64::new(raw[2 * k], raw[2 * k + 1]);
            }
            PureState::new(amps).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn deficits_are_non_negative(psi in pure_state()) {
        let r = report_for_state(&psi, LogBase::Nats, EigenOrder::Descending).unwrap();
        prop_assert!(r.d_ab >= -1e-10 && r.d_ac >= -1e-10 && r.d_a_bc >= -1e-10, "{r:?}");
    }

    #[test]
    fn ordering_convention_irrelevant_for_generic_states(psi in pure_state()) {
        let d = report_for_state(&psi, LogBase::Nats, EigenOrder::Descending).unwrap();
        prop_assume!(!d.degenerate_marginal);
        let a = report_for_state(&psi, LogBase::Nats, EigenOrder::Ascending).unwrap();
        prop_assert!((d.d_ab - a.d_ab).abs() <= 1e-10);
        prop_assert!((d.d_ac - a.d_ac).abs() <= 1e-10);
        prop_assert!((d.d_a_bc - a.d_a_bc).abs() <= 1e-10);
    }

    #[test]
    fn local_unitary_invariance_theta_family(
        theta in 0.2f64..PI,
        ua in local_unitary(), ub in local_unitary(), uc in local_unitary(),
    ) {
        let psi = qdeficit::build_state(&StateSpec::Theta(theta)).unwrap();
        let base = report_for_state(&psi, LogBase::Nats, EigenOrder::Descending).unwrap();
        let moved = report_for_state(&psi.apply_local(&[ua, ub, uc]).unwrap(), LogBase::Nats, EigenOrder::Descending).unwrap();
        prop_assert!((base.d_ab - moved.d_ab).abs() <= 1e-8);
        prop_assert!((base.d_ac - moved.d_ac).abs() <= 1e-8);
        prop_assert!((base.d_a_bc - moved.d_a_bc).abs() <= 1e-8);
    }

    #[test]
    fn symmetric_family_has_equal_pair_deficits(theta in 1e-3f64..=PI) {
        let r = deficit_report(&StateSpec::Theta(theta), LogBase::Nats).unwrap();
        prop_assert!((r.d_ab - r.d_ac).abs() <= 1e-10);
    }

    #[test]
    fn scan_monotone_once_monogamous(psi in pure_state()) {
        let r = report_for_state(&psi, LogBase::Nats, EigenOrder::Descending).unwrap();
        prop_assume!(r.d_ab <= r.d_a_bc && r.d_ac <= r.d_a_bc);
        let rows = power_scan(&r, 64);
        if let Some(first) = rows.iter().position(|row| row.delta_n >= 0.0) {
            for row in &rows[first..] {
                prop_assert!(row.delta_n >= -DEFAULT_TOL, "n={} delta={}", row.n, row.delta_n);
            }
        }
    }
}

#[test]
fn named_symmetric_states_have_equal_pair_deficits() {
    for n in [NamedState::W, NamedState::WBar, NamedState::WWBar, NamedState::Ghz] {
        for base in [LogBase::Nats, LogBase::Bits] {
            let r = deficit_report(&StateSpec::Named(n), base).unwrap();
            assert!((r.d_ab - r.d_ac).abs() <= 1e-10, "{n}");
        }
    }
}

#[test]
fn wbar_mirrors_w() {
    let w = deficit_report(&StateSpec::Named(NamedState::W), LogBase::Nats).unwrap();
    let wb = deficit_report(&StateSpec::Named(NamedState::WBar), LogBase::Nats).unwrap();
    assert!((w.d_ab - wb.d_ab).abs() < 1e-12);
    assert!((w.d_a_bc - wb.d_a_bc).abs() < 1e-12);
}

#[test]
fn sweep_is_continuous() {
    let grid = theta_grid(0.02, PI, 0.01).unwrap();
    let powers: Vec<u32> = (1..=10).collect();
    let pts = theta_sweep(&grid, &powers, LogBase::Nats).unwrap();
    for pair in pts.windows(2) {
        for (a, b) in pair[0].rows.iter().zip(&pair[1].rows) {
            assert!(
                (a.delta_n - b.delta_n).abs() <= 0.05,
                "jump at θ={} n={}",
                pair[0].theta,
                a.n
            );
        }
    }
}

#[test]
fn sweep_order_matches_grid() {
    let grid = theta_grid(0.1, PI, 0.05).unwrap();
    let pts = theta_sweep(&grid, &[1], LogBase::Nats).unwrap();
    let thetas: Vec<f64> = pts.iter().map(|p| p.theta).collect();
    assert_eq!(thetas, grid);
}
