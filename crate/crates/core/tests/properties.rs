use bmc_core::analytic::GaussianChannelState;
use bmc_core::fock::{
    coherent_state, displacement_operator, fidelity_with_coherent, thermal_required_dim,
    thermal_state, von_neumann_entropy, TRACE_TOL,
};
use bmc_core::{
    average_fidelity, beta_t, channel_capacity, f_factor, g_entropy, to_density_matrix,
    ChannelParams, Complex64,
};
use proptest::prelude::*;

fn complex(max: f64) -> impl Strategy<Value = Complex64> {
    (-max..max, -max..max).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn constructors_yield_valid_states(eta in complex(1.5), n_th in 0.0f64..2.0) {
        coherent_state(eta, 40).unwrap().projector().validate(TRACE_TOL).unwrap();
        let dim = thermal_required_dim(n_th, 1e-9).max(40);
        thermal_state(n_th, dim).unwrap().validate(TRACE_TOL).unwrap();
        let s = GaussianChannelState::new(eta, n_th).unwrap();
        to_density_matrix(&s, s.suggested_dim()).unwrap().validate(TRACE_TOL).unwrap();
    }

    #[test]
    fn entropy_invariant_under_displacement(alpha in complex(1.0), n_th in 0.0f64..1.0) {
        let dim = 60;
        let th = thermal_state(n_th, dim).unwrap();
        let d = displacement_operator(alpha, dim).unwrap();
        let displaced = th.conjugate_by(&d).unwrap();
        let gap = (von_neumann_entropy(&displaced).unwrap() - von_neumann_entropy(&th).unwrap()).abs();
        prop_assert!(gap <= 1e-7, "gap {gap:.3e}");
    }

    #[test]
    fn thermal_entropy_is_g(x in 0.0f64..5.0) {
        let dim = thermal_required_dim(x, 1e-12).max(60);
        let s = von_neumann_entropy(&thermal_state(x, dim).unwrap()).unwrap();
        prop_assert!((s - g_entropy(x).unwrap()).abs() <= 1e-8);
    }

    #[test]
    fn matched_displacement_fidelity(eta in complex(1.2), n_th in 0.0f64..1.0) {
        let s = GaussianChannelState::new(eta, n_th).unwrap();
        let rho = to_density_matrix(&s, s.suggested_dim().max(60)).unwrap();
        prop_assert!((fidelity_with_coherent(&rho, eta) - 1.0 / (1.0 + n_th)).abs() <= 1e-8);
    }

    #[test]
    fn coefficient_monotonicity(gamma in 0.05f64..1.0, beta in 0.0f64..0.2, t1 in 0.0f64..50.0, dt in 0.0f64..10.0) {
        let p = ChannelParams::new(gamma, beta, 1.0).unwrap();
        let t2 = t1 + dt;
        prop_assert!(beta_t(&p, t2).unwrap() >= beta_t(&p, t1).unwrap());
        prop_assert!(f_factor(&p, t2).unwrap() <= f_factor(&p, t1).unwrap());
        let b = beta_t(&p, t1).unwrap();
        prop_assert!(b >= 0.0 && b <= beta / gamma);
    }

    #[test]
    fn capacity_monotone_in_signal(
        gamma in 0.05f64..0.5, beta in 0.0f64..0.1, t in 0.01f64..20.0, n1 in 0.0f64..20.0, dn in 0.01f64..5.0
    ) {
        let lo = ChannelParams::new(gamma, beta, n1).unwrap();
        let hi = ChannelParams::new(gamma, beta, n1 + dn).unwrap();
        prop_assert!(channel_capacity(&hi, t).unwrap() > channel_capacity(&lo, t).unwrap());
        prop_assert!(average_fidelity(&hi, t).unwrap() < average_fidelity(&lo, t).unwrap());
        prop_assert!(channel_capacity(&lo, t).unwrap() >= 0.0);
        let f = average_fidelity(&lo, t).unwrap();
        prop_assert!(f > 0.0 && f <= 1.0);
    }

    #[test]
    fn capacity_decreasing_in_time(gamma in 0.05f64..0.5, beta in 0.0f64..0.1, n in 0.1f64..10.0, t in 0.01f64..20.0, dt in 0.01f64..5.0) {
        let p = ChannelParams::new(gamma, beta, n).unwrap();
        prop_assert!(channel_capacity(&p, t + dt).unwrap() < channel_capacity(&p, t).unwrap());
    }
}
