//! Property tests for the quadrature, slicing and solver invariants.

use proptest::prelude::*;

use decaycheck::funcspace::{
    catalog_slope_fn, integrate, sup_slice, UnivariateFn,
};
use decaycheck::odesolve::{solve_surrogate, SolverConfig, Trajectory, TrajectoryMeta};

fn family() -> impl Strategy<Value = UnivariateFn> {
    prop_oneof![
        (0.0f64..5.0).prop_map(|c| UnivariateFn::constant(c).unwrap()),
        (0.1f64..3.0, -1.0f64..2.5, 0.1f64..2.0)
            .prop_map(|(c, e, s)| UnivariateFn::power_law(c, e, s).unwrap()),
        (0.1f64..3.0, 0.0f64..3.0)
            .prop_map(|(c, r)| UnivariateFn::exponential(c, r).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadrature_is_additive_across_split_points(
        f in family(),
        s in 0.0f64..5.0,
        len1 in 0.01f64..5.0,
        len2 in 0.01f64..5.0,
    ) {
        let tol = 1e-9;
        let m = s + len1;
        let t = m + len2;
        let whole = integrate(&f, s, t, tol).unwrap();
        let parts = integrate(&f, s, m, tol).unwrap() + integrate(&f, m, t, tol).unwrap();
        let scale = 1.0 + whole.abs();
        prop_assert!((whole - parts).abs() <= 2.0 * tol * scale,
            "split mismatch: {whole} vs {parts}");
    }

    #[test]
    fn quadrature_is_monotone_under_pointwise_domination(
        f in family(),
        shrink in 0.0f64..1.0,
        s in 0.0f64..3.0,
        len in 0.01f64..5.0,
    ) {
        let tol = 1e-9;
        let g = f.scaled(shrink).unwrap();
        let big = integrate(&f, s, s + len, tol).unwrap();
        let small = integrate(&g, s, s + len, tol).unwrap();
        prop_assert!(big >= small - 2.0 * tol * (1.0 + big.abs()));
    }

    #[test]
    fn sup_slice_is_monotone_in_the_state_bound(
        x in 0.0f64..20.0,
        v1 in 0.0f64..4.0,
        dv in 0.0f64..4.0,
    ) {
        let f = catalog_slope_fn();
        let lo = sup_slice(&f, x, v1, 48).unwrap();
        let hi = sup_slice(&f, x, v1 + dv, 48).unwrap();
        prop_assert!(hi >= lo - 1e-12);
    }

    #[test]
    fn trajectory_csv_round_trips(
        steps in 2usize..40,
        width in 1usize..4,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut t = 0.0;
        let mut times = Vec::new();
        let mut data = Vec::new();
        for _ in 0..steps {
            t += rng.gen_range(0.01..1.0);
            times.push(t);
            for _ in 0..width {
                data.push(rng.gen_range(-10.0..10.0));
            }
        }
        let tr = Trajectory::new(times, data, width, TrajectoryMeta::default()).unwrap();
        let back = Trajectory::from_csv(&tr.to_csv()).unwrap();
        prop_assert_eq!(tr, back);
    }

    #[test]
    fn larger_forcing_never_lowers_the_surrogate(
        a in 0.2f64..2.0,
        b_lo in 0.0f64..0.5,
        extra in 0.0f64..0.5,
        g0 in 0.0f64..2.0,
    ) {
        let config = SolverConfig { t_end: 4.0, dt: 1e-2, ..Default::default() };
        let rate = UnivariateFn::constant(a).unwrap();
        let id = UnivariateFn::identity();
        let lo = solve_surrogate(
            &rate, &id, &UnivariateFn::constant(b_lo).unwrap(), g0, &config).unwrap();
        let hi = solve_surrogate(
            &rate, &id, &UnivariateFn::constant(b_lo + extra).unwrap(), g0, &config).unwrap();
        for i in 0..lo.len() {
            prop_assert!(hi.value(i) >= lo.value(i) - 1e-9);
        }
    }
}
