//! Property tests for the structural invariants of the model and solver.

use proptest::prelude::*;
use triwell::{
    airy_eval, airy_eval_scaled, match_points, potential_value, to_dimensionless, Convention,
    DimensionlessWell, PhysicalWell,
};

fn wells() -> impl Strategy<Value = DimensionlessWell> {
    (1e-3f64..1e4, prop_oneof![Just(Convention::Eq1), Just(Convention::Halfwidth2)])
        .prop_map(|(v0, c)| DimensionlessWell::new(v0, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    // w0 = (w1 + w2)/2 exactly up to rounding at the natural scale
    #[test]
    fn midpoint_identity(well in wells(), frac in 1e-12f64..=0.999_999) {
        let ebar = -well.vbar0 * frac;
        let m = match_points(&well, ebar).unwrap();
        let mid = 0.5 * (m.w1 + m.w2);
        let scale = m.w0.abs().max(m.w1.abs()).max(m.w2.abs());
        prop_assert!((mid - m.w0).abs() <= 4.0 * f64::EPSILON * scale);
    }
}

proptest! {
    #[test]
    fn potential_is_even_and_bounded(well in wells(), y in -10.0f64..10.0) {
        let v = potential_value(&well, y);
        prop_assert_eq!(v, potential_value(&well, -y));
        prop_assert!((-well.vbar0..=0.0).contains(&v));
    }

    // |dw_i| <= (A^(-2/3) + 1) |dE| over the bound window
    #[test]
    fn match_points_lipschitz_in_energy(
        well in wells(),
        frac in 1e-9f64..=0.999_999,
        step in 1e-12f64..1e-3,
    ) {
        let e1 = -well.vbar0 * frac;
        let e2 = (e1 + step * well.vbar0).min(-1e-300);
        let m1 = match_points(&well, e1).unwrap();
        let m2 = match_points(&well, e2).unwrap();
        let a = well.slope();
        let k = a.powf(-2.0 / 3.0) + 1.0;
        let de = (e2 - e1).abs();
        let slack = 1e-12 * (1.0 + m1.w1.abs());
        prop_assert!((m2.w0 - m1.w0).abs() <= k * de + slack);
        prop_assert!((m2.w1 - m1.w1).abs() <= k * de + slack);
        prop_assert!((m2.w2 - m1.w2).abs() <= k * de + slack);
    }

    #[test]
    fn window_and_ordering(well in wells(), frac in 1e-9f64..=0.999_999) {
        let ebar = -well.vbar0 * frac;
        let m = match_points(&well, ebar).unwrap();
        prop_assert!(m.w1 < m.w0);
        prop_assert!(m.w0 <= 0.0);
        prop_assert!(m.w2 >= 0.0);
        prop_assert!(m.beta > 0.0);
        prop_assert!(m.cbrt_a > 0.0);
    }

    #[test]
    fn dimensional_round_trip(
        mass in 1e-3f64..1e3,
        hbar in 1e-3f64..1e3,
        depth in 1e-3f64..1e3,
        half_width in 1e-3f64..1e3,
    ) {
        let w = PhysicalWell::new(mass, hbar, depth, half_width).unwrap();
        let d = to_dimensionless(&w).unwrap();
        let back = d.vbar0 * w.energy_unit();
        prop_assert!(((back - depth) / depth).abs() < 1e-14);
    }

    // scaled and plain evaluations describe the same functions
    #[test]
    fn scaled_plain_agreement(x in -30.0f64..9.0) {
        let p = airy_eval(x).unwrap();
        let s = airy_eval_scaled(x).unwrap();
        let z = triwell::airy::exponent(x);
        let ai_back = s.ai_s * (-z).exp();
        let bi_back = s.bi_s * z.exp();
        prop_assert!(((ai_back - p.ai) / p.ai.abs().max(1e-300)).abs() < 1e-12);
        prop_assert!(((bi_back - p.bi) / p.bi.abs().max(1e-300)).abs() < 1e-12);
    }

    #[test]
    fn wronskian_everywhere_in_range(x in -1e4f64..100.0) {
        let s = airy_eval_scaled(x).unwrap();
        // for x > 0 the exponential factors cancel in the scaled Wronskian
        let w = s.ai_s * s.bi_prime_s - s.ai_prime_s * s.bi_s;
        let inv_pi = std::f64::consts::FRAC_1_PI;
        prop_assert!(((w - inv_pi) / inv_pi).abs() < 1e-10);
    }
}
