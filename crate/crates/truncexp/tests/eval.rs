mod common;

use approx::{assert_abs_diff_eq, assert_relative_eq};
use proptest::prelude::*;
use truncexp::eval::{e_ratio, g_ratio};
use truncexp::*;

use common::{log_grid, rel_err};

const E: f64 = std::f64::consts::E;

#[test]
fn exp_tail_small_cases() {
    assert_abs_diff_eq!(exp_tail(0, 1.0), 1.0 - (-1.0f64).exp(), epsilon = 1e-16);
    assert_eq!(exp_tail(5, 0.0), 0.0);
    // extended-precision tail sum
    assert_relative_eq!(exp_tail(2, 1.5), 0.191_153_169_461_941_87, max_relative = 1e-14);
    assert_relative_eq!(
        exp_tail(2, 1.5),
        truncexp_oracle::exp_tail(2, 1.5),
        max_relative = 1e-14
    );
}

#[test]
fn alt_tail_small_cases() {
    assert_eq!(alt_tail(1, 0.0), 0.0);
    assert_abs_diff_eq!(alt_tail(1, 50.0), 49.0 + (-50.0f64).exp(), epsilon = 1e-12);
    assert_relative_eq!(alt_tail(3, 0.5), 0.002_363_993_045_966_757, max_relative = 1e-14);
    assert_relative_eq!(
        alt_tail(3, 0.5),
        truncexp_oracle::alt_tail(3, 0.5),
        max_relative = 1e-14
    );
}

#[test]
fn eval_e_reference_points() {
    let p = ECaseParams::new(1, 1.392211191).unwrap();
    assert_abs_diff_eq!(eval_e(&p, 0.970042721).unwrap(), 0.264174903, epsilon = 5e-9);
    let p = ECaseParams::new(3, 3.229025365).unwrap();
    assert_abs_diff_eq!(eval_e(&p, 0.985088648).unwrap(), 0.018986579, epsilon = 5e-9);
    let p = ECaseParams::new(0, 0.5).unwrap();
    assert_abs_diff_eq!(eval_e(&p, 1.0).unwrap(), 1.0 - (-1.0f64).exp(), epsilon = 1e-16);
}

#[test]
fn eval_e_domain() {
    let p = ECaseParams::new(2, 1.0).unwrap();
    assert!(eval_e(&p, -1.0).is_err());
    assert_eq!(eval_e(&p, 0.0).unwrap(), 0.0);
    assert_abs_diff_eq!(e_limit_at_zero(2, 3.0), 1.0 / 6.0, epsilon = 1e-16);
    assert!(ECaseParams::new(1, 2.0).is_err());
    assert!(ECaseParams::new(1, 0.0).is_err());
    assert!(ECaseParams::new(1, f64::NAN).is_err());
}

#[test]
fn eval_g_reference_points() {
    let p = UCaseParams::new(1, 1.718281828).unwrap();
    assert_abs_diff_eq!(eval_g(&p, 0.955647534).unwrap(), 0.367791633, epsilon = 5e-9);
    let p = UCaseParams::new(3, 3.824470167).unwrap();
    assert_abs_diff_eq!(eval_g(&p, 1.005165513).unwrap(), 0.034546037, epsilon = 5e-9);
    let p = UCaseParams::new(1, 1.5).unwrap();
    let u: f64 = 1e-8;
    assert_relative_eq!(eval_g(&p, u).unwrap(), u.powf(0.5) / 2.0, max_relative = 1e-6);
    assert!(eval_g(&p, -1e-3).is_err());
    assert!(UCaseParams::new(0, 0.5).is_err());
    assert!(UCaseParams::new(2, 2.0).is_err());
}

#[test]
fn phi_reference_points() {
    assert_eq!(phi(0.0), 0.0);
    assert_abs_diff_eq!(phi(1.0), -0.796599599, epsilon = 5e-9);
    assert_abs_diff_eq!(phi(30.0), -0.5772156649, epsilon = 1e-10);
    assert_abs_diff_eq!(phi(1e6), -EULER_GAMMA, epsilon = 1e-16);
    assert!(phi(-1.0).is_nan());
}

#[test]
fn phi_matches_quadrature() {
    for z in [0.25, 1.0, 2.0, 5.0] {
        assert_abs_diff_eq!(phi(z), truncexp_oracle::phi_quadrature(z), epsilon = 1e-9);
    }
    // frozen extended-precision quadrature values
    assert_abs_diff_eq!(phi(0.25), -0.541_851_165_337_627_3, epsilon = 1e-14);
    assert_abs_diff_eq!(phi(2.0), -0.719_923_445_615_333_7, epsilon = 1e-14);
    assert_abs_diff_eq!(phi(5.0), -0.589_208_267_845_107_9, epsilon = 1e-14);
}

#[test]
fn phi_range_and_floor() {
    let phi1 = phi(1.0);
    for z in log_grid(1e-6, 200.0, 400) {
        let v = phi(z);
        assert!(v < 0.0 && v >= phi1 - 1e-15, "z = {z}: {v}");
        assert!(v >= -0.8);
    }
}

#[test]
fn partition_identity() {
    for n in 0..=10u32 {
        for s in log_grid(1e-6, 50.0, 200) {
            let mut head = 0.0;
            let mut t = (-s).exp();
            for k in 0..=n {
                if k > 0 {
                    t *= s / f64::from(k);
                }
                head += t;
            }
            assert_abs_diff_eq!(exp_tail(n, s) + head, 1.0, epsilon = 1e-13);
        }
    }
}

#[test]
fn n0_cross_family_identity() {
    for delta in [0.01, 0.2, 0.5, 0.8, 0.99] {
        let p = ECaseParams::new(0, delta).unwrap();
        for x in log_grid(1e-6, 60.0, 100) {
            let direct = -(-x).exp_m1() / x.powf(delta);
            let e = eval_e(&p, x).unwrap();
            let g = g_ratio(0, delta, x).unwrap();
            assert!((e - direct).abs() <= 1e-15 * direct.max(1.0), "{delta} {x}");
            assert_eq!(e, g);
        }
    }
}

#[test]
fn complement_identity() {
    for n in 1..=10u32 {
        let nf = f64::from(n);
        let inv_fact = 1.0 / (1..=n).map(f64::from).product::<f64>();
        for u in log_grid(1e-4, 60.0, 120) {
            let lhs = g_ratio(n, nf, u).unwrap();
            let rhs = inv_fact - g_ratio(n - 1, nf, u).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-12 * inv_fact.max(1.0),
                "n={n} u={u}: {lhs} {rhs}"
            );
        }
    }
}

#[test]
fn boundary_envelopes() {
    for n in 0..=8u32 {
        let nf = f64::from(n);
        let fact = (1..=n).map(f64::from).product::<f64>();
        for s in log_grid(1e-6, 80.0, 150) {
            assert!(e_ratio(n, 0.0, s).unwrap() <= 1.0);
            assert!(e_ratio(n, nf + 1.0, s).unwrap() <= (1.0 + 1e-14) / (fact * (nf + 1.0)));
            if n >= 1 {
                assert!(g_ratio(n, nf, s).unwrap() <= (1.0 + 1e-14) / fact);
                assert!(g_ratio(n, nf + 1.0, s).unwrap() <= (1.0 + 1e-14) / (fact * (nf + 1.0)));
            }
        }
    }
}

#[test]
fn branch_consistency() {
    let opts = EvalOptions::default();
    for n in 1..=30u32 {
        let nf = f64::from(n);
        for k in 0..=40 {
            let s = nf + opts.tail_switch_e * (0.5 + k as f64 / 40.0);
            let a = exp_tail_series(n, s, &opts);
            let b = exp_tail_direct(n, s);
            assert!(rel_err(a, b) <= 1e-11, "exp n={n} s={s}: {a} {b}");
            let u = nf + opts.tail_switch_u * (0.5 + k as f64 / 40.0);
            let a = alt_tail_series(n, u, &opts);
            let b = alt_tail_direct(n, u);
            assert!(rel_err(a, b) <= 1e-11, "alt n={n} u={u}: {a} {b}");
        }
    }
}

#[test]
fn tails_match_extended_precision() {
    for n in [1u32, 2, 5, 10, 20, 30] {
        for x in log_grid(1e-3, 60.0, 25) {
            let a = exp_tail(n, x);
            let b = truncexp_oracle::exp_tail(n, x);
            assert!(rel_err(a, b) <= 1e-13, "exp n={n} s={x}: {a} {b}");
            let a = alt_tail(n, x);
            let b = truncexp_oracle::alt_tail(n, x);
            assert!(rel_err(a, b) <= 1e-12, "alt n={n} u={x}: {a} {b}");
        }
    }
}

#[test]
fn eval_options_validation() {
    assert!(EvalOptions::new(5.0, 2.0, 30, 0.0).is_ok());
    assert!(EvalOptions::new(0.0, 2.0, 30, 0.0).is_err());
    assert!(EvalOptions::new(5.0, -1.0, 30, 0.0).is_err());
    assert!(EvalOptions::new(5.0, 2.0, 29, 0.0).is_err());
}

#[test]
fn moved_switches_do_not_change_values() {
    let moved = EvalOptions::new(1.0, 0.5, 400, 0.0).unwrap();
    for n in [1u32, 4, 9] {
        for x in log_grid(1e-3, 40.0, 30) {
            assert!(rel_err(exp_tail(n, x), exp_tail_with(n, x, &moved)) <= 1e-12);
            assert!(rel_err(alt_tail(n, x), alt_tail_with(n, x, &moved)) <= 1e-11);
        }
    }
}

#[test]
fn closed_forms_at_e() {
    // E_{1,1}(1) = 1 - 2/e
    assert_abs_diff_eq!(e_ratio(1, 1.0, 1.0).unwrap(), 1.0 - 2.0 / E, epsilon = 1e-16);
}

proptest! {
    #[test]
    fn phi_floor(z in 0.0f64..1e4) {
        let v = phi(z);
        prop_assert!((-0.8..=0.0).contains(&v), "z = {}: {}", z, v);
    }

    #[test]
    fn tails_positive_and_bounded(n in 0u32..=30, x in 1e-6f64..200.0) {
        let t = exp_tail(n, x);
        prop_assert!(t > 0.0 && t < 1.0 + f64::EPSILON);
        if n >= 1 {
            prop_assert!(alt_tail(n, x) > 0.0);
        }
    }

    #[test]
    fn exp_tail_increasing(n in 0u32..=20, x in 1e-3f64..60.0, h in 1e-3f64..1.0) {
        prop_assert!(exp_tail(n, x + h) >= exp_tail(n, x));
    }

    #[test]
    fn e_family_below_envelope(n in 0u32..=12, frac in 0.001f64..0.999, s in 1e-4f64..80.0) {
        let d = frac * (f64::from(n) + 1.0);
        let p = ECaseParams::new(n, d).unwrap();
        let v = eval_e(&p, s).unwrap();
        prop_assert!(v > 0.0);
        prop_assert!(v <= 1.0_f64.max(1.0 / (1..=n + 1).map(f64::from).product::<f64>()) * (1.0 + 1e-12));
    }

    #[test]
    fn g_family_positive(n in 1u32..=12, frac in 0.001f64..0.999, u in 1e-4f64..80.0) {
        let p = UCaseParams::new(n, f64::from(n) + frac).unwrap();
        prop_assert!(eval_g(&p, u).unwrap() > 0.0);
    }
}

#[test]
fn g_ratio_large_u_matches_extended_precision() {
    for n in [1u32, 3, 10] {
        for u in [80.0, 500.0, 2500.0, 2e4] {
            let d = f64::from(n) + 0.001;
            let a = g_ratio(n, d, u).unwrap();
            let b = truncexp_oracle::eval_g(n, d, u);
            assert!(rel_err(a, b) <= 1e-13, "n={n} u={u}: {a} {b}");
        }
    }
}
