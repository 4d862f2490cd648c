use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use truncexp::inversion::{e_families, s_series_coeffs, u_families, u_series_coeffs, MAX_ORDER};
use truncexp::{lagrange_coeffs, quotient_coeffs, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

#[test]
fn e_series_coefficients() {
    let c = s_series_coeffs(1, 5).unwrap();
    assert_eq!(strs(&c.coeffs), ["1", "1/12", "7/360", "41/8640", "2243/1814400"]);
    assert_eq!(c.argument_scale, q(3, 2));
    let c = s_series_coeffs(3, 5).unwrap();
    assert_eq!(strs(&c.coeffs), ["1", "1/30", "8/1575", "289/378000", "1181/9922500"]);
    assert_eq!(c.argument_scale, q(5, 4));
}

#[test]
fn u_series_coefficients() {
    let c = u_series_coeffs(1, 5).unwrap();
    assert_eq!(strs(&c.coeffs), ["1", "1/6", "2/45", "7/540", "113/28350"]);
    assert_eq!(c.argument_scale, q(3, 1));
    let c = u_series_coeffs(3, 5).unwrap();
    assert_eq!(strs(&c.coeffs), ["1", "2/15", "38/1575", "439/94500", "9131/9922500"]);
    assert_eq!(c.argument_scale, q(5, 1));
    assert!(u_series_coeffs(0, 5).is_err());
}

#[test]
fn quotient_trivial_cases() {
    let a: Vec<Rational> = vec![q(1, 1), q(2, 3), q(-1, 5), q(7, 2)];
    let c = quotient_coeffs(&a, &a, 3).unwrap();
    assert_eq!(c, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
    let one = vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)];
    assert_eq!(quotient_coeffs(&a, &one, 3).unwrap(), a);
    let bad = vec![q(2, 1), q(0, 1), q(0, 1), q(0, 1)];
    assert!(quotient_coeffs(&bad, &a, 3).is_err());
    assert!(quotient_coeffs(&a, &bad, 3).is_err());
    assert!(quotient_coeffs(&a[..2], &a, 3).is_err());
}

#[test]
fn identity_reverts_to_identity() {
    let c = vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
    let g = lagrange_coeffs(&c, 5).unwrap();
    assert_eq!(g.coeffs, c);
}

#[test]
fn small_order_closed_forms() {
    let c = vec![q(1, 1), q(3, 7), q(-2, 5), q(1, 9), q(5, 11)];
    let g = lagrange_coeffs(&c, 5).unwrap().coeffs;
    let (c1, c2, c3, c4) = (&c[1], &c[2], &c[3], &c[4]);
    let three = q(3, 1);
    let g3 = c2 + c1 * c1;
    let g4 = c3 + &three * c1 * c2 + c1 * c1 * c1;
    let g5 = c4 + q(4, 1) * c1 * c3 + q(2, 1) * c2 * c2 + q(6, 1) * c1 * c1 * c2 + c1 * c1 * c1 * c1;
    assert!(g[0].is_one());
    assert_eq!(&g[1], c1);
    assert_eq!(g[2], g3);
    assert_eq!(g[3], g4);
    assert_eq!(g[4], g5);
}

#[test]
fn order_limits() {
    assert!(s_series_coeffs(2, 0).is_err());
    assert!(s_series_coeffs(2, MAX_ORDER + 1).is_err());
    let c = s_series_coeffs(2, MAX_ORDER).unwrap();
    assert_eq!(c.coeffs.len(), MAX_ORDER);
    assert_eq!(s_series_coeffs(4, 1).unwrap().coeffs, vec![q(1, 1)]);
    assert_eq!(u_series_coeffs(4, 1).unwrap().coeffs, vec![q(1, 1)]);
}

#[test]
fn families_start_at_one() {
    for n in 0..6 {
        let (a, b) = e_families(n, 4);
        assert!(a[0].is_one() && b[0].is_one());
        if n >= 1 {
            let (d, e) = u_families(n, 4);
            assert!(d[0].is_one() && e[0].is_one());
            assert!(d[1] < Rational::zero() && e[1] < Rational::zero());
        }
    }
}

#[test]
fn deterministic() {
    let a = s_series_coeffs(7, MAX_ORDER).unwrap();
    let b = s_series_coeffs(7, MAX_ORDER).unwrap();
    assert_eq!(strs(&a.coeffs), strs(&b.coeffs));
    let a = u_series_coeffs(7, MAX_ORDER).unwrap();
    let b = u_series_coeffs(7, MAX_ORDER).unwrap();
    assert_eq!(a, b);
}

#[test]
fn serializes_as_fraction_strings() {
    let c = u_series_coeffs(1, 2).unwrap();
    let json = serde_json::to_string(&c).unwrap();
    assert_eq!(json, r#"{"order":2,"coeffs":["1","1/6"],"argument_scale":"3"}"#);
}

// Truncated product of two power series.
fn mul(p: &[Rational], r: &[Rational], deg: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); deg + 1];
    for (i, pi) in p.iter().enumerate().take(deg + 1) {
        for (j, rj) in r.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += pi * rj;
        }
    }
    out
}

// Composition p(r(w)) to degree `deg`, with r(0) = 0 and p given without
// a constant term (p[0] is the coefficient of w).
fn compose(p: &[Rational], r: &[Rational], deg: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); deg + 1];
    let mut power = vec![Rational::zero(); deg + 1];
    power[0] = Rational::one();
    for pk in p {
        power = mul(&power, r, deg);
        for (o, v) in out.iter_mut().zip(&power) {
            *o += pk * v;
        }
    }
    out
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(a, b)| q(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // w = x / c(x) composed with its reversion gives back w.
    #[test]
    fn round_trip(tail in prop::collection::vec(rational(), 6)) {
        let m = 6;
        let mut c = vec![Rational::one()];
        c.extend(tail);
        let g = lagrange_coeffs(&c, m).unwrap().coeffs;
        // inverse series of c, then forward map F(x) = x / c(x)
        let inv = quotient_coeffs(
            &[vec![Rational::one()], vec![Rational::zero(); m]].concat(),
            &c,
            m,
        ).unwrap();
        let forward: Vec<Rational> = inv.iter().take(m).cloned().collect();
        let mut x_of_w = vec![Rational::zero()];
        x_of_w.extend(g.iter().cloned());
        let w = compose(&forward, &x_of_w, m);
        let mut identity = vec![Rational::zero(); m + 1];
        identity[1] = Rational::one();
        prop_assert_eq!(w, identity);
    }

    #[test]
    fn lowest_terms(n in 0u32..8, m in 1usize..=MAX_ORDER) {
        for r in s_series_coeffs(n, m).unwrap().coeffs {
            let reduced = Rational::new(r.numer().clone(), r.denom().clone());
            prop_assert_eq!(&reduced, &r);
            prop_assert!(r.denom() > &BigInt::zero());
        }
    }
}
