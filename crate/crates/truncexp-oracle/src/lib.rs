//! Extended-precision reference values for the test suites.
//!
//! Every routine here works in binary floating point with [`PREC`] bits and
//! rounds once to `f64` at the end. None of it shares code with the library
//! under test.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

pub type Big = FBig<HalfEven, 2>;

/// Working precision in bits.
pub const PREC: usize = 192;

pub fn big(x: f64) -> Big {
    Big::try_from(x).expect("finite input").with_precision(PREC).value()
}

pub fn int(k: u64) -> Big {
    Big::from(k).with_precision(PREC).value()
}

pub fn to_f64(x: &Big) -> f64 {
    x.to_f64().value()
}

fn tiny(x: &Big, scale: &Big) -> bool {
    let r = to_f64(x).abs();
    let s = to_f64(scale).abs();
    r == 0.0 || r <= s * 1e-58
}

/// `e^{-s} sum_{k>n} s^k/k!`.
pub fn exp_tail_big(n: u32, s: &Big) -> Big {
    let mut term = Big::ONE.with_precision(PREC).value();
    for k in 1..=u64::from(n) + 1 {
        term = term * s / int(k);
    }
    let mut sum = term.clone();
    let mut k = u64::from(n) + 1;
    loop {
        k += 1;
        term = term * s / int(k);
        sum = &sum + &term;
        if tiny(&term, &sum) || k > 5000 {
            break;
        }
    }
    (-s.clone()).exp() * sum
}

pub fn exp_tail(n: u32, s: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    to_f64(&exp_tail_big(n, &big(s)))
}

/// `sum_{j>=0} (-1)^j u^{n+1+j}/(n+1+j)!`.
pub fn alt_tail_big(n: u32, u: &Big) -> Big {
    if to_f64(u) > f64::from(n) + 40.0 {
        return alt_tail_direct_big(n, u);
    }
    let mut term = Big::ONE.with_precision(PREC).value();
    for k in 1..=u64::from(n) + 1 {
        term = term * u / int(k);
    }
    let mut sum = term.clone();
    let mut k = u64::from(n) + 1;
    loop {
        k += 1;
        term = -(term * u / int(k));
        sum = &sum + &term;
        if (k as f64) > to_f64(u) && tiny(&term, &sum) || k > 5000 {
            break;
        }
    }
    sum
}

// (-1)^{n+1} (e^{-u} - sum_{k<=n} (-u)^k/k!); the polynomial dominates for u > n.
fn alt_tail_direct_big(n: u32, u: &Big) -> Big {
    let minus_u = -u.clone();
    let mut term = Big::ONE.with_precision(PREC).value();
    let mut poly = term.clone();
    for k in 1..=u64::from(n) {
        term = term * &minus_u / int(k);
        poly = &poly + &term;
    }
    let diff = minus_u.exp() - poly;
    if n.is_multiple_of(2) {
        -diff
    } else {
        diff
    }
}

pub fn alt_tail(n: u32, u: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    to_f64(&alt_tail_big(n, &big(u)))
}

fn pow(x: &Big, a: f64) -> Big {
    (x.ln() * big(a)).exp()
}

pub fn eval_e_big(n: u32, delta: f64, s: f64) -> Big {
    let s = big(s);
    exp_tail_big(n, &s) / pow(&s, delta)
}

pub fn eval_g_big(n: u32, delta: f64, u: f64) -> Big {
    let u = big(u);
    alt_tail_big(n, &u) / pow(&u, delta)
}

pub fn eval_e(n: u32, delta: f64, s: f64) -> f64 {
    to_f64(&eval_e_big(n, delta, s))
}

pub fn eval_g(n: u32, delta: f64, u: f64) -> f64 {
    to_f64(&eval_g_big(n, delta, u))
}

/// Golden-section maximization of a unimodal function on `[a, b]`,
/// comparing values in extended precision. Stops when the bracket is
/// shorter than `tol`.
pub fn golden_max(f: impl Fn(f64) -> Big, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

pub fn argmax_e(n: u32, delta: f64, a: f64, b: f64, tol: f64) -> f64 {
    golden_max(|s| eval_e_big(n, delta, s), a, b, tol)
}

pub fn argmax_g(n: u32, delta: f64, a: f64, b: f64, tol: f64) -> f64 {
    golden_max(|u| eval_g_big(n, delta, u), a, b, tol)
}

/// Bisection for a sign change of `f` on `[a, b]`.
pub fn bisect(f: impl Fn(&Big) -> Big, a: f64, b: f64, steps: usize) -> f64 {
    let mut lo = big(a);
    let mut hi = big(b);
    let lo_sign = f(&lo) > Big::ZERO;
    let half = big(0.5);
    for _ in 0..steps {
        let mid = (&lo + &hi) * &half;
        if (f(&mid) > Big::ZERO) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    to_f64(&((lo + hi) * half))
}

/// Root of `e^s - 1 - s/delta` (the `n = 0` maximizer) by 200 bisection steps.
pub fn s0_root(delta: f64) -> f64 {
    let d = big(delta);
    let hi = 2.0 * (1.0 / delta).ln().max(0.0) + 2.0 / delta + 2.0;
    bisect(|s| s.exp() - Big::ONE - s / &d, 1e-12, hi, 200)
}

/// `int_0^z e^{-t} ln t dt` by double-exponential quadrature.
pub fn phi_quadrature(z: f64) -> f64 {
    quadrature::double_exponential::integrate(|t| (-t).exp() * t.ln(), 0.0, z, 1e-14).integral
}
