//! Evaluation of the two ratio families and their building blocks.
//!
//! Everything here is a pure function of its arguments. The truncated
//! exponential numerators are evaluated by a tail series below a switch
//! point and by the direct difference above it, so neither branch suffers
//! catastrophic cancellation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Interval, Result};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Member of the E-family: `n >= 0`, `0 < delta < n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ECaseParams {
    n: u32,
    delta: f64,
}

impl ECaseParams {
    pub fn new(n: u32, delta: f64) -> Result<Self> {
        let interval = Self::interval(n);
        if !interval.contains(delta) {
            return Err(Error::Domain {
                name: "delta",
                value: delta,
                interval,
            });
        }
        Ok(Self { n, delta })
    }

    /// Valid open interval for delta.
    pub fn interval(n: u32) -> Interval {
        Interval::new(0.0, f64::from(n) + 1.0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `n + 1 - delta`.
    pub fn y(&self) -> f64 {
        (f64::from(self.n) + 1.0) - self.delta
    }
}

/// Member of the G-family: `n >= 1`, `n < delta < n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UCaseParams {
    n: u32,
    delta: f64,
}

impl UCaseParams {
    pub fn new(n: u32, delta: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Order { n, min: 1 });
        }
        let interval = Self::interval(n);
        if !interval.contains(delta) {
            return Err(Error::Domain {
                name: "delta",
                value: delta,
                interval,
            });
        }
        Ok(Self { n, delta })
    }

    pub fn interval(n: u32) -> Interval {
        Interval::new(f64::from(n), f64::from(n) + 1.0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `n + 1 - delta`.
    pub fn y(&self) -> f64 {
        (f64::from(self.n) + 1.0) - self.delta
    }

    /// `delta - n`.
    pub fn excess(&self) -> f64 {
        self.delta - f64::from(self.n)
    }
}

/// Branch thresholds and series limits.
///
/// The switch thresholds are offsets added to `n`: the exponential tail uses
/// its series for `s < n + tail_switch_e` and the alternating tail uses its
/// series for `u < n + tail_switch_u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub tail_switch_e: f64,
    pub tail_switch_u: f64,
    pub max_terms: usize,
    pub abs_floor: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            tail_switch_e: 5.0,
            tail_switch_u: 2.0,
            max_terms: 500,
            abs_floor: f64::MIN_POSITIVE,
        }
    }
}

impl EvalOptions {
    pub fn new(tail_switch_e: f64, tail_switch_u: f64, max_terms: usize, abs_floor: f64) -> Result<Self> {
        let opts = Self {
            tail_switch_e,
            tail_switch_u,
            max_terms,
            abs_floor,
        };
        opts.validate()?;
        Ok(opts)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tail_switch_e > 0.0) || !(self.tail_switch_u > 0.0) {
            return Err(Error::InvalidOption("tail switches must be positive".into()));
        }
        if self.max_terms < 30 {
            return Err(Error::InvalidOption("max_terms must be at least 30".into()));
        }
        if !(self.abs_floor >= 0.0) {
            return Err(Error::InvalidOption("abs_floor must be nonnegative".into()));
        }
        Ok(())
    }
}

// Neumaier compensated accumulator.
#[derive(Default, Clone, Copy)]
pub(crate) struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.s + self.c
    }
}

pub(crate) fn ln_factorial(m: u32) -> f64 {
    if m <= 170 {
        factorial(m).ln()
    } else {
        (1..=m).map(|k| f64::from(k).ln()).sum()
    }
}

/// `m!` as a float; overflows to infinity beyond 170.
pub(crate) fn factorial(m: u32) -> f64 {
    (1..=m).fold(1.0, |acc, k| acc * f64::from(k))
}

/// `x^m / m!` for `x > 0`, by a running product when it stays in range.
pub(crate) fn pow_over_factorial(x: f64, m: u32) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let log = f64::from(m) * x.ln() - ln_factorial(m);
    if log.abs() < 600.0 && x < 1e100 && x > 1e-100 {
        (1..=m).fold(1.0, |acc, k| acc * (x / f64::from(k)))
    } else {
        log.exp()
    }
}

/// `e^{-s} x^m / m!` without overflow.
fn exp_weighted_power(s: f64, x: f64, m: u32) -> f64 {
    if s < 700.0 {
        let p = pow_over_factorial(x, m);
        if p.is_finite() && p > 0.0 {
            return (-s).exp() * p;
        }
    }
    (f64::from(m) * x.ln() - ln_factorial(m) - s).exp()
}

/// Scaled exponential tail `B_m(s) = exp_tail(m, s) (m+1)! / s^{m+1}`,
/// with `B_{-1} = 1`.
pub(crate) fn exp_tail_scaled(m: i64, s: f64, opts: &EvalOptions) -> f64 {
    if m < 0 {
        return 1.0;
    }
    if s == 0.0 {
        return 1.0;
    }
    if s < m as f64 + opts.tail_switch_e {
        scaled_exp_series(m as u32, s, opts) * (-s).exp()
    } else {
        exp_tail_direct(m as u32, s) / pow_over_factorial(s, m as u32 + 1)
    }
}

// sum_j (m+1)! s^j / (m+1+j)!
fn scaled_exp_series(m: u32, s: f64, opts: &EvalOptions) -> f64 {
    let mut sum = Sum::default();
    let mut r = 1.0;
    sum.add(r);
    for j in 1..opts.max_terms {
        r *= s / (f64::from(m) + 1.0 + j as f64);
        sum.add(r);
        if r <= 1e-17 * sum.value() || r <= opts.abs_floor {
            break;
        }
    }
    sum.value()
}

/// Tail-series branch of [`exp_tail`].
pub fn exp_tail_series(n: u32, s: f64, opts: &EvalOptions) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    exp_weighted_power(s, s, n + 1) * scaled_exp_series(n, s, opts)
}

/// Direct branch of [`exp_tail`]: one minus the Poisson head.
pub fn exp_tail_direct(n: u32, s: f64) -> f64 {
    if n == 0 {
        return -(-s).exp_m1();
    }
    let mut head = Sum::default();
    if s < 700.0 {
        let mut t = (-s).exp();
        head.add(t);
        for k in 1..=n {
            t *= s / f64::from(k);
            head.add(t);
        }
    } else {
        let ls = s.ln();
        let mut lt = -s;
        head.add(lt.exp());
        for k in 1..=n {
            lt += ls - f64::from(k).ln();
            head.add(lt.exp());
        }
    }
    1.0 - head.value()
}

/// `1 - e^{-s} sum_{k<=n} s^k/k!` with default options.
pub fn exp_tail(n: u32, s: f64) -> f64 {
    exp_tail_with(n, s, &EvalOptions::default())
}

pub fn exp_tail_with(n: u32, s: f64, opts: &EvalOptions) -> f64 {
    if s.is_nan() || s < 0.0 {
        return f64::NAN;
    }
    if s == 0.0 {
        return 0.0;
    }
    if n == 0 {
        return -(-s).exp_m1();
    }
    if s < f64::from(n) + opts.tail_switch_e {
        exp_tail_series(n, s, opts)
    } else {
        exp_tail_direct(n, s)
    }
}

/// Scaled alternating tail `A_m(u) = alt_tail(m, u) (m+1)! / u^{m+1}`,
/// with `A_{-1} = e^{-u}`.
pub(crate) fn alt_tail_scaled(m: i64, u: f64, opts: &EvalOptions) -> f64 {
    if m < 0 {
        return (-u).exp();
    }
    if u == 0.0 {
        return 1.0;
    }
    if m == 0 {
        return -(-u).exp_m1() / u;
    }
    if u < m as f64 + opts.tail_switch_u {
        scaled_alt_series(m as u32, u, opts)
    } else {
        (m as f64 + 1.0) / u * (1.0 - alt_direct_w(m as u32, u))
    }
}

// sum_j (-1)^j (m+1)! u^j / (m+1+j)!
fn scaled_alt_series(m: u32, u: f64, opts: &EvalOptions) -> f64 {
    let mut sum = Sum::default();
    let mut r = 1.0;
    sum.add(r);
    for j in 1..opts.max_terms {
        r *= -u / (f64::from(m) + 1.0 + j as f64);
        sum.add(r);
        if r.abs() <= 1e-17 * sum.value().abs() || r.abs() <= opts.abs_floor {
            break;
        }
    }
    sum.value()
}

/// Correction `w` in `A_m(u) = ((m+1)/u)(1 - w)` for the direct branch.
pub(crate) fn alt_direct_w(m: u32, u: f64) -> f64 {
    let mut sum = Sum::default();
    let mut t = 1.0;
    for i in 1..=m {
        t *= -(f64::from(m) - f64::from(i) + 1.0) / u;
        sum.add(-t);
    }
    let tail = (-u + ln_factorial(m) - f64::from(m) * u.ln()).exp();
    if m.is_multiple_of(2) {
        sum.add(tail);
    } else {
        sum.add(-tail);
    }
    sum.value()
}

/// Alternating-series branch of [`alt_tail`].
pub fn alt_tail_series(n: u32, u: f64, opts: &EvalOptions) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    pow_over_factorial(u, n + 1) * scaled_alt_series(n, u, opts)
}

/// Direct branch of [`alt_tail`].
pub fn alt_tail_direct(n: u32, u: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    if n == 0 {
        return -(-u).exp_m1();
    }
    pow_over_factorial(u, n) * (1.0 - alt_direct_w(n, u))
}

/// `(-1)^{n+1} (e^{-u} - sum_{k<=n} (-u)^k/k!)` with default options.
pub fn alt_tail(n: u32, u: f64) -> f64 {
    alt_tail_with(n, u, &EvalOptions::default())
}

pub fn alt_tail_with(n: u32, u: f64, opts: &EvalOptions) -> f64 {
    if u.is_nan() || u < 0.0 {
        return f64::NAN;
    }
    if u == 0.0 {
        return 0.0;
    }
    if n == 0 {
        return -(-u).exp_m1();
    }
    if u < f64::from(n) + opts.tail_switch_u {
        alt_tail_series(n, u, opts)
    } else {
        alt_tail_direct(n, u)
    }
}

/// `x^{m} x^{-delta} / m!` evaluated in the log domain only when needed.
fn power_ratio(x: f64, m: u32, delta: f64) -> f64 {
    let lx = x.ln();
    let log = f64::from(m) * lx - ln_factorial(m);
    if log.abs() < 600.0 {
        pow_over_factorial(x, m) * (-delta * lx).exp()
    } else {
        (log - delta * lx).exp()
    }
}

/// `E_{n,delta}(s)` for any `delta` in the closed range `[0, n+1]`,
/// including the limit value at `s = 0`.
pub fn e_ratio(n: u32, delta: f64, s: f64) -> Result<f64> {
    e_ratio_with(n, delta, s, &EvalOptions::default())
}

pub fn e_ratio_with(n: u32, delta: f64, s: f64, opts: &EvalOptions) -> Result<f64> {
    let top = f64::from(n) + 1.0;
    if !(0.0..=top).contains(&delta) {
        return Err(Error::Domain {
            name: "delta",
            value: delta,
            interval: Interval::new(0.0, top),
        });
    }
    if s.is_nan() || s < 0.0 {
        return Err(Error::Negative { name: "s", value: s });
    }
    if s == 0.0 {
        return Ok(e_limit_at_zero(n, delta));
    }
    if n == 0 {
        return Ok(-(-s).exp_m1() * (-delta * s.ln()).exp());
    }
    if s < f64::from(n) + opts.tail_switch_e {
        let b = scaled_exp_series(n, s, opts);
        Ok(b * (-s).exp() * power_ratio(s, n + 1, delta))
    } else {
        Ok(exp_tail_direct(n, s) * (-delta * s.ln()).exp())
    }
}

/// Continuous extension of `E_{n,delta}` at `s = 0`.
pub fn e_limit_at_zero(n: u32, delta: f64) -> f64 {
    if delta == f64::from(n) + 1.0 {
        1.0 / factorial(n + 1)
    } else {
        0.0
    }
}

/// `E_{n,delta}(s) = exp_tail(n, s) / s^delta`.
pub fn eval_e(p: &ECaseParams, s: f64) -> Result<f64> {
    e_ratio(p.n, p.delta, s)
}

pub fn eval_e_with(p: &ECaseParams, s: f64, opts: &EvalOptions) -> Result<f64> {
    e_ratio_with(p.n, p.delta, s, opts)
}

/// `G_{n,delta}(u)` for `n >= 0` and `delta` in the closed range `[n, n+1]`.
pub fn g_ratio(n: u32, delta: f64, u: f64) -> Result<f64> {
    g_ratio_with(n, delta, u, &EvalOptions::default())
}

pub fn g_ratio_with(n: u32, delta: f64, u: f64, opts: &EvalOptions) -> Result<f64> {
    let low = f64::from(n);
    let top = low + 1.0;
    if !(low..=top).contains(&delta) {
        return Err(Error::Domain {
            name: "delta",
            value: delta,
            interval: Interval::new(low, top),
        });
    }
    if u.is_nan() || u < 0.0 {
        return Err(Error::Negative { name: "u", value: u });
    }
    if u == 0.0 {
        return Ok(g_limit_at_zero(n, delta));
    }
    if n == 0 {
        return Ok(-(-u).exp_m1() * (-delta * u.ln()).exp());
    }
    let a = alt_tail_scaled(i64::from(n), u, opts);
    Ok(a * power_ratio(u, n + 1, delta))
}

/// Continuous extension of `G_{n,delta}` at `u = 0`.
pub fn g_limit_at_zero(n: u32, delta: f64) -> f64 {
    if delta == f64::from(n) + 1.0 {
        1.0 / factorial(n + 1)
    } else {
        0.0
    }
}

/// `G_{n,delta}(u) = alt_tail(n, u) / u^delta`.
pub fn eval_g(p: &UCaseParams, u: f64) -> Result<f64> {
    g_ratio(p.n, p.delta, u)
}

pub fn eval_g_with(p: &UCaseParams, u: f64, opts: &EvalOptions) -> Result<f64> {
    g_ratio_with(p.n, p.delta, u, opts)
}

/// `sum_{k>=1} (-z)^k / (k k!)`.
pub(crate) fn phi_series_part(z: f64) -> f64 {
    let mut sum = Sum::default();
    let mut t = 1.0;
    for k in 1..200u32 {
        let kf = f64::from(k);
        t *= -z / kf;
        let term = t / kf;
        sum.add(term);
        if term.abs() < 1e-17 * sum.value().abs() {
            break;
        }
    }
    sum.value()
}

// e^z E1(z) for z > 1 by the Lentz continued fraction.
fn expint_e1_cf(z: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500u32 {
        let an = -f64::from(i) * f64::from(i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// `Phi(z) = int_0^z e^{-t} ln t dt`, the a-derivative of the lower
/// incomplete gamma function at `a = 1`.
///
/// Returns NaN for negative or NaN input.
pub fn phi(z: f64) -> f64 {
    if z.is_nan() || z < 0.0 {
        return f64::NAN;
    }
    if z == 0.0 {
        return 0.0;
    }
    if z <= 1.0 {
        -(-z).exp_m1() * z.ln() + phi_series_part(z)
    } else if z.is_infinite() {
        -EULER_GAMMA
    } else {
        // int_z^inf e^{-t} ln t dt = e^{-z} (ln z + e^z E1(z))
        -EULER_GAMMA - (-z).exp() * (z.ln() + expint_e1_cf(z))
    }
}
