//! The E-family maximizer `s_n(delta)`, its bounds and the maximum value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{
    eval_e_with, exp_tail, exp_tail_scaled, factorial, ln_factorial, phi, phi_series_part, ECaseParams, EvalOptions,
    Sum,
};
use crate::inversion;
use crate::root::{bracketed_newton, Method, Probe, RootReport, SolveOptions};

/// Below this `y = n + 1 - delta` the series supplies the initializer.
pub const SERIES_CROSSOVER: f64 = 0.05;

/// Order of the initializer series.
pub const SERIES_INIT_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerFormula {
    Prop6Log,
    Lemma1Sqrt,
    LinearFloor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperFormula {
    Prop6Linear,
    Lemma2A,
    Prop8Phi,
}

/// Certified enclosure of `s_n(delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    pub lower_formula: LowerFormula,
    pub upper_formula: UpperFormula,
}

/// Location and value of the minimum of a max-value curve over delta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremumSummary {
    pub delta_star: f64,
    pub value_star: f64,
    pub delta_bounds: (f64, f64),
    pub value_bounds: (f64, f64),
}

/// A maximum value together with the two forms it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxValue {
    pub value: f64,
    pub forms: (f64, f64),
    pub root: RootReport,
}

/// Lower bound for `ME` and the two comparison-function upper bounds,
/// all evaluated at the certified lower bound `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeBounds {
    pub s: f64,
    pub lower: f64,
    pub upper_f2: f64,
    pub upper_f1: f64,
}

// ln((n+1)/delta) without cancellation near delta = n+1.
fn z_of(p: &ECaseParams) -> f64 {
    (p.y() / p.delta()).ln_1p()
}

/// `ln P(s)` and `s^n/n! / P(s)` where
/// `P(s) = sum_{k<=n} s^k/k! + s^{n+1}/(delta n!)`.
fn ln_poly(p: &ECaseParams, s: f64) -> (f64, f64) {
    let n = p.n();
    let d = p.delta();
    if s < 600.0 {
        let mut acc = Sum::default();
        let mut t = 1.0;
        for k in 1..=n {
            t *= s / f64::from(k);
            acc.add(t);
        }
        let last = t * s / d;
        acc.add(last);
        let ln_p = acc.value().ln_1p();
        (ln_p, (t.ln() - ln_p).exp())
    } else {
        let ls = s.ln();
        let logs: Vec<f64> = (0..=n)
            .map(|k| f64::from(k) * ls - ln_factorial(k))
            .chain(std::iter::once(f64::from(n + 1) * ls - d.ln() - ln_factorial(n)))
            .collect();
        let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let ln_p = m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln();
        (ln_p, (logs[n as usize] - ln_p).exp())
    }
}

/// `psi(s) = s - ln P(s)` and its derivative.
pub fn psi(p: &ECaseParams, s: f64) -> (f64, f64) {
    let (ln_p, ratio) = ln_poly(p, s);
    // e^{-s} P(s) = 1 + d; the direct difference s - ln P cancels for small s.
    let n = p.n();
    let d = (f64::from(n + 1) * s.ln() - s - ln_factorial(n)).exp() / p.delta() - exp_tail(n, s);
    let value = if d > -0.5 { -d.ln_1p() } else { s - ln_p };
    let derivative = (s - p.y()) / p.delta() * ratio;
    (value, derivative)
}

/// Every individual bound formula for `s_n(delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SBoundTerms {
    pub prop6_log: f64,
    pub lemma1_sqrt: f64,
    pub linear_floor: f64,
    pub prop6_linear: f64,
    pub lemma2_a: f64,
    pub prop8_phi: f64,
}

/// Every bound formula, with the sqrt-bound constant `A = 2`.
pub fn s_bound_terms(p: &ECaseParams) -> SBoundTerms {
    s_bound_terms_with(p, 2.0).expect("A = 2 is valid")
}

pub fn s_bound_terms_with(p: &ECaseParams, a: f64) -> Result<SBoundTerms> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::InvalidOption(format!(
            "sqrt-bound constant A = {a} must exceed 1"
        )));
    }
    let y = p.y();
    let d = p.delta();
    let z = z_of(p);
    let b = a / (a - 1.0);
    Ok(SBoundTerms {
        prop6_log: z + y,
        lemma1_sqrt: y + y / ((y + 0.25 * d * d).sqrt() + 0.5 * d),
        linear_floor: y,
        prop6_linear: y + y / d,
        lemma2_a: a * z + b * y,
        prop8_phi: prop8_upper(p, z),
    })
}

/// Enclosure with the sqrt-bound constant `A = 2`.
pub fn s_bounds(p: &ECaseParams) -> BoundPair {
    s_bounds_with(p, 2.0).expect("A = 2 is valid")
}

/// Tightest enclosure for a caller-chosen sqrt-bound constant `A > 1`.
pub fn s_bounds_with(p: &ECaseParams, a: f64) -> Result<BoundPair> {
    let t = s_bound_terms_with(p, a)?;
    let lower_candidates = [
        (t.prop6_log, LowerFormula::Prop6Log),
        (t.lemma1_sqrt, LowerFormula::Lemma1Sqrt),
        (t.linear_floor, LowerFormula::LinearFloor),
    ];
    let (lower, lower_formula) =
        lower_candidates
            .iter()
            .cloned()
            .fold((f64::NEG_INFINITY, LowerFormula::LinearFloor), |best, c| {
                if c.0 > best.0 {
                    c
                } else {
                    best
                }
            });
    let upper_candidates = [
        (t.prop6_linear, UpperFormula::Prop6Linear),
        (t.lemma2_a, UpperFormula::Lemma2A),
        (t.prop8_phi, UpperFormula::Prop8Phi),
    ];
    let (upper, upper_formula) = upper_candidates.iter().cloned().filter(|c| c.0.is_finite()).fold(
        (f64::INFINITY, UpperFormula::Prop6Linear),
        |best, c| if c.0 < best.0 { c } else { best },
    );
    Ok(BoundPair {
        lower,
        upper,
        lower_formula,
        upper_formula,
    })
}

// z + y ln z - (n+1) Phi(z). Since y = (n+1)(1 - e^{-z}), the logarithmic
// parts cancel exactly for small z and only the series part remains.
fn prop8_upper(p: &ECaseParams, z: f64) -> f64 {
    let np1 = f64::from(p.n()) + 1.0;
    if z <= 1.0 {
        z - np1 * phi_series_part(z)
    } else {
        z + p.y() * z.ln() - np1 * phi(z)
    }
}

/// Initializer `ln((n+1)/delta) + y ln ln((n+1)/delta) + 0.8 (n+1)`.
pub fn newton_init(p: &ECaseParams) -> f64 {
    let z = z_of(p);
    z + p.y() * z.ln() + 0.8 * (f64::from(p.n()) + 1.0)
}

fn probe_s(p: &ECaseParams, s: f64, opts: &EvalOptions) -> Probe {
    let n = p.n();
    let np1 = f64::from(n) + 1.0;
    let d = p.delta();
    let y = p.y();
    let (sign, ratio) = if s < f64::from(n) + opts.tail_switch_e {
        // e^s (1 - e^{-s} P(s)) and its derivative, each divided by a power of s.
        let mut w = Sum::default();
        let mut wd = Sum::default();
        w.add(-y / d);
        wd.add(-y / d);
        let mut r = 1.0;
        let mut rd = 1.0;
        for j in 1..opts.max_terms {
            let jf = j as f64;
            r *= s / (np1 + jf);
            rd *= s / (f64::from(n) + jf);
            w.add(r);
            wd.add(rd);
            if rd <= 1e-17 * wd.value().abs().max(y / d) {
                break;
            }
        }
        (w.value(), w.value() / wd.value())
    } else {
        let e = (-s).exp() * np1 / d;
        let f = exp_tail_scaled(i64::from(n), s, opts) - e;
        let g = exp_tail_scaled(i64::from(n) - 1, s, opts) - e;
        (f, f / g)
    };
    Probe {
        sign,
        step: -(s / np1) * ratio,
        residual: psi(p, s).0,
    }
}

/// Maximizer with default tolerance `1e-12`.
pub fn solve_s(p: &ECaseParams, tol: f64) -> Result<RootReport> {
    solve_s_with(p, &SolveOptions::with_tol(tol))
}

pub fn solve_s_with(p: &ECaseParams, opts: &SolveOptions) -> Result<RootReport> {
    opts.validate()?;
    let eval_opts = EvalOptions::default();
    let bounds = s_bounds(p);
    let bracket = (bounds.lower, bounds.upper);
    let y = p.y();
    let (x0, method) = match opts.init {
        Some(x) => (x, Method::Newton),
        None if y < SERIES_CROSSOVER => {
            let x = s_series(p.n(), y, SERIES_INIT_ORDER)?;
            (x.clamp(bracket.0, bracket.1), Method::Series)
        }
        None => {
            let x = newton_init(p);
            let x = if x > bracket.0 && x < bracket.1 { x } else { bracket.1 };
            (x, Method::Newton)
        }
    };
    bracketed_newton(|s| probe_s(p, s, &eval_opts), bracket, -1.0, x0, opts, method)
}

/// `s_n'(delta) = -(1/delta) s / (s - (n+1-delta))` at a solved root.
pub fn s_prime(p: &ECaseParams, s_root: f64) -> Result<f64> {
    let gap = s_root - p.y();
    if !(gap > 0.0) {
        return Err(Error::Degenerate {
            root: s_root,
            reason: "root does not exceed n + 1 - delta",
        });
    }
    Ok(-(s_root / gap) / p.delta())
}

/// Truncated reversion series for `s_n` at `delta = n + 1 - y`.
pub fn s_series(n: u32, y: f64, order: usize) -> Result<f64> {
    let top = f64::from(n) + 1.0;
    if !(y > 0.0 && y < top) {
        return Err(Error::Domain {
            name: "y",
            value: y,
            interval: crate::Interval::new(0.0, top),
        });
    }
    let coeffs = inversion::s_series_coeffs(n, order)?;
    Ok(coeffs.eval(y))
}

/// `F_1(s) = s^{n+1-delta} / (delta n! e^s)`.
pub fn f1(p: &ECaseParams, s: f64) -> f64 {
    (p.y() * s.ln() - s - p.delta().ln() - ln_factorial(p.n())).exp()
}

/// `F_2(s) = s^{n+1-delta} / (delta n! P(s))`.
pub fn f2(p: &ECaseParams, s: f64) -> f64 {
    let (ln_p, _) = ln_poly(p, s);
    (p.y() * s.ln() - ln_p - p.delta().ln() - ln_factorial(p.n())).exp()
}

/// Relative agreement required between the two maximum-value forms.
pub const FORM_AGREEMENT: f64 = 1e-10;

pub(crate) fn agree(first: f64, second: f64) -> Result<f64> {
    if (first - second).abs() <= FORM_AGREEMENT * first.abs().max(second.abs()) {
        Ok(0.5 * (first + second))
    } else {
        Err(Error::FormDisagreement { first, second })
    }
}

/// `ME_{n,delta}` from `E` at the root and from `F_1` at the root.
pub fn max_e(p: &ECaseParams) -> Result<MaxValue> {
    max_e_with(p, &SolveOptions::default())
}

pub fn max_e_with(p: &ECaseParams, opts: &SolveOptions) -> Result<MaxValue> {
    let root = solve_s_with(p, opts)?;
    let first = eval_e_with(p, root.root, &EvalOptions::default())?;
    let second = f1(p, root.root);
    let value = agree(first, second)?;
    Ok(MaxValue {
        value,
        forms: (first, second),
        root,
    })
}

/// Sandwich `E(S) < ME < F_2(S) < F_1(S)` at the tightest certified lower
/// bound `S`.
pub fn bound_me(p: &ECaseParams) -> MeBounds {
    bound_me_at(p, s_bounds(p).lower).expect("certified lower bound exceeds n + 1 - delta")
}

/// The same sandwich at any lower bound `s > n + 1 - delta` of the maximizer.
pub fn bound_me_at(p: &ECaseParams, s: f64) -> Result<MeBounds> {
    if !(s > p.y()) {
        return Err(Error::Precondition(format!(
            "lower bound {s} must exceed n + 1 - delta = {}",
            p.y()
        )));
    }
    Ok(MeBounds {
        s,
        lower: eval_e_with(p, s, &EvalOptions::default())?,
        upper_f2: f2(p, s),
        upper_f1: f1(p, s),
    })
}

/// `n! sum_{k>=n+1} 1/k!`.
fn scaled_e_tail(n: u32) -> f64 {
    let mut acc = Sum::default();
    let mut t = 1.0;
    for j in 1..200u32 {
        t /= f64::from(n) + f64::from(j);
        acc.add(t);
        if t < 1e-18 * acc.value() {
            break;
        }
    }
    acc.value()
}

/// Closed-form minimizer and minimum of `ME_{n,delta}` over delta.
pub fn min_me(n: u32) -> ExtremumSummary {
    let nf = f64::from(n);
    let scaled = scaled_e_tail(n);
    let fact = factorial(n);
    let delta_star = 1.0 / scaled;
    let value_star = scaled / fact / std::f64::consts::E;
    let base = 1.0 / (factorial(n + 1) * std::f64::consts::E);
    ExtremumSummary {
        delta_star,
        value_star,
        delta_bounds: (
            (nf + 1.0) * (nf + 1.0) / (nf + 2.0),
            (nf + 2.0) * (nf + 1.0) / (nf + 3.0),
        ),
        value_bounds: ((nf + 3.0) / (nf + 2.0) * base, (nf + 2.0) / (nf + 1.0) * base),
    }
}
