//! The G-family maximizer `u_n(delta)`, its bounds and the maximum value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{
    alt_direct_w, alt_tail_scaled, eval_g_with, factorial, ln_factorial, pow_over_factorial, EvalOptions, Sum,
    UCaseParams,
};
use crate::inversion;
use crate::root::{bracketed_newton, Method, Probe, RootReport, SolveOptions};
use crate::s_case::{agree, ExtremumSummary, MaxValue, SERIES_CROSSOVER, SERIES_INIT_ORDER};

/// Below this `delta - n` the iteration runs on the rescaled residual.
pub const RESCALE_CROSSOVER: f64 = 1e-3;

/// For `n = 1` the fixed-point polish is applied once `B = delta/(delta-1)`
/// reaches this value.
pub const POLISH_THRESHOLD: f64 = 20.0;

// Below this u the residual is summed from its power series.
const SMALL_U: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ULowerFormula {
    Prop17Sum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UUpperFormula {
    Prop17Ratio,
    Prop18Min,
    Prop19Cubic,
    Lemma7Log,
}

/// Certified enclosure of `u_n(delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UBoundPair {
    pub lower: f64,
    pub upper: f64,
    pub lower_formula: ULowerFormula,
    pub upper_formula: UUpperFormula,
}

/// `E(U) < MG < H(U)` at the certified lower bound `U`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MgBounds {
    pub u: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Rescaled residual `R(u) = n! (u + delta) K(u) / u^n` and `R'(u)`.
pub fn rescaled_residual(p: &UCaseParams, u: f64) -> (f64, f64) {
    rescaled_residual_with(p, u, &EvalOptions::default())
}

fn rescaled_residual_with(p: &UCaseParams, u: f64, opts: &EvalOptions) -> (f64, f64) {
    let n = p.n();
    let nf = f64::from(n);
    let d = p.delta();
    if u < SMALL_U {
        let (q, dq) = small_u_series(p, u, opts);
        let r = (u + d) * u * q;
        let dr = (2.0 * u + d) * q + (u + d) * u * dq;
        return (r, dr);
    }
    let m = i64::from(n) - 1;
    let a = alt_tail_scaled(m, u, opts);
    let a_prev = alt_tail_scaled(m - 1, u, opts);
    let dr = a + (u + d) * (nf / u) * (a_prev - a);
    let r = if u >= (m as f64) + opts.tail_switch_u && m >= 0 {
        let w = if m == 0 { (-u).exp() } else { alt_direct_w(m as u32, u) };
        (nf - d) - nf * w + d * nf / u * (1.0 - w)
    } else {
        (u + d) * a - d
    };
    (r, dr)
}

// Q(u) = n! K / u^{n+1} = sum_{j>=1} (-1)^{j+1} (delta^{-j} - n!/(n+j)!) u^{j-1}
// and Q'(u).
fn small_u_series(p: &UCaseParams, u: f64, opts: &EvalOptions) -> (f64, f64) {
    let nf = f64::from(p.n());
    let d = p.delta();
    let mut q = Sum::default();
    let mut dq = Sum::default();
    let first = p.y() / (d * (nf + 1.0));
    q.add(first);
    let mut scale = first.abs();
    let mut inv_pow = 1.0 / d;
    let mut fact_ratio = 1.0 / (nf + 1.0);
    let mut u_pow = 1.0;
    for j in 2..opts.max_terms {
        let jf = j as f64;
        inv_pow /= d;
        fact_ratio /= nf + jf;
        let c = inv_pow - fact_ratio;
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        dq.add(sign * c * (jf - 1.0) * u_pow);
        u_pow *= u;
        let term = sign * c * u_pow;
        q.add(term);
        scale += term.abs();
        if term.abs() <= 1e-17 * scale {
            break;
        }
    }
    (q.value(), dq.value())
}

/// `K_{n,delta}(u)`, positive below the maximizer and negative above.
pub fn k_residual(p: &UCaseParams, u: f64) -> f64 {
    let (r, _) = rescaled_residual(p, u);
    r * pow_over_factorial(u, p.n()) / (u + p.delta())
}

/// Every individual bound formula for `u_n(delta)`; formulas outside their
/// stated range of `n` are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UBoundTerms {
    pub prop17_sum: f64,
    pub prop17_ratio: f64,
    pub prop18_min: Option<f64>,
    pub prop19_cubic: Option<f64>,
    pub lemma7_log: f64,
}

pub fn u_bound_terms(p: &UCaseParams) -> UBoundTerms {
    let n = p.n();
    let d = p.delta();
    let y = p.y();
    let ex = p.excess();
    let peak = y * d / ex;
    UBoundTerms {
        prop17_sum: peak + y,
        prop17_ratio: d / ex,
        prop18_min: (n >= 2).then(|| peak + (y + 0.5 * y * y).min(1.0)),
        prop19_cubic: (n == 1).then(|| peak + y + y * y / 2.0 + y * y * y / 3.0),
        lemma7_log: peak - ex.ln(),
    }
}

/// Tightest enclosure of `u_n(delta)`.
pub fn u_bounds(p: &UCaseParams) -> UBoundPair {
    let t = u_bound_terms(p);
    let candidates = [
        Some((t.prop17_ratio, UUpperFormula::Prop17Ratio)),
        t.prop18_min.map(|v| (v, UUpperFormula::Prop18Min)),
        t.prop19_cubic.map(|v| (v, UUpperFormula::Prop19Cubic)),
        Some((t.lemma7_log, UUpperFormula::Lemma7Log)),
    ];
    let (upper, upper_formula) =
        candidates
            .into_iter()
            .flatten()
            .fold((f64::INFINITY, UUpperFormula::Prop17Ratio), |best, c| {
                if c.0 < best.0 {
                    c
                } else {
                    best
                }
            });
    UBoundPair {
        lower: t.prop17_sum,
        upper,
        lower_formula: ULowerFormula::Prop17Sum,
        upper_formula,
    }
}

fn probe_u(p: &UCaseParams, u: f64, rescaled: bool, opts: &EvalOptions) -> Probe {
    let (r, dr) = rescaled_residual_with(p, u, opts);
    let nf = f64::from(p.n());
    let denom = if rescaled {
        dr
    } else {
        dr + r * (nf / u - 1.0 / (u + p.delta()))
    };
    Probe {
        sign: r,
        step: -r / denom,
        residual: r,
    }
}

/// Maximizer with the given tolerance on the rescaled residual.
pub fn solve_u(p: &UCaseParams, tol: f64) -> Result<RootReport> {
    solve_u_with(p, &SolveOptions::with_tol(tol))
}

pub fn solve_u_with(p: &UCaseParams, opts: &SolveOptions) -> Result<RootReport> {
    opts.validate()?;
    let eval_opts = EvalOptions::default();
    let bounds = u_bounds(p);
    let bracket = (bounds.lower, bounds.upper);
    let y = p.y();
    let (x0, method) = match opts.init {
        Some(x) => (x, Method::Newton),
        None if y < SERIES_CROSSOVER => {
            let x = u_series(p.n(), y, SERIES_INIT_ORDER)?;
            (x.clamp(bracket.0, bracket.1), Method::Series)
        }
        None => (bracket.0, Method::Newton),
    };
    let rescaled = p.excess() < RESCALE_CROSSOVER;
    let mut report = bracketed_newton(|u| probe_u(p, u, rescaled, &eval_opts), bracket, 1.0, x0, opts, method)?;
    if p.n() == 1 {
        let b = p.delta() / p.excess();
        if b >= POLISH_THRESHOLD {
            let u = report.root;
            let polished = b * (1.0 - u / u.exp_m1());
            if polished != u {
                report.iterands.push(polished);
            }
            report.root = polished;
            report.residual = rescaled_residual(p, polished).0;
        }
    }
    Ok(report)
}

/// `u_n'(delta) = -u / ((delta - n) u - (n+1-delta) delta)` at a solved root.
pub fn u_prime(p: &UCaseParams, u_root: f64) -> Result<f64> {
    let denom = p.excess() * u_root - p.y() * p.delta();
    if !(denom > 0.0) {
        return Err(Error::Degenerate {
            root: u_root,
            reason: "(delta - n) u - (n+1-delta) delta is not positive",
        });
    }
    Ok(-u_root / denom)
}

/// Truncated reversion series for `u_n` at `delta = n + 1 - y`.
pub fn u_series(n: u32, y: f64, order: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::Order { n, min: 1 });
    }
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::Domain {
            name: "y",
            value: y,
            interval: crate::Interval::new(0.0, 1.0),
        });
    }
    let coeffs = inversion::u_series_coeffs(n, order)?;
    Ok(coeffs.eval(y))
}

/// `H(u) = u^{n+1-delta} / (n! (u + delta))`.
pub fn h(p: &UCaseParams, u: f64) -> f64 {
    (p.y() * u.ln() - ln_factorial(p.n()) - (u + p.delta()).ln()).exp()
}

/// `MG_{n,delta}` from `G` at the root and from `H` at the root.
pub fn max_g(p: &UCaseParams) -> Result<MaxValue> {
    max_g_with(p, &SolveOptions::default())
}

pub fn max_g_with(p: &UCaseParams, opts: &SolveOptions) -> Result<MaxValue> {
    let root = solve_u_with(p, opts)?;
    let first = eval_g_with(p, root.root, &EvalOptions::default())?;
    let second = h(p, root.root);
    let value = agree(first, second)?;
    Ok(MaxValue {
        value,
        forms: (first, second),
        root,
    })
}

/// `G(U) < MG < H(U)` at the certified lower bound `U`.
pub fn bound_mg(p: &UCaseParams) -> MgBounds {
    bound_mg_at(p, u_bounds(p).lower).expect("certified lower bound lies past the peak of H")
}

/// The same sandwich at any lower bound `u >= (n+1-delta) delta / (delta-n)`.
pub fn bound_mg_at(p: &UCaseParams, u: f64) -> Result<MgBounds> {
    let peak = p.y() * p.delta() / p.excess();
    if !(u >= peak) {
        return Err(Error::Precondition(format!("lower bound {u} must be at least {peak}")));
    }
    Ok(MgBounds {
        u,
        lower: eval_g_with(p, u, &EvalOptions::default())?,
        upper: h(p, u),
    })
}

/// `n! (-1)^{n+1} (e^{-1} - sum_{k<=n} (-1)^k/k!)`.
fn scaled_g_tail(n: u32) -> f64 {
    let mut acc = Sum::default();
    let mut t = 1.0;
    for j in 1..200u32 {
        t /= f64::from(n) + f64::from(j);
        acc.add(if j % 2 == 1 { t } else { -t });
        if t < 1e-18 * acc.value() {
            break;
        }
    }
    acc.value()
}

/// Closed-form minimizer and minimum of `MG_{n,delta}` over delta.
pub fn min_mg(n: u32) -> Result<ExtremumSummary> {
    if n < 1 {
        return Err(Error::Order { n, min: 1 });
    }
    let nf = f64::from(n);
    let scaled = scaled_g_tail(n);
    let base = 1.0 / factorial(n + 1);
    Ok(ExtremumSummary {
        delta_star: 1.0 / scaled - 1.0,
        value_star: scaled / factorial(n),
        delta_bounds: (nf + 1.0 - 1.0 / (nf + 2.0), nf + 1.0),
        value_bounds: ((nf + 1.0) / (nf + 2.0) * base, (nf + 2.0) / (nf + 3.0) * base),
    })
}
