//! Bracketed Newton iteration shared by both maximizer solvers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a root was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Newton,
    BisectionFallback,
    Series,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Newton => "newton",
            Method::BisectionFallback => "bisection_fallback",
            Method::Series => "series",
        }
    }
}

/// Result of a maximizer solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub root: f64,
    /// Every iterate in order, starting with the initializer.
    pub iterands: Vec<f64>,
    pub residual: f64,
    /// Certified enclosure the iteration started from.
    pub bracket: (f64, f64),
    pub method: Method,
}

/// Solver controls. `init` overrides the default initializer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub init: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 60,
            init: None,
        }
    }
}

impl SolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidOption(format!("tol = {} must be positive", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidOption("max_iter must be positive".into()));
        }
        if let Some(x) = self.init {
            if !(x > 0.0) || !x.is_finite() {
                return Err(Error::InvalidOption(format!("init = {x} must be positive")));
            }
        }
        Ok(())
    }
}

/// One evaluation of the iteration function.
pub(crate) struct Probe {
    /// Has the sign of `low_sign` below the root.
    pub sign: f64,
    /// Proposed Newton correction.
    pub step: f64,
    /// Reported residual.
    pub residual: f64,
}

pub(crate) fn bracketed_newton(
    mut probe: impl FnMut(f64) -> Probe,
    bracket: (f64, f64),
    low_sign: f64,
    x0: f64,
    opts: &SolveOptions,
    mut method: Method,
) -> Result<RootReport> {
    let (mut lo, mut hi) = bracket;
    let mut x = x0;
    let mut iterands = vec![x];
    let mut small_newton_step = false;

    // One evaluation per pass; the loop exits as soon as x is accepted.
    for _ in 0..=opts.max_iter {
        let p = probe(x);
        let done = |residual: f64| residual.abs() <= opts.tol;
        if p.sign == 0.0 {
            return Ok(report(x, iterands, p.residual, bracket, method));
        }
        if p.sign * low_sign > 0.0 {
            lo = lo.max(x);
        } else {
            hi = hi.min(x);
        }
        if small_newton_step && done(p.residual) {
            return Ok(report(x, iterands, p.residual, bracket, method));
        }
        let scale = x.abs().max(f64::MIN_POSITIVE);
        if p.step.abs() <= 4.0 * f64::EPSILON * scale || hi - lo <= 4.0 * f64::EPSILON * scale {
            if done(p.residual) {
                return Ok(report(x, iterands, p.residual, bracket, method));
            }
            break;
        }
        if iterands.len() > opts.max_iter {
            break;
        }
        let candidate = x + p.step;
        if candidate.is_finite() && candidate >= lo && candidate <= hi {
            small_newton_step = p.step.abs() <= 1e-8 * scale;
            x = candidate;
        } else {
            small_newton_step = false;
            method = Method::BisectionFallback;
            x = 0.5 * (lo + hi);
        }
        iterands.push(x);
    }
    Err(Error::NotConverged {
        iterations: iterands.len() - 1,
        last: x,
        low: lo,
        high: hi,
    })
}

fn report(root: f64, iterands: Vec<f64>, residual: f64, bracket: (f64, f64), method: Method) -> RootReport {
    RootReport {
        root,
        iterands,
        residual,
        bracket,
        method,
    }
}
