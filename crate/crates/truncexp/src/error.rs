use std::fmt;

use thiserror::Error;

/// Open interval used in domain error messages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn new(low: f64, high: f64) -> Self {
        Self { low, high }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.low && x < self.high
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.low, self.high)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the valid interval {interval}")]
    Domain {
        name: &'static str,
        value: f64,
        interval: Interval,
    },
    #[error("n = {n} is not allowed here (need n >= {min})")]
    Order { n: u32, min: u32 },
    #[error("{name} = {value} must be nonnegative")]
    Negative { name: &'static str, value: f64 },
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("no convergence after {iterations} iterations; last iterate {last}, bracket [{low}, {high}]")]
    NotConverged {
        iterations: usize,
        last: f64,
        low: f64,
        high: f64,
    },
    #[error("degenerate root {root}: {reason}")]
    Degenerate { root: f64, reason: &'static str },
    #[error("maximum-value forms disagree: {first} vs {second}")]
    FormDisagreement { first: f64, second: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for failures of an iterative solve rather than bad input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::NotConverged { .. } | Error::Degenerate { .. } | Error::FormDisagreement { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
