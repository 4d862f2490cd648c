#![allow(dead_code)]

/// `count` points log-spaced in `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// `count` points strictly inside `(lo, hi)`, evenly spaced.
pub fn interior_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| lo + (hi - lo) * i as f64 / (count + 1) as f64)
        .collect()
}

/// Forty deltas for the E-family: log-spaced from near 0 to near n+1.
pub fn e_deltas(n: u32) -> Vec<f64> {
    let top = f64::from(n) + 1.0;
    log_grid(1e-3 * top, 0.999 * top, 40)
}

/// Forty deltas for the G-family: `n + t` with `t` log-spaced in (0, 1).
pub fn u_deltas(n: u32) -> Vec<f64> {
    log_grid(1e-3, 0.999, 40)
        .into_iter()
        .map(|t| f64::from(n) + t)
        .collect()
}

/// Forty acceptance deltas for the G-family: `t` starts at 0.03, where the
/// gap between `u_1` and `delta/(delta-1)` is still above double resolution.
pub fn u_deltas_resolved(n: u32) -> Vec<f64> {
    log_grid(0.03, 0.999, 40)
        .into_iter()
        .map(|t| f64::from(n) + t)
        .collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}
