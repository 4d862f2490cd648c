//! Maximizers, maximum values and certified bounds for the truncated
//! exponential ratio families
//!
//! ```text
//! E_{n,d}(s) = (1 - e^{-s} sum_{k<=n} s^k/k!) / s^d,            0 < d < n+1
//! G_{n,d}(u) = (-1)^{n+1} (e^{-u} - sum_{k<=n} (-u)^k/k!) / u^d,  n < d < n+1
//! ```
//!
//! | module        | contents                                                   |
//! |---------------|------------------------------------------------------------|
//! | [`eval`]      | stable evaluation of both families, their numerators, `Phi` |
//! | [`s_case`]    | `s_n(d)`, its bounds, derivative, series, `ME_{n,d}`        |
//! | [`u_case`]    | `u_n(d)`, its bounds, derivative, series, `MG_{n,d}`        |
//! | [`inversion`] | exact-rational series reversion                            |
//!
//! ```
//! use truncexp::{solve_s, ECaseParams};
//!
//! let p = ECaseParams::new(1, 1.0 / (std::f64::consts::E - 2.0)).unwrap();
//! let report = solve_s(&p, 1e-12).unwrap();
//! assert!((report.root - 1.0).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod eval;
pub mod inversion;
mod root;
pub mod s_case;
pub mod u_case;

pub use error::{Error, Interval, Result};
pub use eval::{
    alt_tail, alt_tail_direct, alt_tail_series, alt_tail_with, e_limit_at_zero, e_ratio, eval_e, eval_e_with, eval_g,
    eval_g_with, exp_tail, exp_tail_direct, exp_tail_series, exp_tail_with, g_limit_at_zero, g_ratio, phi, ECaseParams,
    EvalOptions, UCaseParams, EULER_GAMMA,
};
pub use inversion::{lagrange_coeffs, quotient_coeffs, Rational, SeriesCoeffs};
pub use root::{Method, RootReport, SolveOptions};
pub use s_case::{
    bound_me, bound_me_at, max_e, max_e_with, min_me, psi, s_bound_terms, s_bound_terms_with, s_bounds, s_bounds_with,
    s_prime, s_series, solve_s, solve_s_with, BoundPair, ExtremumSummary, LowerFormula, MaxValue, MeBounds,
    SBoundTerms, UpperFormula,
};
pub use u_case::{
    bound_mg, bound_mg_at, k_residual, max_g, max_g_with, min_mg, solve_u, solve_u_with, u_bound_terms, u_bounds,
    u_prime, u_series, MgBounds, UBoundPair, UBoundTerms, ULowerFormula, UUpperFormula,
};
