//! Exact-rational series reversion.
//!
//! An equation `x B(x) / A(x) = w` with `A(0) = B(0) = 1` is inverted as
//! `x = sum_m g_m w^m`, where `g_m` is `1/m` times the coefficient of
//! `x^{m-1}` in `(A/B)^m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 12;

/// Coefficients `g_1..g_M` of a reversion series in `argument_scale * y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCoeffs {
    pub order: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<Rational>,
    #[serde(serialize_with = "ser_rational")]
    pub argument_scale: Rational,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_rationals<S: Serializer>(rs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| r.to_string()))
}

impl SeriesCoeffs {
    /// `sum_{m=1..M} g_m (scale y)^m` by Horner's rule in floating point.
    pub fn eval(&self, y: f64) -> f64 {
        let w = to_f64(&self.argument_scale) * y;
        self.coeffs.iter().rev().fold(0.0, |acc, g| (acc + to_f64(g)) * w)
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

fn check_order(m: usize) -> Result<()> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::Precondition(format!(
            "series order {m} must lie in 1..={MAX_ORDER}"
        )));
    }
    Ok(())
}

/// Coefficients `c_0..c_M` of `(sum a_k x^k) / (sum b_k x^k)`.
pub fn quotient_coeffs(a: &[Rational], b: &[Rational], m: usize) -> Result<Vec<Rational>> {
    if a.len() < m + 1 || b.len() < m + 1 {
        return Err(Error::Precondition(format!(
            "need {} coefficients of each series",
            m + 1
        )));
    }
    if !a[0].is_one() || !b[0].is_one() {
        return Err(Error::Precondition("leading coefficients must equal 1".into()));
    }
    let mut c: Vec<Rational> = Vec::with_capacity(m + 1);
    c.push(Rational::one());
    for k in 1..=m {
        let mut ck = a[k].clone();
        for (l, cl) in c.iter().enumerate() {
            ck -= &b[k - l] * cl;
        }
        c.push(ck);
    }
    Ok(c)
}

// Product of two series truncated after degree `deg`.
fn mul_truncated(p: &[Rational], q: &[Rational], deg: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); deg + 1];
    for (i, pi) in p.iter().enumerate().take(deg + 1) {
        if pi.is_zero() {
            continue;
        }
        for (j, qj) in q.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += pi * qj;
        }
    }
    out
}

/// Reversion coefficients `g_1..g_M` from the quotient series `c`.
pub fn lagrange_coeffs(c: &[Rational], m: usize) -> Result<SeriesCoeffs> {
    check_order(m)?;
    if c.len() < m {
        return Err(Error::Precondition(format!("need {m} quotient coefficients")));
    }
    if !c[0].is_one() {
        return Err(Error::Precondition("c_0 must equal 1".into()));
    }
    let deg = m - 1;
    let base: Vec<Rational> = c.iter().take(deg + 1).cloned().collect();
    let mut power = base.clone();
    let mut coeffs = Vec::with_capacity(m);
    for k in 1..=m {
        if k > 1 {
            power = mul_truncated(&power, &base, deg);
        }
        coeffs.push(&power[k - 1] / Rational::from_integer(int(k as u64)));
    }
    Ok(SeriesCoeffs {
        order: m,
        coeffs,
        argument_scale: Rational::one(),
    })
}

// (n+1)! / (n+k+1)! as an exact rational.
fn falling_ratio(n: u64, k: u64) -> Rational {
    let den = (n + 2..=n + k + 1).fold(BigInt::one(), |acc, v| acc * int(v));
    Rational::new(BigInt::one(), den)
}

/// `a_k = (n+1)!/(n+k+1)!` and `b_k = (n+2)!/(n+k+2)!` for `k = 0..=len-1`.
pub fn e_families(n: u32, len: usize) -> (Vec<Rational>, Vec<Rational>) {
    let n = u64::from(n);
    let a = (0..len as u64).map(|k| falling_ratio(n, k)).collect();
    let b = (0..len as u64).map(|k| falling_ratio(n + 1, k)).collect();
    (a, b)
}

/// `d_k = (-1)^k (n+1)!/(n+k+1)!` and `e_k = (-1)^k (k+1) (n+2)!/(n+k+2)!`.
pub fn u_families(n: u32, len: usize) -> (Vec<Rational>, Vec<Rational>) {
    let n = u64::from(n);
    let sign = |k: u64| {
        if k.is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        }
    };
    let d = (0..len as u64).map(|k| sign(k) * falling_ratio(n, k)).collect();
    let e = (0..len as u64)
        .map(|k| sign(k) * Rational::from_integer(int(k + 1)) * falling_ratio(n + 1, k))
        .collect();
    (d, e)
}

/// Series for `s_n` in powers of `((n+2)/(n+1)) y`.
pub fn s_series_coeffs(n: u32, m: usize) -> Result<SeriesCoeffs> {
    check_order(m)?;
    let (a, b) = e_families(n, m + 1);
    let c = quotient_coeffs(&a, &b, m)?;
    let mut out = lagrange_coeffs(&c, m)?;
    out.argument_scale = Rational::new(int(u64::from(n) + 2), int(u64::from(n) + 1));
    Ok(out)
}

/// Series for `u_n` in powers of `(n+2) y`.
pub fn u_series_coeffs(n: u32, m: usize) -> Result<SeriesCoeffs> {
    check_order(m)?;
    if n < 1 {
        return Err(Error::Order { n, min: 1 });
    }
    let (d, e) = u_families(n, m + 1);
    let c = quotient_coeffs(&d, &e, m)?;
    let mut out = lagrange_coeffs(&c, m)?;
    out.argument_scale = Rational::from_integer(int(u64::from(n) + 2));
    Ok(out)
}
