//! Truncated power series: reversal, Newton inversion and Newton d-th roots.

use super::{MonicOriginal, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `x^n * f(1/x)` for monic original `f` of degree n. The result has
/// constant term 1 and degree below n.
pub fn reverse<S: Scalar>(f: &MonicOriginal<S>) -> Polynomial<S> {
    reverse_with_degree(f.as_poly(), f.degree())
}

/// `x^n * p(1/x)` for a polynomial of degree at most n.
pub fn reverse_with_degree<S: Scalar>(p: &Polynomial<S>, n: usize) -> Polynomial<S> {
    Polynomial::from_coeffs((0..=n).map(|i| p.coeff(n - i)).collect())
}

/// Truncation lengths 1, 2, 4, ... capped so the last one is exactly `k`.
pub fn precision_ladder(k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut l = 1;
    while l < k {
        out.push(l);
        l *= 2;
    }
    if k > 0 {
        out.push(k);
    }
    out
}

/// `q` with `p * q = 1 mod x^k`, `deg q < k`.
pub fn series_inverse<S: Scalar>(p: &Polynomial<S>, k: usize) -> Result<Polynomial<S>> {
    let p0 = p.constant_term();
    if p0.is_zero() {
        return Err(Error::NonInvertibleSeries);
    }
    if k == 0 {
        return Ok(Polynomial::zero());
    }
    let two = Polynomial::constant(S::from_i64(2));
    let mut q = Polynomial::constant(S::one() / p0);
    for l in precision_ladder(k).into_iter().skip(1) {
        // q <- q (2 - p q)
        let pq = p.truncate(l).mul_trunc(&q, l);
        q = q.mul_trunc(&two.sub(&pq), l);
    }
    Ok(q)
}

/// The unique `q` with `q^d = p mod x^k`, `q(0) = 1`, `deg q < k`.
///
/// Requires `p(0) = 1`. Newton's step is `q <- ((d-1) q + p q^{1-d}) / d`.
pub fn series_dth_root<S: Scalar>(p: &Polynomial<S>, d: usize, k: usize) -> Result<Polynomial<S>> {
    if d == 0 {
        return Err(Error::InvalidArgument("root order must be positive".into()));
    }
    if !p.constant_term().is_one() {
        return Err(Error::RootNormalization);
    }
    if k == 0 {
        return Ok(Polynomial::zero());
    }
    if d == 1 {
        return Ok(p.truncate(k));
    }
    let dm1 = S::from_i64(d as i64 - 1);
    let inv_d = S::one() / S::from_i64(d as i64);
    let mut q = Polynomial::one();
    for l in precision_ladder(k).into_iter().skip(1) {
        let mut qpow = Polynomial::one();
        for _ in 0..d - 1 {
            qpow = qpow.mul_trunc(&q, l);
        }
        let correction = p.truncate(l).mul_trunc(&series_inverse(&qpow, l)?, l);
        q = q.scale(&dm1).add(&correction).scale(&inv_d);
    }
    Ok(q)
}
