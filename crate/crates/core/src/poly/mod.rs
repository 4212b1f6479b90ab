//! Dense univariate polynomials over a [`Scalar`] field.
//!
//! Coefficients are stored in ascending order: `coeffs[i]` is the coefficient
//! of x^i. The zero polynomial is the empty vector. Trailing coefficients that
//! are exactly zero are stripped after every operation; floating point values
//! that are merely tiny are kept, so the degree of a float polynomial is
//! structural rather than numerical.

mod series;
mod text;

pub use series::{precision_ladder, reverse, reverse_with_degree, series_dth_root, series_inverse};

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Below this operand length multiplication is schoolbook.
const KARATSUBA_THRESHOLD: usize = 32;

/// Default coefficientwise tolerance for comparing float polynomials.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// From ascending coefficients.
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    /// From descending coefficients, leading coefficient first.
    pub fn from_descending(mut coeffs: Vec<S>) -> Self {
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![S::zero(), S::one()],
        }
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: S, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of x^i, zero past the degree.
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> S {
        self.coeff(0)
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.add_ref(s);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().cloned().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(mul_slices(&self.coeffs, &other.coeffs))
    }

    /// Product reduced modulo x^k.
    pub fn mul_trunc(&self, other: &Self, k: usize) -> Self {
        let mut out = vec![S::zero(); k.min(self.coeffs.len() + other.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate().take(k) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(k - i) {
                out[i + j].add_mul(a, b);
            }
        }
        Self::from_coeffs(out)
    }

    /// Reduction modulo x^k.
    pub fn truncate(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(k).cloned().collect())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// `self(h)`
    pub fn compose(&self, h: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(h).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.coeffs[dd].clone();
        let monic = lead.is_one();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![S::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = if monic { top } else { top / lead.clone() };
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&q.mul_ref(dc));
            }
            // exact cancellation of the leading term, also for floats
            rem[k + dd] = S::zero();
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Coefficientwise comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| self.coeff(i).sub_ref(&other.coeff(i)).magnitude() <= tol)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

fn mul_slices<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return schoolbook(a, b);
    }
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    let half = a.len().max(b.len()) / 2;
    if a.len() <= half || b.len() <= half {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        for (ci, chunk) in long.chunks(short.len()).enumerate() {
            let offset = ci * short.len();
            for (j, c) in mul_slices(chunk, short).into_iter().enumerate() {
                out[offset + j] = out[offset + j].add_ref(&c);
            }
        }
        return out;
    }
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let low = mul_slices(a0, b0);
    let high = mul_slices(a1, b1);
    let mid = mul_slices(&add_slices(a0, a1), &add_slices(b0, b1));
    for (i, c) in low.iter().enumerate() {
        out[i] = out[i].add_ref(c);
        out[i + half] = out[i + half].sub_ref(c);
    }
    for (i, c) in high.iter().enumerate() {
        out[i + 2 * half] = out[i + 2 * half].add_ref(c);
        out[i + half] = out[i + half].sub_ref(c);
    }
    for (i, c) in mid.iter().enumerate() {
        out[i + half] = out[i + half].add_ref(c);
    }
    out
}

fn schoolbook<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_mul(x, y);
        }
    }
    out
}

fn add_slices<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add_ref(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: Self) -> Polynomial<S> {
        Polynomial::add(self, rhs)
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: Self) -> Polynomial<S> {
        Polynomial::sub(self, rhs)
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: Self) -> Polynomial<S> {
        Polynomial::mul(self, rhs)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial::neg(self)
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `g(h)`. For nonconstant g and h the degree is `deg g * deg h`.
pub fn compose<S: Scalar>(g: &Polynomial<S>, h: &Polynomial<S>) -> Polynomial<S> {
    g.compose(h)
}

/// Generalized Taylor expansion `f = sum_{i<=d} G_i h^i` with `deg G_i < deg h`,
/// by repeated division with remainder. Returns `(G_0, ..., G_d)`.
pub fn taylor_coefficients<S: Scalar>(
    f: &Polynomial<S>,
    h: &Polynomial<S>,
    d: usize,
) -> Result<Vec<Polynomial<S>>> {
    let e = match h.degree() {
        Some(e) if e >= 1 => e,
        _ => {
            return Err(Error::InvalidArgument(
                "expansion base must be nonconstant".into(),
            ))
        }
    };
    if let Some(deg) = f.degree() {
        if deg > d * e {
            return Err(Error::DegreeTooLarge {
                actual: deg,
                bound: d * e,
            });
        }
    }
    let mut out = Vec::with_capacity(d + 1);
    let mut cur = f.clone();
    for _ in 0..d {
        let (q, r) = cur.div_rem(h)?;
        out.push(r);
        cur = q;
    }
    out.push(cur);
    Ok(out)
}

/// A monic original polynomial: leading coefficient 1, constant term 0,
/// degree at least 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicOriginal<S> {
    inner: Polynomial<S>,
}

impl<S: Scalar> MonicOriginal<S> {
    pub fn new(p: Polynomial<S>) -> Result<Self> {
        match p.degree() {
            None | Some(0) => Err(Error::NotMonicOriginal("degree must be at least 1".into())),
            Some(_) if !p.leading().is_some_and(Scalar::is_one) => Err(Error::NotMonicOriginal(
                "leading coefficient is not 1".into(),
            )),
            Some(_) if !p.constant_term().is_zero() => {
                Err(Error::NotMonicOriginal("constant term is not 0".into()))
            }
            Some(_) => Ok(MonicOriginal { inner: p }),
        }
    }

    /// Builds `x^n + c_{n-1} x^{n-1} + ... + c_1 x` from `lower = [c_1, ..., c_{n-1}]`.
    pub fn from_lower(lower: &[S]) -> Self {
        let mut coeffs = Vec::with_capacity(lower.len() + 2);
        coeffs.push(S::zero());
        coeffs.extend_from_slice(lower);
        coeffs.push(S::one());
        MonicOriginal {
            inner: Polynomial { coeffs },
        }
    }

    /// The polynomial x.
    pub fn identity() -> Self {
        MonicOriginal {
            inner: Polynomial::x(),
        }
    }

    pub fn monomial(n: usize) -> Self {
        assert!(n >= 1, "monic original monomial needs positive degree");
        MonicOriginal {
            inner: Polynomial::monomial(S::one(), n),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.coeffs.len() - 1
    }

    pub fn as_poly(&self) -> &Polynomial<S> {
        &self.inner
    }

    pub fn into_poly(self) -> Polynomial<S> {
        self.inner
    }

    /// Coefficients of x^1, ..., x^{n-1}.
    pub fn lower(&self) -> &[S] {
        &self.inner.coeffs[1..self.degree()]
    }

    /// Composition stays monic original.
    pub fn compose(&self, h: &Self) -> Self {
        MonicOriginal {
            inner: self.inner.compose(&h.inner),
        }
    }
}

impl<S> Deref for MonicOriginal<S> {
    type Target = Polynomial<S>;
    fn deref(&self) -> &Polynomial<S> {
        &self.inner
    }
}

impl<S: Scalar> fmt::Display for MonicOriginal<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}
