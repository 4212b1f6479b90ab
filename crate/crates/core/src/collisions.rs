//! Polynomials that decompose with both left degree `d` and left degree `e`.
//!
//! Two parametric families cover the intersection of the composition
//! varieties: exponential collisions built from `x^r w(x^k)^k` and
//! trigonometric collisions built from Dickson polynomials. Both are wrapped
//! in an original shift and sandwiched between components `u`, `v` of degree
//! `gcd(d, e)`.

use num_integer::Integer;

use crate::decompose::try_decompose;
use crate::error::{Error, Result};
use crate::poly::{MonicOriginal, Polynomial};
use crate::scalar::Scalar;

/// Dickson polynomial of the first kind: `T_0 = 2`, `T_1 = x`,
/// `T_k = x T_{k-1} - z T_{k-2}`. `T_k(x, 0) = x^k` for `k >= 1`.
pub fn dickson<S: Scalar>(k: usize, z: &S) -> Polynomial<S> {
    let mut prev = Polynomial::constant(S::from_i64(2));
    if k == 0 {
        return prev;
    }
    let mut cur = Polynomial::x();
    for _ in 1..k {
        let next = Polynomial::x().mul(&cur).sub(&prev.scale(z));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `(x - p(a)) o p o (x + a)`, i.e. `p(x + a) - p(a)`.
pub fn original_shift<S: Scalar>(p: &Polynomial<S>, a: &S) -> Polynomial<S> {
    let shifted = p.compose(&Polynomial::from_coeffs(vec![a.clone(), S::one()]));
    shifted.sub(&Polynomial::constant(p.eval(a)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum CollisionVariant<S> {
    /// `w = x^s + w_{s-1} x^{s-1} + ... + w_0`, given as `[w_{s-1}, ..., w_0]`.
    Exp {
        w: Vec<S>,
    },
    Trig {
        z: S,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollisionParams<S> {
    pub n: usize,
    pub d: usize,
    pub u: MonicOriginal<S>,
    pub v: MonicOriginal<S>,
    pub a: S,
    pub variant: CollisionVariant<S>,
}

impl<S: Scalar> CollisionParams<S> {
    pub fn e(&self) -> usize {
        self.n / self.d
    }

    /// `gcd(d, e)`
    pub fn i(&self) -> usize {
        self.d.gcd(&self.e())
    }

    /// `floor(e / d)`
    pub fn s(&self) -> usize {
        self.e() / self.d
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCollision(msg));
        let (n, d) = (self.n, self.d);
        if d < 2 || n % d != 0 {
            return bad(format!("d = {d} must be at least 2 and divide n = {n}"));
        }
        let (e, i) = (self.e(), self.i());
        if e <= d {
            return bad(format!("need e = n/d > d, got d = {d}, e = {e}"));
        }
        if self.u.degree() != i || self.v.degree() != i {
            return bad(format!(
                "u and v must have degree gcd(d, e) = {i}, got {} and {}",
                self.u.degree(),
                self.v.degree()
            ));
        }
        if let CollisionVariant::Exp { w } = &self.variant {
            if e == self.s() * d {
                return bad(format!(
                    "exponential collision undefined for e = s d (d = {d}, e = {e})"
                ));
            }
            if w.len() != self.s() {
                return bad(format!(
                    "w needs s = {} lower coefficients, got {}",
                    self.s(),
                    w.len()
                ));
            }
        }
        Ok(())
    }
}

fn sandwich<S: Scalar>(
    params: &CollisionParams<S>,
    core: &Polynomial<S>,
) -> Result<MonicOriginal<S>> {
    let inner = original_shift(core, &params.a);
    let f = params
        .u
        .as_poly()
        .compose(&inner)
        .compose(params.v.as_poly());
    MonicOriginal::new(f)
}

/// `u o (x^{d(e-sd)/i^2} w(x^{d/i})^{d/i})^{[a]} o v`
pub fn alpha_exp<S: Scalar>(params: &CollisionParams<S>) -> Result<MonicOriginal<S>> {
    params.validate()?;
    let CollisionVariant::Exp { w } = &params.variant else {
        return Err(Error::InvalidCollision(
            "alpha_exp needs the exponential variant".into(),
        ));
    };
    let (d, e, i, s) = (params.d, params.e(), params.i(), params.s());
    let num = d * (e - s * d);
    if num % (i * i) != 0 || d % i != 0 {
        return Err(Error::InvalidCollision("non-integral exponent".into()));
    }
    let r = num / (i * i);
    let k = d / i;
    let mut w_asc: Vec<S> = w.iter().rev().cloned().collect();
    w_asc.push(S::one());
    let w_sub = Polynomial::from_coeffs(w_asc).compose(&Polynomial::monomial(S::one(), k));
    let core = Polynomial::monomial(S::one(), r).mul(&w_sub.pow(k as u32));
    sandwich(params, &core)
}

/// `u o T_{n/i^2}(x, z)^{[a]} o v`
pub fn alpha_trig<S: Scalar>(params: &CollisionParams<S>) -> Result<MonicOriginal<S>> {
    params.validate()?;
    let CollisionVariant::Trig { z } = &params.variant else {
        return Err(Error::InvalidCollision(
            "alpha_trig needs the trigonometric variant".into(),
        ));
    };
    let i = params.i();
    if !params.n.is_multiple_of(i * i) {
        return Err(Error::InvalidCollision("n / i^2 is not integral".into()));
    }
    sandwich(params, &dickson(params.n / (i * i), z))
}

pub fn collide<S: Scalar>(params: &CollisionParams<S>) -> Result<MonicOriginal<S>> {
    match params.variant {
        CollisionVariant::Exp { .. } => alpha_exp(params),
        CollisionVariant::Trig { .. } => alpha_trig(params),
    }
}

/// True iff `f` decomposes with left degree `d` and with left degree `e`.
pub fn verify_bidecomposable<S: Scalar>(f: &MonicOriginal<S>, d: usize, e: usize) -> Result<bool> {
    Ok(try_decompose(f, d)?.is_some() && try_decompose(f, e)?.is_some())
}
