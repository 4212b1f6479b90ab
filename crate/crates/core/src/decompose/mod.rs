//! Newton-Taylor decomposition.
//!
//! For a monic original `f` of degree `n = d e`, the candidate right component
//! `h` is the reverse of the d-th root of the reverse of `f` modulo `x^e`. Then
//! `f` is a composition `g(h)` exactly when every coefficient of the generalized
//! Taylor expansion of `f` around `h` is a constant, and those constants are
//! the coefficients of `g`.

mod ntset;

pub use ntset::{degree_bound, dimension, divisor_plan, nt_set, DivisorPlan, NtSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{series_dth_root, taylor_coefficients, MonicOriginal, Polynomial};
use crate::scalar::Scalar;

/// Default relative tolerance for deciding that a float Taylor coefficient is
/// constant.
pub const DEFAULT_DECOMPOSE_TOLERANCE: f64 = 1e-9;

/// `f = g(h)` with `g`, `h` monic original.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<S> {
    pub g: MonicOriginal<S>,
    pub h: MonicOriginal<S>,
}

/// Serialized shape of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRecord {
    pub d: usize,
    pub g: String,
    pub h: String,
}

impl<S: Scalar> Decomposition<S> {
    pub fn d(&self) -> usize {
        self.g.degree()
    }

    pub fn e(&self) -> usize {
        self.h.degree()
    }

    pub fn compose(&self) -> MonicOriginal<S> {
        self.g.compose(&self.h)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.g.approx_eq(&other.g, tol) && self.h.approx_eq(&other.h, tol)
    }

    pub fn to_record(&self) -> DecompositionRecord {
        DecompositionRecord {
            d: self.d(),
            g: self.g.to_text(),
            h: self.h.to_text(),
        }
    }
}

impl NtSet {
    /// The NT coordinates of `f`, in the order of `self.nt`.
    pub fn project<S: Scalar>(&self, f: &Polynomial<S>) -> Vec<S> {
        self.nt.iter().map(|&i| f.coeff(i)).collect()
    }
}

/// `top = [f_{n-1}, ..., f_{n-e+1}]`.
fn right_component_from_top<S: Scalar>(top: &[S], d: usize, e: usize) -> Result<MonicOriginal<S>> {
    debug_assert_eq!(top.len(), e - 1);
    let mut rev = Vec::with_capacity(e);
    rev.push(S::one());
    rev.extend_from_slice(top);
    let root = series_dth_root(&Polynomial::from_coeffs(rev), d, e)?;
    // h_j = root_{e-j}
    let lower: Vec<S> = (1..e).map(|j| root.coeff(e - j)).collect();
    Ok(MonicOriginal::from_lower(&lower))
}

/// The unique candidate right component of degree `n/d`. Depends only on
/// `f_{n-1}, ..., f_{n-e+1}`.
pub fn right_component<S: Scalar>(f: &MonicOriginal<S>, d: usize) -> Result<MonicOriginal<S>> {
    let n = f.degree();
    ntset::check_proper_divisor(n, d)?;
    let e = n / d;
    let top: Vec<S> = (1..e).map(|k| f.coeff(n - k)).collect();
    right_component_from_top(&top, d, e)
}

/// Decomposition of `f` with left component of degree `d`, if one exists.
///
/// Over floats a Taylor coefficient counts as constant when all its
/// non-constant coefficients are below `DEFAULT_DECOMPOSE_TOLERANCE * max(1, |f|_inf)`.
pub fn try_decompose<S: Scalar>(
    f: &MonicOriginal<S>,
    d: usize,
) -> Result<Option<Decomposition<S>>> {
    try_decompose_with_tolerance(f, d, DEFAULT_DECOMPOSE_TOLERANCE)
}

pub fn try_decompose_with_tolerance<S: Scalar>(
    f: &MonicOriginal<S>,
    d: usize,
    tolerance: f64,
) -> Result<Option<Decomposition<S>>> {
    let h = right_component(f, d)?;
    let taylor = taylor_coefficients(f.as_poly(), h.as_poly(), d)?;
    let threshold = tolerance * f.max_norm().max(1.0);
    let constant = |gi: &Polynomial<S>| {
        if S::EXACT {
            gi.is_constant()
        } else {
            gi.coeffs()
                .iter()
                .skip(1)
                .all(|c| c.magnitude() < threshold)
        }
    };
    if !taylor.iter().all(constant) {
        return Ok(None);
    }
    debug_assert!(
        !S::EXACT || (taylor[0].constant_term().is_zero() && taylor[d].constant_term().is_one())
    );
    let lower: Vec<S> = taylor[1..d].iter().map(Polynomial::constant_term).collect();
    Ok(Some(Decomposition {
        g: MonicOriginal::from_lower(&lower),
        h,
    }))
}

/// All proper divisors `d` (ascending) at which `f` decomposes. Empty when
/// the degree is prime or below 4.
pub fn is_decomposable<S: Scalar>(f: &MonicOriginal<S>) -> Vec<(usize, Decomposition<S>)> {
    is_decomposable_with_tolerance(f, DEFAULT_DECOMPOSE_TOLERANCE)
}

pub fn is_decomposable_with_tolerance<S: Scalar>(
    f: &MonicOriginal<S>,
    tolerance: f64,
) -> Vec<(usize, Decomposition<S>)> {
    let Ok(plan) = divisor_plan(f.degree()) else {
        return Vec::new();
    };
    plan.proper_divisors
        .into_iter()
        .filter_map(|d| {
            try_decompose_with_tolerance(f, d, tolerance)
                .ok()
                .flatten()
                .map(|dec| (d, dec))
        })
        .collect()
}

/// The components `(g, h)` of the unique composition whose coordinates at
/// the NT indices equal `b` (ordered as [`NtSet::nt`]).
///
/// `h` comes from the first `e-1` entries by Newton iteration; then `g_d = 1`
/// and for `i = d-1, ..., 1`, `g_i` is the coefficient of `x^{e i}` in
/// `f - sum_{j>i} g_j h^j`.
pub fn section_factors<S: Scalar>(b: &[S], n: usize, d: usize) -> Result<Decomposition<S>> {
    let nt = NtSet::new(n, d)?;
    if b.len() != nt.nt.len() {
        return Err(Error::CoordinateCount {
            expected: nt.nt.len(),
            actual: b.len(),
        });
    }
    let e = nt.e;
    let h = right_component_from_top(&b[..e - 1], d, e)?;
    let mut powers = Vec::with_capacity(d + 1);
    powers.push(Polynomial::one());
    for j in 1..=d {
        let next = powers[j - 1].mul(h.as_poly());
        powers.push(next);
    }
    let mut acc = powers[d].clone();
    let mut g = vec![S::zero(); d - 1];
    for i in (1..d).rev() {
        // nt = [n-1, ..., n-e+1, e(d-1), ..., e]
        let target = &b[(e - 1) + (d - 1 - i)];
        let gi = target.sub_ref(&acc.coeff(e * i));
        acc = acc.add(&powers[i].scale(&gi));
        g[i - 1] = gi;
    }
    Ok(Decomposition {
        g: MonicOriginal::from_lower(&g),
        h,
    })
}

/// The point of the composition variety with NT coordinates `b`.
pub fn section<S: Scalar>(b: &[S], n: usize, d: usize) -> Result<MonicOriginal<S>> {
    Ok(section_factors(b, n, d)?.compose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    type Q = Rational;

    fn mo(c: &[i64]) -> MonicOriginal<Q> {
        MonicOriginal::new(Polynomial::from_i64s(c)).unwrap()
    }

    #[test]
    fn right_component_examples() {
        // h_1 = f_3 / 2 = 2
        assert_eq!(
            right_component(&mo(&[0, 2, 5, 4, 1]), 2).unwrap(),
            mo(&[0, 2, 1])
        );
        assert_eq!(
            right_component(&MonicOriginal::<Q>::monomial(12), 3).unwrap(),
            MonicOriginal::monomial(4)
        );
    }

    #[test]
    fn right_component_n20_d5_with_all_fives() {
        // f19 = f18 = f17 = 5:
        // h3 = 5/5 = 1, h2 = (-2*25 + 25)/25 = -1, h1 = (6*125 - 20*25 + 125)/125 = 3
        let mut lower = vec![Q::from_i64(0); 19];
        for i in [19, 18, 17] {
            lower[i - 1] = Q::from_i64(5);
        }
        let f = MonicOriginal::from_lower(&lower);
        assert_eq!(right_component(&f, 5).unwrap(), mo(&[0, 3, -1, 1, 1]));
    }

    #[test]
    fn decompose_examples() {
        let f = mo(&[0, 2, 5, 4, 1]);
        let dec = try_decompose(&f, 2).unwrap().unwrap();
        assert_eq!(
            (dec.g.clone(), dec.h.clone()),
            (mo(&[0, 1, 1]), mo(&[0, 2, 1]))
        );
        assert_eq!(
            dec.to_record(),
            DecompositionRecord {
                d: 2,
                g: "1,1,0".into(),
                h: "1,2,0".into()
            }
        );

        assert_eq!(try_decompose(&mo(&[0, 1, 0, 0, 1]), 2).unwrap(), None);
        assert!(try_decompose(&f, 3).is_err());
    }

    #[test]
    fn decomposable_lists() {
        let all = is_decomposable(&mo(&[0, 2, 5, 4, 1]));
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].0, 2);

        let all = is_decomposable(&MonicOriginal::<Q>::monomial(6));
        let ds: Vec<_> = all
            .iter()
            .map(|(d, dec)| (*d, dec.g.degree(), dec.h.degree()))
            .collect();
        assert_eq!(ds, vec![(2, 2, 3), (3, 3, 2)]);
        assert_eq!(all[0].1.g, MonicOriginal::monomial(2));
        assert_eq!(all[0].1.h, MonicOriginal::monomial(3));

        assert!(is_decomposable(&mo(&[0, 1, 0, 0, 1])).is_empty());
        assert!(is_decomposable(&mo(&[0, 1, 0, 0, 0, 1])).is_empty());
    }

    #[test]
    fn section_examples() {
        let b: Vec<Q> = vec![Q::from_i64(0); 3];
        assert_eq!(section(&b, 6, 2).unwrap(), MonicOriginal::monomial(6));

        // b3 = 4, b2 = 5 at (n, d) = (4, 2). Solving
        // (x^2 + h1 x)^2 + g1 (x^2 + h1 x) coefficientwise by hand:
        // 2 h1 = 4, h1^2 + g1 = 5  =>  h1 = 2, g1 = 1, f1 = g1 h1 = 2.
        let f = section(&[Q::from_i64(4), Q::from_i64(5)], 4, 2).unwrap();
        assert_eq!(f, mo(&[0, 2, 5, 4, 1]));

        assert_eq!(
            section(&[Q::from_i64(1)], 4, 2),
            Err(Error::CoordinateCount {
                expected: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn section_inverts_projection() {
        let g = mo(&[0, 3, -2, 1]);
        let h = MonicOriginal::new(Polynomial::from_coeffs(vec![
            ratio(0, 1),
            ratio(1, 2),
            ratio(-3, 4),
            ratio(1, 1),
        ]))
        .unwrap();
        let f = g.compose(&h);
        let nt = nt_set(9, 3).unwrap();
        let dec = section_factors(&nt.project(&f), 9, 3).unwrap();
        assert_eq!(dec.g, g);
        assert_eq!(dec.h, h);
        assert_eq!(dec.compose(), f);
    }

    #[test]
    fn float_decomposition() {
        let g = MonicOriginal::new(Polynomial::from_coeffs(vec![0.0, 0.3, -0.7, 1.0])).unwrap();
        let h = MonicOriginal::new(Polynomial::from_coeffs(vec![0.0, -0.2, 1.0])).unwrap();
        let f = g.compose(&h);
        let dec = try_decompose(&f, 3).unwrap().unwrap();
        assert!(dec.g.approx_eq(&g, 1e-12));
        assert!(dec.h.approx_eq(&h, 1e-12));
        let mut bumped = f.as_poly().coeffs().to_vec();
        bumped[1] += 1e-3;
        let bumped = MonicOriginal::new(Polynomial::from_coeffs(bumped)).unwrap();
        assert!(try_decompose(&bumped, 3).unwrap().is_none());
    }
}
