use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// The coordinates a Newton-Taylor decomposition reads.
///
/// For `e = n/d` this is `{n-1, ..., n-e+1}` (the Newton part, fixing the
/// right component) together with the multiples of `e` below n (the Taylor
/// part, fixing the left component). The complement are the coordinates that
/// are determined on the variety of compositions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NtSet {
    pub n: usize,
    pub d: usize,
    pub e: usize,
    /// Descending.
    pub nt: Vec<usize>,
    /// `{1, ..., n-1}` minus `nt`, descending.
    pub complement: Vec<usize>,
}

impl NtSet {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        check_proper_divisor(n, d)?;
        let e = n / d;
        let in_nt = |i: usize| i > n - e || i.is_multiple_of(e);
        let (nt, complement): (Vec<usize>, Vec<usize>) = (1..n).rev().partition(|&i| in_nt(i));
        Ok(NtSet {
            n,
            d,
            e,
            nt,
            complement,
        })
    }

    /// Codimension of the composition variety, `n - d - n/d + 1`.
    pub fn m_d(&self) -> usize {
        self.complement.len()
    }

    /// `d + n/d - 2`
    pub fn dimension(&self) -> usize {
        self.nt.len()
    }

    /// Number of leading entries of `nt` (the indices `n-1, ..., n-e+1`)
    /// that determine the right component.
    pub fn newton_len(&self) -> usize {
        self.e - 1
    }

    /// Position of coefficient index `i` within `nt`.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.nt.iter().position(|&j| j == i)
    }
}

pub fn nt_set(n: usize, d: usize) -> Result<NtSet> {
    NtSet::new(n, d)
}

pub(crate) fn check_proper_divisor(n: usize, d: usize) -> Result<()> {
    if d <= 1 || d >= n || !n.is_multiple_of(d) {
        Err(Error::NotProperDivisor { n, d })
    } else {
        Ok(())
    }
}

/// `d + n/d - 2`
pub fn dimension(n: usize, d: usize) -> Result<usize> {
    check_proper_divisor(n, d)?;
    Ok(d + n / d - 2)
}

/// `d^(d + n/d - 2)`, an upper bound on the degree of the variety of
/// compositions with left degree d.
pub fn degree_bound(n: usize, d: usize) -> Result<BigUint> {
    let dim = dimension(n, d)?;
    Ok(num_traits::pow(BigUint::from(d), dim))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorPlan {
    pub n: usize,
    /// Ascending, excluding 1 and n.
    pub proper_divisors: Vec<usize>,
    /// Least prime divisor.
    pub least_prime: usize,
    /// 1 if `n` is the square of its least prime, 2 otherwise.
    pub delta: usize,
}

pub fn divisor_plan(n: usize) -> Result<DivisorPlan> {
    let proper_divisors: Vec<usize> = (2..n).filter(|&d| n.is_multiple_of(d)).collect();
    let Some(&least_prime) = proper_divisors.first() else {
        return Err(Error::NotComposite(n));
    };
    let delta = if least_prime * least_prime == n { 1 } else { 2 };
    Ok(DivisorPlan {
        n,
        proper_divisors,
        least_prime,
        delta,
    })
}
