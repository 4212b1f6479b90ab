//! Polynomial text format: comma separated coefficients in descending power
//! order, leading coefficient through constant term. `"1,4,5,2,0"` is
//! x^4 + 4x^3 + 5x^2 + 2x. Rationals are written `p/q`, complex values `a+bi`.

use std::str::FromStr;

use super::{MonicOriginal, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

impl<S: Scalar> Polynomial<S> {
    pub fn from_text(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = t
            .split(',')
            .map(|c| {
                if c.trim().is_empty() {
                    Err(Error::Parse(format!("empty coefficient in {text:?}")))
                } else {
                    S::parse_text(c)
                }
            })
            .collect::<Result<Vec<S>>>()?;
        Ok(Self::from_descending(coeffs))
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return S::zero().to_text();
        }
        self.coeffs()
            .iter()
            .rev()
            .map(Scalar::to_text)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl<S: Scalar> MonicOriginal<S> {
    pub fn from_text(text: &str) -> Result<Self> {
        Self::new(Polynomial::from_text(text)?)
    }
}

impl<S: Scalar> FromStr for Polynomial<S> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Complex64, Rational};

    #[test]
    fn descending_order() {
        let p: Polynomial<Rational> = "1,4,5,2,0".parse().unwrap();
        assert_eq!(p, Polynomial::from_i64s(&[0, 2, 5, 4, 1]));
        assert_eq!(p.to_text(), "1,4,5,2,0");
    }

    #[test]
    fn rational_and_complex_coefficients() {
        let p: Polynomial<Rational> = "1, -3/6 ,0".parse().unwrap();
        assert_eq!(p.coeff(1), ratio(-1, 2));
        assert_eq!(p.to_text(), "1,-1/2,0");
        let c: Polynomial<Complex64> = "1,2-1.5i,0".parse().unwrap();
        assert_eq!(c.coeff(1), Complex64::new(2.0, -1.5));
        assert_eq!(Polynomial::<Complex64>::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn malformed_input() {
        assert!(Polynomial::<Rational>::from_text("1,,2").is_err());
        assert!(Polynomial::<Rational>::from_text("").is_err());
        assert!(Polynomial::<f64>::from_text("1,x").is_err());
        assert!(MonicOriginal::<Rational>::from_text("2,1,0").is_err());
        assert!(MonicOriginal::<Rational>::from_text("1,1,1").is_err());
    }

    #[test]
    fn leading_zeros_are_dropped() {
        let p: Polynomial<Rational> = "0,1,0".parse().unwrap();
        assert_eq!(p.to_text(), "1,0");
        assert_eq!(Polynomial::<Rational>::zero().to_text(), "0");
    }
}
