use serde::Serialize;

use crate::decompose::{dimension, divisor_plan};
use crate::error::{Error, Result};

/// Closed-form bracket for a tube density.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityBounds {
    pub lower: f64,
    /// Capped at 1.
    pub upper: f64,
    /// Upper bound before capping.
    pub raw_upper: f64,
    pub capped: bool,
}

impl DensityBounds {
    fn from_raw(lower: f64, raw_upper: f64) -> Self {
        let upper = raw_upper.min(1.0);
        DensityBounds {
            lower: lower.min(upper),
            upper,
            raw_upper,
            capped: raw_upper > 1.0,
        }
    }

    fn scaled(self, factor: f64) -> Self {
        Self::from_raw(self.lower * factor, self.raw_upper * factor)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// `x^k` by left-to-right repeated multiplication.
///
/// The conditional estimator multiplies its per-coordinate factors in the
/// same order, so a sample whose tube lies entirely inside the box reproduces
/// the upper bound bit for bit.
pub(crate) fn pow_seq(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, _| acc * x)
}

pub(crate) fn check_radii(epsilon: f64, bound: f64) -> Result<f64> {
    if !(epsilon.is_finite() && bound.is_finite()) || epsilon <= 0.0 || epsilon >= bound {
        return Err(Error::InvalidTube(format!(
            "need 0 < epsilon < B, got epsilon = {epsilon}, B = {bound}"
        )));
    }
    Ok(epsilon / bound)
}

/// `(eps/B)^{m_d} (1 - eps/B)^{d + n/d - 2} <= den <= (eps/B)^{m_d}` over the reals.
pub fn bounds_real(n: usize, d: usize, epsilon: f64, bound: f64) -> Result<DensityBounds> {
    let r = check_radii(epsilon, bound)?;
    let dim = dimension(n, d)?;
    let m = n - 1 - dim;
    let upper = pow_seq(r, m);
    Ok(DensityBounds::from_raw(
        upper * pow_seq(1.0 - r, dim),
        upper,
    ))
}

/// Real bracket for the two large components, `delta_n` times the bracket at
/// the least prime divisor.
pub fn bounds_real_union(n: usize, epsilon: f64, bound: f64) -> Result<DensityBounds> {
    let plan = divisor_plan(n)?;
    Ok(bounds_real(n, plan.least_prime, epsilon, bound)?.scaled(plan.delta as f64))
}

/// Complex analogue of [`bounds_real`]: every exponent doubles.
pub fn bounds_complex(n: usize, d: usize, epsilon: f64, bound: f64) -> Result<DensityBounds> {
    let r = check_radii(epsilon, bound)?;
    let dim = dimension(n, d)?;
    let m = n - 1 - dim;
    let upper = pow_seq(r * r, m);
    Ok(DensityBounds::from_raw(
        upper * pow_seq((1.0 - r) * (1.0 - r), dim),
        upper,
    ))
}

pub fn bounds_complex_union(n: usize, epsilon: f64, bound: f64) -> Result<DensityBounds> {
    let plan = divisor_plan(n)?;
    Ok(bounds_complex(n, plan.least_prime, epsilon, bound)?.scaled(plan.delta as f64))
}

/// The hypersurface bound `(n^2 - 2n) (eps/B)^2` for the complex union.
pub fn cheng_bound(n: usize, epsilon: f64, bound: f64) -> f64 {
    let r = epsilon / bound;
    (n * n - 2 * n) as f64 * r * r
}
