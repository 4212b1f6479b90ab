//! Densities of epsilon-tubes around the composition varieties: closed-form
//! brackets, an exact membership test, and Monte Carlo estimators.
//!
//! The tube around `C_{n,d}` inside the box `P_{n,B}` consists of the monic
//! original polynomials that agree with some composition in the NT
//! coordinates and lie within `epsilon` of it in every other coordinate.

mod bounds;
mod estimate;
mod kernel;
mod lens;
mod stats;

use serde::{Serialize, Serializer};

pub(crate) use bounds::check_radii;
pub use bounds::{
    bounds_complex, bounds_complex_union, bounds_real, bounds_real_union, cheng_bound,
    DensityBounds,
};
pub use estimate::{
    estimate_conditional, estimate_density, estimate_plain, estimate_subspace_density,
    tube_membership, EstimateResult, Mode,
};
pub use kernel::{Chart, Field, LinearSubspace, SectionKernel, TubeCoord};
pub use lens::{interval_overlap, lens_area};
pub use stats::Welford;

use crate::decompose::{divisor_plan, NtSet};
use crate::error::Result;
use crate::poly::MonicOriginal;
use crate::scalar::Scalar;

/// Which part of the composition locus a tube surrounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Divisor(usize),
    /// `C_{n,l} ∪ C_{n,n/l}` for the least prime divisor `l` of `n`.
    Union,
}

impl Serialize for Target {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        match self {
            Target::Divisor(d) => s.serialize_u64(*d as u64),
            Target::Union => s.serialize_str("union"),
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Divisor(d) => write!(f, "{d}"),
            Target::Union => f.write_str("union"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TubeSpec {
    pub n: usize,
    pub target: Target,
    pub epsilon: f64,
    pub bound: f64,
    pub field: Field,
}

impl TubeSpec {
    pub fn new(n: usize, target: Target, epsilon: f64, bound: f64, field: Field) -> Result<Self> {
        let spec = TubeSpec {
            n,
            target,
            epsilon,
            bound,
            field,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_radii(self.epsilon, self.bound)?;
        match self.target {
            Target::Divisor(d) => NtSet::new(self.n, d).map(|_| ()),
            Target::Union => divisor_plan(self.n).map(|_| ()),
        }
    }

    pub fn bounds(&self) -> Result<DensityBounds> {
        let (n, e, b) = (self.n, self.epsilon, self.bound);
        match (self.field, self.target) {
            (Field::Real, Target::Divisor(d)) => bounds_real(n, d, e, b),
            (Field::Real, Target::Union) => bounds_real_union(n, e, b),
            (Field::Complex, Target::Divisor(d)) => bounds_complex(n, d, e, b),
            (Field::Complex, Target::Union) => bounds_complex_union(n, e, b),
        }
    }

    pub fn cheng(&self) -> f64 {
        cheng_bound(self.n, self.epsilon, self.bound)
    }
}

/// Membership in the tube around `C_{n,l} ∪ C_{n,n/l}`.
pub fn union_membership<S: Scalar>(a: &MonicOriginal<S>, epsilon: f64) -> Result<bool> {
    let plan = divisor_plan(a.degree())?;
    let l = plan.least_prime;
    Ok(tube_membership(a, l, epsilon)? || tube_membership(a, a.degree() / l, epsilon)?)
}

/// One estimate with its closed-form context, flat so that JSON and CSV share
/// the same columns.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub n: usize,
    pub d: Target,
    pub field: Field,
    pub epsilon: f64,
    #[serde(rename = "B")]
    pub bound: f64,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    pub mean: f64,
    pub std_error: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub cheng_bound: f64,
    pub upper_bound_raw: f64,
}

impl EstimateReport {
    pub const COLUMNS: [&'static str; 14] = [
        "n",
        "d",
        "field",
        "epsilon",
        "B",
        "mode",
        "samples",
        "seed",
        "mean",
        "std_error",
        "lower_bound",
        "upper_bound",
        "cheng_bound",
        "upper_bound_raw",
    ];

    pub fn new(spec: &TubeSpec, result: &EstimateResult) -> Result<Self> {
        let bounds = spec.bounds()?;
        Ok(EstimateReport {
            n: spec.n,
            d: spec.target,
            field: spec.field,
            epsilon: spec.epsilon,
            bound: spec.bound,
            mode: result.mode,
            samples: result.samples,
            seed: result.seed,
            mean: result.mean,
            std_error: result.std_error,
            lower_bound: bounds.lower,
            upper_bound: bounds.upper,
            cheng_bound: spec.cheng(),
            upper_bound_raw: bounds.raw_upper,
        })
    }

    /// Runs the estimator and attaches the bracket.
    pub fn run(spec: &TubeSpec, samples: u64, seed: u64, mode: Mode) -> Result<Self> {
        let result = estimate_density(spec, samples, seed, mode)?;
        Self::new(spec, &result)
    }
}
