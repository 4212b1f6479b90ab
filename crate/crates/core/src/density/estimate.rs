//! Monte Carlo estimates of tube densities.
//!
//! Samples are drawn in fixed-size batches. Batch `b` uses a ChaCha8 stream
//! seeded with `seed` and stream index `b`; batch statistics are merged in
//! batch order. The estimate therefore depends only on `(samples, seed)` and
//! not on how many worker threads processed the batches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::kernel::{Chart, Field, LinearSubspace, SectionKernel, TubeCoord};
use super::stats::Welford;
use super::{check_radii, Target, TubeSpec};
use crate::decompose::{divisor_plan, section, NtSet};
use crate::error::{Error, Result};
use crate::poly::MonicOriginal;
use crate::scalar::{Complex64, Scalar};

const BATCH: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Uniform points of the box, tube indicator.
    Plain,
    /// Uniform chart coordinates, exact fiber measure per sample.
    Conditional,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EstimateResult {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub mode: Mode,
}

fn run_batches<F>(samples: u64, seed: u64, batch: F) -> Welford
where
    F: Fn(&mut ChaCha8Rng, u64) -> Welford + Sync,
{
    let batches = samples.div_ceil(BATCH);
    let parts: Vec<Welford> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            batch(&mut rng, BATCH.min(samples - b * BATCH))
        })
        .collect();
    parts.into_iter().fold(Welford::default(), Welford::merge)
}

fn finish(stats: Welford, samples: u64, seed: u64, mode: Mode) -> EstimateResult {
    EstimateResult {
        mean: stats.mean(),
        std_error: stats.std_error(),
        samples,
        seed,
        mode,
    }
}

/// Conditional estimator: sample the free coordinates uniformly in the box,
/// lift to the variety, and average the exact relative measure of the
/// tube fiber inside the box.
pub fn estimate_conditional<K: TubeCoord, C: Chart<K>>(
    chart: &C,
    epsilon: f64,
    bound: f64,
    samples: u64,
    seed: u64,
) -> Result<EstimateResult> {
    check_radii(epsilon, bound)?;
    check_samples(samples)?;
    let stats = run_batches(samples, seed, |rng, count| {
        let mut chart = chart.clone();
        let dim = chart.ambient_dim();
        let mut point = vec![K::zero(); dim];
        let mut lifted = vec![K::zero(); dim];
        let mut w = Welford::default();
        for _ in 0..count {
            for &p in chart.free() {
                point[p] = K::sample_ball(rng, bound);
            }
            chart.lift(&point, &mut lifted);
            let contribution = chart.fiber().iter().fold(1.0, |acc, &p| {
                acc * K::overlap_fraction(lifted[p], epsilon, bound)
            });
            w.push(contribution);
        }
        w
    });
    Ok(finish(stats, samples, seed, Mode::Conditional))
}

/// Plain estimator over the union of the tubes around `charts`, which must
/// share the ambient space.
pub fn estimate_plain<K: TubeCoord, C: Chart<K>>(
    charts: &[C],
    epsilon: f64,
    bound: f64,
    samples: u64,
    seed: u64,
) -> Result<EstimateResult> {
    check_radii(epsilon, bound)?;
    check_samples(samples)?;
    let Some(dim) = charts.first().map(Chart::ambient_dim) else {
        return Err(Error::InvalidArgument("no charts to estimate".into()));
    };
    if charts.iter().any(|c| c.ambient_dim() != dim) {
        return Err(Error::InvalidArgument(
            "charts live in different ambient spaces".into(),
        ));
    }
    let stats = run_batches(samples, seed, |rng, count| {
        let mut charts = charts.to_vec();
        let mut point = vec![K::zero(); dim];
        let mut lifted = vec![K::zero(); dim];
        let mut w = Welford::default();
        for _ in 0..count {
            for x in point.iter_mut() {
                *x = K::sample_ball(rng, bound);
            }
            let hit = charts.iter_mut().any(|chart| {
                chart.lift(&point, &mut lifted);
                chart
                    .fiber()
                    .iter()
                    .all(|&p| K::distance(point[p], lifted[p]) < epsilon)
            });
            w.push(if hit { 1.0 } else { 0.0 });
        }
        w
    });
    Ok(finish(stats, samples, seed, Mode::Plain))
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        Err(Error::InvalidArgument("need at least one sample".into()))
    } else {
        Ok(())
    }
}

/// Sections for the target: one chart for a single divisor, the components at
/// `l` and `n/l` for the union (one chart when `n = l^2`).
fn kernels<K: TubeCoord>(n: usize, target: Target) -> Result<Vec<SectionKernel<K>>> {
    match target {
        Target::Divisor(d) => Ok(vec![SectionKernel::new(n, d)?]),
        Target::Union => {
            let plan = divisor_plan(n)?;
            let l = plan.least_prime;
            let mut out = vec![SectionKernel::new(n, l)?];
            if n / l != l {
                out.push(SectionKernel::new(n, n / l)?);
            }
            Ok(out)
        }
    }
}

fn estimate_in<K: TubeCoord>(
    spec: &TubeSpec,
    samples: u64,
    seed: u64,
    mode: Mode,
) -> Result<EstimateResult> {
    let charts = kernels::<K>(spec.n, spec.target)?;
    match (mode, spec.target) {
        (Mode::Conditional, Target::Union) => Err(Error::Unsupported(
            "conditional sampling is only available for a single divisor".into(),
        )),
        (Mode::Conditional, Target::Divisor(_)) => {
            estimate_conditional(&charts[0], spec.epsilon, spec.bound, samples, seed)
        }
        (Mode::Plain, _) => estimate_plain(&charts, spec.epsilon, spec.bound, samples, seed),
    }
}

/// Monte Carlo estimate of the density of the tube described by `spec`.
pub fn estimate_density(
    spec: &TubeSpec,
    samples: u64,
    seed: u64,
    mode: Mode,
) -> Result<EstimateResult> {
    spec.validate()?;
    match spec.field {
        Field::Real => estimate_in::<f64>(spec, samples, seed, mode),
        Field::Complex => estimate_in::<Complex64>(spec, samples, seed, mode),
    }
}

/// Density of the tube around `R^k x {0}^{n-k}` (or its complex analogue) in
/// the box of radius `bound`; the exact value is `(eps/B)^{n-k}` (real) or
/// `(eps/B)^{2(n-k)}` (complex).
#[allow(clippy::too_many_arguments)]
pub fn estimate_subspace_density(
    n: usize,
    k: usize,
    epsilon: f64,
    bound: f64,
    field: Field,
    samples: u64,
    seed: u64,
    mode: Mode,
) -> Result<EstimateResult> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {k} exceeds {n}"
        )));
    }
    let chart = LinearSubspace::new(n, k);
    match (field, mode) {
        (Field::Real, Mode::Conditional) => {
            estimate_conditional::<f64, _>(&chart, epsilon, bound, samples, seed)
        }
        (Field::Real, Mode::Plain) => {
            estimate_plain::<f64, _>(&[chart], epsilon, bound, samples, seed)
        }
        (Field::Complex, Mode::Conditional) => {
            estimate_conditional::<Complex64, _>(&chart, epsilon, bound, samples, seed)
        }
        (Field::Complex, Mode::Plain) => {
            estimate_plain::<Complex64, _>(&[chart], epsilon, bound, samples, seed)
        }
    }
}

/// Exact membership of `a` in the tube around the compositions with left
/// degree `d`: `a` is in the tube iff it is within `eps` of the unique
/// composition sharing its NT coordinates, in every complementary coordinate.
pub fn tube_membership<S: Scalar>(a: &MonicOriginal<S>, d: usize, epsilon: f64) -> Result<bool> {
    let n = a.degree();
    let nt = NtSet::new(n, d)?;
    let f = section(&nt.project(a.as_poly()), n, d)?;
    Ok(nt
        .complement
        .iter()
        .all(|&i| a.coeff(i).sub_ref(&f.coeff(i)).magnitude() < epsilon))
}
