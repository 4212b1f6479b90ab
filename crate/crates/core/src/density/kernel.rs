//! Allocation-free lifting from chart coordinates to the variety, used in the
//! Monte Carlo inner loop.
//!
//! Coordinates of `P_n` are laid out as `[f_1, ..., f_{n-1}]`, i.e. ambient
//! position `p` holds the coefficient of `x^{p+1}`.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use super::lens::{interval_overlap, lens_area};
use crate::decompose::NtSet;
use crate::error::Result;
use crate::scalar::{Complex64, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// A coordinate type the tube estimators can sample.
pub trait TubeCoord: Scalar + Copy {
    const FIELD: Field;

    fn from_f64(x: f64) -> Self;

    /// Uniform sample of the open ball `|x| < radius`.
    fn sample_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Self;

    fn distance(a: Self, b: Self) -> f64;

    /// Measure of `ball(center, eps) ∩ ball(0, bound)` relative to
    /// `ball(0, bound)`. Never exceeds [`TubeCoord::inside_fraction`].
    fn overlap_fraction(center: Self, eps: f64, bound: f64) -> f64;

    /// The relative measure when the small ball lies inside the large one,
    /// `(eps/B)` for intervals and `(eps/B)^2` for disks.
    fn inside_fraction(ratio: f64) -> f64;
}

impl TubeCoord for f64 {
    const FIELD: Field = Field::Real;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn sample_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Self {
        radius * (2.0 * rng.random::<f64>() - 1.0)
    }

    fn distance(a: Self, b: Self) -> f64 {
        (a - b).abs()
    }

    fn overlap_fraction(center: Self, eps: f64, bound: f64) -> f64 {
        let inside = Self::inside_fraction(eps / bound);
        if center - eps >= -bound && center + eps <= bound {
            inside
        } else {
            (interval_overlap(center, eps, bound) / (2.0 * bound)).min(inside)
        }
    }

    fn inside_fraction(ratio: f64) -> f64 {
        ratio
    }
}

impl TubeCoord for Complex64 {
    const FIELD: Field = Field::Complex;

    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    /// Inverse CDF in the radius, `r = B sqrt(u)`.
    fn sample_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Self {
        let r = radius * rng.random::<f64>().sqrt();
        let theta = 2.0 * PI * rng.random::<f64>();
        Complex64::from_polar(r, theta)
    }

    fn distance(a: Self, b: Self) -> f64 {
        (a - b).norm()
    }

    fn overlap_fraction(center: Self, eps: f64, bound: f64) -> f64 {
        let inside = Self::inside_fraction(eps / bound);
        let dist = center.norm();
        if dist + eps <= bound {
            inside
        } else {
            (lens_area(dist, eps, bound) / (PI * bound * bound)).min(inside)
        }
    }

    fn inside_fraction(ratio: f64) -> f64 {
        ratio * ratio
    }
}

/// A variety with a global chart: every assignment of the free coordinates
/// extends to exactly one point of the variety.
pub trait Chart<K: TubeCoord>: Clone + Send + Sync {
    fn ambient_dim(&self) -> usize;

    /// Ambient positions of the free coordinates.
    fn free(&self) -> &[usize];

    /// Ambient positions of the tube directions.
    fn fiber(&self) -> &[usize];

    /// Writes into `out` the variety point whose free coordinates agree with
    /// those of `point`. Only the free positions of `point` are read.
    fn lift(&mut self, point: &[K], out: &mut [K]);
}

/// The section of the composition variety for fixed `(n, d)`, with scratch
/// buffers so that a lift does not allocate.
///
/// The right component is computed with the power recurrence
/// `q_k = (1/k) sum_{j=1}^k (j/d - (k - j)) p_j q_{k-j}` for `q = p^{1/d}`,
/// independent of the Newton iteration used by the exact path.
#[derive(Clone, Debug)]
pub struct SectionKernel<K> {
    n: usize,
    d: usize,
    e: usize,
    free: Vec<usize>,
    fiber: Vec<usize>,
    root: Vec<K>,
    /// `powers[j]` holds `h^j`, length `e j + 1`.
    powers: Vec<Vec<K>>,
    acc: Vec<K>,
}

impl<K: TubeCoord> SectionKernel<K> {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        let nt = NtSet::new(n, d)?;
        let e = nt.e;
        Ok(SectionKernel {
            n,
            d,
            e,
            free: nt.nt.iter().map(|i| i - 1).collect(),
            fiber: nt.complement.iter().map(|i| i - 1).collect(),
            root: vec![K::zero(); e],
            powers: (0..=d).map(|j| vec![K::zero(); e * j + 1]).collect(),
            acc: vec![K::zero(); n + 1],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

impl<K: TubeCoord> Chart<K> for SectionKernel<K> {
    fn ambient_dim(&self) -> usize {
        self.n - 1
    }

    fn free(&self) -> &[usize] {
        &self.free
    }

    fn fiber(&self) -> &[usize] {
        &self.fiber
    }

    fn lift(&mut self, point: &[K], out: &mut [K]) {
        let (n, d, e) = (self.n, self.d, self.e);
        let inv_d = 1.0 / d as f64;
        // reversed f mod x^e is 1 + sum p_j x^j with p_j = f_{n-j} at position n-j-1
        let p = |j: usize| point[n - j - 1];
        self.root[0] = K::one();
        for k in 1..e {
            let mut s = K::zero();
            for j in 1..=k {
                let w = K::from_f64(j as f64 * inv_d - (k - j) as f64);
                s = s + w * p(j) * self.root[k - j];
            }
            self.root[k] = s * K::from_f64(1.0 / k as f64);
        }

        let h = &mut self.powers[1];
        h[0] = K::zero();
        for k in 1..e {
            h[e - k] = self.root[k];
        }
        h[e] = K::one();

        for j in 2..=d {
            let (lo, hi) = self.powers.split_at_mut(j);
            let prev = &lo[j - 1];
            let h = &lo[1];
            let cur = &mut hi[0];
            cur.fill(K::zero());
            for (a, &x) in prev.iter().enumerate() {
                for (b, &y) in h.iter().enumerate() {
                    cur[a + b] = cur[a + b] + x * y;
                }
            }
        }

        self.acc.copy_from_slice(&self.powers[d]);
        for i in (1..d).rev() {
            let gi = point[e * i - 1] - self.acc[e * i];
            for (t, &c) in self.powers[i].iter().enumerate() {
                self.acc[t] = self.acc[t] + gi * c;
            }
        }
        out[..n - 1].copy_from_slice(&self.acc[1..n]);
    }
}

/// `R^k x {0}^{m-k}` inside `R^m` (or the complex analogue): the first `k`
/// coordinates are free and the section is identically zero on the rest.
#[derive(Clone, Debug)]
pub struct LinearSubspace {
    ambient: usize,
    free: Vec<usize>,
    fiber: Vec<usize>,
}

impl LinearSubspace {
    pub fn new(ambient: usize, k: usize) -> Self {
        assert!(k <= ambient, "subspace dimension exceeds ambient dimension");
        LinearSubspace {
            ambient,
            free: (0..k).collect(),
            fiber: (k..ambient).collect(),
        }
    }
}

impl<K: TubeCoord> Chart<K> for LinearSubspace {
    fn ambient_dim(&self) -> usize {
        self.ambient
    }

    fn free(&self) -> &[usize] {
        &self.free
    }

    fn fiber(&self) -> &[usize] {
        &self.fiber
    }

    fn lift(&mut self, point: &[K], out: &mut [K]) {
        for &p in &self.free {
            out[p] = point[p];
        }
        for &p in &self.fiber {
            out[p] = K::zero();
        }
    }
}
