//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and fails the
//! run on `FAIL`. Run with
//! `cargo test -p polydecomp --test acceptance -- --nocapture --test-threads=1`
//! to see the lines in order.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polydecomp::collisions::{
    alpha_exp, alpha_trig, verify_bidecomposable, CollisionParams, CollisionVariant,
};
use polydecomp::decompose::{divisor_plan, right_component, section_factors, try_decompose, NtSet};
use polydecomp::density::{
    bounds_complex_union, cheng_bound, estimate_density, estimate_subspace_density, lens_area,
    Field, Mode, Target, TubeSpec,
};
use polydecomp::poly::MonicOriginal;
use polydecomp::scalar::{ratio, Rational, Scalar};

type Q = Rational;

/// Width of the Monte Carlo acceptance band, in standard errors.
const SE_BAND: f64 = 3.0;
/// Largest standard error accepted for the real single-divisor sandwich.
const MAX_SE_REAL: f64 = 1e-3;
/// Agreement between a computed bracket and its decimal value.
const BRACKET_TOL: f64 = 1e-12;
/// Subspace calibration tolerance.
const SUBSPACE_TOL: f64 = 1e-12;

const GOLDEN_BUDGET: Duration = Duration::from_secs(5);
const ROUNDTRIP_BUDGET: Duration = Duration::from_secs(60);
const SANDWICH_BUDGET: Duration = Duration::from_secs(60);
const UNION_BUDGET: Duration = Duration::from_secs(300);
const COLLISION_BUDGET: Duration = Duration::from_secs(30);

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {id} {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion {id} ({name}) failed: {detail}");
}

fn rational(rng: &mut ChaCha8Rng) -> Q {
    ratio(rng.random_range(-9..=9), rng.random_range(1..=4))
}

fn rationals(rng: &mut ChaCha8Rng, len: usize) -> Vec<Q> {
    (0..len).map(|_| rational(rng)).collect()
}

fn monic_original(rng: &mut ChaCha8Rng, deg: usize) -> MonicOriginal<Q> {
    MonicOriginal::from_lower(&rationals(rng, deg - 1))
}

fn q(k: i64) -> Q {
    Q::from_i64(k)
}

#[test]
fn criterion_1_golden_example() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = Vec::new();
    for trial in 0..50 {
        let (a, b, c) = (rational(&mut rng), rational(&mut rng), rational(&mut rng));
        let mut lower = rationals(&mut rng, 16);
        lower.extend([c.clone(), b.clone(), a.clone()]);
        let f = MonicOriginal::from_lower(&lower);
        let f16 = f.coeff(16);

        let h = right_component(&f, 5).unwrap();
        let h3 = a.clone() / q(5);
        let h2 = (q(-2) * a.clone() * a.clone() + q(5) * b.clone()) / q(25);
        let h1 = (q(6) * a.clone() * a.clone() * a.clone() - q(20) * b.clone() * a.clone()
            + q(25) * c.clone())
            / q(125);
        let g4 = f16
            - (q(21) * a.clone() * a.clone() * a.clone() * a.clone()
                - q(90) * b.clone() * a.clone() * a.clone()
                + q(50) * b.clone() * b.clone()
                + q(100) * c.clone() * a.clone())
                / q(125);
        // independent route: the coefficient of x^16 in f - h^5
        let g4_direct = f.as_poly().sub(&h.as_poly().pow(5)).coeff(16);
        let nt = NtSet::new(20, 5).unwrap();
        let g = section_factors(&nt.project(f.as_poly()), 20, 5).unwrap().g;

        let ok = h.degree() == 4
            && h.coeff(3) == h3
            && h.coeff(2) == h2
            && h.coeff(1) == h1
            && g4 == g4_direct
            && g.coeff(4) == g4;
        if !ok {
            failures.push(trial);
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        "golden example n=20 d=5",
        failures.is_empty() && elapsed < GOLDEN_BUDGET,
        &format!(
            "50 triples, mismatches {failures:?}, {:.2?} of {GOLDEN_BUDGET:?}",
            elapsed
        ),
    );
}

#[test]
fn criterion_2_roundtrip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut pairs = 0;
    let mut failures = Vec::new();
    for n in 4..=30 {
        let Ok(plan) = divisor_plan(n) else { continue };
        for d in plan.proper_divisors {
            for _ in 0..100 {
                let g = monic_original(&mut rng, d);
                let h = monic_original(&mut rng, n / d);
                let f = g.compose(&h);
                match try_decompose(&f, d) {
                    Ok(Some(dec)) if dec.g == g && dec.h == h => {}
                    _ => failures.push((n, d)),
                }
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        2,
        "section/decomposition roundtrip n<=30",
        failures.is_empty() && elapsed < ROUNDTRIP_BUDGET,
        &format!("{pairs} pairs, failures {failures:?}, {elapsed:.2?} of {ROUNDTRIP_BUDGET:?}"),
    );
}

#[test]
fn criterion_3_real_sandwich() {
    let mut lines = Vec::new();
    let mut pass = true;
    for (n, d, lower, upper) in [
        (4, 2, 0.081, 0.1),
        (6, 2, 0.00729, 0.01),
        (6, 3, 0.00729, 0.01),
    ] {
        let start = Instant::now();
        let spec = TubeSpec::new(n, Target::Divisor(d), 0.1, 1.0, Field::Real).unwrap();
        let r = estimate_density(&spec, 1_000_000, 3, Mode::Conditional).unwrap();
        let elapsed = start.elapsed();
        let b = spec.bounds().unwrap();
        let bracket =
            (b.lower - lower).abs() < BRACKET_TOL && (b.upper - upper).abs() < BRACKET_TOL;
        let inside =
            b.lower - SE_BAND * r.std_error <= r.mean && r.mean <= b.upper + SE_BAND * r.std_error;
        let ok = bracket && inside && r.std_error < MAX_SE_REAL && elapsed < SANDWICH_BUDGET;
        pass &= ok;
        lines.push(format!(
            "(n={n},d={d}) mean {:.6} se {:.2e} in [{lower}, {upper}] {elapsed:.2?}",
            r.mean, r.std_error
        ));
    }
    report(3, "real density sandwich", pass, &lines.join("; "));
}

#[test]
fn criterion_4_union_density() {
    let start = Instant::now();
    let spec = TubeSpec::new(6, Target::Union, 0.1, 1.0, Field::Real).unwrap();
    let r = estimate_density(&spec, 10_000_000, 4, Mode::Plain).unwrap();
    let elapsed = start.elapsed();
    let (lower, upper) = (0.01458, 0.02);
    let b = spec.bounds().unwrap();
    let bracket = (b.lower - lower).abs() < BRACKET_TOL && (b.upper - upper).abs() < BRACKET_TOL;
    let inside =
        b.lower - SE_BAND * r.std_error <= r.mean && r.mean <= b.upper + SE_BAND * r.std_error;
    let ok = bracket && inside && elapsed < UNION_BUDGET;
    report(
        4,
        "union density n=6",
        ok,
        &format!(
            "mean {:.6} se {:.2e} in [{lower}, {upper}], {elapsed:.2?} of {UNION_BUDGET:?}",
            r.mean, r.std_error
        ),
    );
}

#[test]
fn criterion_5_complex_sandwich() {
    let spec = TubeSpec::new(4, Target::Divisor(2), 0.1, 1.0, Field::Complex).unwrap();
    let r = estimate_density(&spec, 1_000_000, 5, Mode::Conditional).unwrap();
    let (lower, upper) = (0.006561, 0.01);
    let b = spec.bounds().unwrap();
    let bracket = (b.lower - lower).abs() < BRACKET_TOL && (b.upper - upper).abs() < BRACKET_TOL;
    let inside =
        b.lower - SE_BAND * r.std_error <= r.mean && r.mean <= b.upper + SE_BAND * r.std_error;

    // lens area against rejection sampling of the small disk
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let draws = 200_000;
    let mut worst: f64 = 0.0;
    let mut lens_ok = true;
    for _ in 0..10 {
        let bound: f64 = rng.random_range(0.5..2.0);
        let eps = rng.random_range(0.05..0.9) * bound;
        let dist = rng.random_range((bound - eps).max(0.0)..(bound + eps));
        let mut hits = 0u64;
        for _ in 0..draws {
            let rad = eps * rng.random::<f64>().sqrt();
            let t = 2.0 * PI * rng.random::<f64>();
            let (x, y) = (dist + rad * t.cos(), rad * t.sin());
            hits += u64::from(x * x + y * y < bound * bound);
        }
        let p = hits as f64 / draws as f64;
        let se = (p * (1.0 - p) / draws as f64).sqrt();
        let fraction = lens_area(dist, eps, bound) / (PI * eps * eps);
        let z = if se > 0.0 {
            (fraction - p).abs() / se
        } else {
            0.0
        };
        worst = worst.max(z);
        lens_ok &= (fraction - p).abs() <= SE_BAND * se + 1e-12;
    }
    report(
        5,
        "complex density sandwich",
        bracket && inside && lens_ok,
        &format!(
            "mean {:.6} se {:.2e} in [{lower}, {upper}]; lens vs rejection worst |z| {worst:.2} over 10 configs",
            r.mean, r.std_error
        ),
    );
}

#[test]
fn criterion_6_subspace_calibration() {
    let (n, k, eps, bound) = (5, 2, 0.1, 1.0);
    let r = estimate_subspace_density(
        n,
        k,
        eps,
        bound,
        Field::Real,
        1_000_000,
        6,
        Mode::Conditional,
    )
    .unwrap();
    let exact: f64 = 1e-3;
    let err = (r.mean - exact).abs();
    report(
        6,
        "subspace calibration",
        err <= SUBSPACE_TOL,
        &format!("mean {:e} vs {exact:e}, |err| {err:.1e}", r.mean),
    );
}

#[test]
fn criterion_7_collisions() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut failures = Vec::new();
    for (n, d) in [(6usize, 2usize), (12, 3)] {
        let e = n / d;
        let s = e / d;
        for _ in 0..50 {
            let params = CollisionParams {
                n,
                d,
                u: MonicOriginal::identity(),
                v: MonicOriginal::identity(),
                a: rational(&mut rng),
                variant: CollisionVariant::Exp {
                    w: rationals(&mut rng, s),
                },
            };
            let f = alpha_exp(&params).unwrap();
            if !verify_bidecomposable(&f, d, e).unwrap() {
                failures.push(("exp", n, d));
            }
            let params = CollisionParams {
                variant: CollisionVariant::Trig {
                    z: rational(&mut rng),
                },
                a: rational(&mut rng),
                ..params
            };
            let f = alpha_trig(&params).unwrap();
            if !verify_bidecomposable(&f, d, e).unwrap() {
                failures.push(("trig", n, d));
            }
            checked += 2;
        }
    }
    let elapsed = start.elapsed();
    report(
        7,
        "collision verification",
        failures.is_empty() && elapsed < COLLISION_BUDGET,
        &format!(
            "{checked} collisions, failures {failures:?}, {elapsed:.2?} of {COLLISION_BUDGET:?}"
        ),
    );
}

#[test]
fn criterion_8_bound_comparison() {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut count = 0;
    for n in 4..=20 {
        if divisor_plan(n).is_err() {
            continue;
        }
        let ours = bounds_complex_union(n, 0.1, 1.0).unwrap().upper;
        let other = cheng_bound(n, 0.1, 1.0);
        ok &= ours <= other;
        worst = worst.max(ours / other);
        count += 1;
    }
    report(
        8,
        "bound comparison",
        ok,
        &format!("{count} composite n <= 20, largest ratio {worst:.3e}"),
    );
}
