//! Overlap of a coordinate ball with the bounding ball.

use std::f64::consts::PI;

/// Length of `(center - eps, center + eps) ∩ (-bound, bound)`.
pub fn interval_overlap(center: f64, eps: f64, bound: f64) -> f64 {
    ((center + eps).min(bound) - (center - eps).max(-bound)).max(0.0)
}

/// Area of the intersection of two disks of radii `r1`, `r2` whose centers
/// are `dist` apart.
pub fn lens_area(dist: f64, r1: f64, r2: f64) -> f64 {
    let dist = dist.abs();
    if dist >= r1 + r2 {
        return 0.0;
    }
    let small = r1.min(r2);
    if dist <= (r1 - r2).abs() {
        return PI * small * small;
    }
    let a1 = ((dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist * r1))
        .clamp(-1.0, 1.0)
        .acos();
    let a2 = ((dist * dist + r2 * r2 - r1 * r1) / (2.0 * dist * r2))
        .clamp(-1.0, 1.0)
        .acos();
    let kite = (-dist + r1 + r2) * (dist + r1 - r2) * (dist - r1 + r2) * (dist + r1 + r2);
    let area = r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * kite.max(0.0).sqrt();
    area.clamp(0.0, PI * small * small)
}
