//! Deterministic sample generation inside a spherical shell.
//!
//! The shell encloses the boundary of the sphere under validation. A radius
//! grid covers `[r_inner, r_outer]` uniformly, and each sphere of the grid
//! carries a regular placement of near-equal-area surface points. There is
//! no randomness anywhere: identical inputs produce bit-identical samples.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::Vec3;

/// The spherical shell to be sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellSpec {
    center: Vec3,
    r_inner: f64,
    r_outer: f64,
    delta_r: f64,
}

impl ShellSpec {
    pub fn new(center: Vec3, r_inner: f64, r_outer: f64, delta_r: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::invalid("shell center must be finite"));
        }
        if !(r_inner > 0.0 && r_inner.is_finite()) || !(r_outer > r_inner && r_outer.is_finite()) {
            return Err(Error::invalid(format!(
                "shell radii must satisfy 0 < r_inner < r_outer, got [{r_inner}, {r_outer}]"
            )));
        }
        if !(delta_r > 0.0 && delta_r.is_finite()) {
            return Err(Error::invalid(format!(
                "radial resolution must be positive, got {delta_r}"
            )));
        }
        Ok(ShellSpec {
            center,
            r_inner,
            r_outer,
            delta_r,
        })
    }

    /// Shell of half-width fraction `delta` around a sphere boundary:
    /// radii `r (1 - delta)` to `r (1 + delta)`.
    pub fn around_sphere(center: Vec3, radius: f64, delta: f64, delta_r: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!(
                "sphere radius must be positive, got {radius}"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::invalid(format!(
                "shell half-width fraction must lie in (0, 1), got {delta}"
            )));
        }
        ShellSpec::new(
            center,
            radius * (1.0 - delta),
            radius * (1.0 + delta),
            delta_r,
        )
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    pub fn delta_r(&self) -> f64 {
        self.delta_r
    }
}

/// The radius grid of a shell: `r_inner + m * delta_r` for
/// `m = 0 .. n_r - 1`, with `n_r` the shell thickness over `delta_r`
/// rounded to nearest (at least one radius).
pub fn shell_radii(spec: &ShellSpec) -> Vec<f64> {
    let n_r = ((spec.r_outer - spec.r_inner) / spec.delta_r).round().max(1.0) as usize;
    (0..n_r)
        .map(|m| spec.r_inner + m as f64 * spec.delta_r)
        .collect()
}

/// Near-equal-area placement of points on the unit sphere.
///
/// Latitude rings at colatitudes `pi (m + 1/2) / M` carry azimuth counts
/// proportional to ring circumference, so every point owns roughly the same
/// patch of area. The actual count can differ slightly from `n_target`
/// (within 2% for `n_target >= 100`); callers must use the returned length.
pub fn usrp_points(n_target: usize) -> Result<Vec<Vec3>> {
    if n_target == 0 {
        return Err(Error::invalid("sample count target must be at least 1"));
    }
    let area_per_point = 4.0 * PI / n_target as f64;
    let spacing = area_per_point.sqrt();
    let ring_count = (PI / spacing).round().max(1.0) as usize;
    let polar_step = PI / ring_count as f64;
    let azimuth_step = area_per_point / polar_step;

    let mut points = Vec::with_capacity(n_target + n_target / 8);
    for ring in 0..ring_count {
        let theta = PI * (ring as f64 + 0.5) / ring_count as f64;
        let (sin_t, cos_t) = theta.sin_cos();
        let count = ((2.0 * PI * sin_t / azimuth_step).round() as usize).max(1);
        for k in 0..count {
            let phi = 2.0 * PI * k as f64 / count as f64;
            points.push(Vec3::new(sin_t * phi.cos(), sin_t * phi.sin(), cos_t));
        }
    }
    Ok(points)
}

/// All shell samples, in deterministic order: radius-major, then ring, then
/// azimuth.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub center: Vec3,
    /// The radius grid.
    pub radii: Vec<f64>,
    /// Sample positions, `center + r * u`.
    pub points: Vec<Vec3>,
    /// Index into `radii` for each point.
    pub radius_index: Vec<usize>,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Grid radius of sample `i`.
    pub fn radius_of(&self, i: usize) -> f64 {
        self.radii[self.radius_index[i]]
    }
}

/// Generates `center + r * u` for every grid radius `r` and every placement
/// direction `u`. Total count = (number of radii) x (actual placement count).
pub fn shell_samples(spec: &ShellSpec, samples_per_sphere: usize) -> Result<SampleSet> {
    let radii = shell_radii(spec);
    let directions = usrp_points(samples_per_sphere)?;
    let mut points = Vec::with_capacity(radii.len() * directions.len());
    let mut radius_index = Vec::with_capacity(points.capacity());
    for (ri, &r) in radii.iter().enumerate() {
        for &u in &directions {
            points.push(spec.center + u * r);
            radius_index.push(ri);
        }
    }
    Ok(SampleSet {
        center: spec.center,
        radii,
        points,
        radius_index,
    })
}
