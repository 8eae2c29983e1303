//! The shell-validation protocol and an ab-initio estimator for the
//! collision-free sphere (CFS) radius.
//!
//! Validation samples a spherical shell enclosing the candidate CFS
//! boundary, classifies every sample as safe or unsafe by pairwise leg
//! clearance, and declares the sphere validated iff no unsafe sample lies
//! inside it. Per-sample work is independent, so the sweep parallelizes
//! freely; results are keyed by sample index and reduced in index order,
//! which keeps reports bitwise identical at any thread count.

use std::time::Instant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::collision::{min_clearance_of, normalize_pairs, LegPair};
use crate::error::{Error, Result};
use crate::geom::{segment_segment_distance, Rotation, Segment, Vec3};
use crate::platform::{leg_capsules, platform_vertices, ArchitectureParams, Pose};
use crate::sampling::{shell_samples, usrp_points, SampleSet, ShellSpec};

/// Slack for the inside-the-sphere radius test. Grid radii never coincide
/// with the sphere radius in practice; this only guards configurations that
/// place a sample exactly on the boundary.
const INSIDE_TOLERANCE: f64 = 1e-9;

/// Explicit shell bounds, overriding the `radius (1 +/- delta)` default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellBounds {
    pub r_inner: f64,
    pub r_outer: f64,
}

/// Everything a validation run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationConfig {
    pub arch: ArchitectureParams,
    /// Fixed moving-platform orientation (Rodrigues parameters).
    pub orientation: Vec3,
    /// Radius of the sphere under validation, mm.
    pub cfs_radius: f64,
    /// Shell half-width as a fraction of `cfs_radius`.
    pub shell_delta: f64,
    /// Radial resolution of the shell grid, mm.
    pub radial_step: f64,
    /// Target number of samples per sphere of the grid.
    pub samples_per_sphere: usize,
    /// Leg pairs to query.
    pub pairs: Vec<LegPair>,
    /// Optional explicit shell bounds.
    pub shell_bounds: Option<ShellBounds>,
}

impl ValidationConfig {
    /// Config with the default shell half-width of 0.1 and no bounds
    /// override.
    pub fn new(
        arch: ArchitectureParams,
        orientation: Vec3,
        cfs_radius: f64,
        radial_step: f64,
        samples_per_sphere: usize,
        pairs: Vec<LegPair>,
    ) -> Self {
        ValidationConfig {
            arch,
            orientation,
            cfs_radius,
            shell_delta: 0.1,
            radial_step,
            samples_per_sphere,
            pairs,
            shell_bounds: None,
        }
    }

    /// The shell this config samples.
    pub fn shell(&self) -> Result<ShellSpec> {
        let center = self.arch.home_position();
        match self.shell_bounds {
            Some(bounds) => ShellSpec::new(center, bounds.r_inner, bounds.r_outer, self.radial_step),
            None => ShellSpec::around_sphere(
                center,
                self.cfs_radius,
                self.shell_delta,
                self.radial_step,
            ),
        }
    }
}

/// Classification of one sampled platform position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleResult {
    pub position: Vec3,
    /// Grid radius of the sample (distance from the shell centre), mm.
    pub radius: f64,
    pub min_clearance: f64,
    pub worst_pair: LegPair,
    /// `min_clearance >= 0`.
    pub safe: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// No unsafe sample inside the sphere.
    Validated,
    /// At least one unsafe sample at radius <= the sphere radius.
    Violated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Validated => write!(f, "validated"),
            Verdict::Violated => write!(f, "violated"),
        }
    }
}

/// Full outcome of a validation run.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub config: ValidationConfig,
    pub total_samples: usize,
    /// Every sample in deterministic order (radius-major, then ring, then
    /// azimuth).
    pub samples: Vec<SampleResult>,
    /// The unsafe subset, in sample order.
    pub unsafe_samples: Vec<SampleResult>,
    /// Unsafe samples at radius <= the sphere radius; empty iff validated.
    pub unsafe_inside_cfs: Vec<SampleResult>,
    pub verdict: Verdict,
    /// Wall-clock duration of the sweep, seconds. Informational only; not
    /// part of any serialized artifact.
    pub elapsed_seconds: f64,
}

fn check_common(orientation: Vec3, pairs: &[LegPair]) -> Result<Vec<LegPair>> {
    if !orientation.is_finite() {
        return Err(Error::invalid("orientation must be finite"));
    }
    normalize_pairs(pairs)
}

fn classify_one(
    arch: &ArchitectureParams,
    orientation: Vec3,
    samples: &SampleSet,
    pairs: &[LegPair],
    index: usize,
) -> Result<SampleResult> {
    let position = samples.points[index];
    let pose = Pose::new(position, orientation);
    let capsules = leg_capsules(arch, &pose)?;
    let clearance = min_clearance_of(&capsules, pairs)?;
    Ok(SampleResult {
        position,
        radius: samples.radius_of(index),
        min_clearance: clearance.min_clearance,
        worst_pair: clearance.worst_pair,
        safe: clearance.min_clearance >= 0.0,
    })
}

/// Classifies every sample of a set. Runs on the rayon pool when the
/// `parallel` feature is enabled, sequentially otherwise; the output is
/// identical either way.
pub fn evaluate_samples(
    arch: &ArchitectureParams,
    orientation: Vec3,
    samples: &SampleSet,
    pairs: &[LegPair],
) -> Result<Vec<SampleResult>> {
    let pairs = check_common(orientation, pairs)?;
    #[cfg(feature = "parallel")]
    {
        (0..samples.len())
            .into_par_iter()
            .map(|i| classify_one(arch, orientation, samples, &pairs, i))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..samples.len())
            .map(|i| classify_one(arch, orientation, samples, &pairs, i))
            .collect()
    }
}

/// Always-sequential variant of [`evaluate_samples`]; the baseline for the
/// benches and for thread-count determinism checks.
pub fn evaluate_samples_sequential(
    arch: &ArchitectureParams,
    orientation: Vec3,
    samples: &SampleSet,
    pairs: &[LegPair],
) -> Result<Vec<SampleResult>> {
    let pairs = check_common(orientation, pairs)?;
    (0..samples.len())
        .map(|i| classify_one(arch, orientation, samples, &pairs, i))
        .collect()
}

/// Runs the full shell-validation protocol for one configuration.
pub fn validate_cfs(config: &ValidationConfig) -> Result<ValidationReport> {
    let start = Instant::now();
    if !(config.cfs_radius > 0.0 && config.cfs_radius.is_finite()) {
        return Err(Error::invalid(format!(
            "sphere radius must be positive, got {}",
            config.cfs_radius
        )));
    }
    let shell = config.shell()?;
    let samples = shell_samples(&shell, config.samples_per_sphere)?;
    let results = evaluate_samples(&config.arch, config.orientation, &samples, &config.pairs)?;

    let unsafe_samples: Vec<SampleResult> =
        results.iter().filter(|s| !s.safe).copied().collect();
    let unsafe_inside_cfs: Vec<SampleResult> = unsafe_samples
        .iter()
        .filter(|s| s.radius <= config.cfs_radius + INSIDE_TOLERANCE)
        .copied()
        .collect();
    let verdict = if unsafe_inside_cfs.is_empty() {
        Verdict::Validated
    } else {
        Verdict::Violated
    };
    Ok(ValidationReport {
        config: config.clone(),
        total_samples: results.len(),
        samples: results,
        unsafe_samples,
        unsafe_inside_cfs,
        verdict,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Inputs for the radius estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateConfig {
    pub arch: ArchitectureParams,
    pub orientation: Vec3,
    /// Target number of search directions.
    pub n_directions: usize,
    /// Search horizon per direction, mm.
    pub r_max: f64,
    /// Radial tolerance of the answer, mm.
    pub tol: f64,
    pub pairs: Vec<LegPair>,
}

/// Estimator outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfsEstimate {
    /// Largest radius known collision-free along every searched direction,
    /// within `tol` of the first collision along the limiting direction.
    /// Equal to `r_max` when censored.
    pub radius: f64,
    /// Direction whose first collision limits the estimate; `None` when
    /// censored.
    pub limiting_direction: Option<Vec3>,
    /// True when no direction collides within `r_max`.
    pub censored: bool,
    /// Actual direction count used.
    pub directions_used: usize,
}

/// Outward ray search shared by every estimator direction. Platform
/// vertices are rotated once up front; a pose along the ray only shifts
/// them.
struct RaySearch<'a> {
    capsule_radius: f64,
    center: Vec3,
    pairs: &'a [LegPair],
    base: [Vec3; 6],
    rotated: [Vec3; 6],
}

impl RaySearch<'_> {
    fn colliding_at(&self, position: Vec3) -> bool {
        for pair in self.pairs {
            let i = pair.first() as usize - 1;
            let j = pair.second() as usize - 1;
            let seg_i = Segment::new(self.base[i], position + self.rotated[i]);
            let seg_j = Segment::new(self.base[j], position + self.rotated[j]);
            let d = segment_segment_distance(&seg_i, &seg_j).distance;
            if d - 2.0 * self.capsule_radius < 0.0 {
                return true;
            }
        }
        false
    }

    /// First-collision radius along one ray, or `None` if the ray stays
    /// clear up to `r_max`.
    ///
    /// Clearance along a ray is not assumed monotone, so a coarse outward
    /// march (step `10 * tol`) brackets the first sign change, and bisection
    /// refines the bracket to `tol`. Returns the lower (known-safe) end of
    /// the final bracket.
    fn first_collision(&self, direction: Vec3, r_max: f64, tol: f64) -> Option<f64> {
        let colliding = |radius: f64| self.colliding_at(self.center + direction * radius);

        let step = tol * 10.0;
        let steps = (r_max / step).floor() as usize;
        let mut lo = 0.0f64;
        let mut hit = None;
        for k in 1..=steps {
            let r = step * k as f64;
            if colliding(r) {
                hit = Some(r);
                break;
            }
            lo = r;
        }
        if hit.is_none() && lo < r_max && colliding(r_max) {
            hit = Some(r_max);
        }
        let mut hi = hit?;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if colliding(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(lo)
    }
}

/// Estimates the collision-free sphere radius for an orientation by
/// searching outward from the neutral position along a regular placement of
/// directions and taking the closest first collision.
pub fn estimate_cfs(config: &EstimateConfig) -> Result<CfsEstimate> {
    if config.n_directions == 0 {
        return Err(Error::invalid("direction count must be at least 1"));
    }
    if !(config.tol > 0.0 && config.tol < config.r_max && config.r_max.is_finite()) {
        return Err(Error::invalid(format!(
            "need 0 < tol < r_max, got tol {} and r_max {}",
            config.tol, config.r_max
        )));
    }
    let pairs = check_common(config.orientation, &config.pairs)?;
    let rotation = Rotation::from_rodrigues(config.orientation)?;
    let directions = usrp_points(config.n_directions)?;

    // a_i = p + R t_i: the rotated platform vertices are pose-independent
    let verts = platform_vertices(&config.arch);
    let search = RaySearch {
        capsule_radius: config.arch.capsule_radius(),
        center: config.arch.home_position(),
        pairs: &pairs,
        base: verts.base,
        rotated: verts.platform.map(|t| rotation.apply(t)),
    };

    #[cfg(feature = "parallel")]
    let per_direction: Vec<Option<f64>> = directions
        .par_iter()
        .map(|&u| search.first_collision(u, config.r_max, config.tol))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let per_direction: Vec<Option<f64>> = directions
        .iter()
        .map(|&u| search.first_collision(u, config.r_max, config.tol))
        .collect();

    // reduce in index order: first strict minimum wins, deterministically
    let mut best: Option<(f64, usize)> = None;
    for (i, radius) in per_direction.iter().enumerate() {
        if let Some(r) = radius {
            if best.is_none_or(|(b, _)| *r < b) {
                best = Some((*r, i));
            }
        }
    }
    Ok(match best {
        Some((radius, index)) => CfsEstimate {
            radius,
            limiting_direction: Some(directions[index]),
            censored: false,
            directions_used: directions.len(),
        },
        None => CfsEstimate {
            radius: config.r_max,
            limiting_direction: None,
            censored: true,
            directions_used: directions.len(),
        },
    })
}
