//! The 6-6 semi-regular Stewart-Gough platform model: vertex placement from
//! architecture parameters, leg capsules for a pose, and leg lengths.
//!
//! Both platforms are planar hexagons inscribed in circles. Vertices sit at
//! angles `{-g, g, 2pi/3 - g, 2pi/3 + g, 4pi/3 - g, 4pi/3 + g}` measured CCW
//! from the local X-axis, where `2g` is the angle subtended by the two
//! vertices adjacent to that axis. Legs are numbered 1..=6 in that order;
//! leg `i` joins base vertex `i` to platform vertex `i`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{Capsule, Rotation, Segment, Vec3};

pub const LEG_COUNT: usize = 6;

/// Geometric constants of the manipulator. Validated on construction;
/// immutable afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchitectureParams {
    base_radius: f64,
    platform_radius: f64,
    base_half_angle: f64,
    platform_half_angle: f64,
    capsule_radius: f64,
    neutral_height: f64,
}

impl ArchitectureParams {
    /// * `base_radius` — circum-radius of the fixed platform, mm
    /// * `platform_radius` — circum-radius of the moving platform, mm
    /// * `base_half_angle`, `platform_half_angle` — vertex half-angles, rad,
    ///   each in (0, pi/3) so the six vertices stay distinct and CCW-ordered
    /// * `capsule_radius` — radius of the capsule enclosing each leg, mm
    /// * `neutral_height` — height of the neutral position of the moving
    ///   platform centre above the base plane, mm
    pub fn new(
        base_radius: f64,
        platform_radius: f64,
        base_half_angle: f64,
        platform_half_angle: f64,
        capsule_radius: f64,
        neutral_height: f64,
    ) -> Result<Self> {
        fn positive(name: &str, v: f64) -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        }
        positive("base_radius", base_radius)?;
        positive("platform_radius", platform_radius)?;
        positive("capsule_radius", capsule_radius)?;
        positive("neutral_height", neutral_height)?;
        for (name, v) in [
            ("base_half_angle", base_half_angle),
            ("platform_half_angle", platform_half_angle),
        ] {
            if !(v > 0.0 && v < PI / 3.0) {
                return Err(Error::invalid(format!(
                    "{name} must lie in (0, pi/3), got {v}"
                )));
            }
        }
        Ok(ArchitectureParams {
            base_radius,
            platform_radius,
            base_half_angle,
            platform_half_angle,
            capsule_radius,
            neutral_height,
        })
    }

    pub fn base_radius(&self) -> f64 {
        self.base_radius
    }

    pub fn platform_radius(&self) -> f64 {
        self.platform_radius
    }

    pub fn base_half_angle(&self) -> f64 {
        self.base_half_angle
    }

    pub fn platform_half_angle(&self) -> f64 {
        self.platform_half_angle
    }

    pub fn capsule_radius(&self) -> f64 {
        self.capsule_radius
    }

    pub fn neutral_height(&self) -> f64 {
        self.neutral_height
    }

    /// Neutral position of the moving-platform centre: on the base normal
    /// through the base centroid, at the neutral height.
    pub fn home_position(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.neutral_height)
    }

    /// Neutral pose: home position, zero orientation.
    pub fn home_pose(&self) -> Pose {
        Pose::new(self.home_position(), Vec3::ZERO)
    }
}

/// Position of the moving-platform centre (fixed frame, mm) plus its
/// orientation as Rodrigues parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub position: Vec3,
    pub orientation: Vec3,
}

impl Pose {
    pub const fn new(position: Vec3, orientation: Vec3) -> Self {
        Pose {
            position,
            orientation,
        }
    }
}

/// Vertices of both platforms: base vertices in the fixed frame, platform
/// vertices in the moving frame. All in the respective platform's plane
/// (z = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatformVertices {
    pub base: [Vec3; LEG_COUNT],
    pub platform: [Vec3; LEG_COUNT],
}

/// Vertex angles for one platform, CCW from the local X-axis.
pub fn vertex_angles(half_angle: f64) -> [f64; LEG_COUNT] {
    let g = half_angle;
    [
        -g,
        g,
        2.0 * PI / 3.0 - g,
        2.0 * PI / 3.0 + g,
        4.0 * PI / 3.0 - g,
        4.0 * PI / 3.0 + g,
    ]
}

fn circle_points(radius: f64, angles: &[f64; LEG_COUNT]) -> [Vec3; LEG_COUNT] {
    angles.map(|a| Vec3::new(radius * a.cos(), radius * a.sin(), 0.0))
}

/// Places the spherical-joint centres of both platforms.
pub fn platform_vertices(arch: &ArchitectureParams) -> PlatformVertices {
    PlatformVertices {
        base: circle_points(arch.base_radius, &vertex_angles(arch.base_half_angle)),
        platform: circle_points(
            arch.platform_radius,
            &vertex_angles(arch.platform_half_angle),
        ),
    }
}

/// Moving-platform vertices mapped into the fixed frame for a pose:
/// `a_i = p + R t_i`.
pub fn platform_vertices_at(arch: &ArchitectureParams, pose: &Pose) -> Result<[Vec3; LEG_COUNT]> {
    if !pose.position.is_finite() {
        return Err(Error::invalid("pose position must be finite"));
    }
    let rotation = Rotation::from_rodrigues(pose.orientation)?;
    let verts = platform_vertices(arch);
    Ok(verts.platform.map(|t| pose.position + rotation.apply(t)))
}

/// The six leg capsules for a pose: axis from base vertex `b_i` to the
/// displaced platform vertex `a_i`, uniform capsule radius.
pub fn leg_capsules(arch: &ArchitectureParams, pose: &Pose) -> Result<[Capsule; LEG_COUNT]> {
    let attached = platform_vertices_at(arch, pose)?;
    let base = platform_vertices(arch).base;
    let mut capsules = [Capsule {
        axis: Segment::new(Vec3::ZERO, Vec3::ZERO),
        radius: arch.capsule_radius,
    }; LEG_COUNT];
    for i in 0..LEG_COUNT {
        capsules[i] = Capsule::new(Segment::new(base[i], attached[i]), arch.capsule_radius)?;
    }
    Ok(capsules)
}

/// Inverse-kinematic leg lengths `|a_i - b_i|`.
pub fn leg_lengths(arch: &ArchitectureParams, pose: &Pose) -> Result<[f64; LEG_COUNT]> {
    let capsules = leg_capsules(arch, pose)?;
    Ok(capsules.map(|c| c.axis.length()))
}

/// The worked example used throughout the unit tests: a desk-scale platform.
#[cfg(test)]
pub(crate) fn example_arch() -> ArchitectureParams {
    ArchitectureParams::new(
        150.0,
        75.0,
        30.5f64.to_radians(),
        40.5f64.to_radians(),
        8.5,
        300.0,
    )
    .unwrap()
}
