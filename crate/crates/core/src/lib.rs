//! Collision-free sphere (CFS) validation for 6-6 semi-regular
//! Stewart-Gough platforms.
//!
//! For a fixed moving-platform orientation, the CFS is the largest sphere of
//! platform-centre positions, centred at the neutral pose, inside which no
//! pair of legs can collide. Legs are enclosed in capsules, so interference
//! reduces to capsule-capsule clearance: the clamped distance between the
//! axis segments minus the radius sum.
//!
//! The crate provides:
//!
//! * [`geom`] — exact rotation/distance/clearance primitives,
//! * [`platform`] — the manipulator model (vertices, leg capsules, lengths),
//! * [`sampling`] — deterministic shell sampling on a radius grid with
//!   regular sphere placement,
//! * [`collision`] — pairwise interference checks plus an independent
//!   membership-sampling oracle,
//! * [`validate`] — the shell-validation protocol and an ab-initio CFS
//!   radius estimator.
//!
//! Batch sweeps run on rayon when the default `parallel` feature is enabled
//! and fall back to sequential loops without it; results are bitwise
//! identical either way.

pub mod collision;
pub mod error;
pub mod geom;
pub mod platform;
pub mod sampling;
pub mod validate;

pub use collision::{
    capsule_overlap_oracle, pair_collision, pose_min_clearance, CollisionRecord, LegPair,
    PoseClearance, DEFAULT_ORACLE_RESOLUTION,
};
pub use error::{Error, Result};
pub use geom::{
    capsule_clearance, line_line_distance, segment_segment_distance, Capsule, ClosestPoints,
    Rotation, Segment, Vec3,
};
pub use platform::{
    leg_capsules, leg_lengths, platform_vertices, ArchitectureParams, PlatformVertices, Pose,
    LEG_COUNT,
};
pub use sampling::{shell_radii, shell_samples, usrp_points, SampleSet, ShellSpec};
pub use validate::{
    estimate_cfs, evaluate_samples, evaluate_samples_sequential, validate_cfs, CfsEstimate,
    EstimateConfig, SampleResult, ShellBounds, ValidationConfig, ValidationReport, Verdict,
};
