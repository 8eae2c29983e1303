//! Pairwise leg-interference checks, plus an independent membership-sampling
//! oracle that mirrors a CAD-style interference query.
//!
//! Collision strictness: a pair collides iff its clearance is strictly
//! negative. Exact tangency (clearance zero) is the boundary of the safe set
//! and counts as safe.

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{segment_segment_distance, Capsule, Segment, Vec3};
use crate::platform::{leg_capsules, ArchitectureParams, Pose, LEG_COUNT};

/// Default membership-sampling resolution for the interference oracle, mm.
/// Well below typical leg-capsule radii while keeping grids small.
pub const DEFAULT_ORACLE_RESOLUTION: f64 = 0.5;

/// An unordered pair of leg indices, stored as `1 <= first < second <= 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LegPair {
    first: u8,
    second: u8,
}

impl LegPair {
    /// Accepts the indices in either order; rejects equal or out-of-range
    /// indices.
    pub fn new(i: u8, j: u8) -> Result<LegPair> {
        if !(1..=LEG_COUNT as u8).contains(&i) || !(1..=LEG_COUNT as u8).contains(&j) {
            return Err(Error::invalid(format!(
                "leg indices must lie in 1..=6, got ({i}, {j})"
            )));
        }
        if i == j {
            return Err(Error::invalid(format!("leg pair indices must differ, got ({i}, {j})")));
        }
        Ok(LegPair {
            first: i.min(j),
            second: i.max(j),
        })
    }

    pub fn first(&self) -> u8 {
        self.first
    }

    pub fn second(&self) -> u8 {
        self.second
    }

    /// All 15 pairs, in lexicographic order.
    pub fn all() -> Vec<LegPair> {
        let mut pairs = Vec::with_capacity(15);
        for i in 1..=LEG_COUNT as u8 {
            for j in (i + 1)..=LEG_COUNT as u8 {
                pairs.push(LegPair { first: i, second: j });
            }
        }
        pairs
    }
}

impl fmt::Display for LegPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// Outcome of one pairwise interference query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionRecord {
    pub pair: LegPair,
    /// Signed separation of the two capsule solids, mm.
    pub clearance: f64,
    /// `clearance < 0`; tangency is not a collision.
    pub colliding: bool,
    /// Closest axis points (on the first leg, on the second leg).
    pub witness: (Vec3, Vec3),
}

/// Queries one pair of leg capsules.
pub fn pair_collision(pair: LegPair, first: &Capsule, second: &Capsule) -> CollisionRecord {
    let closest = segment_segment_distance(&first.axis, &second.axis);
    let clearance = closest.distance - (first.radius + second.radius);
    CollisionRecord {
        pair,
        clearance,
        colliding: clearance < 0.0,
        witness: (closest.on_first, closest.on_second),
    }
}

/// Clearance summary of a whole pose over a pair filter.
#[derive(Debug, Clone, PartialEq)]
pub struct PoseClearance {
    /// Smallest clearance over the filtered pairs, mm.
    pub min_clearance: f64,
    /// Pair attaining the minimum; ties resolve to the lexicographically
    /// smallest pair.
    pub worst_pair: LegPair,
    /// One record per filtered pair, in lexicographic pair order.
    pub records: Vec<CollisionRecord>,
}

impl PoseClearance {
    /// A pose is safe iff no filtered pair interpenetrates.
    pub fn is_safe(&self) -> bool {
        self.min_clearance >= 0.0
    }
}

/// Sorted, deduplicated copy of a pair filter; errors when empty.
pub(crate) fn normalize_pairs(pairs: &[LegPair]) -> Result<Vec<LegPair>> {
    if pairs.is_empty() {
        return Err(Error::invalid("pair filter must not be empty"));
    }
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

/// Evaluates every filtered leg pair at a pose and reports the worst
/// clearance. The result does not depend on the order of `pairs`.
pub fn pose_min_clearance(
    arch: &ArchitectureParams,
    pose: &Pose,
    pairs: &[LegPair],
) -> Result<PoseClearance> {
    let pairs = normalize_pairs(pairs)?;
    let capsules = leg_capsules(arch, pose)?;
    min_clearance_of(&capsules, &pairs)
}

/// Same as [`pose_min_clearance`] but over pre-built capsules and an
/// already-normalized filter; the inner loop of the batch sweeps.
pub(crate) fn min_clearance_of(
    capsules: &[Capsule; LEG_COUNT],
    sorted_pairs: &[LegPair],
) -> Result<PoseClearance> {
    let mut records = Vec::with_capacity(sorted_pairs.len());
    let mut min_clearance = f64::INFINITY;
    let mut worst_pair = sorted_pairs[0];
    for &pair in sorted_pairs {
        let record = pair_collision(
            pair,
            &capsules[pair.first() as usize - 1],
            &capsules[pair.second() as usize - 1],
        );
        if record.clearance < min_clearance {
            min_clearance = record.clearance;
            worst_pair = pair;
        }
        records.push(record);
    }
    Ok(PoseClearance {
        min_clearance,
        worst_pair,
        records,
    })
}

fn point_segment_distance_squared(p: Vec3, seg: &Segment) -> f64 {
    let d = seg.direction();
    let w = p - seg.start;
    let dd = d.norm_squared();
    let t = if dd > 0.0 {
        (w.dot(d) / dd).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (w - d * t).norm_squared()
}

/// Two unit vectors completing `axis` to an orthonormal frame.
fn orthonormal_complement(axis: Vec3) -> (Vec3, Vec3) {
    let helper = if axis.x.abs() < 0.9 {
        Vec3::new(1.0, 0.0, 0.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    let e1 = axis.cross(helper).normalized().expect("axis is unit length");
    let e2 = axis.cross(e1);
    (e1, e2)
}

/// Independent interference oracle: samples a dense grid of points of the
/// first capsule's solid (axial stations x radial rings x azimuth, every
/// step at most `resolution`) and reports whether any sampled point lies
/// inside the second capsule.
///
/// One-sided by construction: it can miss interpenetrations shallower than
/// the grid resolution, but a `true` answer always means the solids truly
/// overlap. It shares no code with the segment-distance kernel.
pub fn capsule_overlap_oracle(first: &Capsule, second: &Capsule, resolution: f64) -> Result<bool> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::invalid(format!(
            "oracle resolution must be positive, got {resolution}"
        )));
    }

    let axis_len = first.axis.length();
    let unit = first
        .axis
        .direction()
        .normalized()
        .unwrap_or(Vec3::new(0.0, 0.0, 1.0));
    let (e1, e2) = orthonormal_complement(unit);
    let r = first.radius;
    let r_other_sq = second.radius * second.radius;

    // Axial stations cover the caps too: the cross-section disk at axial
    // coordinate s has radius sqrt(r^2 - overhang^2), where overhang is the
    // distance of s beyond the segment ends.
    let span = axis_len + 2.0 * r;
    let axial_steps = (span / resolution).ceil().max(1.0) as usize;
    for step in 0..=axial_steps {
        let s = -r + span * step as f64 / axial_steps as f64;
        let overhang = (-s).max(s - axis_len).max(0.0);
        let disk_sq = r * r - overhang * overhang;
        if disk_sq < 0.0 {
            continue;
        }
        let disk_radius = disk_sq.sqrt();
        let station = first.axis.start + unit * s;

        let radial_steps = (disk_radius / resolution).ceil().max(1.0) as usize;
        for ring in 0..=radial_steps {
            let rho = disk_radius * ring as f64 / radial_steps as f64;
            let azimuth_steps = if rho > 0.0 {
                ((2.0 * std::f64::consts::PI * rho / resolution).ceil() as usize).max(1)
            } else {
                1
            };
            for k in 0..azimuth_steps {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / azimuth_steps as f64;
                let p = station + e1 * (rho * ang.cos()) + e2 * (rho * ang.sin());
                if point_segment_distance_squared(p, &second.axis) <= r_other_sq {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::platform::example_arch;

    fn capsule(ax: (f64, f64, f64), bx: (f64, f64, f64), r: f64) -> Capsule {
        Capsule::new(
            Segment::new(Vec3::new(ax.0, ax.1, ax.2), Vec3::new(bx.0, bx.1, bx.2)),
            r,
        )
        .unwrap()
    }

    #[test]
    fn pair_construction_normalizes_and_validates() {
        let p = LegPair::new(5, 2).unwrap();
        assert_eq!((p.first(), p.second()), (2, 5));
        assert!(LegPair::new(3, 3).is_err());
        assert!(LegPair::new(0, 2).is_err());
        assert!(LegPair::new(1, 7).is_err());
        assert_eq!(LegPair::all().len(), 15);
    }

    #[test]
    fn far_apart_pair_is_safe() {
        let a = capsule((0.0, 0.0, 0.0), (10.0, 0.0, 0.0), 1.0);
        let b = capsule((0.0, 50.0, 0.0), (10.0, 50.0, 0.0), 1.0);
        let rec = pair_collision(LegPair::new(1, 2).unwrap(), &a, &b);
        assert!(!rec.colliding);
        assert!(rec.clearance > 0.0);
    }

    #[test]
    fn tangency_is_not_a_collision() {
        // axis distance exactly the radius sum
        let a = capsule((0.0, 0.0, 0.0), (10.0, 0.0, 0.0), 8.5);
        let b = capsule((0.0, 17.0, 0.0), (10.0, 17.0, 0.0), 8.5);
        let rec = pair_collision(LegPair::new(1, 2).unwrap(), &a, &b);
        assert_eq!(rec.clearance, 0.0);
        assert!(!rec.colliding);
    }

    #[test]
    fn home_pose_is_collision_free() {
        let arch = example_arch();
        let result = pose_min_clearance(&arch, &arch.home_pose(), &LegPair::all()).unwrap();
        assert_eq!(result.records.len(), 15);
        assert!(result.is_safe());
        // frozen from an independent evaluation of the closest adjacent pair
        assert!((result.min_clearance - 33.071028885065623).abs() < 1e-9);
        for rec in &result.records {
            assert!(rec.clearance > 0.0);
        }
    }

    #[test]
    fn single_pair_filter_yields_single_record() {
        let arch = example_arch();
        let result =
            pose_min_clearance(&arch, &arch.home_pose(), &[LegPair::new(1, 2).unwrap()]).unwrap();
        assert_eq!(result.records.len(), 1);
        assert_eq!(result.worst_pair, LegPair::new(1, 2).unwrap());
    }

    #[test]
    fn empty_filter_is_rejected() {
        let arch = example_arch();
        assert!(pose_min_clearance(&arch, &arch.home_pose(), &[]).is_err());
    }

    #[test]
    fn filter_order_does_not_matter() {
        let arch = example_arch();
        let pose = Pose::new(Vec3::new(40.0, -20.0, 250.0), Vec3::new(0.3, -0.1, 0.2));
        let mut pairs = LegPair::all();
        let forward = pose_min_clearance(&arch, &pose, &pairs).unwrap();
        pairs.reverse();
        let backward = pose_min_clearance(&arch, &pose, &pairs).unwrap();
        assert_eq!(forward, backward);
    }

    #[test]
    fn oracle_detects_heavy_overlap() {
        let a = capsule((0.0, 0.0, 0.0), (10.0, 0.0, 0.0), 2.0);
        let b = capsule((5.0, 1.0, 0.0), (5.0, 1.0, 10.0), 2.0);
        assert!(capsule_overlap_oracle(&a, &b, 0.5).unwrap());
    }

    #[test]
    fn oracle_clears_separated_capsules() {
        let a = capsule((0.0, 0.0, 0.0), (10.0, 0.0, 0.0), 2.0);
        let b = capsule((0.0, 6.0, 0.0), (10.0, 6.0, 0.0), 1.5);
        // clearance 2.5 mm, far above the resolution
        assert!(!capsule_overlap_oracle(&a, &b, 0.5).unwrap());
    }

    #[test]
    fn oracle_rejects_bad_resolution() {
        let a = capsule((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), 1.0);
        assert!(capsule_overlap_oracle(&a, &a, 0.0).is_err());
        assert!(capsule_overlap_oracle(&a, &a, -1.0).is_err());
    }

    #[test]
    fn oracle_handles_degenerate_axis() {
        // first capsule is a sphere
        let a = capsule((0.0, 0.0, 0.0), (0.0, 0.0, 0.0), 2.0);
        let near = capsule((0.0, 3.0, 0.0), (5.0, 3.0, 0.0), 1.5);
        let far = capsule((0.0, 9.0, 0.0), (5.0, 9.0, 0.0), 1.5);
        assert!(capsule_overlap_oracle(&a, &near, 0.25).unwrap());
        assert!(!capsule_overlap_oracle(&a, &far, 0.25).unwrap());
    }
}
