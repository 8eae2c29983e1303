//! Geometric primitives: vectors, rotations built from Rodrigues parameters,
//! segment distances, and capsule clearances.
//!
//! This module is the numeric replacement for a CAD interference engine.
//! Every routine is an exact closed-form computation over `f64`; there is no
//! iteration and no tolerance tuning beyond the degeneracy thresholds below.
//! All lengths are in millimetres, all angles in radians.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Squared axis length below which a segment is treated as a point
/// (1e-6 mm — nanometre scale, far below anything a desk-scale
/// manipulator can represent meaningfully).
const DEGENERATE_LENGTH_SQ: f64 = 1e-12;

/// Axes with |d1 x d2| < PARALLEL_EPS * |d1||d2| take the parallel branch
/// of the distance routines.
const PARALLEL_EPS: f64 = 1e-12;

/// A 3-vector; millimetres when positional, dimensionless when directional.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n > 0.0 {
            Some(self * (1.0 / n))
        } else {
            None
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A rotation matrix in SO(3), stored row-major.
///
/// Constructed through [`Rotation::from_rodrigues`], which guarantees
/// orthonormality and det +1 up to floating-point rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    rows: [[f64; 3]; 3],
}

impl Rotation {
    pub const fn identity() -> Self {
        Rotation {
            rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Builds the rotation for Rodrigues parameters `c = tan(theta/2) * axis`
    /// via the Cayley map:
    ///
    /// `R = [(1 - c.c) I + 2 c c^T + 2 [c]x] / (1 + c.c)`
    ///
    /// Defined for every finite `c`; `c = 0` maps to the identity. Half-turn
    /// rotations (theta = pi) are not representable, which is fine here: they
    /// sit at infinity in this parameterization.
    pub fn from_rodrigues(c: Vec3) -> Result<Rotation> {
        if !c.is_finite() {
            return Err(Error::invalid("Rodrigues parameters must be finite"));
        }
        let cc = c.dot(c);
        let k = 1.0 / (1.0 + cc);
        let d = 1.0 - cc;
        let rows = [
            [
                (d + 2.0 * c.x * c.x) * k,
                (2.0 * c.x * c.y - 2.0 * c.z) * k,
                (2.0 * c.x * c.z + 2.0 * c.y) * k,
            ],
            [
                (2.0 * c.y * c.x + 2.0 * c.z) * k,
                (d + 2.0 * c.y * c.y) * k,
                (2.0 * c.y * c.z - 2.0 * c.x) * k,
            ],
            [
                (2.0 * c.z * c.x - 2.0 * c.y) * k,
                (2.0 * c.z * c.y + 2.0 * c.x) * k,
                (d + 2.0 * c.z * c.z) * k,
            ],
        ];
        Ok(Rotation { rows })
    }

    /// Inverse Cayley map: recovers the Rodrigues parameters.
    ///
    /// Returns `None` when `1 + trace(R)` is not safely positive, i.e. the
    /// rotation is at (or numerically near) a half-turn.
    pub fn to_rodrigues(&self) -> Option<Vec3> {
        let r = &self.rows;
        let denom = 1.0 + r[0][0] + r[1][1] + r[2][2];
        if denom <= 1e-9 {
            return None;
        }
        Some(Vec3::new(
            (r[2][1] - r[1][2]) / denom,
            (r[0][2] - r[2][0]) / denom,
            (r[1][0] - r[0][1]) / denom,
        ))
    }

    /// Applies the rotation to a vector.
    pub fn apply(&self, v: Vec3) -> Vec3 {
        let r = &self.rows;
        Vec3::new(
            r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
            r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z,
        )
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.rows[row][col]
    }

    pub fn determinant(&self) -> f64 {
        let r = &self.rows;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    /// Largest absolute entry of `R^T R - I`; zero for a perfectly
    /// orthonormal matrix.
    pub fn orthonormality_error(&self) -> f64 {
        let r = &self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                // (R^T R)[i][j] = column_i . column_j
                let g = r[0][i] * r[0][j] + r[1][i] * r[1][j] + r[2][i] * r[2][j];
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

/// A finite segment between two points. Zero length is permitted (the
/// segment degenerates to a point).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Vec3,
    pub end: Vec3,
}

impl Segment {
    pub const fn new(start: Vec3, end: Vec3) -> Self {
        Segment { start, end }
    }

    pub fn direction(&self) -> Vec3 {
        self.end - self.start
    }

    pub fn length(&self) -> f64 {
        self.direction().norm()
    }

    /// Point at parameter `t` (0 = start, 1 = end).
    pub fn point_at(&self, t: f64) -> Vec3 {
        self.start + self.direction() * t
    }

    pub fn translated(&self, delta: Vec3) -> Segment {
        Segment::new(self.start + delta, self.end + delta)
    }
}

/// Result of a closest-point query between two segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosestPoints {
    pub distance: f64,
    /// Point on the first segment realizing the distance.
    pub on_first: Vec3,
    /// Point on the second segment realizing the distance.
    pub on_second: Vec3,
}

fn clamp01(t: f64) -> f64 {
    t.clamp(0.0, 1.0)
}

/// Shortest distance between two finite segments, with the witness points
/// that realize it.
///
/// Clamped closest-point computation: minimizes `|s1(u) - s2(v)|` over the
/// unit square of parameters. Handles parallel, collinear, and degenerate
/// (point) segments.
pub fn segment_segment_distance(s1: &Segment, s2: &Segment) -> ClosestPoints {
    let d1 = s1.direction();
    let d2 = s2.direction();
    let r = s1.start - s2.start;
    let a = d1.norm_squared();
    let e = d2.norm_squared();
    let f = d2.dot(r);

    let (u, v);
    if a <= DEGENERATE_LENGTH_SQ && e <= DEGENERATE_LENGTH_SQ {
        u = 0.0;
        v = 0.0;
    } else if a <= DEGENERATE_LENGTH_SQ {
        u = 0.0;
        v = clamp01(f / e);
    } else {
        let c = d1.dot(r);
        if e <= DEGENERATE_LENGTH_SQ {
            v = 0.0;
            u = clamp01(-c / a);
        } else {
            let b = d1.dot(d2);
            // a*e - b*b = |d1 x d2|^2 by the Lagrange identity, so this
            // threshold matches the parallel test on the cross product.
            let denom = a * e - b * b;
            let u0 = if denom > (PARALLEL_EPS * PARALLEL_EPS) * a * e {
                clamp01((b * f - c * e) / denom)
            } else {
                // parallel axes: any u works, the v-clamp below settles it
                0.0
            };
            let v_unclamped = b * u0 + f;
            if v_unclamped < 0.0 {
                v = 0.0;
                u = clamp01(-c / a);
            } else if v_unclamped > e {
                v = 1.0;
                u = clamp01((b - c) / a);
            } else {
                v = v_unclamped / e;
                u = u0;
            }
        }
    }

    let on_first = s1.point_at(u);
    let on_second = s2.point_at(v);
    ClosestPoints {
        distance: on_first.distance(on_second),
        on_first,
        on_second,
    }
}

/// Perpendicular distance between the infinite lines carrying the two
/// segments.
///
/// Skew lines use `|(d1 x d2) . (p2 - p1)| / |d1 x d2|`; parallel lines fall
/// back to the point-to-line distance. Always bounded above by
/// [`segment_segment_distance`] for the same inputs.
///
/// Errors on zero-length segments: a point does not define a line.
pub fn line_line_distance(s1: &Segment, s2: &Segment) -> Result<f64> {
    let d1 = s1.direction();
    let d2 = s2.direction();
    if d1.norm_squared() <= DEGENERATE_LENGTH_SQ || d2.norm_squared() <= DEGENERATE_LENGTH_SQ {
        return Err(Error::invalid(
            "line distance requires segments of nonzero length",
        ));
    }
    let n = d1.cross(d2);
    let w = s2.start - s1.start;
    let n_norm = n.norm();
    if n_norm < PARALLEL_EPS * d1.norm() * d2.norm() {
        Ok(w.cross(d1).norm() / d1.norm())
    } else {
        Ok((n.dot(w) / n_norm).abs())
    }
}

/// The convex solid swept by a sphere along a segment: a finite cylinder
/// capped by two hemispheres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capsule {
    pub axis: Segment,
    pub radius: f64,
}

impl Capsule {
    pub fn new(axis: Segment, radius: f64) -> Result<Capsule> {
        if !axis.start.is_finite() || !axis.end.is_finite() {
            return Err(Error::invalid("capsule axis endpoints must be finite"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!(
                "capsule radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Capsule { axis, radius })
    }
}

/// Signed separation between two capsule solids: the axis-to-axis segment
/// distance minus the sum of the radii.
///
/// Negative means the solids interpenetrate; zero means exact tangency.
pub fn capsule_clearance(c1: &Capsule, c2: &Capsule) -> f64 {
    segment_segment_distance(&c1.axis, &c2.axis).distance - (c1.radius + c2.radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn rodrigues_zero_is_identity() {
        let r = Rotation::from_rodrigues(Vec3::ZERO).unwrap();
        assert_eq!(r, Rotation::identity());
    }

    #[test]
    fn rodrigues_unit_x_is_quarter_turn() {
        // tan(theta/2) = 1 forces theta = pi/2 about X
        let r = Rotation::from_rodrigues(Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let expected = [[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((r.entry(i, j) - want).abs() < TOL);
            }
        }
    }

    #[test]
    fn rodrigues_large_angle_is_orthonormal() {
        let c = Vec3::new(-0.2301, 0.0413, 3.0209);
        let r = Rotation::from_rodrigues(c).unwrap();
        assert!(r.orthonormality_error() < 1e-9);
        assert!((r.determinant() - 1.0).abs() < 1e-9);
        let back = r.to_rodrigues().unwrap();
        assert!((back - c).norm() < 1e-9);
    }

    #[test]
    fn rodrigues_rejects_non_finite() {
        assert!(Rotation::from_rodrigues(Vec3::new(f64::NAN, 0.0, 0.0)).is_err());
        assert!(Rotation::from_rodrigues(Vec3::new(0.0, f64::INFINITY, 0.0)).is_err());
    }

    #[test]
    fn half_turn_has_no_rodrigues_parameters() {
        // Rotation by pi about Z: trace = -1
        let r = Rotation {
            rows: [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]],
        };
        assert!(r.to_rodrigues().is_none());
    }

    #[test]
    fn segment_distance_parallel_offset() {
        let s1 = Segment::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0));
        let s2 = Segment::new(Vec3::new(0.0, 1.0, 0.0), Vec3::new(1.0, 1.0, 0.0));
        let cp = segment_segment_distance(&s1, &s2);
        assert!((cp.distance - 1.0).abs() < TOL);
    }

    #[test]
    fn segment_distance_collinear_gap() {
        let s1 = Segment::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0));
        let s2 = Segment::new(Vec3::new(2.0, 0.0, 0.0), Vec3::new(3.0, 0.0, 0.0));
        let cp = segment_segment_distance(&s1, &s2);
        assert!((cp.distance - 1.0).abs() < TOL);
        // clamped to the facing endpoints
        assert!((cp.on_first - Vec3::new(1.0, 0.0, 0.0)).norm() < TOL);
        assert!((cp.on_second - Vec3::new(2.0, 0.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn segment_distance_point_segments() {
        let p = Segment::new(Vec3::new(1.0, 1.0, 1.0), Vec3::new(1.0, 1.0, 1.0));
        let q = Segment::new(Vec3::ZERO, Vec3::new(2.0, 0.0, 0.0));
        let cp = segment_segment_distance(&p, &q);
        assert!((cp.distance - 2.0f64.sqrt()).abs() < TOL);
        let cp2 = segment_segment_distance(&p, &p);
        assert_eq!(cp2.distance, 0.0);
    }

    #[test]
    fn segment_distance_crossing_is_zero() {
        let s1 = Segment::new(Vec3::new(-1.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0));
        let s2 = Segment::new(Vec3::new(0.0, -1.0, 0.0), Vec3::new(0.0, 1.0, 0.0));
        assert!(segment_segment_distance(&s1, &s2).distance < TOL);
    }

    #[test]
    fn line_distance_skew_orthogonal() {
        let s1 = Segment::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0));
        let s2 = Segment::new(Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 1.0, 1.0));
        assert!((line_line_distance(&s1, &s2).unwrap() - 1.0).abs() < TOL);
    }

    #[test]
    fn line_distance_parallel() {
        let s1 = Segment::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0));
        let s2 = Segment::new(Vec3::new(5.0, 2.0, 0.0), Vec3::new(9.0, 2.0, 0.0));
        assert!((line_line_distance(&s1, &s2).unwrap() - 2.0).abs() < TOL);
    }

    #[test]
    fn line_distance_rejects_degenerate() {
        let p = Segment::new(Vec3::ZERO, Vec3::ZERO);
        let s = Segment::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0));
        assert!(line_line_distance(&p, &s).is_err());
    }

    #[test]
    fn capsule_clearance_parallel_axes() {
        let c1 = Capsule::new(
            Segment::new(Vec3::ZERO, Vec3::new(10.0, 0.0, 0.0)),
            1.0,
        )
        .unwrap();
        let c2 = Capsule::new(
            Segment::new(Vec3::new(0.0, 3.0, 0.0), Vec3::new(10.0, 3.0, 0.0)),
            1.0,
        )
        .unwrap();
        assert!((capsule_clearance(&c1, &c2) - 1.0).abs() < TOL);
    }

    #[test]
    fn capsule_clearance_coincident_axes() {
        let axis = Segment::new(Vec3::ZERO, Vec3::new(10.0, 0.0, 0.0));
        let c1 = Capsule::new(axis, 1.0).unwrap();
        let c2 = Capsule::new(axis, 1.0).unwrap();
        assert!((capsule_clearance(&c1, &c2) + 2.0).abs() < TOL);
    }

    #[test]
    fn capsule_rejects_bad_radius() {
        let axis = Segment::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0));
        assert!(Capsule::new(axis, 0.0).is_err());
        assert!(Capsule::new(axis, -1.0).is_err());
        assert!(Capsule::new(axis, f64::NAN).is_err());
    }
}
