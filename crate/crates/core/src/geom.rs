//! Tolerance-aware planar primitives.
//!
//! Coordinates are measured in matchstick lengths. Every approximate
//! comparison goes through a [`ToleranceConfig`]; there are no hidden
//! epsilons in this module.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate segment: endpoints ({0}, {1}) and ({2}, {3}) coincide")]
    DegenerateSegment(f64, f64, f64, f64),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

/// A point of the drawing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    fn sub(self, o: Point2) -> (f64, f64) {
        (self.x - o.x, self.y - o.y)
    }

    fn magnitude(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }
}

/// Slack used by every approximate predicate.
///
/// `eps_len` is the allowed deviation of an edge from unit length and the
/// radius within which two points are considered the same. `eps_ang` is the
/// snapping radius for corner angles. `eps_orient` is the (scale-relative)
/// threshold under which a doubled triangle area counts as zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub eps_len: f64,
    pub eps_ang: f64,
    pub eps_orient: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_len: 1e-9,
            eps_ang: 1e-7,
            eps_orient: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eps_len: f64, eps_ang: f64, eps_orient: f64) -> Result<Self, GeomError> {
        let tol = ToleranceConfig {
            eps_len,
            eps_ang,
            eps_orient,
        };
        tol.check()?;
        Ok(tol)
    }

    pub fn check(&self) -> Result<(), GeomError> {
        for (name, v) in [
            ("eps_len", self.eps_len),
            ("eps_ang", self.eps_ang),
            ("eps_orient", self.eps_orient),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(GeomError::InvalidTolerance(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        if self.eps_len >= 0.5 {
            return Err(GeomError::InvalidTolerance(format!(
                "eps_len must be below 0.5, got {}",
                self.eps_len
            )));
        }
        if self.eps_ang >= PI / 12.0 {
            return Err(GeomError::InvalidTolerance(format!(
                "eps_ang must be below pi/12, got {}",
                self.eps_ang
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SegmentRelation {
    Disjoint,
    SharedEndpoint,
    ProperCrossing,
    EndpointOnInterior,
    Overlapping,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointLocation {
    Inside,
    Outside,
    OnBoundary,
}

pub fn dist(p: Point2, q: Point2) -> f64 {
    // hypot is symmetric in sign, so dist(p, q) == dist(q, p) bit for bit
    (p.x - q.x).hypot(p.y - q.y)
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    let (ax, ay) = a.sub(o);
    let (bx, by) = b.sub(o);
    ax * by - ay * bx
}

pub fn orientation(p: Point2, q: Point2, r: Point2, tol: &ToleranceConfig) -> Orientation {
    let area2 = cross(p, q, r);
    let scale = p.magnitude().max(q.magnitude()).max(r.magnitude());
    let band = tol.eps_orient * (scale * scale).max(1.0);
    if area2.abs() <= band {
        Orientation::Collinear
    } else if area2 > 0.0 {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// Distance from `p` to the closed segment `a`-`b`, together with the
/// projection parameter clamped to `[0, 1]`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> (f64, f64) {
    let (dx, dy) = b.sub(a);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (dist(p, a), 0.0);
    }
    let (px, py) = p.sub(a);
    let t = ((px * dx + py * dy) / len2).clamp(0.0, 1.0);
    let foot = Point2::new(a.x + t * dx, a.y + t * dy);
    (dist(p, foot), t)
}

fn check_segment(a: Point2, b: Point2, tol: &ToleranceConfig) -> Result<(), GeomError> {
    if dist(a, b) <= tol.eps_len / 2.0 {
        return Err(GeomError::DegenerateSegment(a.x, a.y, b.x, b.y));
    }
    Ok(())
}

/// Classifies how two segments touch.
pub fn segment_relation(
    a1: Point2,
    a2: Point2,
    b1: Point2,
    b2: Point2,
    tol: &ToleranceConfig,
) -> Result<SegmentRelation, GeomError> {
    check_segment(a1, a2, tol)?;
    check_segment(b1, b2, tol)?;

    let near = |p: Point2, q: Point2| dist(p, q) <= tol.eps_len;
    let shared = [(a1, b1), (a1, b2), (a2, b1), (a2, b2)]
        .iter()
        .filter(|(p, q)| near(*p, *q))
        .count();
    if shared >= 2 {
        // both endpoints coincide: the same segment twice
        return Ok(SegmentRelation::Overlapping);
    }

    let o1 = orientation(a1, a2, b1, tol);
    let o2 = orientation(a1, a2, b2, tol);
    let o3 = orientation(b1, b2, a1, tol);
    let o4 = orientation(b1, b2, a2, tol);

    let collinear = [o1, o2, o3, o4].iter().all(|o| *o == Orientation::Collinear);
    if collinear {
        // project onto the direction of a; symmetric in a and b up to sign
        let (dx, dy) = a2.sub(a1);
        let len = dx.hypot(dy);
        let proj = |p: Point2| {
            let (px, py) = p.sub(a1);
            (px * dx + py * dy) / len
        };
        let (lo_a, hi_a) = (0.0_f64, len);
        let (tb1, tb2) = (proj(b1), proj(b2));
        let (lo_b, hi_b) = (tb1.min(tb2), tb1.max(tb2));
        let overlap = hi_a.min(hi_b) - lo_a.max(lo_b);
        if overlap > tol.eps_len {
            return Ok(SegmentRelation::Overlapping);
        }
        return Ok(if shared == 1 {
            SegmentRelation::SharedEndpoint
        } else {
            SegmentRelation::Disjoint
        });
    }

    if shared == 1 {
        return Ok(SegmentRelation::SharedEndpoint);
    }

    let on_interior = |p: Point2, s: Point2, t: Point2| point_segment_distance(p, s, t).0 <= tol.eps_len;
    if on_interior(a1, b1, b2) || on_interior(a2, b1, b2) || on_interior(b1, a1, a2) || on_interior(b2, a1, a2) {
        return Ok(SegmentRelation::EndpointOnInterior);
    }

    let opposite = |x: Orientation, y: Orientation| {
        matches!(
            (x, y),
            (Orientation::Ccw, Orientation::Cw) | (Orientation::Cw, Orientation::Ccw)
        )
    };
    if opposite(o1, o2) && opposite(o3, o4) {
        return Ok(SegmentRelation::ProperCrossing);
    }
    Ok(SegmentRelation::Disjoint)
}

/// Polar angle of `q - p` in `[0, 2π)`.
pub fn direction_angle(p: Point2, q: Point2, tol: &ToleranceConfig) -> Result<f64, GeomError> {
    check_segment(p, q, tol)?;
    Ok(normalize_angle((q.y - p.y).atan2(q.x - p.x)))
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Counterclockwise sweep from `from_angle` to `to_angle`, in `(0, 2π]`.
///
/// Coincident directions give a full turn, which is the corner angle at a
/// degree-1 vertex.
pub fn ccw_gap(from_angle: f64, to_angle: f64) -> f64 {
    let g = (to_angle - from_angle).rem_euclid(TAU);
    if g == 0.0 || g >= TAU {
        TAU
    } else {
        g
    }
}

/// Shoelace area of the closed polygon through `walk`. Positive for CCW.
pub fn signed_area(walk: &[Point2]) -> f64 {
    if walk.len() < 3 {
        return 0.0;
    }
    let m = walk.len();
    let mut acc = 0.0;
    for i in 0..m {
        let p = walk[i];
        let q = walk[(i + 1) % m];
        acc += p.x * q.y - q.x * p.y;
    }
    acc / 2.0
}

/// Winding-number location of `p` relative to the closed walk.
///
/// Repeated vertices are allowed; an edge traversed once in each direction
/// cancels out, so pendant edges inside a face do not flip the result.
pub fn point_in_walk(p: Point2, walk: &[Point2], tol: &ToleranceConfig) -> PointLocation {
    let m = walk.len();
    if m == 0 {
        return PointLocation::Outside;
    }
    let scale = walk
        .iter()
        .fold(p.magnitude(), |acc, q| acc.max(q.magnitude()))
        .max(1.0);
    let band = tol.eps_orient * scale;
    for i in 0..m {
        let a = walk[i];
        let b = walk[(i + 1) % m];
        if point_segment_distance(p, a, b).0 <= band {
            return PointLocation::OnBoundary;
        }
    }
    let mut winding = 0i64;
    for i in 0..m {
        let a = walk[i];
        let b = walk[(i + 1) % m];
        if a.y <= p.y {
            if b.y > p.y && cross(a, b, p) > 0.0 {
                winding += 1;
            }
        } else if b.y <= p.y && cross(a, b, p) < 0.0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        PointLocation::Inside
    } else {
        PointLocation::Outside
    }
}
