//! Faces of a straight-line drawing.
//!
//! Half-edge `2i` runs `a -> b` and `2i + 1` runs `b -> a` for edge `i = (a, b)`.
//! Boundary walks are traced with the face on the left: after arriving at `v`
//! along `u -> v`, the walk leaves along the edge that is next clockwise from
//! `v -> u` around `v`. Bounded faces come out as counterclockwise walks and
//! an edge with the same face on both sides appears twice in one walk.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_3, PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    ccw_gap, direction_angle, point_in_walk, point_segment_distance, signed_area, GeomError, Point2, PointLocation,
    ToleranceConfig,
};
use crate::graph::{PlaneGraph, SegmentGrid};

const TWO_PI_3: f64 = 2.0 * FRAC_PI_3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FaceError {
    #[error("vertex {vertex}: half-edges {first} and {second} leave in the same direction")]
    DegenerateDirections { vertex: usize, first: usize, second: usize },
    #[error("cannot place walk {walk} in a face: {reason}")]
    NestingAmbiguity { walk: usize, reason: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Snaps `alpha` onto π/3 or 2π/3 when it lies within `eps`.
pub fn snap_angle(alpha: f64, eps: f64) -> f64 {
    for target in [FRAC_PI_3, TWO_PI_3] {
        if (alpha - target).abs() <= eps {
            return target;
        }
    }
    alpha
}

/// Circular order of outgoing half-edges around every vertex.
#[derive(Debug, Clone)]
pub struct RotationSystem<'g> {
    graph: &'g PlaneGraph,
    tol: ToleranceConfig,
    angle: Vec<f64>,
    order: Vec<Vec<usize>>,
    pos: Vec<usize>,
}

impl<'g> RotationSystem<'g> {
    pub fn build(graph: &'g PlaneGraph, tol: &ToleranceConfig) -> Result<Self, FaceError> {
        let pts = graph.vertices();
        let m = 2 * graph.edge_count();
        let mut angle = Vec::with_capacity(m);
        let mut order = vec![Vec::new(); graph.vertex_count()];
        for (i, &(a, b)) in graph.edges().iter().enumerate() {
            angle.push(direction_angle(pts[a], pts[b], tol)?);
            angle.push(direction_angle(pts[b], pts[a], tol)?);
            order[a].push(2 * i);
            order[b].push(2 * i + 1);
        }
        let mut pos = vec![0; m];
        for (v, list) in order.iter_mut().enumerate() {
            list.sort_by(|&x, &y| angle[x].total_cmp(&angle[y]).then(x.cmp(&y)));
            let d = list.len();
            if d >= 2 {
                for k in 0..d {
                    let (h1, h2) = (list[k], list[(k + 1) % d]);
                    let gap = if k + 1 == d {
                        angle[h2] + TAU - angle[h1]
                    } else {
                        angle[h2] - angle[h1]
                    };
                    if gap <= tol.eps_ang {
                        return Err(FaceError::DegenerateDirections {
                            vertex: v,
                            first: h1,
                            second: h2,
                        });
                    }
                }
            }
            for (k, &h) in list.iter().enumerate() {
                pos[h] = k;
            }
        }
        Ok(RotationSystem {
            graph,
            tol: *tol,
            angle,
            order,
            pos,
        })
    }

    pub fn graph(&self) -> &'g PlaneGraph {
        self.graph
    }

    pub fn half_edge_count(&self) -> usize {
        self.angle.len()
    }

    pub fn origin(&self, h: usize) -> usize {
        let (a, b) = self.graph.edges()[h / 2];
        if h.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    pub fn dest(&self, h: usize) -> usize {
        self.origin(h ^ 1)
    }

    pub fn angle(&self, h: usize) -> f64 {
        self.angle[h]
    }

    /// Outgoing half-edges of `v`, ascending by direction.
    pub fn around(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    /// The half-edge following `h` on the boundary of the face to its left.
    pub fn next(&self, h: usize) -> usize {
        let twin = h ^ 1;
        let list = &self.order[self.origin(twin)];
        let d = list.len();
        list[(self.pos[twin] + d - 1) % d]
    }

    /// Traces every boundary walk. Each half-edge lands in exactly one walk.
    pub fn trace_walks(&self) -> Vec<Walk> {
        let pts = self.graph.vertices();
        let m = self.half_edge_count();
        let mut visited = vec![false; m];
        let mut walks = Vec::new();
        for start in 0..m {
            if visited[start] {
                continue;
            }
            let mut half_edges = Vec::new();
            let mut h = start;
            loop {
                visited[h] = true;
                half_edges.push(h);
                h = self.next(h);
                if h == start {
                    break;
                }
            }
            let corners = half_edges
                .iter()
                .enumerate()
                .map(|(i, &inc)| {
                    let out = half_edges[(i + 1) % half_edges.len()];
                    let raw = ccw_gap(self.angle[out], self.angle[inc ^ 1]);
                    Corner {
                        vertex: self.dest(inc),
                        angle: snap_angle(raw, self.tol.eps_ang),
                        raw_angle: raw,
                        incoming: inc,
                        outgoing: out,
                    }
                })
                .collect();
            let poly: Vec<Point2> = half_edges.iter().map(|&h| pts[self.origin(h)]).collect();
            walks.push(Walk {
                signed_area: signed_area(&poly),
                half_edges,
                corners,
            });
        }
        walks
    }
}

/// Angle between a face and a vertex, measured inside the face.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Corner {
    pub vertex: usize,
    /// Snapped angle, used for all downstream charge computations.
    pub angle: f64,
    pub raw_angle: f64,
    pub incoming: usize,
    pub outgoing: usize,
}

/// A closed boundary walk. Corner `i` sits between half-edge `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Walk {
    pub half_edges: Vec<usize>,
    pub corners: Vec<Corner>,
    pub signed_area: f64,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.half_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_edges.is_empty()
    }

    pub fn raw_angle_sum(&self) -> f64 {
        self.corners.iter().map(|c| c.raw_angle).sum()
    }

    /// True for the outer boundary of a bounded face.
    ///
    /// Such walks have corner sum `(m - 2)π`; walks around a component from
    /// outside have `(m + 2)π`, so the midpoint `mπ` separates them.
    pub fn is_face_boundary(&self) -> bool {
        self.raw_angle_sum() < self.len() as f64 * PI
    }

    /// Vertex sequence: the origin of every half-edge, in order.
    pub fn vertices(&self) -> Vec<usize> {
        self.corners
            .iter()
            .cycle()
            .skip(self.corners.len().saturating_sub(1))
            .take(self.corners.len())
            .map(|c| c.vertex)
            .collect()
    }

    fn polygon(&self, pts: &[Point2]) -> Vec<Point2> {
        self.vertices().iter().map(|&v| pts[v]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Face {
    /// Indices into [`FaceSet::walks`]. The outer walk, if any, comes first.
    pub walks: Vec<usize>,
    pub sides: usize,
    pub bounded: bool,
}

/// `b`, bounded `k`-gon counts and `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCensus {
    pub b: usize,
    pub f_k: BTreeMap<usize, usize>,
    pub f: usize,
}

impl FaceCensus {
    pub fn count(&self, k: usize) -> usize {
        self.f_k.get(&k).copied().unwrap_or(0)
    }

    /// `b + Σ k f_k`.
    pub fn side_total(&self) -> usize {
        self.b + self.f_k.iter().map(|(k, c)| k * c).sum::<usize>()
    }
}

/// All faces of a drawing. Face 0 is the unbounded face.
#[derive(Debug, Clone)]
pub struct FaceSet {
    walks: Vec<Walk>,
    faces: Vec<Face>,
    walk_face: Vec<usize>,
    vertex_count: usize,
}

impl FaceSet {
    pub fn walks(&self) -> &[Walk] {
        &self.walks
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn unbounded(&self) -> &Face {
        &self.faces[0]
    }

    pub fn face_of_walk(&self, walk: usize) -> usize {
        self.walk_face[walk]
    }

    pub fn census(&self) -> FaceCensus {
        let mut f_k = BTreeMap::new();
        for face in &self.faces[1..] {
            *f_k.entry(face.sides).or_insert(0) += 1;
        }
        FaceCensus {
            b: self.faces[0].sides,
            f_k,
            f: self.faces.len() - 1,
        }
    }

    /// Corners of `face` across all its walks.
    pub fn face_corners(&self, face: usize) -> impl Iterator<Item = &Corner> + '_ {
        self.faces[face]
            .walks
            .iter()
            .flat_map(move |&w| self.walks[w].corners.iter())
    }

    /// `(face, snapped angle)` for every corner, grouped by vertex.
    pub fn corner_angles_by_vertex(&self) -> Vec<Vec<(usize, f64)>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for (fi, face) in self.faces.iter().enumerate() {
            for &w in &face.walks {
                for c in &self.walks[w].corners {
                    out[c.vertex].push((fi, c.angle));
                }
            }
        }
        out
    }

    pub fn face_area(&self, face: usize) -> f64 {
        self.faces[face].walks.iter().map(|&w| self.walks[w].signed_area).sum()
    }
}

struct OuterWalk {
    walk: usize,
    area: f64,
    lo: Point2,
    hi: Point2,
    polygon: Vec<Point2>,
}

/// Groups walks into faces.
///
/// Every face-boundary walk opens one bounded face. Every other walk is the
/// outside of a component and joins the face whose outer walk most tightly
/// encloses a probe point placed just outside it, or the unbounded face.
pub fn assemble_faces(walks: Vec<Walk>, g: &PlaneGraph, tol: &ToleranceConfig) -> Result<FaceSet, FaceError> {
    let pts = g.vertices();
    let scale = pts.iter().fold(1.0_f64, |a, p| a.max(p.x.abs()).max(p.y.abs()));
    let area_band = tol.eps_orient * scale * scale;

    let mut outer = Vec::new();
    let mut holes = Vec::new();
    for (i, w) in walks.iter().enumerate() {
        if w.is_face_boundary() {
            if w.signed_area <= area_band {
                return Err(FaceError::NestingAmbiguity {
                    walk: i,
                    reason: format!("face boundary walk has non-positive area {}", w.signed_area),
                });
            }
            let polygon = w.polygon(pts);
            let (lo, hi) = bbox(&polygon);
            outer.push(OuterWalk {
                walk: i,
                area: w.signed_area,
                lo,
                hi,
                polygon,
            });
        } else {
            if w.signed_area > area_band {
                return Err(FaceError::NestingAmbiguity {
                    walk: i,
                    reason: format!("outside walk has positive area {}", w.signed_area),
                });
            }
            holes.push(i);
        }
    }

    let mut faces = vec![Face {
        walks: Vec::new(),
        sides: 0,
        bounded: false,
    }];
    let mut walk_face = vec![0; walks.len()];
    let mut face_of_outer = BTreeMap::new();
    for o in &outer {
        face_of_outer.insert(o.walk, faces.len());
        walk_face[o.walk] = faces.len();
        faces.push(Face {
            walks: vec![o.walk],
            sides: walks[o.walk].len(),
            bounded: true,
        });
    }

    let grid = SegmentGrid::new(g.edges().iter().map(|&(a, b)| (pts[a], pts[b])), 1.0, 0.0);
    for &hi in &holes {
        let probe = probe_point(&walks[hi], g, &grid, tol);
        let mut best: Option<&OuterWalk> = None;
        for o in &outer {
            if probe.x < o.lo.x || probe.x > o.hi.x || probe.y < o.lo.y || probe.y > o.hi.y {
                continue;
            }
            match point_in_walk(probe, &o.polygon, tol) {
                PointLocation::Outside => {}
                PointLocation::OnBoundary => {
                    return Err(FaceError::NestingAmbiguity {
                        walk: hi,
                        reason: format!("probe point lies on the boundary of walk {}", o.walk),
                    })
                }
                PointLocation::Inside => {
                    if let Some(b) = best {
                        if (b.area - o.area).abs() <= area_band {
                            return Err(FaceError::NestingAmbiguity {
                                walk: hi,
                                reason: format!("enclosed by walks {} and {} of equal area", b.walk, o.walk),
                            });
                        }
                    }
                    if best.is_none_or(|b| o.area < b.area) {
                        best = Some(o);
                    }
                }
            }
        }
        let fi = best.map_or(0, |o| face_of_outer[&o.walk]);
        walk_face[hi] = fi;
        faces[fi].walks.push(hi);
        faces[fi].sides += walks[hi].len();
    }

    Ok(FaceSet {
        walks,
        faces,
        walk_face,
        vertex_count: g.vertex_count(),
    })
}

fn bbox(poly: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in poly {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// A point strictly inside the face to the left of `walk`, near its widest corner.
fn probe_point(walk: &Walk, g: &PlaneGraph, grid: &SegmentGrid, tol: &ToleranceConfig) -> Point2 {
    let pts = g.vertices();
    let corner = walk
        .corners
        .iter()
        .fold(None::<&Corner>, |best, c| match best {
            Some(b) if b.raw_angle >= c.raw_angle => Some(b),
            _ => Some(c),
        })
        .expect("walks are non-empty");
    let v = corner.vertex;
    let p = pts[v];
    let reach = 0.25;
    let mut clearance = reach;
    for idx in grid.near(p, reach) {
        let (a, b) = g.edges()[idx];
        if a == v || b == v {
            continue;
        }
        clearance = clearance.min(point_segment_distance(p, pts[a], pts[b]).0);
    }
    let delta = (0.1_f64).min(clearance / 2.0).max(tol.eps_len);
    let (a, b) = g.edges()[corner.outgoing / 2];
    let q = if corner.outgoing % 2 == 0 { pts[b] } else { pts[a] };
    let out_dir = (q.y - p.y).atan2(q.x - p.x);
    let theta = out_dir + corner.raw_angle / 2.0;
    Point2::new(p.x + delta * theta.cos(), p.y + delta * theta.sin())
}

/// Rotation system, walk tracing and face assembly in one step.
pub fn faces_of(g: &PlaneGraph, tol: &ToleranceConfig) -> Result<FaceSet, FaceError> {
    let rs = RotationSystem::build(g, tol)?;
    let walks = rs.trace_walks();
    assemble_faces(walks, g, tol)
}
