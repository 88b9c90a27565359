//! Plane graph data model and matchstick validation.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{dist, point_segment_distance, segment_relation, Point2, SegmentRelation, ToleranceConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) refers to a vertex outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFiniteCoordinate(usize),
}

/// Vertices with coordinates and undirected edges stored as `(i, j)`, `i < j`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlaneGraph {
    vertices: Vec<Point2>,
    edges: Vec<(usize, usize)>,
}

impl PlaneGraph {
    pub fn build(points: Vec<Point2>, edge_pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(GraphError::NonFiniteCoordinate(i));
        }
        let n = points.len();
        let mut seen = HashSet::with_capacity(edge_pairs.len());
        let mut edges = Vec::with_capacity(edge_pairs.len());
        for &(a, b) in edge_pairs {
            if a >= n || b >= n {
                return Err(GraphError::IndexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            edges.push(e);
        }
        Ok(PlaneGraph {
            vertices: points,
            edges,
        })
    }

    pub fn empty() -> Self {
        PlaneGraph::default()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn point(&self, v: usize) -> Point2 {
        self.vertices[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Adjacency lists in edge order.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degree_histogram(&self) -> DegreeHistogram {
        let mut counts = BTreeMap::new();
        for d in self.degrees() {
            *counts.entry(d).or_insert(0) += 1;
        }
        DegreeHistogram {
            counts,
            n: self.vertices.len(),
            e: self.edges.len(),
        }
    }

    /// Number of connected components; isolated vertices count.
    pub fn connected_components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.components
    }

    /// Component label per vertex, labels dense in `0..c`.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut label = HashMap::new();
        (0..self.vertices.len())
            .map(|v| {
                let r = uf.find(v);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect()
    }

    /// Drops degree-0 vertices, keeping the relative order of the rest.
    /// Returns the reduced graph and the number of vertices removed.
    pub fn remove_isolated(&self) -> (PlaneGraph, usize) {
        let deg = self.degrees();
        let mut remap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, &d) in deg.iter().enumerate() {
            if d > 0 {
                remap[v] = vertices.len();
                vertices.push(self.vertices[v]);
            }
        }
        let removed = self.vertices.len() - vertices.len();
        let edges = self.edges.iter().map(|&(a, b)| (remap[a], remap[b])).collect();
        (PlaneGraph { vertices, edges }, removed)
    }

    /// Applies `f` to every coordinate.
    pub fn map_points(&self, f: impl Fn(Point2) -> Point2) -> PlaneGraph {
        PlaneGraph {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn validate_matchstick(&self, tol: &ToleranceConfig) -> MatchstickCertificate {
        validate(self, tol)
    }
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.components -= 1;
        }
    }
}

/// `n_i` for every occurring degree `i`, plus `n` and `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub counts: BTreeMap<usize, usize>,
    pub n: usize,
    pub e: usize,
}

impl DegreeHistogram {
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    /// `4 n_1 + 3 n_2 + 2 n_3 + n_4`.
    pub fn low_degree_deficit(&self) -> usize {
        (1..=4).map(|i| (5 - i) * self.count(i)).sum()
    }

    /// `n_0 + n_1 + n_2 + n_3 + n_4`.
    pub fn at_most_four(&self) -> usize {
        (0..=4).map(|i| self.count(i)).sum()
    }

    pub fn vertex_sum(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn degree_sum(&self) -> usize {
        self.counts.iter().map(|(i, c)| i * c).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    NonUnitEdge,
    ProperCrossing,
    EndpointOnInterior,
    OverlappingEdges,
    CoincidentVertices,
}

/// One reason a drawing is not a matchstick graph.
///
/// Witnesses are edge indices for edge-pair kinds, vertex indices for
/// `CoincidentVertices`, and `[vertex, edge]` for `EndpointOnInterior`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witnesses: Vec<usize>,
    pub measured: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchstickCertificate {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

impl MatchstickCertificate {
    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Uniform bucket grid over segment bounding boxes.
pub(crate) struct SegmentGrid {
    cell: f64,
    /// Padded bounding boxes `[x0, y0, x1, y1]`.
    boxes: Vec<[f64; 4]>,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl SegmentGrid {
    pub(crate) fn new(segments: impl Iterator<Item = (Point2, Point2)>, cell: f64, pad: f64) -> Self {
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let mut boxes = Vec::new();
        for (idx, (a, b)) in segments.enumerate() {
            let (x0, x1) = (a.x.min(b.x) - pad, a.x.max(b.x) + pad);
            let (y0, y1) = (a.y.min(b.y) - pad, a.y.max(b.y) + pad);
            boxes.push([x0, y0, x1, y1]);
            let c = |t: f64| (t / cell).floor() as i64;
            for cx in c(x0)..=c(x1) {
                for cy in c(y0)..=c(y1) {
                    buckets.entry((cx, cy)).or_default().push(idx);
                }
            }
        }
        SegmentGrid { cell, boxes, buckets }
    }

    /// Segment indices whose padded box may meet the disc of radius `r` at `p`.
    pub(crate) fn near(&self, p: Point2, r: f64) -> Vec<usize> {
        let c = |t: f64| (t / self.cell).floor() as i64;
        let mut out = Vec::new();
        for cx in c(p.x - r)..=c(p.x + r) {
            for cy in c(p.y - r)..=c(p.y + r) {
                if let Some(b) = self.buckets.get(&(cx, cy)) {
                    out.extend_from_slice(b);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All unordered pairs with overlapping padded boxes, sorted.
    ///
    /// A pair is emitted only from the bucket holding the lower-left corner
    /// of the box overlap, so no pair is reported twice.
    pub(crate) fn candidate_pairs(&self) -> Vec<(usize, usize)> {
        let c = |t: f64| (t / self.cell).floor() as i64;
        let mut out = Vec::new();
        for (&key, bucket) in &self.buckets {
            for (i, &a) in bucket.iter().enumerate() {
                let ba = self.boxes[a];
                for &b in &bucket[i + 1..] {
                    let bb = self.boxes[b];
                    let (x0, y0) = (ba[0].max(bb[0]), ba[1].max(bb[1]));
                    if x0 > ba[2].min(bb[2]) || y0 > ba[3].min(bb[3]) {
                        continue;
                    }
                    if (c(x0), c(y0)) == key {
                        out.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn validate(g: &PlaneGraph, tol: &ToleranceConfig) -> MatchstickCertificate {
    let mut violations = Vec::new();
    let pts = &g.vertices;

    for (idx, &(a, b)) in g.edges.iter().enumerate() {
        let len = dist(pts[a], pts[b]);
        if (len - 1.0).abs() > tol.eps_len {
            violations.push(Violation {
                kind: ViolationKind::NonUnitEdge,
                witnesses: vec![idx],
                measured: Some(len),
            });
        }
    }

    // coincident vertices, bucketed by a grid with cell >> eps_len
    let cell = 1.0;
    let mut vgrid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (v, p) in pts.iter().enumerate() {
        vgrid
            .entry(((p.x / cell).floor() as i64, (p.y / cell).floor() as i64))
            .or_default()
            .push(v);
    }
    for (v, p) in pts.iter().enumerate() {
        let (cx, cy) = ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = vgrid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &w in bucket {
                    if w > v {
                        let d = dist(*p, pts[w]);
                        if d <= tol.eps_len {
                            violations.push(Violation {
                                kind: ViolationKind::CoincidentVertices,
                                witnesses: vec![v, w],
                                measured: Some(d),
                            });
                        }
                    }
                }
            }
        }
    }

    let segs = || g.edges.iter().map(|&(a, b)| (pts[a], pts[b]));
    let grid = SegmentGrid::new(segs(), 1.0, tol.eps_len);

    for (i, j) in grid.candidate_pairs() {
        let (a1, a2) = g.edges[i];
        let (b1, b2) = g.edges[j];
        let Ok(rel) = segment_relation(pts[a1], pts[a2], pts[b1], pts[b2], tol) else {
            // zero-length edges are already NON_UNIT_EDGE
            continue;
        };
        let kind = match rel {
            SegmentRelation::ProperCrossing => ViolationKind::ProperCrossing,
            SegmentRelation::Overlapping => ViolationKind::OverlappingEdges,
            // reported per vertex below
            SegmentRelation::EndpointOnInterior | SegmentRelation::SharedEndpoint | SegmentRelation::Disjoint => {
                continue
            }
        };
        violations.push(Violation {
            kind,
            witnesses: vec![i, j],
            measured: None,
        });
    }

    for (v, &p) in pts.iter().enumerate() {
        for idx in grid.near(p, tol.eps_len) {
            let (a, b) = g.edges[idx];
            if a == v || b == v {
                continue;
            }
            let (pa, pb) = (pts[a], pts[b]);
            if dist(p, pa) <= tol.eps_len || dist(p, pb) <= tol.eps_len {
                // coincident with an endpoint; reported above
                continue;
            }
            let (d, _) = point_segment_distance(p, pa, pb);
            if d <= tol.eps_len {
                violations.push(Violation {
                    kind: ViolationKind::EndpointOnInterior,
                    witnesses: vec![v, idx],
                    measured: Some(d),
                });
            }
        }
    }

    violations.sort_by(|x, y| x.kind.cmp(&y.kind).then_with(|| x.witnesses.cmp(&y.witnesses)));
    MatchstickCertificate {
        pass: violations.is_empty(),
        violations,
    }
}
