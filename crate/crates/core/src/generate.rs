//! Constructors: the hexagonal extremal family, small worked examples and
//! random lattice subgraphs.
//!
//! Lattice points use axial coordinates `(a, b)` over the basis `(1, 0)` and
//! `(1/2, √3/2)`. The ring index of `(a, b)` is `max(|a|, |b|, |a + b|)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point2;
use crate::graph::PlaneGraph;

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid k = {0}: the hexagonal construction needs k >= 2")]
    InvalidK(usize),
    #[error("unknown primitive {0:?}")]
    UnknownName(String),
}

/// Which alternate edges of each intermediate ring are removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RemovalParity {
    /// Ring edges at even positions, counting CCW from the east corner `(j, 0)`.
    #[default]
    EvenFromEastCorner,
    OddFromEastCorner,
}

impl RemovalParity {
    fn removes(self, position: usize) -> bool {
        match self {
            RemovalParity::EvenFromEastCorner => position.is_multiple_of(2),
            RemovalParity::OddFromEastCorner => position % 2 == 1,
        }
    }
}

impl fmt::Display for RemovalParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RemovalParity::EvenFromEastCorner => "EVEN_FROM_EAST_CORNER",
            RemovalParity::OddFromEastCorner => "ODD_FROM_EAST_CORNER",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HexFamilySpec {
    pub k: usize,
    pub parity: RemovalParity,
}

impl HexFamilySpec {
    pub fn new(k: usize) -> Self {
        HexFamilySpec {
            k,
            parity: RemovalParity::default(),
        }
    }

    pub fn with_parity(k: usize, parity: RemovalParity) -> Self {
        HexFamilySpec { k, parity }
    }
}

pub fn lattice_point(a: i64, b: i64) -> Point2 {
    Point2::new(a as f64 + b as f64 / 2.0, b as f64 * HALF_SQRT3)
}

pub fn ring_index(a: i64, b: i64) -> i64 {
    a.abs().max(b.abs()).max((a + b).abs())
}

/// Axial points of ring `j >= 1` in CCW order starting at `(j, 0)`.
fn ring_cycle(j: i64) -> Vec<(i64, i64)> {
    // steps along the six sides, starting from the east corner
    const STEPS: [(i64, i64); 6] = [(-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)];
    let mut out = Vec::with_capacity(6 * j as usize);
    let (mut a, mut b) = (j, 0);
    for (da, db) in STEPS {
        for _ in 0..j {
            out.push((a, b));
            a += da;
            b += db;
        }
    }
    out
}

const NEIGHBOR_STEPS: [(i64, i64); 3] = [(1, 0), (0, 1), (-1, 1)];

/// All lattice points of ring index at most `k`, row by row.
fn hex_patch(k: i64) -> Vec<(i64, i64)> {
    let mut pts = Vec::new();
    for b in -k..=k {
        for a in -k..=k {
            if ring_index(a, b) <= k {
                pts.push((a, b));
            }
        }
    }
    pts
}

fn lattice_edges(index: &HashMap<(i64, i64), usize>, pts: &[(i64, i64)]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, &(a, b)) in pts.iter().enumerate() {
        for (da, db) in NEIGHBOR_STEPS {
            if let Some(&j) = index.get(&(a + da, b + db)) {
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    edges
}

/// The hexagonal patch of side `k` with the centre removed and every second
/// edge taken out of each ring strictly between the innermost and outermost.
pub fn hex_construction(spec: &HexFamilySpec) -> Result<PlaneGraph, GenerateError> {
    if spec.k < 2 {
        return Err(GenerateError::InvalidK(spec.k));
    }
    let k = spec.k as i64;
    let pts: Vec<(i64, i64)> = hex_patch(k).into_iter().filter(|&p| p != (0, 0)).collect();
    let index: HashMap<(i64, i64), usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let mut removed = HashSet::new();
    for j in 2..k {
        let ring = ring_cycle(j);
        for pos in 0..ring.len() {
            if spec.parity.removes(pos) {
                let u = index[&ring[pos]];
                let v = index[&ring[(pos + 1) % ring.len()]];
                removed.insert((u.min(v), u.max(v)));
            }
        }
    }
    let edges: Vec<_> = lattice_edges(&index, &pts)
        .into_iter()
        .filter(|e| !removed.contains(e))
        .collect();
    let points = pts.iter().map(|&(a, b)| lattice_point(a, b)).collect();
    Ok(PlaneGraph::build(points, &edges).expect("lattice edges are well-formed"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Primitive {
    SingleEdge,
    Triangle,
    Rhombus,
    /// Unit rhombus with a pendant edge inside it; the bounded face has six sides.
    RhombusPendant,
    TwoTrianglesDisjoint,
}

impl Primitive {
    pub const ALL: [Primitive; 5] = [
        Primitive::SingleEdge,
        Primitive::Triangle,
        Primitive::Rhombus,
        Primitive::RhombusPendant,
        Primitive::TwoTrianglesDisjoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Primitive::SingleEdge => "SINGLE_EDGE",
            Primitive::Triangle => "TRIANGLE",
            Primitive::Rhombus => "RHOMBUS",
            Primitive::RhombusPendant => "RHOMBUS_PENDANT",
            Primitive::TwoTrianglesDisjoint => "TWO_TRIANGLES_DISJOINT",
        }
    }
}

impl FromStr for Primitive {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Primitive::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| GenerateError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn primitive(which: Primitive) -> PlaneGraph {
    let p = Point2::new;
    let (pts, edges): (Vec<Point2>, Vec<(usize, usize)>) = match which {
        Primitive::SingleEdge => (vec![p(0.0, 0.0), p(1.0, 0.0)], vec![(0, 1)]),
        Primitive::Triangle => (
            vec![p(0.0, 0.0), p(1.0, 0.0), p(0.5, HALF_SQRT3)],
            vec![(0, 1), (1, 2), (0, 2)],
        ),
        Primitive::Rhombus => (
            vec![p(0.0, 0.0), p(1.0, 0.0), p(1.5, HALF_SQRT3), p(0.5, HALF_SQRT3)],
            vec![(0, 1), (1, 2), (2, 3), (0, 3)],
        ),
        Primitive::RhombusPendant => (
            vec![
                p(0.0, 0.0),
                p(1.0, 0.0),
                p(1.5, HALF_SQRT3),
                p(0.5, HALF_SQRT3),
                p(HALF_SQRT3, 0.5),
            ],
            vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)],
        ),
        Primitive::TwoTrianglesDisjoint => (
            vec![
                p(0.0, 0.0),
                p(1.0, 0.0),
                p(0.5, HALF_SQRT3),
                p(3.0, 0.0),
                p(4.0, 0.0),
                p(3.5, HALF_SQRT3),
            ],
            vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        ),
    };
    PlaneGraph::build(pts, &edges).expect("primitive is well-formed")
}

/// Random edge subset of the full side-`k` lattice patch (centre included),
/// keeping each edge with probability `edge_keep_prob`; vertices left without
/// edges are dropped.
pub fn random_lattice_subgraph(seed: u64, k: usize, edge_keep_prob: f64) -> PlaneGraph {
    let prob = edge_keep_prob.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = hex_patch(k as i64);
    let index: HashMap<(i64, i64), usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let edges: Vec<_> = lattice_edges(&index, &pts)
        .into_iter()
        .filter(|_| rng.gen::<f64>() < prob)
        .collect();
    let points = pts.iter().map(|&(a, b)| lattice_point(a, b)).collect();
    let full = PlaneGraph::build(points, &edges).expect("lattice edges are well-formed");
    full.remove_isolated().0
}
