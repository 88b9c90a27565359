//! Oracles that share no code with the face tracer.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::collections::VecDeque;

use mskit::PlaneGraph;

/// Number of 3-cycles. Every 3-cycle of a matchstick graph is a unit
/// equilateral triangle, and nothing with an edge fits inside one, so this
/// equals the number of bounded 3-gons.
pub fn unit_triangle_count(g: &PlaneGraph) -> usize {
    let nbrs = g.neighbors();
    let mut count = 0;
    for &(a, b) in g.edges() {
        count += nbrs[a].iter().filter(|&&c| c > b && nbrs[b].contains(&c)).count();
    }
    count
}

/// Complement regions of a rasterised drawing.
pub struct Raster {
    /// Areas of regions that do not touch the canvas border.
    pub bounded_areas: Vec<f64>,
    pub unbounded_regions: usize,
}

/// Rasterises `g` with pixel size `h`, thickens every edge to a wall of
/// half-width `0.75 h`, and flood-fills the free pixels with 4-connectivity.
/// Regions smaller than `min_area` (slivers at acute vertex corners) are
/// dropped.
pub fn flood_fill_regions(g: &PlaneGraph, h: f64, min_area: f64) -> Raster {
    let pts = g.vertices();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let margin = 1.0;
    let (x0, y0) = (x0 - margin, y0 - margin);
    let w = ((x1 + margin - x0) / h).ceil() as usize;
    let hgt = ((y1 + margin - y0) / h).ceil() as usize;
    let mut wall = vec![false; w * hgt];
    let half = 0.75 * h;
    for &(a, b) in g.edges() {
        let (p, q) = (pts[a], pts[b]);
        let lo_i = (((p.x.min(q.x) - x0 - 2.0 * h) / h).floor().max(0.0)) as usize;
        let hi_i = (((p.x.max(q.x) - x0 + 2.0 * h) / h).ceil() as usize).min(w - 1);
        let lo_j = (((p.y.min(q.y) - y0 - 2.0 * h) / h).floor().max(0.0)) as usize;
        let hi_j = (((p.y.max(q.y) - y0 + 2.0 * h) / h).ceil() as usize).min(hgt - 1);
        let (dx, dy) = (q.x - p.x, q.y - p.y);
        let len2 = dx * dx + dy * dy;
        for j in lo_j..=hi_j {
            for i in lo_i..=hi_i {
                let cx = x0 + (i as f64 + 0.5) * h;
                let cy = y0 + (j as f64 + 0.5) * h;
                let t = (((cx - p.x) * dx + (cy - p.y) * dy) / len2).clamp(0.0, 1.0);
                let (ex, ey) = (p.x + t * dx - cx, p.y + t * dy - cy);
                if ex * ex + ey * ey <= half * half {
                    wall[j * w + i] = true;
                }
            }
        }
    }

    let mut seen = wall.clone();
    let mut bounded_areas = Vec::new();
    let mut unbounded_regions = 0;
    let mut queue = VecDeque::new();
    for start in 0..w * hgt {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let (mut pixels, mut border) = (0usize, false);
        while let Some(cell) = queue.pop_front() {
            pixels += 1;
            let (i, j) = (cell % w, cell / w);
            if i == 0 || j == 0 || i == w - 1 || j == hgt - 1 {
                border = true;
            }
            let mut push = |c: usize| {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            };
            if i > 0 {
                push(cell - 1);
            }
            if i + 1 < w {
                push(cell + 1);
            }
            if j > 0 {
                push(cell - w);
            }
            if j + 1 < hgt {
                push(cell + w);
            }
        }
        let area = pixels as f64 * h * h;
        if border {
            unbounded_regions += 1;
        } else if area >= min_area {
            bounded_areas.push(area);
        }
    }
    Raster {
        bounded_areas,
        unbounded_regions,
    }
}

/// Side counts of lattice faces recovered from raster areas: unit triangle
/// `√3/4`, unit rhombus `√3/2`, unit hexagon `3√3/2`.
pub fn lattice_face_census(r: &Raster) -> BTreeMap<usize, usize> {
    let tri = 3f64.sqrt() / 4.0;
    let mut out = BTreeMap::new();
    for &a in &r.bounded_areas {
        let sides = match a / tri {
            x if (0.7..1.3).contains(&x) => 3,
            x if (1.7..2.3).contains(&x) => 4,
            x if (5.5..6.5).contains(&x) => 6,
            x => panic!("raster region of {x} unit triangles matches no lattice face"),
        };
        *out.entry(sides).or_insert(0) += 1;
    }
    out
}
