//! SVG drawings of matchstick graphs.

use std::fmt::Write;

use crate::faces::FaceSet;
use crate::graph::PlaneGraph;

fn face_fill(sides: usize) -> &'static str {
    match sides {
        3 => "#dbe9f6",
        4 => "#fde2c4",
        5 => "#e3f2d9",
        6 => "#f6d9e8",
        _ => "#ececec",
    }
}

/// Renders `g` at `scale` pixels per unit length.
///
/// Bounded faces are shaded by side count when `faces` is given, larger faces
/// first so nested components stay visible. Vertices of degree at most four
/// are drawn larger and in red.
pub fn render_svg(g: &PlaneGraph, faces: Option<&FaceSet>, scale: f64) -> String {
    let pts = g.vertices();
    let margin = 0.5;
    let (mut x0, mut y0, mut x1, mut y1) = (0.0_f64, 0.0_f64, 1.0_f64, 1.0_f64);
    if let Some(first) = pts.first() {
        (x0, y0, x1, y1) = (first.x, first.y, first.x, first.y);
        for p in pts {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
    }
    let width = (x1 - x0 + 2.0 * margin) * scale;
    let height = (y1 - y0 + 2.0 * margin) * scale;
    // flip y so the drawing keeps its orientation
    let sx = |x: f64| (x - x0 + margin) * scale;
    let sy = |y: f64| (y1 - y + margin) * scale;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    if let Some(fs) = faces {
        let mut bounded: Vec<usize> = (1..fs.faces().len()).collect();
        let outer_area = |i: usize| fs.walks()[fs.faces()[i].walks[0]].signed_area;
        bounded.sort_by(|&a, &b| outer_area(b).total_cmp(&outer_area(a)).then(a.cmp(&b)));
        let _ = writeln!(out, r#"<g stroke="none">"#);
        for fi in bounded {
            let face = &fs.faces()[fi];
            let walk = &fs.walks()[face.walks[0]];
            let coords: Vec<String> = walk
                .vertices()
                .iter()
                .map(|&v| format!("{:.3},{:.3}", sx(pts[v].x), sy(pts[v].y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="{}"><title>face {fi}: {} sides</title></polygon>"#,
                coords.join(" "),
                face_fill(face.sides),
                face.sides
            );
        }
        let _ = writeln!(out, "</g>");
    }

    let stroke = (scale / 25.0).max(1.0);
    let _ = writeln!(
        out,
        r#"<g stroke="black" stroke-width="{stroke:.2}" stroke-linecap="round">"#
    );
    for &(a, b) in g.edges() {
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            sx(pts[a].x),
            sy(pts[a].y),
            sx(pts[b].x),
            sy(pts[b].y)
        );
    }
    let _ = writeln!(out, "</g>");

    let deg = g.degrees();
    let r = (scale / 12.0).max(1.5);
    let _ = writeln!(out, "<g>");
    for (v, p) in pts.iter().enumerate() {
        let (fill, radius) = if deg[v] <= 4 {
            ("#d62728", r * 1.6)
        } else {
            ("black", r)
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{radius:.2}" fill="{fill}"><title>vertex {v}, degree {}</title></circle>"#,
            sx(p.x),
            sy(p.y),
            deg[v]
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
