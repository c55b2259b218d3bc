//! SVG and CSV output.

use std::fmt::Write;

use crate::error::CliError;

/// A labelled point of `Im(nu)`.
pub struct Labelled {
    pub point: Vec<f64>,
    pub label: String,
}

const PANEL: f64 = 360.0;
const MARGIN: f64 = 30.0;

/// `i,s_i` rows with a header.
pub fn sequence_csv(terms: &[u64]) -> String {
    let mut out = String::from("i,s_i\n");
    for (i, s) in terms.iter().enumerate() {
        let _ = writeln!(out, "{i},{s}");
    }
    out
}

/// Coordinate planes drawn for each rank.
fn planes(rank: usize) -> Result<Vec<(usize, Option<usize>)>, CliError> {
    match rank {
        1 => Ok(vec![(0, None)]),
        2 => Ok(vec![(0, Some(1))]),
        3 => Ok(vec![(0, Some(1)), (0, Some(2)), (1, Some(2))]),
        r => Err(CliError::UnsupportedRank(r)),
    }
}

fn project(p: &[f64], (i, j): (usize, Option<usize>)) -> (f64, f64) {
    (p[i], j.map_or(0.0, |j| p[j]))
}

/// Convex hull of planar points in counterclockwise order.
fn hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-12
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-12
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// SVG with one panel per coordinate plane: the polytope outline, its
/// vertices, and optionally labelled points.
pub fn geometry_svg(
    rank: usize,
    vertices: &[Vec<f64>],
    points: &[Labelled],
    title: &str,
) -> Result<String, CliError> {
    let planes = planes(rank)?;
    let mut extent: f64 = 0.0;
    for p in vertices.iter().chain(points.iter().map(|l| &l.point)) {
        for x in p {
            extent = extent.max(x.abs());
        }
    }
    let extent = if extent > 0.0 { extent * 1.15 } else { 1.0 };
    let scale = PANEL / 2.0 / extent;
    let width = planes.len() as f64 * (PANEL + MARGIN) + MARGIN;
    let height = PANEL + 2.0 * MARGIN;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (k, plane) in planes.iter().enumerate() {
        let ox = MARGIN + k as f64 * (PANEL + MARGIN) + PANEL / 2.0;
        let oy = MARGIN + PANEL / 2.0;
        let to_screen = |(x, y): (f64, f64)| (ox + x * scale, oy - y * scale);
        let axis = |c: Option<usize>| c.map_or(String::from("-"), |c| format!("x{}", c + 1));
        let _ = writeln!(
            svg,
            r#"<g><text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{} / {}</text>"#,
            ox,
            MARGIN - 10.0,
            axis(Some(plane.0)),
            axis(plane.1)
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{oy:.2}" x2="{:.2}" y2="{oy:.2}" stroke="#bbb"/><line x1="{ox:.2}" y1="{:.2}" x2="{ox:.2}" y2="{:.2}" stroke="#bbb"/>"##,
            ox - PANEL / 2.0,
            ox + PANEL / 2.0,
            oy - PANEL / 2.0,
            oy + PANEL / 2.0
        );
        let outline = hull(vertices.iter().map(|v| project(v, *plane)).collect());
        let path: Vec<String> = outline
            .iter()
            .map(|&p| {
                let (x, y) = to_screen(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r##"<polygon points="{}" fill="#dde8f6" stroke="#2456a4" stroke-width="1.5"/>"##,
            path.join(" ")
        );
        for v in vertices {
            let (x, y) = to_screen(project(v, *plane));
            let _ = writeln!(
                svg,
                r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#2456a4"/>"##
            );
        }
        for l in points {
            let (x, y) = to_screen(project(&l.point, *plane));
            let _ = writeln!(
                svg,
                r##"<circle cx="{x:.2}" cy="{y:.2}" r="2" fill="#c0392b"/><text x="{:.2}" y="{:.2}" font-size="9">{}</text>"##,
                x + 4.0,
                y - 4.0,
                escape(&l.label)
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
