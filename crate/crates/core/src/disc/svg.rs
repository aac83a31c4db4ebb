use std::fmt::Write;

use num_complex::Complex64;

use super::{from_origin, to_origin, DiscPoint, Tile};

const EDGE_SEGMENTS: usize = 32;

/// Drawing options. The default palette is an arbitrary choice.
#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Tiles at this distance get `highlight_fill`.
    pub highlight: Option<usize>,
    /// Width and height in pixels.
    pub size: u32,
    pub fill: String,
    pub highlight_fill: String,
    pub stroke: String,
    pub background: String,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            highlight: None,
            size: 800,
            fill: "#dbe7f3".into(),
            highlight_fill: "#f2c94c".into(),
            stroke: "#1f2d3d".into(),
            background: "#ffffff".into(),
        }
    }
}

fn push_point(out: &mut String, cmd: char, z: Complex64) {
    // SVG y grows downwards
    let _ = write!(out, "{cmd}{:.6} {:.6} ", z.re, -z.im + 0.0);
}

/// Geodesic from `a` to `b` as a polyline, excluding `a`.
fn edge_points(a: DiscPoint, b: DiscPoint) -> impl Iterator<Item = Complex64> {
    let za = Complex64::new(a.x, a.y);
    let w = to_origin(za, Complex64::new(b.x, b.y));
    (1..=EDGE_SEGMENTS).map(move |k| from_origin(za, w * (k as f64 / EDGE_SEGMENTS as f64)))
}

fn tile_path(tile: &Tile) -> String {
    let mut d = String::new();
    let Some(first) = tile.vertices.first() else {
        return d;
    };
    push_point(&mut d, 'M', Complex64::new(first.x, first.y));
    let n = tile.vertices.len();
    for i in 0..n {
        let (a, b) = (tile.vertices[i], tile.vertices[(i + 1) % n]);
        for z in edge_points(a, b) {
            push_point(&mut d, 'L', z);
        }
    }
    d.push('Z');
    d
}

/// An SVG 1.1 document: the boundary circle, then one closed path per tile
/// in the given order.
pub fn to_svg(tiles: &[Tile], options: &SvgOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="-1.05 -1.05 2.1 2.1">"#,
        options.size
    );
    let _ = writeln!(
        out,
        r#"<circle class="boundary" cx="0" cy="0" r="1" fill="{}" stroke="{}" stroke-width="0.004"/>"#,
        xml_escape(&options.background),
        xml_escape(&options.stroke)
    );
    let _ = writeln!(out, r#"<g stroke="{}" stroke-width="0.002" stroke-linejoin="round">"#, xml_escape(&options.stroke));
    for tile in tiles {
        let highlighted = options.highlight == Some(tile.distance);
        let (class, fill) = if highlighted {
            ("tile highlight", &options.highlight_fill)
        } else {
            ("tile", &options.fill)
        };
        let _ = writeln!(
            out,
            r#"<path class="{class}" data-distance="{}" fill="{}" d="{}"/>"#,
            tile.distance,
            xml_escape(fill),
            tile_path(tile).trim_end()
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::generate_tiles;

    #[test]
    fn path_counts() {
        let tiling = generate_tiles(5, 4, 1).unwrap();
        let svg = to_svg(tiling.tiles(), &SvgOptions::default());
        assert_eq!(svg.matches("<path ").count(), 6);
        assert_eq!(svg.matches("<circle ").count(), 1);
        assert!(svg.contains(r#"viewBox="-1.05 -1.05 2.1 2.1""#));

        let empty = to_svg(&[], &SvgOptions::default());
        assert_eq!(empty.matches("<path ").count(), 0);
        assert_eq!(empty.matches("<circle ").count(), 1);
    }

    #[test]
    fn highlight_ring() {
        let tiling = generate_tiles(5, 4, 2).unwrap();
        let options = SvgOptions { highlight: Some(1), ..SvgOptions::default() };
        let svg = to_svg(tiling.tiles(), &options);
        assert_eq!(svg.matches("tile highlight").count(), 5);
    }

    #[test]
    fn polyline_follows_the_geodesic() {
        let base = crate::disc::base_polygon(5, 4).unwrap();
        let points: Vec<_> = edge_points(base.vertices[0], base.vertices[1]).collect();
        assert_eq!(points.len(), EDGE_SEGMENTS);
        let end = points.last().unwrap();
        assert!((end.re - base.vertices[1].x).abs() < 1e-12 && (end.im - base.vertices[1].y).abs() < 1e-12);
        // hyperbolic edges bow towards the center
        let mid = points[EDGE_SEGMENTS / 2 - 1];
        let chord_mid = (base.vertices[0].x + base.vertices[1].x).hypot(base.vertices[0].y + base.vertices[1].y) / 2.0;
        assert!(mid.norm() < chord_mid);
    }

    #[test]
    fn deterministic() {
        let tiling = generate_tiles(7, 3, 2).unwrap();
        let o = SvgOptions::default();
        assert_eq!(to_svg(tiling.tiles(), &o), to_svg(generate_tiles(7, 3, 2).unwrap().tiles(), &o));
    }
}
