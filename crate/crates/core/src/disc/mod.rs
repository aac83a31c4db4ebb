//! `{p,q}` tilings of the Poincaré disc, grown by reflecting the central
//! polygon in its sides.

mod svg;

use std::f64::consts::PI;

use num_complex::Complex64;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::word::{ColorWord, NodeColor};

pub use svg::{to_svg, SvgOptions};

/// Distinct tile centers closer than this are the same tile.
pub const DEDUP_TOLERANCE: f64 = 1e-9;
const INSIDE_TOLERANCE: f64 = 1e-12;
// spatial hash cell, much larger than the dedup tolerance
const CELL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DiscError {
    #[error("{{{p},{q}}} is not hyperbolic: need (p-2)(q-2) > 4")]
    NotHyperbolic { p: usize, q: usize },
    #[error("point ({x}, {y}) is not strictly inside the unit disc")]
    OutsideDisc { x: f64, y: f64 },
    #[error("edge endpoints coincide")]
    DegenerateEdge,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    pub x: f64,
    pub y: f64,
}

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self, DiscError> {
        if x * x + y * y < 1.0 - INSIDE_TOLERANCE {
            Ok(DiscPoint { x, y })
        } else {
            Err(DiscError::OutsideDisc { x, y })
        }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: DiscPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x).rem_euclid(2.0 * PI)
    }

    fn z(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    fn from_z(z: Complex64) -> Result<Self, DiscError> {
        DiscPoint::new(z.re, z.im)
    }
}

/// The disc automorphism sending `a` to the origin.
pub(crate) fn to_origin(a: Complex64, z: Complex64) -> Complex64 {
    (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

pub(crate) fn from_origin(a: Complex64, w: Complex64) -> Complex64 {
    (w + a) / (Complex64::new(1.0, 0.0) + a.conj() * w)
}

/// Reflection of `pt` in the geodesic through the edge endpoints.
///
/// Computed by moving one endpoint to the origin, where the geodesic is a
/// diameter; this agrees with inversion in the orthogonal circle and stays
/// well conditioned when that circle is nearly a line.
pub fn reflect(edge: (DiscPoint, DiscPoint), pt: DiscPoint) -> Result<DiscPoint, DiscError> {
    let (a, b) = (edge.0.z(), edge.1.z());
    let tb = to_origin(a, b);
    if tb.norm() < INSIDE_TOLERANCE {
        return Err(DiscError::DegenerateEdge);
    }
    let dir = tb / tb.norm();
    let w = to_origin(a, pt.z());
    DiscPoint::from_z(from_origin(a, dir * dir * w.conj()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub center: DiscPoint,
    /// Counter-clockwise.
    pub vertices: Vec<DiscPoint>,
    /// Edge-adjacency steps from the central tile.
    pub distance: usize,
}

impl Tile {
    pub fn edge(&self, i: usize) -> (DiscPoint, DiscPoint) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    /// The tile on the other side of edge `i`.
    pub fn reflected(&self, i: usize) -> Result<Tile, DiscError> {
        let edge = self.edge(i);
        let mut vertices = self
            .vertices
            .iter()
            .map(|v| reflect(edge, *v))
            .collect::<Result<Vec<_>, _>>()?;
        // reflections reverse orientation
        vertices.reverse();
        Ok(Tile { center: reflect(edge, self.center)?, vertices, distance: self.distance + 1 })
    }
}

pub fn is_hyperbolic(p: usize, q: usize) -> bool {
    p >= 3 && q >= 3 && (p - 2) * (q - 2) > 4
}

/// Euclidean radius of the central polygon's vertices.
pub fn vertex_radius(p: usize, q: usize) -> Result<f64, DiscError> {
    if !is_hyperbolic(p, q) {
        return Err(DiscError::NotHyperbolic { p, q });
    }
    let cot = |x: f64| 1.0 / x.tan();
    let circumradius = (cot(PI / p as f64) * cot(PI / q as f64)).acosh();
    Ok((circumradius / 2.0).tanh())
}

/// The regular central `p`-gon, first vertex on the positive x-axis.
pub fn base_polygon(p: usize, q: usize) -> Result<Tile, DiscError> {
    let r = vertex_radius(p, q)?;
    let vertices = (0..p)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / p as f64;
            DiscPoint::new(r * t.cos(), r * t.sin())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Tile { center: DiscPoint::ORIGIN, vertices, distance: 0 })
}

/// A ball of tiles around the central one, in breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct Tiling {
    p: usize,
    q: usize,
    radius: usize,
    tiles: Vec<Tile>,
    neighbors: Vec<Vec<usize>>,
}

type Cell = (i64, i64);

fn cell_of(pt: DiscPoint) -> Cell {
    ((pt.x / CELL).floor() as i64, (pt.y / CELL).floor() as i64)
}

/// Breadth-first reflection closure up to `radius` steps.
pub fn generate_tiles(p: usize, q: usize, radius: usize) -> Result<Tiling, DiscError> {
    let base = base_polygon(p, q)?;
    let mut grid: FxHashMap<Cell, Vec<usize>> = FxHashMap::default();
    grid.entry(cell_of(base.center)).or_default().push(0);
    let mut tiles = vec![base];
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new()];

    let mut next = 0;
    while next < tiles.len() {
        let current = next;
        next += 1;
        if tiles[current].distance >= radius {
            continue;
        }
        for side in 0..p {
            let candidate = tiles[current].reflected(side)?;
            let (cx, cy) = cell_of(candidate.center);
            let found = (cx - 1..=cx + 1)
                .flat_map(|x| (cy - 1..=cy + 1).map(move |y| (x, y)))
                .filter_map(|c| grid.get(&c))
                .flatten()
                .copied()
                .find(|&i| tiles[i].center.distance(candidate.center) < DEDUP_TOLERANCE);
            let index = match found {
                Some(i) => i,
                None => {
                    let i = tiles.len();
                    grid.entry((cx, cy)).or_default().push(i);
                    tiles.push(candidate);
                    neighbors.push(Vec::new());
                    i
                }
            };
            if !neighbors[current].contains(&index) {
                neighbors[current].push(index);
                neighbors[index].push(current);
            }
        }
    }
    Ok(Tiling { p, q, radius, tiles, neighbors })
}

impl Tiling {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Known neighbors of tile `i`. Tiles on the outer ring only know their
    /// inner neighbors.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn count_within(&self, r: usize) -> usize {
        self.tiles.iter().filter(|t| t.distance <= r).count()
    }

    /// Tree color of tile `i`: black when two neighbors are one step closer
    /// to the center. `None` for the central tile.
    pub fn tile_color(&self, i: usize) -> Option<NodeColor> {
        let d = self.tiles[i].distance;
        if d == 0 {
            return None;
        }
        let closer = self.neighbors[i].iter().filter(|&&j| self.tiles[j].distance + 1 == d).count();
        Some(if closer >= 2 { NodeColor::Black } else { NodeColor::White })
    }

    /// Indices of the tiles at distance `r`, counter-clockwise from the
    /// positive x-axis.
    pub fn ring(&self, r: usize) -> Vec<usize> {
        let mut ring: Vec<usize> = (0..self.tiles.len()).filter(|&i| self.tiles[i].distance == r).collect();
        ring.sort_by(|&a, &b| self.tiles[a].center.angle().total_cmp(&self.tiles[b].center.angle()));
        ring
    }

    /// Colors of the distance-`r` tiles read around the disc. `r` must be
    /// at least 1.
    pub fn border_colors(&self, r: usize) -> ColorWord {
        self.ring(r).into_iter().filter_map(|i| self.tile_color(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> DiscPoint {
        DiscPoint::new(x, y).unwrap()
    }

    #[test]
    fn vertex_radii() {
        assert!((vertex_radius(5, 4).unwrap() - 0.397975).abs() < 1e-6);
        assert!((vertex_radius(7, 3).unwrap() - 0.300743).abs() < 1e-6);
        assert_eq!(base_polygon(4, 4), Err(DiscError::NotHyperbolic { p: 4, q: 4 }));
        assert!(base_polygon(6, 3).is_err());
        let base = base_polygon(5, 4).unwrap();
        assert_eq!(base.vertices.len(), 5);
        assert!(base.vertices[0].y.abs() < 1e-15 && base.vertices[0].x > 0.0);
    }

    #[test]
    fn diameter_reflection_is_a_mirror() {
        let edge = (pt(-0.5, 0.0), pt(0.5, 0.0));
        let image = reflect(edge, pt(0.2, 0.3)).unwrap();
        assert!(image.distance(pt(0.2, -0.3)) < 1e-12);
        let diagonal = (pt(0.1, 0.1), pt(0.4, 0.4));
        let image = reflect(diagonal, pt(0.3, -0.1)).unwrap();
        assert!(image.distance(pt(-0.1, 0.3)) < 1e-12);
    }

    #[test]
    fn reflection_agrees_with_circle_inversion() {
        let (a, b) = (pt(0.3, 0.1), pt(0.1, 0.5));
        // center c of the orthogonal circle solves c.a = (|a|^2+1)/2, c.b = (|b|^2+1)/2
        let (ra, rb) = ((a.x * a.x + a.y * a.y + 1.0) / 2.0, (b.x * b.x + b.y * b.y + 1.0) / 2.0);
        let det = a.x * b.y - a.y * b.x;
        let c = ((ra * b.y - rb * a.y) / det, (a.x * rb - b.x * ra) / det);
        let rho2 = c.0 * c.0 + c.1 * c.1 - 1.0;
        let z = pt(-0.2, 0.05);
        let (dx, dy) = (z.x - c.0, z.y - c.1);
        let k = rho2 / (dx * dx + dy * dy);
        let expected = pt(c.0 + k * dx, c.1 + k * dy);
        assert!(reflect((a, b), z).unwrap().distance(expected) < 1e-12);
        assert_eq!(reflect((a, a), z), Err(DiscError::DegenerateEdge));
    }

    #[test]
    fn reflected_tile_shares_exactly_one_edge() {
        let base = base_polygon(5, 4).unwrap();
        for side in 0..5 {
            let image = base.reflected(side).unwrap();
            let shared = image
                .vertices
                .iter()
                .filter(|v| base.vertices.iter().any(|w| w.distance(**v) < 1e-12))
                .count();
            assert_eq!(shared, 2);
            let (a, b) = base.edge(side);
            assert!(image.vertices.iter().any(|v| v.distance(a) < 1e-12));
            assert!(image.vertices.iter().any(|v| v.distance(b) < 1e-12));
            assert!(image.center.norm() > 0.1);
        }
    }

    #[test]
    fn small_balls() {
        assert_eq!(generate_tiles(5, 4, 0).unwrap().len(), 1);
        assert_eq!(generate_tiles(5, 4, 1).unwrap().len(), 6);
        assert_eq!(generate_tiles(5, 4, 2).unwrap().len(), 21);
        assert_eq!(generate_tiles(7, 3, 2).unwrap().len(), 29);
    }

    #[test]
    fn ring_two_colors() {
        let t = generate_tiles(5, 4, 2).unwrap();
        let ring = t.border_colors(2).to_string();
        assert_eq!(ring.len(), 15);
        assert_eq!(ring.matches('B').count(), 5);
        let t = generate_tiles(7, 3, 2).unwrap();
        assert_eq!(t.border_colors(2).counts(), (7, 14));
    }
}
