use std::collections::HashMap;

use serde::Serialize;

use super::{DiskLayout, GridCoord, GridLayout, Point2, grid_to_euclid};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_TAU: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    MissingIntersection,
    ForbiddenIntersection,
    OverlapInContactModel,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::MissingIntersection => "missing-intersection",
            ViolationKind::ForbiddenIntersection => "forbidden-intersection",
            ViolationKind::OverlapInContactModel => "overlap-in-contact-model",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub kind: ViolationKind,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyResult {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl VerifyResult {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by_key(|a| (a.u, a.v, a.kind as u8));
        VerifyResult { ok: violations.is_empty(), violations }
    }
}

/// All unordered pairs of points at distance at most `reach`, found through a
/// uniform bucket grid with cell size `reach`.
fn close_pairs(points: &[Point2], reach: f64) -> Vec<(usize, usize, f64)> {
    let key = |p: Point2| ((p.x / reach).floor() as i64, (p.y / reach).floor() as i64);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &p) in points.iter().enumerate() {
        buckets.entry(key(p)).or_default().push(i);
    }
    let mut out = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        let (kx, ky) = key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = buckets.get(&(kx + dx, ky + dy)) {
                    for &j in list {
                        if j > i {
                            let d = p.dist(points[j]);
                            if d <= reach {
                                out.push((i, j, d));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Checks a unit disk intersection representation: edges need center distance
/// at most `2 + tau`, non-edges need more than `2 + tau`.
pub fn verify_udr(g: &Graph, layout: &DiskLayout, tau: f64) -> Result<VerifyResult> {
    let pts = layout.total_points(g.n())?;
    if let Some(v) = pts.iter().position(|p| !p.is_finite()) {
        return Err(Error::Precondition(format!("vertex {v} has a non-finite center")));
    }
    let limit = 2.0 + tau;
    let mut violations = Vec::new();
    for (u, v) in g.edges() {
        let d = pts[u].dist(pts[v]);
        if d > limit {
            violations.push(Violation { u, v, kind: ViolationKind::MissingIntersection, distance: d });
        }
    }
    for (u, v, d) in close_pairs(&pts, limit) {
        if !g.has_edge(u, v) {
            violations.push(Violation { u, v, kind: ViolationKind::ForbiddenIntersection, distance: d });
        }
    }
    Ok(VerifyResult::from_violations(violations))
}

/// Checks a weak unit disk contact representation on the triangular grid:
/// cells must be distinct and every edge must join adjacent cells. Non-adjacent
/// vertices may sit on adjacent cells.
pub fn verify_weak_udc_grid(g: &Graph, layout: &GridLayout) -> Result<VerifyResult> {
    let cells: Vec<GridCoord> = (0..g.n()).map(|v| layout.get(v).ok_or(Error::MissingVertex(v))).collect::<Result<_>>()?;
    let mut violations = Vec::new();
    let mut owner: HashMap<GridCoord, Vec<usize>> = HashMap::new();
    for (v, &c) in cells.iter().enumerate() {
        owner.entry(c).or_default().push(v);
    }
    for list in owner.values() {
        for (i, &u) in list.iter().enumerate() {
            for &v in &list[i + 1..] {
                violations.push(Violation { u, v, kind: ViolationKind::OverlapInContactModel, distance: 0.0 });
            }
        }
    }
    for (u, v) in g.edges() {
        if !cells[u].is_adjacent(cells[v]) {
            let d = grid_to_euclid(cells[u]).dist(grid_to_euclid(cells[v]));
            violations.push(Violation { u, v, kind: ViolationKind::MissingIntersection, distance: d });
        }
    }
    Ok(VerifyResult::from_violations(violations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(d: f64) -> DiskLayout {
        DiskLayout::from_points(vec![Point2::new(0.0, 0.0), Point2::new(d, 0.0)])
    }

    #[test]
    fn closed_disk_threshold() {
        let edge = Graph::from_edges(2, &[(0, 1)]);
        let none = Graph::new(2);
        assert!(verify_udr(&edge, &two(1.9), DEFAULT_TAU).unwrap().ok);
        assert!(verify_udr(&edge, &two(2.0 - 1e-6), DEFAULT_TAU).unwrap().ok);
        let r = verify_udr(&none, &two(2.0), DEFAULT_TAU).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::ForbiddenIntersection);
        assert!(verify_udr(&none, &two(2.0 + 1e-6 + DEFAULT_TAU), DEFAULT_TAU).unwrap().ok);
        let r = verify_udr(&edge, &two(2.1), DEFAULT_TAU).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::MissingIntersection);
    }

    #[test]
    fn star_with_jitter() {
        let g = Graph::from_edges(6, &(1..6).map(|i| (0, i)).collect::<Vec<_>>());
        let mut pts = vec![Point2::new(0.0, 0.0)];
        for k in 0..5 {
            let jitter = [1e-4, -2e-4, 0.0, 3e-4, -1e-4][k];
            let th = std::f64::consts::TAU * k as f64 / 5.0 + jitter;
            pts.push(Point2::polar(th) * (2.0 - 1e-3));
        }
        assert!(verify_udr(&g, &DiskLayout::from_points(pts), DEFAULT_TAU).unwrap().ok);
    }

    #[test]
    fn missing_vertex_is_an_error() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(verify_udr(&g, &two(1.0), DEFAULT_TAU), Err(Error::MissingVertex(2)));
    }

    #[test]
    fn grid_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let mut l = GridLayout::with_len(3);
        for (v, a) in [(0, 0), (1, 1), (2, 2)] {
            l.set(v, GridCoord::new(a, 0));
        }
        assert!(verify_weak_udc_grid(&p3, &l).unwrap().ok);

        let e = Graph::from_edges(2, &[(0, 1)]);
        let mut far = GridLayout::with_len(2);
        far.set(0, GridCoord::new(0, 0));
        far.set(1, GridCoord::new(2, 0));
        let r = verify_weak_udc_grid(&e, &far).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::MissingIntersection);
        assert!((r.violations[0].distance - 4.0).abs() < 1e-12);

        let mut touch = GridLayout::with_len(2);
        touch.set(0, GridCoord::new(0, 0));
        touch.set(1, GridCoord::new(1, 0));
        assert!(verify_weak_udc_grid(&Graph::new(2), &touch).unwrap().ok);

        let mut same = GridLayout::with_len(2);
        same.set(0, GridCoord::new(0, 0));
        same.set(1, GridCoord::new(0, 0));
        let r = verify_weak_udc_grid(&Graph::new(2), &same).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::OverlapInContactModel);
    }
}
