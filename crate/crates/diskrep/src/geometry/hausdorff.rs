use std::collections::HashMap;

use super::{DiskLayout, Point2};
use crate::error::{Error, Result};

/// Convex polygon given by its vertices in order (either orientation). One
/// vertex is a point, two vertices a segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point2>) -> Self {
        Polygon { vertices }
    }

    /// Axis-parallel rhombus centered at `center` with the given full width and height.
    pub fn rhombus(center: Point2, width: f64, height: f64) -> Self {
        let (w, h) = (width / 2.0, height / 2.0);
        Polygon::new(vec![
            center + Point2::new(w, 0.0),
            center + Point2::new(0.0, h),
            center + Point2::new(-w, 0.0),
            center + Point2::new(0.0, -h),
        ])
    }

    fn contains(&self, p: Point2) -> bool {
        let vs = &self.vertices;
        let mut sign = 0.0f64;
        for i in 0..vs.len() {
            let a = vs[i];
            let b = vs[(i + 1) % vs.len()];
            let c = (b - a).cross(p - a);
            if c.abs() < 1e-12 {
                continue;
            }
            if sign == 0.0 {
                sign = c.signum();
            } else if c.signum() != sign {
                return false;
            }
        }
        true
    }

    /// Boundary points at spacing at most `step`, plus interior lattice points
    /// of pitch `step`.
    pub fn samples(&self, step: f64) -> Vec<Point2> {
        let vs = &self.vertices;
        let mut out = Vec::new();
        if vs.len() == 1 {
            return vec![vs[0]];
        }
        let edges = if vs.len() == 2 { 1 } else { vs.len() };
        for i in 0..edges {
            let a = vs[i];
            let b = vs[(i + 1) % vs.len()];
            let k = ((a.dist(b) / step).ceil() as usize).max(1);
            for j in 0..k {
                out.push(a + (b - a) * (j as f64 / k as f64));
            }
        }
        if vs.len() == 2 {
            out.push(vs[1]);
            return out;
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in vs {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let (i0, i1) = ((x0 / step).ceil() as i64, (x1 / step).floor() as i64);
        let (j0, j1) = ((y0 / step).ceil() as i64, (y1 / step).floor() as i64);
        for i in i0..=i1 {
            for j in j0..=j1 {
                let p = Point2::new(i as f64 * step, j as f64 * step);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Regular hexagon with the given side length, centered at `center`, with a
/// vertex on the positive x axis.
pub fn regular_hexagon(center: Point2, side: f64) -> Polygon {
    Polygon::new((0..6).map(|k| center + Point2::polar(k as f64 * std::f64::consts::FRAC_PI_3) * side).collect())
}

struct NearestIndex {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<Point2>>,
    ring_limit: i64,
}

impl NearestIndex {
    fn new(points: &[Point2]) -> Self {
        let cell = 2.0;
        let mut buckets: HashMap<(i64, i64), Vec<Point2>> = HashMap::new();
        for &p in points {
            buckets.entry(((p.x / cell).floor() as i64, (p.y / cell).floor() as i64)).or_default().push(p);
        }
        let ring_limit = buckets
            .keys()
            .flat_map(|&(a, b)| [a.abs(), b.abs()])
            .max()
            .unwrap_or(0)
            + 2;
        NearestIndex { cell, buckets, ring_limit }
    }

    fn nearest(&self, q: Point2) -> f64 {
        let (kx, ky) = ((q.x / self.cell).floor() as i64, (q.y / self.cell).floor() as i64);
        let mut best = f64::INFINITY;
        let mut r = 0i64;
        loop {
            for dx in -r..=r {
                for dy in -r..=r {
                    if dx.abs() != r && dy.abs() != r {
                        continue;
                    }
                    if let Some(list) = self.buckets.get(&(kx + dx, ky + dy)) {
                        for &p in list {
                            best = best.min(p.dist(q));
                        }
                    }
                }
            }
            // every unvisited bucket lies at least r * cell away
            if best <= r as f64 * self.cell || r > self.ring_limit + kx.abs().max(ky.abs()) {
                return best;
            }
            r += 1;
        }
    }
}

/// Sampled asymmetric Hausdorff distance from `poly` to the union of unit
/// disks of `layout`, padded by `step * sqrt(2) / 2` so it bounds the true value from above.
pub fn hausdorff_to_union(poly: &Polygon, layout: &DiskLayout, step: f64) -> Result<f64> {
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::Precondition("sampling step must be positive".into()));
    }
    let centers: Vec<Point2> = layout.centers.iter().flatten().copied().collect();
    if centers.is_empty() {
        return Err(Error::EmptyLayout);
    }
    let index = NearestIndex::new(&centers);
    let worst = poly
        .samples(step)
        .into_iter()
        .map(|p| (index.nearest(p) - 1.0).max(0.0))
        .fold(0.0f64, f64::max);
    Ok(worst + step * std::f64::consts::SQRT_2 / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin_disk() -> DiskLayout {
        DiskLayout::from_points(vec![Point2::new(0.0, 0.0)])
    }

    #[test]
    fn square_around_one_disk() {
        let sq = Polygon::new(vec![
            Point2::new(-1.0, -1.0),
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 1.0),
            Point2::new(-1.0, 1.0),
        ]);
        let step = 0.01;
        let h = hausdorff_to_union(&sq, &origin_disk(), step).unwrap();
        let exact = 2f64.sqrt() - 1.0;
        assert!(h >= exact - 1e-12 && h <= exact + step, "{h}");
    }

    #[test]
    fn point_polygons() {
        let at_center = Polygon::new(vec![Point2::new(0.0, 0.0)]);
        let h = hausdorff_to_union(&at_center, &origin_disk(), 0.1).unwrap();
        assert!((h - 0.1 * std::f64::consts::SQRT_2 / 2.0).abs() < 1e-12);
        let far = Polygon::new(vec![Point2::new(3.0, 0.0)]);
        let h = hausdorff_to_union(&far, &origin_disk(), 1e-9).unwrap();
        assert!((h - 2.0).abs() < 1e-8);
    }

    #[test]
    fn empty_layout_and_bad_step() {
        let p = Polygon::new(vec![Point2::new(0.0, 0.0)]);
        assert_eq!(hausdorff_to_union(&p, &DiskLayout::default(), 0.1), Err(Error::EmptyLayout));
        assert!(hausdorff_to_union(&p, &origin_disk(), 0.0).is_err());
    }

    #[test]
    fn nearest_far_from_all_buckets() {
        let idx = NearestIndex::new(&[Point2::new(100.0, 100.0)]);
        assert!((idx.nearest(Point2::new(-50.0, 3.0)) - Point2::new(150.0, 97.0).norm()).abs() < 1e-9);
    }
}
