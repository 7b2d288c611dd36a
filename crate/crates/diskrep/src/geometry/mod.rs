//! Plane and triangular-grid geometry, layout verification and rendering.

mod hausdorff;
mod io;
mod svg;
mod verify;

pub use hausdorff::{hausdorff_to_union, regular_hexagon, Polygon};
pub use io::{fmt_sig, parse_disk_layout, parse_grid_layout, write_disk_layout, write_grid_layout};
pub use svg::{export_svg, SvgOptions};
pub use verify::{verify_udr, verify_weak_udc_grid, VerifyResult, Violation, ViolationKind, DEFAULT_TAU};

use serde::Serialize;
use std::ops::{Add, Mul, Sub};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Unit vector at angle `theta` (radians, counterclockwise from +x).
    pub fn polar(theta: f64) -> Self {
        Point2 { x: theta.cos(), y: theta.sin() }
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    /// Counterclockwise rotation about the origin.
    pub fn rotate(self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point2 { x: c * self.x - s * self.y, y: s * self.x + c * self.y }
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

/// Axial coordinates of a triangular-grid cell; neighboring cells are 2 apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct GridCoord {
    pub a: i32,
    pub b: i32,
}

/// Offsets of the six neighbors, counterclockwise from +x.
pub const GRID_DIRS: [GridCoord; 6] = [
    GridCoord { a: 1, b: 0 },
    GridCoord { a: 0, b: 1 },
    GridCoord { a: -1, b: 1 },
    GridCoord { a: -1, b: 0 },
    GridCoord { a: 0, b: -1 },
    GridCoord { a: 1, b: -1 },
];

impl GridCoord {
    pub const fn new(a: i32, b: i32) -> Self {
        GridCoord { a, b }
    }

    /// Twice the Euclidean x coordinate; an exact integer.
    pub fn x2(self) -> i32 {
        2 * self.a + self.b
    }

    /// Number of grid steps between two cells.
    pub fn grid_dist(self, o: GridCoord) -> i32 {
        let da = self.a - o.a;
        let db = self.b - o.b;
        (da.abs() + db.abs() + (da + db).abs()) / 2
    }

    pub fn is_adjacent(self, o: GridCoord) -> bool {
        self.grid_dist(o) == 1
    }

    /// Rotation by 60° counterclockwise about the origin.
    pub fn rot60(self) -> Self {
        GridCoord::new(-self.b, self.a + self.b)
    }

    /// Reflection across the horizontal axis through the origin.
    pub fn reflect(self) -> Self {
        GridCoord::new(self.a + self.b, -self.b)
    }

    /// The 12 lattice symmetries fixing the origin: `k` rotations, then an optional reflection.
    pub fn symmetry(self, k: usize, flip: bool) -> Self {
        let mut c = self;
        for _ in 0..k % 6 {
            c = c.rot60();
        }
        if flip {
            c.reflect()
        } else {
            c
        }
    }
}

impl Add for GridCoord {
    type Output = GridCoord;
    fn add(self, o: GridCoord) -> GridCoord {
        GridCoord::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for GridCoord {
    type Output = GridCoord;
    fn sub(self, o: GridCoord) -> GridCoord {
        GridCoord::new(self.a - o.a, self.b - o.b)
    }
}

pub fn grid_to_euclid(c: GridCoord) -> Point2 {
    Point2::new((2 * c.a + c.b) as f64, c.b as f64 * SQRT3)
}

pub fn grid_neighbors(c: GridCoord) -> [GridCoord; 6] {
    GRID_DIRS.map(|d| c + d)
}

/// Disk centers indexed by vertex id; `None` marks a vertex without a position.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiskLayout {
    pub centers: Vec<Option<Point2>>,
}

impl DiskLayout {
    pub fn with_len(n: usize) -> Self {
        DiskLayout { centers: vec![None; n] }
    }

    pub fn from_points(points: Vec<Point2>) -> Self {
        DiskLayout { centers: points.into_iter().map(Some).collect() }
    }

    pub fn get(&self, v: usize) -> Option<Point2> {
        self.centers.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: usize, p: Point2) {
        if v >= self.centers.len() {
            self.centers.resize(v + 1, None);
        }
        self.centers[v] = Some(p);
    }

    /// Applies `f` to every placed center.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Self {
        DiskLayout { centers: self.centers.iter().map(|c| c.map(&f)).collect() }
    }

    /// Dense point list for a layout that is total on `0..n`.
    pub fn total_points(&self, n: usize) -> crate::Result<Vec<Point2>> {
        (0..n).map(|v| self.get(v).ok_or(crate::Error::MissingVertex(v))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GridLayout {
    pub cells: Vec<Option<GridCoord>>,
}

impl GridLayout {
    pub fn with_len(n: usize) -> Self {
        GridLayout { cells: vec![None; n] }
    }

    pub fn get(&self, v: usize) -> Option<GridCoord> {
        self.cells.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: usize, c: GridCoord) {
        if v >= self.cells.len() {
            self.cells.resize(v + 1, None);
        }
        self.cells[v] = Some(c);
    }

    pub fn map(&self, f: impl Fn(GridCoord) -> GridCoord) -> Self {
        GridLayout { cells: self.cells.iter().map(|c| c.map(&f)).collect() }
    }

    pub fn to_disk_layout(&self) -> DiskLayout {
        DiskLayout { centers: self.cells.iter().map(|c| c.map(grid_to_euclid)).collect() }
    }
}
