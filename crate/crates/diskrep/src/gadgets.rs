//! Ladder gadgets and the rhombus and hexagon shapes built from them.
//!
//! Every gadget comes with an intended unit disk layout. Layouts are produced
//! by walking the outer row of a strip: consecutive outer vertices are exactly
//! 2 apart, each node bends the walk slightly clockwise, and hubs bend it by
//! [`HUB_TURN`]. Extensions sit on the left of the walk, inner vertices on the
//! right.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{regular_hexagon, verify_udr, DiskLayout, Point2, Polygon, SQRT3};
use crate::graph::Graph;

/// Clockwise bend at every ladder node.
pub const BEND: f64 = 2e-3;
/// Offset of the near-stacked extension on degree-4 outer vertices.
pub const STACK: f64 = 2e-4;
/// Rung length.
pub const RUNG: f64 = 2.0 - STACK / 2.0;
/// Turn of the walk at a connector hub, in radians (60.5 degrees).
pub const HUB_TURN: f64 = 60.5 * PI / 180.0;

// Construction-time acceptance: stricter than the verifier default so that
// rounding in exported files cannot flip a pair.
const BUILD_TAU: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Outerplanar,
    Tree,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Outerplanar => "outerplanar",
            Variant::Tree => "tree",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "outerplanar" => Ok(Variant::Outerplanar),
            "tree" => Ok(Variant::Tree),
            _ => Err(Error::Precondition(format!("unknown variant '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    /// Outer vertex of degree 4: one near-stacked extension.
    Four,
    /// Outer vertex of degree 5: two extensions.
    Five,
    /// Connector hub with three extensions and no inner vertex.
    Hub,
    /// Plain path vertex.
    Bare,
}

fn ladder_nodes(k: usize) -> Vec<Node> {
    (0..k).map(|i| if i % 2 == 0 { Node::Four } else { Node::Five }).collect()
}

/// How a strip gadget was laid out, so connectors can re-walk it.
#[derive(Debug, Clone, PartialEq)]
struct Recipe {
    nodes: Vec<Node>,
    rails: bool,
    mirrored: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub ports: BTreeMap<String, usize>,
    pub intended: DiskLayout,
    recipe: Option<Recipe>,
}

impl GadgetGraph {
    pub fn port(&self, name: &str) -> Result<usize> {
        self.ports.get(name).copied().ok_or_else(|| Error::Precondition(format!("missing port '{name}'")))
    }
}

/// Ports sidecar: one `port <name> <vertex-id>` line per port.
pub fn write_ports(g: &GadgetGraph) -> String {
    let mut out = String::new();
    for (name, id) in &g.ports {
        let _ = writeln!(out, "port {name} {id}");
    }
    out
}

#[derive(Default)]
struct Canvas {
    pts: Vec<Point2>,
    edges: Vec<(usize, usize)>,
}

impl Canvas {
    fn add(&mut self, p: Point2) -> usize {
        self.pts.push(p);
        self.pts.len() - 1
    }

    fn leaf(&mut self, parent: usize, p: Point2) -> usize {
        let v = self.add(p);
        self.edges.push((parent, v));
        v
    }

    fn into_graph(self) -> (Graph, DiskLayout) {
        (Graph::from_edges(self.pts.len(), &self.edges), DiskLayout::from_points(self.pts))
    }
}

struct Strip {
    outer: Vec<usize>,
    inner: Vec<Option<usize>>,
    /// Where each node's inner vertex sits or would sit.
    spot: Vec<Point2>,
    heading: Vec<f64>,
}

fn dir(a: f64) -> Point2 {
    Point2::polar(a)
}

/// Lays out one strip. `turns[i]` is the clockwise turn at node `i`; the end
/// values only shape the virtual neighbors that place end extensions.
fn walk(c: &mut Canvas, nodes: &[Node], turns: &[f64], start: Point2, heading: f64, rails: bool) -> Strip {
    let m = nodes.len();
    debug_assert!(m >= 1 && turns.len() == m);
    let mut p = vec![start];
    let mut heads = Vec::with_capacity(m);
    let mut hd = heading;
    for i in 0..m - 1 {
        if i > 0 {
            hd -= turns[i];
        }
        heads.push(hd);
        p.push(p[i] + dir(hd) * 2.0);
    }
    let (vprev, vnext) = if m > 1 {
        (p[0] - dir(heads[0] + turns[0]) * 2.0, p[m - 1] + dir(heads[m - 2] - turns[m - 1]) * 2.0)
    } else {
        (p[0] - dir(heading) * 2.0, p[0] + dir(heading) * 2.0)
    };
    let mut node_heading = Vec::with_capacity(m);
    for i in 0..m {
        node_heading.push(if i == 0 { heads.first().copied().unwrap_or(heading) } else { heads[i - 1] });
    }

    let outer: Vec<usize> = p.iter().map(|&q| c.add(q)).collect();
    for w in outer.windows(2) {
        c.edges.push((w[0], w[1]));
    }
    // angle of the neighbor before, angle of the neighbor after, free arc on the left
    let arcs: Vec<(f64, f64, f64)> = (0..m)
        .map(|i| {
            let prev = if i > 0 { p[i - 1] } else { vprev };
            let next = if i + 1 < m { p[i + 1] } else { vnext };
            let a_prev = (prev - p[i]).angle();
            let a_next = (next - p[i]).angle();
            (a_prev, a_next, (a_prev - a_next).rem_euclid(TAU))
        })
        .collect();
    let spot: Vec<Point2> = (0..m)
        .map(|i| {
            let (_, a_next, arc) = arcs[i];
            p[i] + dir(a_next - (TAU - arc) / 2.0) * RUNG
        })
        .collect();

    let mut inner = vec![None; m];
    if rails {
        for i in 0..m {
            if matches!(nodes[i], Node::Four | Node::Five) {
                let u = c.leaf(outer[i], spot[i]);
                inner[i] = Some(u);
            }
        }
        let seq: Vec<usize> = inner.iter().flatten().copied().collect();
        for w in seq.windows(2) {
            c.edges.push((w[0], w[1]));
        }
    }

    for i in 0..m {
        let (a_prev, a_next, arc) = arcs[i];
        let o = outer[i];
        match nodes[i] {
            Node::Hub => {
                for j in 1..=3 {
                    c.leaf(o, p[i] + dir(a_next + j as f64 * arc / 4.0) * 2.0);
                }
            }
            Node::Four => {
                c.leaf(o, p[i] + dir(a_next + arc / 2.0) * STACK);
                if i == 0 {
                    c.leaf(o, vprev);
                }
                if i + 1 == m {
                    c.leaf(o, vnext);
                }
            }
            Node::Five if i + 1 == m && i > 0 => {
                // end of an even ladder: three extensions spread from the rung to the rail
                let toward_inner = a_next - (TAU - arc) / 2.0;
                let span = (a_prev - toward_inner).rem_euclid(TAU);
                for j in 1..=3 {
                    c.leaf(o, p[i] + dir(toward_inner + j as f64 * span / 4.0) * 2.0);
                }
            }
            Node::Five => {
                debug_assert!(i > 0, "strips never start with a degree-5 vertex");
                c.leaf(o, p[i] + dir(a_next + arc / 3.0) * 2.0);
                c.leaf(o, p[i] + dir(a_prev - arc / 3.0) * 2.0);
            }
            Node::Bare => {}
        }
    }
    Strip { outer, inner, spot, heading: node_heading }
}

fn turns_for(nodes: &[Node]) -> Vec<f64> {
    nodes.iter().map(|&n| if n == Node::Hub { HUB_TURN } else { BEND }).collect()
}

fn strip_ports(s: &Strip, nodes: &[Node]) -> BTreeMap<String, usize> {
    let mut ports = BTreeMap::new();
    ports.insert("first_outer".to_string(), s.outer[0]);
    ports.insert("last_outer".to_string(), s.outer[s.outer.len() - 1]);
    let inners: Vec<usize> = s.inner.iter().flatten().copied().collect();
    if let (Some(&a), Some(&b)) = (inners.first(), inners.last()) {
        ports.insert("first_inner".to_string(), a);
        ports.insert("last_inner".to_string(), b);
    }
    let mut h = 0;
    for (i, &n) in nodes.iter().enumerate() {
        if n == Node::Hub {
            h += 1;
            ports.insert(format!("hub{h}"), s.outer[i]);
        }
    }
    ports
}

fn accept(g: &Graph, layout: &DiskLayout, what: &str) -> Result<()> {
    let r = verify_udr(g, layout, BUILD_TAU)?;
    if r.ok {
        Ok(())
    } else {
        Err(Error::Construction(format!("{what}: intended layout has {} violations", r.violations.len())))
    }
}

fn strip_gadget(recipe: Recipe) -> Result<GadgetGraph> {
    let mut c = Canvas::default();
    let s = walk(&mut c, &recipe.nodes, &turns_for(&recipe.nodes), Point2::new(0.0, 0.0), 0.0, recipe.rails);
    let ports = strip_ports(&s, &recipe.nodes);
    let (graph, mut intended) = c.into_graph();
    if recipe.mirrored {
        intended = intended.map(|p| Point2::new(p.x, -p.y));
    }
    accept(&graph, &intended, "strip")?;
    Ok(GadgetGraph { graph, ports, intended, recipe: Some(recipe) })
}

/// Ladder with `k` outer and `k` inner vertices. Outer degrees alternate 4, 5,
/// 4, ... starting at the first vertex; the outer row runs along the x axis and
/// the extensions sit above it.
pub fn ladder(k: usize) -> Result<GadgetGraph> {
    if k < 2 {
        return Err(Error::Precondition(format!("ladder needs k >= 2, got {k}")));
    }
    strip_gadget(Recipe { nodes: ladder_nodes(k), rails: true, mirrored: false })
}

/// A ladder without its inner vertices.
pub fn chain(k: usize) -> Result<GadgetGraph> {
    if k < 2 {
        return Err(Error::Precondition(format!("chain needs k >= 2, got {k}")));
    }
    strip_gadget(Recipe { nodes: ladder_nodes(k), rails: false, mirrored: false })
}

/// Joins the end of `a` to the start of `b` through a hub `v_c` carrying three
/// extensions. The hub replaces the end extension of each port vertex, and the
/// two port inner vertices become adjacent. `turn = 1` bends clockwise,
/// `turn = -1` counterclockwise.
pub fn corner_connector(a: &GadgetGraph, b: &GadgetGraph, turn: i32) -> Result<GadgetGraph> {
    if turn != 1 && turn != -1 {
        return Err(Error::Precondition(format!("turn must be 1 or -1, got {turn}")));
    }
    a.port("last_outer")?;
    b.port("first_outer")?;
    let (ra, rb) = match (&a.recipe, &b.recipe) {
        (Some(ra), Some(rb)) => (ra, rb),
        _ => return Err(Error::Precondition("connectors join ladders or ladder composites only".into())),
    };
    if ra.rails {
        a.port("last_inner")?;
    }
    if rb.rails {
        b.port("first_inner")?;
    }
    if ra.rails != rb.rails {
        return Err(Error::Precondition("cannot connect a ladder to a chain".into()));
    }
    if ra.nodes.last() != Some(&Node::Four) || rb.nodes.first() != Some(&Node::Four) {
        return Err(Error::Precondition("port outer vertices must have degree 4 (use odd ladder lengths)".into()));
    }
    let mirrored = turn == -1;
    for r in [ra, rb] {
        if r.nodes.contains(&Node::Hub) && r.mirrored != mirrored {
            return Err(Error::Precondition("all connectors of a composite must bend the same way".into()));
        }
    }
    let mut nodes = ra.nodes.clone();
    nodes.push(Node::Hub);
    nodes.extend_from_slice(&rb.nodes);
    strip_gadget(Recipe { nodes, rails: ra.rails, mirrored })
}

/// Rhombus target of width `2k + 6` and height `6 sqrt 3 + 2`, centered at the origin.
pub fn rhombus_target(k: usize) -> Polygon {
    Polygon::rhombus(Point2::new(0.0, 0.0), 2.0 * k as f64 + 6.0, 6.0 * SQRT3 + 2.0)
}

/// Regular hexagon of side `2k - 1` centered at the origin.
pub fn hexagon_target(k: usize) -> Polygon {
    regular_hexagon(Point2::new(0.0, 0.0), 2.0 * k as f64 - 1.0)
}

fn outer_center(pts: &[Point2], outer: &[usize]) -> Point2 {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &v in outer {
        let p = pts[v];
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    Point2::new((x0 + x1) / 2.0, (y0 + y1) / 2.0)
}

/// Two opposite ladders of odd length (k, or k + 1 for even k) closed on one
/// side by three connectors with single-vertex pieces between them. The tree
/// variant drops the inner vertices and adds a chain through the middle,
/// hung from the inner position of the second-to-last top vertex.
pub fn rhombus_approx(k: usize, variant: Variant) -> Result<GadgetGraph> {
    if k < 2 {
        return Err(Error::Precondition(format!("rhombus needs k >= 2, got {k}")));
    }
    let m = if k % 2 == 1 { k } else { k + 1 };
    let mut nodes = ladder_nodes(m);
    nodes.extend([Node::Hub, Node::Four, Node::Hub, Node::Four, Node::Hub]);
    nodes.extend(ladder_nodes(m));
    let rails = variant == Variant::Outerplanar;
    let mut c = Canvas::default();
    let s = walk(&mut c, &nodes, &turns_for(&nodes), Point2::new(0.0, 0.0), 0.0, rails);
    let mut ports = strip_ports(&s, &nodes);
    if !rails {
        let anchor = m - 2;
        let mut extra = vec![Node::Bare];
        extra.extend(std::iter::repeat_n(Node::Four, m - 1));
        let mut turns = vec![BEND; extra.len()];
        turns[0] = 0.0;
        turns[1] = PI / 6.0;
        let heading = s.heading[anchor] - 5.0 * PI / 6.0;
        let e = walk(&mut c, &extra, &turns, s.spot[anchor], heading, false);
        c.edges.push((s.outer[anchor], e.outer[0]));
        ports.insert("extra_first".to_string(), e.outer[0]);
        ports.insert("extra_last".to_string(), e.outer[e.outer.len() - 1]);
    }
    let center = outer_center(&c.pts, &s.outer);
    let (graph, layout) = c.into_graph();
    let intended = layout.map(|p| p - center);
    accept(&graph, &intended, "rhombus")?;
    Ok(GadgetGraph { graph, ports, intended, recipe: None })
}

/// Occupied disk centers, bucketed for clearance queries up to `CELL`.
struct Occupancy {
    buckets: HashMap<(i64, i64), Vec<Point2>>,
}

impl Occupancy {
    const CELL: f64 = 2.5;

    fn key(p: Point2) -> (i64, i64) {
        ((p.x / Self::CELL).floor() as i64, (p.y / Self::CELL).floor() as i64)
    }

    fn new(pts: &[Point2]) -> Self {
        let mut o = Occupancy { buckets: HashMap::new() };
        o.extend(pts);
        o
    }

    fn extend(&mut self, pts: &[Point2]) {
        for &p in pts {
            self.buckets.entry(Self::key(p)).or_default().push(p);
        }
    }

    /// No occupied center within `r` of `p`; `r` must not exceed `CELL`.
    fn clear(&self, p: Point2, r: f64) -> bool {
        let (kx, ky) = Self::key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = self.buckets.get(&(kx + dx, ky + dy)) {
                    if list.iter().any(|q| q.dist(p) <= r) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A horizontal filler row: points centered on x = 0 with the outer row on y = 0.
struct Row {
    pts: Vec<Point2>,
    edges: Vec<(usize, usize)>,
}

fn filler_row(len: usize, rails: bool) -> Row {
    let mut c = Canvas::default();
    walk(&mut c, &ladder_nodes(len), &vec![BEND; len], Point2::new(0.0, 0.0), 0.0, rails);
    let (x0, x1) = c.pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.x), b.max(p.x)));
    let shift = Point2::new((x0 + x1) / 2.0, 0.0);
    Row { pts: c.pts.iter().map(|&p| p - shift).collect(), edges: c.edges }
}

const ROW_CLEARANCE: f64 = 2.0 + 1e-3;

fn longest_row(occ: &Occupancy, rows: &[Row], y: f64) -> usize {
    let lift = Point2::new(0.0, y);
    let mut best = 0;
    for (len, row) in rows.iter().enumerate().skip(2) {
        if row.pts.iter().all(|&p| occ.clear(p + lift, ROW_CLEARANCE)) {
            best = len;
        } else if len > best + 2 {
            break;
        }
    }
    best
}

/// Hexagon outline of ladders and five connectors, open at one corner, with
/// the interior filled top to bottom by horizontal ladders. Each row sits at
/// the first height where it is as long as it will get. `k` must be `6n + 4`.
pub fn hexagon_approx(k: usize, variant: Variant) -> Result<GadgetGraph> {
    if k % 6 != 4 {
        return Err(Error::Precondition(format!("hexagon needs k = 6n + 4, got {k}")));
    }
    let rails = variant == Variant::Outerplanar;
    let side = (k - 3).max(1);
    // the walk cannot close, so the sixth side shrinks until it clears the first
    let mut outline = None;
    for last in (1..=side).rev().step_by(2).chain([0]) {
        let sides = if last > 0 { 6 } else { 5 };
        let mut nodes = Vec::new();
        for i in 0..sides {
            nodes.extend(ladder_nodes(if i < 5 { side } else { last }));
            if i + 1 < sides {
                nodes.push(Node::Hub);
            }
        }
        let mut c = Canvas::default();
        let s = walk(&mut c, &nodes, &turns_for(&nodes), Point2::new(0.0, 0.0), 0.0, rails);
        let g = Graph::from_edges(c.pts.len(), &c.edges);
        if verify_udr(&g, &DiskLayout::from_points(c.pts.clone()), BUILD_TAU)?.ok {
            outline = Some((c, s, nodes));
            break;
        }
    }
    let (mut c, s, nodes) = outline.ok_or_else(|| Error::Construction("hexagon outline does not fit".into()))?;
    let center = outer_center(&c.pts, &s.outer);
    for p in &mut c.pts {
        *p = *p - center;
    }
    let ports = strip_ports(&s, &nodes);

    let near_axis = |sign: f64| c.pts.iter().filter(move |p| p.x.abs() < 3.0 && p.y * sign > 0.0).map(|p| p.y);
    let y_top = near_axis(1.0).fold(f64::INFINITY, f64::min);
    let y_bottom = near_axis(-1.0).fold(f64::NEG_INFINITY, f64::max);
    let rows: Vec<Row> = (0..2 * k + 4).map(|len| filler_row(len.max(1), rails)).collect();
    let mut occ = Occupancy::new(&c.pts);
    let mut y = y_top - 2.0;
    while y - 4.01 > y_bottom {
        let len = longest_row(&occ, &rows, y);
        if len >= 2 && len >= longest_row(&occ, &rows, y - 0.5) {
            let base = c.pts.len();
            let placed: Vec<Point2> = rows[len].pts.iter().map(|&p| p + Point2::new(0.0, y)).collect();
            occ.extend(&placed);
            c.pts.extend(placed);
            c.edges.extend(rows[len].edges.iter().map(|&(a, b)| (a + base, b + base)));
            y -= 5.5;
        } else {
            y -= 0.05;
        }
    }
    let (graph, intended) = c.into_graph();
    accept(&graph, &intended, "hexagon")?;
    Ok(GadgetGraph { graph, ports, intended, recipe: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff_to_union, DEFAULT_TAU};

    fn components(g: &Graph) -> usize {
        let mut seen = vec![false; g.n()];
        let mut count = 0;
        for s in 0..g.n() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    fn cycle_rank(g: &Graph) -> usize {
        g.edge_count() + components(g) - g.n()
    }

    /// Faces read off the graph: an inner rail edge closes a 4-cycle when its
    /// outer partners are adjacent and a 5-cycle when they share a hub.
    fn faces(gg: &GadgetGraph) -> (usize, usize) {
        let g = &gg.graph;
        let hubs: Vec<usize> = gg.ports.iter().filter(|(k, _)| k.starts_with("hub")).map(|(_, &v)| v).collect();
        let pts = gg.intended.total_points(g.n()).unwrap();
        // rung partner of an inner vertex: the busier endpoint of a rung-length edge
        let partner = |u: usize| -> Option<usize> {
            g.neighbors(u).iter().copied().find(|&w| g.degree(w) > g.degree(u) && (pts[u].dist(pts[w]) - RUNG).abs() < 1e-9)
        };
        let (mut four, mut five) = (0, 0);
        for (u, v) in g.edges() {
            let (Some(a), Some(b)) = (partner(u), partner(v)) else { continue };
            if g.has_edge(a, b) {
                four += 1;
            } else if hubs.iter().any(|&h| g.has_edge(a, h) && g.has_edge(b, h)) {
                five += 1;
            }
        }
        (four, five)
    }

    fn ok(gg: &GadgetGraph) -> bool {
        verify_udr(&gg.graph, &gg.intended, DEFAULT_TAU).unwrap().ok
    }

    #[test]
    fn ladder_two_has_four_core_vertices() {
        let l = ladder(2).unwrap();
        let core: Vec<usize> = (0..l.graph.n()).filter(|&v| l.graph.degree(v) > 1).collect();
        assert_eq!(core, vec![0, 1, 2, 3]);
        assert!((4..l.graph.n()).all(|v| l.graph.degree(v) == 1));
        assert!(ladder(1).is_err() && ladder(0).is_err());
    }

    #[test]
    fn ladder_seventeen_core_edges() {
        let l = ladder(17).unwrap();
        let core = l.graph.edges().into_iter().filter(|&(u, v)| u < 34 && v < 34).collect::<Vec<_>>();
        let rails = core.iter().filter(|&&(u, v)| (u < 17) == (v < 17)).count();
        assert_eq!((rails, core.len() - rails), (32, 17));
        assert_eq!(core.iter().filter(|&&(u, v)| u < 17 && v < 17).count(), 16);
    }

    #[test]
    fn ladders_verify_and_alternate() {
        for k in 2..=18 {
            let l = ladder(k).unwrap();
            assert!(ok(&l), "k={k}");
            let degs: Vec<usize> = (0..k).map(|v| l.graph.degree(v)).collect();
            let want: Vec<usize> = (0..k).map(|i| if i % 2 == 0 { 4 } else { 5 }).collect();
            assert_eq!(degs, want, "k={k}");
            assert_eq!(faces(&l), (k - 1, 0));
            assert_eq!(cycle_rank(&l.graph), k - 1);
        }
    }

    #[test]
    fn ladder_height_exceeds_two_rows_and_extensions() {
        let l = ladder(6).unwrap();
        let pts = l.intended.total_points(l.graph.n()).unwrap();
        let (y0, y1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.y), b.max(p.y)));
        // disk union height: rows a rung apart plus extensions at about sqrt 3
        assert!(y1 - y0 + 2.0 > 2.0 * SQRT3 + 2.0 - 1e-2);
    }

    #[test]
    fn chains_are_caterpillar_trees() {
        for k in 2..=9 {
            let c = chain(k).unwrap();
            assert!(ok(&c));
            assert_eq!(c.graph.edge_count() + 1, c.graph.n());
        }
    }

    fn clockwise_angle(gg: &GadgetGraph, turn: i32) -> f64 {
        let p = |name: &str| gg.intended.get(gg.port(name).unwrap()).unwrap();
        let hub = p("hub1");
        let g = &gg.graph;
        let h = gg.port("hub1").unwrap();
        let mut ends: Vec<usize> = g.neighbors(h).iter().copied().filter(|&w| g.degree(w) > 1).collect();
        ends.sort();
        let a = (gg.intended.get(ends[0]).unwrap() - hub).angle();
        let b = (gg.intended.get(ends[1]).unwrap() - hub).angle();
        if turn == 1 {
            (a - b).rem_euclid(TAU)
        } else {
            (b - a).rem_euclid(TAU)
        }
    }

    #[test]
    fn connector_counts_and_bend() {
        let a = ladder(3).unwrap();
        for turn in [1, -1] {
            let c = corner_connector(&a, &a, turn).unwrap();
            assert!(ok(&c));
            // each port vertex gives up its end extension to the hub
            let (n0, e0) = (2 * a.graph.n() - 2, 2 * a.graph.edge_count() - 2);
            assert_eq!(c.graph.n() - n0, 4);
            assert_eq!(c.graph.edge_count() - e0, 2 + 3 + 1);
            let h = c.port("hub1").unwrap();
            assert_eq!(c.graph.degree(h), 5);
            assert!(clockwise_angle(&c, turn) > 4.0 * PI / 3.0, "turn={turn}");
            assert_eq!(faces(&c), (4, 1));
            assert_eq!(cycle_rank(&c.graph), 5);
        }
    }

    #[test]
    fn connector_rejects_bad_ports() {
        let a = ladder(3).unwrap();
        assert!(corner_connector(&a, &ladder(4).unwrap(), 1).is_ok());
        assert!(corner_connector(&ladder(4).unwrap(), &a, 1).is_err());
        assert!(corner_connector(&a, &chain(3).unwrap(), 1).is_err());
        assert!(corner_connector(&a, &a, 0).is_err());
        let mut stripped = a.clone();
        stripped.ports.remove("last_outer");
        assert!(matches!(corner_connector(&stripped, &a, 1), Err(Error::Precondition(m)) if m.contains("last_outer")));
        let r = rhombus_approx(3, Variant::Outerplanar).unwrap();
        assert!(corner_connector(&r, &a, 1).is_err());
    }

    #[test]
    fn composite_connectors() {
        let a = ladder(5).unwrap();
        let ab = corner_connector(&a, &a, 1).unwrap();
        let abc = corner_connector(&ab, &a, 1).unwrap();
        assert!(ok(&abc));
        assert_eq!(faces(&abc), (12, 2));
        assert_eq!(cycle_rank(&abc.graph), 14);
        assert!(corner_connector(&ab, &a, -1).is_err());
    }

    #[test]
    fn rhombus_variants() {
        for k in 2..=9 {
            let r = rhombus_approx(k, Variant::Outerplanar).unwrap();
            assert!(ok(&r), "k={k}");
            let (f4, f5) = faces(&r);
            assert_eq!(f5, 3);
            assert_eq!(cycle_rank(&r.graph), f4 + f5);
            let t = rhombus_approx(k, Variant::Tree).unwrap();
            assert!(ok(&t), "k={k}");
            assert_eq!(components(&t.graph), 1);
            assert_eq!(t.graph.edge_count() + 1, t.graph.n());
        }
        assert!(rhombus_approx(1, Variant::Tree).is_err());
    }

    #[test]
    fn rhombus_spans_target_width() {
        for k in [3, 5, 7, 9] {
            let r = rhombus_approx(k, Variant::Outerplanar).unwrap();
            let pts = r.intended.total_points(r.graph.n()).unwrap();
            let (x0, x1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.x), b.max(p.x)));
            assert!((x1 - x0 - (2 * k + 6) as f64).abs() < 0.2, "k={k} width {}", x1 - x0);
        }
    }

    #[test]
    fn hexagon_rejects_bad_k() {
        assert!(matches!(hexagon_approx(11, Variant::Outerplanar), Err(Error::Precondition(_))));
        assert!(hexagon_approx(5, Variant::Tree).is_err());
        let side = hexagon_target(10).vertices[0].norm();
        assert!((side - 19.0).abs() < 1e-12);
    }

    #[test]
    fn hexagon_variants() {
        for k in [4, 10] {
            let h = hexagon_approx(k, Variant::Outerplanar).unwrap();
            assert!(ok(&h));
            let (f4, f5) = faces(&h);
            assert_eq!(cycle_rank(&h.graph), f4 + f5);
            assert!(f5 >= 4);
            let t = hexagon_approx(k, Variant::Tree).unwrap();
            assert!(ok(&t));
            assert_eq!(cycle_rank(&t.graph), 0);
        }
    }

    #[test]
    fn stability_bound() {
        for v in [Variant::Outerplanar, Variant::Tree] {
            for k in [3, 5, 7] {
                let r = rhombus_approx(k, v).unwrap();
                let h = hausdorff_to_union(&rhombus_target(k), &r.intended, 0.05).unwrap();
                assert!(h > 0.0 && h <= 7.0, "rhombus {k} {v:?}: {h}");
            }
            for k in [4, 10] {
                let g = hexagon_approx(k, v).unwrap();
                let h = hausdorff_to_union(&hexagon_target(k), &g.intended, 0.05).unwrap();
                assert!(h > 0.0 && h <= 7.0, "hexagon {k} {v:?}: {h}");
            }
        }
    }

    #[test]
    fn ports_sidecar() {
        let c = corner_connector(&ladder(3).unwrap(), &ladder(3).unwrap(), 1).unwrap();
        let text = write_ports(&c);
        assert!(text.lines().all(|l| l.starts_with("port ")));
        assert!(text.contains(&format!("port hub1 {}\n", c.port("hub1").unwrap())));
        for id in c.ports.values() {
            assert!(*id < c.graph.n());
        }
    }
}
