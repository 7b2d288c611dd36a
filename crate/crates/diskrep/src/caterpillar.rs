//! Caterpillars with a unit disk intersection representation.
//!
//! A caterpillar has such a representation exactly when its maximum degree is
//! at most 5 and no two adjacent backbone vertices both have degree 5.
//!
//! The construction walks the backbone once. Every backbone vertex gets a
//! "top" and a "bottom" leaf slot at distance 2, placed just under 120° away
//! from the incoming spine direction. Consecutive same-side leaves lean a little
//! further forward each step (`epsilon` per vertex) so they never touch. A
//! degree-5 vertex `u` puts a third leaf on one side, which forces a slight
//! clockwise (top) or counterclockwise (bottom) bend. The vertex `x` after `u`
//! then has no room on that side, so its leaf there sits almost on top of `x`,
//! shifted by a small distance along the outer bisector of a bend at `x`. The
//! sides of successive degree-5 vertices alternate, starting at the top.
//!
//! Slack on each side is tracked explicitly: the spine direction is clamped so
//! every neighbor pair at a vertex keeps an angular gap above 60°, and the
//! construction reports an error instead of emitting an invalid layout when
//! the parameters are too coarse for the instance.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{DiskLayout, Point2};
use crate::graph::Graph;
use crate::tree::{classify_tree, TreeClass, TreeKind};

const SIXTY: f64 = PI / 3.0;
const ONE_TWENTY: f64 = 2.0 * PI / 3.0;
/// Upper limit on the per-module angle unit; small instances use this value.
const MAX_MODULE_ANGLE: f64 = PI / 90.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NoReason {
    DegreeAtLeast6 { vertex: usize, degree: usize },
    AdjacentDegree5BackbonePair { u: usize, v: usize },
}

impl std::fmt::Display for NoReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            NoReason::DegreeAtLeast6 { vertex, degree } => {
                write!(f, "degree-at-least-6 (vertex={vertex}, degree={degree})")
            }
            NoReason::AdjacentDegree5BackbonePair { u, v } => {
                write!(f, "adjacent-degree-5-backbone-pair (u={u}, v={v})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UdrDecision {
    pub yes: bool,
    pub reason: Option<NoReason>,
    pub witness: Option<DiskLayout>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionParams {
    /// Angular lean added per backbone vertex to same-side leaves (radians).
    pub epsilon: f64,
    /// Divides the angle budget among degree-5 vertices: each one gets
    /// `min(pi/90, pi / (c * (k + 1)))` for `k` degree-5 backbone vertices.
    pub c: f64,
    /// Backbone neighbors are placed at distance `2 - mu`.
    pub mu: f64,
}

impl ConstructionParams {
    /// Defaults for a caterpillar on `n` vertices with `deg5` degree-5 backbone vertices.
    pub fn defaults(n: usize, deg5: usize) -> Self {
        let c = 32.0;
        let epsilon = PI / (64.0 * (n as f64 + 2.0));
        let unit = module_angle(c, deg5);
        ConstructionParams { epsilon, c, mu: epsilon.min(unit * unit) / 100.0 }
    }

    pub fn for_graph(g: &Graph) -> Self {
        Self::for_backbone(g, &classify_tree(g).backbone)
    }

    fn for_backbone(g: &Graph, backbone: &[usize]) -> Self {
        let deg5 = backbone.iter().filter(|&&b| g.degree(b) == 5).count();
        Self::defaults(g.n(), deg5)
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) || !(self.c >= 1.0) || !(0.0 <= self.mu && self.mu < self.epsilon) {
            return Err(Error::Precondition(format!("invalid construction parameters {self:?}")));
        }
        Ok(())
    }
}

fn module_angle(c: f64, deg5: usize) -> f64 {
    MAX_MODULE_ANGLE.min(PI / (c * (deg5 as f64 + 1.0)))
}

fn expect_caterpillar(g: &Graph) -> Result<TreeClass> {
    let tc = classify_tree(g);
    if tc.kind != TreeKind::Caterpillar {
        return Err(Error::Precondition(format!("expected a caterpillar, got {}", tc.kind.as_str())));
    }
    Ok(tc)
}

/// Decides whether a caterpillar has a unit disk intersection representation.
/// The decision carries no witness; see [`construct_caterpillar_udr`].
pub fn recognize_caterpillar(g: &Graph) -> Result<UdrDecision> {
    let tc = expect_caterpillar(g)?;
    Ok(UdrDecision { yes: false, reason: None, witness: None }.with_reason(find_obstruction(g, &tc.backbone)))
}

impl UdrDecision {
    fn with_reason(mut self, reason: Option<NoReason>) -> Self {
        self.yes = reason.is_none();
        self.reason = reason;
        self
    }
}

fn find_obstruction(g: &Graph, backbone: &[usize]) -> Option<NoReason> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) >= 6) {
        return Some(NoReason::DegreeAtLeast6 { vertex: v, degree: g.degree(v) });
    }
    backbone
        .windows(2)
        .find(|w| g.degree(w[0]) == 5 && g.degree(w[1]) == 5)
        .map(|w| NoReason::AdjacentDegree5BackbonePair { u: w[0], v: w[1] })
}

/// Recognizes and, on a yes answer, attaches a layout built with default parameters.
pub fn decide_caterpillar(g: &Graph) -> Result<UdrDecision> {
    let tc = expect_caterpillar(g)?;
    let mut d = UdrDecision { yes: false, reason: None, witness: None }.with_reason(find_obstruction(g, &tc.backbone));
    if d.yes {
        d.witness = Some(build(g, &tc, &ConstructionParams::for_backbone(g, &tc.backbone))?);
    }
    Ok(d)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Top,
    Bottom,
}

/// Leaf-slot positions of one backbone vertex, most preferred first.
struct Slots {
    pos: Point2,
    slots: Vec<Point2>,
}

struct Walker {
    beta: f64,
    kappa: f64,
    step: f64,
    theta: f64,
    pos: Point2,
    last_top: Option<f64>,
    last_bot: Option<f64>,
    top_reset: bool,
    bot_reset: bool,
    next_side: Side,
    pending: Option<Side>,
}

impl Walker {
    fn leaf(&self, angle: f64) -> Point2 {
        self.pos + Point2::polar(angle) * 2.0
    }

    fn fail(&self, i: usize, what: &str) -> Error {
        Error::Construction(format!("angle budget exhausted at backbone index {i} ({what}); use a smaller epsilon or larger c"))
    }

    /// Places backbone vertex `i` and returns its slots; `deg5` marks a degree-5 vertex.
    fn visit(&mut self, i: usize, deg5: bool) -> Result<Slots> {
        let beta = self.beta;
        let (c0, c1, gap_extra, gap_next, reset_cap, bend, shift) = (beta, beta, beta, 2.0 * beta, 2.0 * beta, beta, beta);
        let top_cap = self.theta + ONE_TWENTY - if self.top_reset { reset_cap } else { c0 };
        let bot_cap = self.theta - ONE_TWENTY + if self.bot_reset { reset_cap } else { c0 };
        let top = self.last_top.map_or(top_cap, |t| top_cap.min(t - self.kappa));
        let bot = self.last_bot.map_or(bot_cap, |b| bot_cap.max(b + self.kappa));
        let mut new_top_reset = false;
        let mut new_bot_reset = false;
        let out;
        let slots;
        if deg5 {
            let side = self.next_side;
            self.next_side = if side == Side::Top { Side::Bottom } else { Side::Top };
            match side {
                Side::Top => {
                    let extra = top - SIXTY - gap_extra;
                    let hi = extra - SIXTY - gap_next;
                    let lo = bot + SIXTY + c1;
                    if hi < lo {
                        return Err(self.fail(i, "extra top leaf"));
                    }
                    out = self.theta.min(hi).max(lo);
                    slots = vec![self.leaf(top), self.leaf(bot), self.leaf(extra)];
                    self.last_top = Some(extra);
                    self.last_bot = Some(bot);
                }
                Side::Bottom => {
                    let extra = bot + SIXTY + gap_extra;
                    let lo = extra + SIXTY + gap_next;
                    let hi = top - SIXTY - c1;
                    if hi < lo {
                        return Err(self.fail(i, "extra bottom leaf"));
                    }
                    out = self.theta.max(lo).min(hi);
                    slots = vec![self.leaf(top), self.leaf(bot), self.leaf(extra)];
                    self.last_top = Some(top);
                    self.last_bot = Some(extra);
                }
            }
            self.pending = Some(side);
        } else if let Some(side) = self.pending.take() {
            // successor of a degree-5 vertex: bend outward and nearly stack one leaf
            match side {
                Side::Top => {
                    out = self.theta - 2.0 * bend;
                    if out < bot + SIXTY + c1 {
                        return Err(self.fail(i, "bend after extra top leaf"));
                    }
                    let stacked = self.pos + Point2::polar(self.theta + PI / 2.0 - bend) * shift;
                    slots = vec![self.leaf(bot), stacked];
                    self.last_top = None;
                    self.last_bot = Some(bot);
                    new_top_reset = true;
                }
                Side::Bottom => {
                    out = self.theta + 2.0 * bend;
                    if out > top - SIXTY - c1 {
                        return Err(self.fail(i, "bend after extra bottom leaf"));
                    }
                    let stacked = self.pos + Point2::polar(self.theta - PI / 2.0 + bend) * shift;
                    slots = vec![self.leaf(top), stacked];
                    self.last_top = Some(top);
                    self.last_bot = None;
                    new_bot_reset = true;
                }
            }
        } else {
            let lo = bot + SIXTY + c1;
            let hi = top - SIXTY - c1;
            if hi < lo {
                return Err(self.fail(i, "regular vertex"));
            }
            out = self.theta.max(lo).min(hi);
            slots = vec![self.leaf(top), self.leaf(bot)];
            self.last_top = Some(top);
            self.last_bot = Some(bot);
        }
        self.top_reset = new_top_reset;
        self.bot_reset = new_bot_reset;
        let here = self.pos;
        self.theta = out;
        self.pos = self.pos + Point2::polar(out) * self.step;
        Ok(Slots { pos: here, slots })
    }
}

/// Builds a unit disk intersection representation of a yes-instance caterpillar.
pub fn construct_caterpillar_udr(g: &Graph, p: &ConstructionParams) -> Result<DiskLayout> {
    let tc = expect_caterpillar(g)?;
    if let Some(r) = find_obstruction(g, &tc.backbone) {
        return Err(Error::Precondition(format!("no representation exists: {r}")));
    }
    build(g, &tc, p)
}

fn build(g: &Graph, tc: &TreeClass, p: &ConstructionParams) -> Result<DiskLayout> {
    p.validate()?;
    let backbone = &tc.backbone;
    let deg5 = backbone.iter().filter(|&&b| g.degree(b) == 5).count();
    let step = 2.0 - p.mu;
    let mut w = Walker {
        beta: module_angle(p.c, deg5),
        kappa: p.epsilon,
        step,
        theta: 0.0,
        pos: Point2::new(0.0, 0.0),
        last_top: None,
        last_bot: None,
        top_reset: false,
        bot_reset: false,
        next_side: Side::Top,
        pending: None,
    };
    let mut layout = DiskLayout::with_len(g.n());
    let m = backbone.len();
    for (i, &b) in backbone.iter().enumerate() {
        let mut slots = Vec::with_capacity(5);
        if i == 0 {
            slots.push(Point2::new(-step, 0.0));
        }
        let placed = w.visit(i, g.degree(b) == 5)?;
        if i + 1 == m {
            slots.push(w.pos);
        }
        slots.extend(placed.slots);
        layout.set(b, placed.pos);
        let leaves = &tc.descendants[i].children;
        if leaves.len() > slots.len() {
            return Err(Error::Construction(format!("backbone vertex {b} has more leaves than slots")));
        }
        for (child, &pt) in leaves.iter().zip(&slots) {
            layout.set(child.id, pt);
        }
    }
    Ok(layout)
}
