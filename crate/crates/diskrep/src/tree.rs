use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TreeKind {
    NotTree,
    Caterpillar,
    Lobster,
    OtherTree,
}

impl TreeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TreeKind::NotTree => "not-tree",
            TreeKind::Caterpillar => "caterpillar",
            TreeKind::Lobster => "lobster",
            TreeKind::OtherTree => "other-tree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Child {
    pub id: usize,
    pub grandchildren: Vec<usize>,
}

/// Non-backbone neighbors of one backbone vertex, each with its own leaf children.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Descendants {
    pub children: Vec<Child>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeClass {
    pub kind: TreeKind,
    pub backbone: Vec<usize>,
    pub descendants: Vec<Descendants>,
}

impl TreeClass {
    fn bare(kind: TreeKind) -> Self {
        TreeClass { kind, backbone: Vec::new(), descendants: Vec::new() }
    }

    /// Position of `v` on the backbone, if any.
    pub fn backbone_index(&self, v: usize) -> Option<usize> {
        self.backbone.iter().position(|&b| b == v)
    }
}

pub fn is_tree(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 || g.edge_count() != n - 1 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Vertices of `alive` with at most one alive neighbor.
fn strip_leaves(g: &Graph, alive: &[bool]) -> Vec<bool> {
    (0..g.n())
        .map(|v| alive[v] && g.neighbors(v).iter().filter(|&&w| alive[w]).count() >= 2)
        .collect()
}

/// Orders the alive vertices as a path from the lowest-id endpoint, or returns
/// `None` when they do not induce a path. `alive` must induce a nonempty tree.
fn path_order(g: &Graph, alive: &[bool]) -> Option<Vec<usize>> {
    let alive_deg = |v: usize| g.neighbors(v).iter().filter(|&&w| alive[w]).count();
    let verts: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    if verts.iter().any(|&v| alive_deg(v) > 2) {
        return None;
    }
    let start = *verts.iter().find(|&&v| alive_deg(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).iter().copied().find(|&w| alive[w] && w != prev);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
                order.push(w);
            }
            None => break,
        }
    }
    Some(order)
}

/// Classifies `g` by repeated leaf deletion and returns the most specific class.
pub fn classify_tree(g: &Graph) -> TreeClass {
    if !is_tree(g) {
        return TreeClass::bare(TreeKind::NotTree);
    }
    let all = vec![true; g.n()];
    let inner = strip_leaves(g, &all);
    let backbone;
    let kind;
    if !inner.iter().any(|&a| a) {
        kind = TreeKind::Caterpillar;
        backbone = vec![0];
    } else if let Some(order) = path_order(g, &inner) {
        kind = TreeKind::Caterpillar;
        backbone = order;
    } else {
        let core = strip_leaves(g, &inner);
        match path_order(g, &core) {
            Some(order) => {
                kind = TreeKind::Lobster;
                backbone = order;
            }
            None => return TreeClass::bare(TreeKind::OtherTree),
        }
    }
    let descendants = collect_descendants(g, &backbone);
    TreeClass { kind, backbone, descendants }
}

fn collect_descendants(g: &Graph, backbone: &[usize]) -> Vec<Descendants> {
    let mut on_backbone = vec![false; g.n()];
    for &b in backbone {
        on_backbone[b] = true;
    }
    backbone
        .iter()
        .map(|&b| Descendants {
            children: g
                .neighbors(b)
                .iter()
                .filter(|&&c| !on_backbone[c])
                .map(|&c| Child { id: c, grandchildren: g.neighbors(c).iter().copied().filter(|&w| w != b).collect() })
                .collect(),
        })
        .collect()
}

/// Per-backbone-vertex descendant structure of a caterpillar or lobster.
pub fn backbone_descendants(g: &Graph, tc: &TreeClass) -> Result<Vec<Descendants>> {
    match tc.kind {
        TreeKind::Caterpillar | TreeKind::Lobster => Ok(collect_descendants(g, &tc.backbone)),
        k => Err(Error::Precondition(format!("descendants need a caterpillar or lobster, got {}", k.as_str()))),
    }
}
