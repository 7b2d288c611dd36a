use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{GridCoord, GridLayout, GRID_DIRS};
use crate::graph::Graph;
use crate::tree::{TreeClass, TreeKind};

pub const DEFAULT_BOUND: i32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteOptions {
    /// Half-width of the searched region, in grid steps from the first backbone cell.
    pub bound: i32,
    /// How many counted layouts to keep as witnesses.
    pub max_witnesses: usize,
    /// Stop after the first layout; `count` is then 0 or 1.
    pub first_only: bool,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions { bound: DEFAULT_BOUND, max_witnesses: 1, first_only: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteResult {
    pub feasible: bool,
    pub count: u64,
    #[serde(skip)]
    pub witnesses: Vec<GridLayout>,
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    parent: Vec<usize>,
    /// Neighbors of each vertex that come later in `order`.
    later: Vec<usize>,
    span: i32,
    occ: Vec<bool>,
    cell: Vec<GridCoord>,
    placed_kids: Vec<usize>,
    symmetries: Vec<(usize, bool)>,
    opts: BruteOptions,
    count: u64,
    witnesses: Vec<GridLayout>,
    done: bool,
}

impl Search<'_> {
    fn slot(&self, c: GridCoord) -> usize {
        let side = 2 * self.span + 1;
        ((c.a + self.span) * side + (c.b + self.span)) as usize
    }

    fn free_around(&self, c: GridCoord) -> usize {
        GRID_DIRS.iter().filter(|&&d| !self.occ[self.slot(c + d)]).count()
    }

    /// Every placed vertex next to `c` can still fit its unplaced neighbors.
    fn capacity_ok(&self, c: GridCoord, upto: usize) -> bool {
        for &u in &self.order[..upto] {
            let need = self.later[u] - self.placed_kids[u];
            if need > 0 && self.cell[u].grid_dist(c) <= 1 && self.free_around(self.cell[u]) < need {
                return false;
            }
        }
        true
    }

    fn is_canonical(&self) -> bool {
        let n = self.g.n();
        for &(k, flip) in &self.symmetries[1..] {
            for v in 0..n {
                let img = self.cell[v].symmetry(k, flip);
                match img.cmp(&self.cell[v]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    fn record(&mut self) {
        if !self.is_canonical() {
            return;
        }
        self.count += 1;
        if self.witnesses.len() < self.opts.max_witnesses {
            let mut l = GridLayout::with_len(self.g.n());
            for v in 0..self.g.n() {
                l.set(v, self.cell[v]);
            }
            self.witnesses.push(l);
        }
        if self.opts.first_only {
            self.done = true;
        }
    }

    fn place(&mut self, v: usize, c: GridCoord) {
        let s = self.slot(c);
        self.occ[s] = true;
        self.cell[v] = c;
        if self.parent[v] != usize::MAX {
            self.placed_kids[self.parent[v]] += 1;
        }
    }

    fn unplace(&mut self, v: usize, c: GridCoord) {
        let s = self.slot(c);
        self.occ[s] = false;
        if self.parent[v] != usize::MAX {
            self.placed_kids[self.parent[v]] -= 1;
        }
    }

    fn run(&mut self, k: usize, pinned_second: bool) {
        if self.done {
            return;
        }
        if k == self.order.len() {
            self.record();
            return;
        }
        let v = self.order[k];
        let base = self.cell[self.parent[v]];
        let options: Vec<GridCoord> = if k == 1 && pinned_second {
            vec![GRID_DIRS[0]]
        } else {
            GRID_DIRS.iter().map(|&d| base + d).collect()
        };
        for c in options {
            if self.occ[self.slot(c)] {
                continue;
            }
            self.place(v, c);
            if self.free_around(c) >= self.later[v] && self.capacity_ok(c, k) {
                self.run(k + 1, pinned_second);
            }
            self.unplace(v, c);
            if self.done {
                return;
            }
        }
    }
}

/// Exhaustive search for weak unit disk contact layouts on the grid.
///
/// The first backbone vertex is pinned at the origin. With a second backbone
/// vertex it is pinned at `(1, 0)` and layouts are counted up to the mirror
/// through the x axis; otherwise up to all 12 lattice symmetries fixing the
/// origin. A layout is counted when it is the lexicographically smallest
/// image in its orbit.
pub fn brute_force_enumerate(g: &Graph, tc: &TreeClass, opts: BruteOptions) -> Result<BruteResult> {
    if !matches!(tc.kind, TreeKind::Caterpillar | TreeKind::Lobster) {
        return Err(Error::Precondition(format!("expected a caterpillar or lobster, got {}", tc.kind.as_str())));
    }
    let n = g.n();
    let root = tc.backbone[0];
    let second = tc.backbone.get(1).copied();
    // breadth-first order from the root, with the second backbone vertex first among its children
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mut kids: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| depth[w] == usize::MAX).collect();
        if u == root {
            if let Some(s) = second {
                kids.sort_by_key(|&w| w != s);
            }
        }
        for w in kids {
            depth[w] = depth[u] + 1;
            parent[w] = u;
            order.push(w);
            queue.push_back(w);
        }
    }
    let ecc = depth.iter().copied().max().unwrap_or(0) as i32;
    if ecc > opts.bound {
        return Err(Error::BoundExceeded { bound: opts.bound });
    }
    let later: Vec<usize> = (0..n).map(|v| g.degree(v) - usize::from(parent[v] != usize::MAX)).collect();
    let symmetries: Vec<(usize, bool)> = if second.is_some() {
        vec![(0, false), (0, true)]
    } else {
        (0..6).flat_map(|k| [(k, false), (k, true)]).collect()
    };
    let span = opts.bound + 1;
    let side = (2 * span + 1) as usize;
    let mut s = Search {
        g,
        order,
        parent,
        later,
        span,
        occ: vec![false; side * side],
        cell: vec![GridCoord::default(); n],
        placed_kids: vec![0; n],
        symmetries,
        opts,
        count: 0,
        witnesses: Vec::new(),
        done: false,
    };
    let origin = GridCoord::new(0, 0);
    s.place(root, origin);
    if s.free_around(origin) >= s.later[root] {
        s.run(1, second.is_some());
    }
    Ok(BruteResult { feasible: s.count > 0, count: s.count, witnesses: s.witnesses })
}

/// Whether any layout exists; stops at the first one.
pub fn brute_force_feasible(g: &Graph, tc: &TreeClass, bound: i32) -> Result<bool> {
    let opts = BruteOptions { bound, max_witnesses: 0, first_only: true };
    Ok(brute_force_enumerate(g, tc, opts)?.feasible)
}
