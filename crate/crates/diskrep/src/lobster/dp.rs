use std::collections::{HashMap, HashSet};

use rustc_hash::{FxHashMap, FxHashSet};

use serde::Serialize;

use super::window::{bits, Window};
use crate::error::{Error, Result};
use crate::geometry::{GridCoord, GridLayout, GRID_DIRS};
use crate::graph::Graph;
use crate::tree::{TreeClass, TreeKind};

/// Indices into `GRID_DIRS` of the steps that strictly increase x, in tie-break order.
pub const FORWARD_DIRS: [usize; 3] = [0, 5, 1];
const ALL_DIRS: [usize; 6] = [0, 5, 1, 2, 3, 4];

/// Occupancy around the spine head (head bit included) plus the direction of
/// the step that reached the head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DpSignature {
    pub mask: u64,
    pub incoming: Option<u8>,
}

fn reflect_dir(d: u8) -> u8 {
    let r = GRID_DIRS[d as usize].reflect();
    GRID_DIRS.iter().position(|&x| x == r).expect("reflected direction") as u8
}

impl DpSignature {
    /// The head alone, reached by no step.
    pub fn start(w: &Window) -> Self {
        DpSignature { mask: w.bit(GridCoord::new(0, 0)), incoming: None }
    }

    pub fn reflect(self, w: &Window) -> Self {
        DpSignature { mask: w.reflect_mask(self.mask), incoming: self.incoming.map(reflect_dir) }
    }

    /// The smaller of the signature and its mirror image, and whether the mirror was taken.
    pub fn canonical(self, w: &Window) -> (Self, bool) {
        let r = self.reflect(w);
        if r < self { (r, true) } else { (self, false) }
    }

    pub fn is_symmetric(self, w: &Window) -> bool {
        self.reflect(w) == self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepMode {
    /// Next head one of the three strictly x-increasing neighbors.
    Forward3,
    /// Next head any free neighbor.
    All6,
    /// Last backbone vertex: no next head.
    Terminal,
}

/// Next-head direction (index into `GRID_DIRS`) and the cells of the current
/// head's children, each with its grandchildren's cells, all relative to the head.
/// Children appear in descending order of grandchild count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub dir: Option<u8>,
    pub children: Vec<(GridCoord, Vec<GridCoord>)>,
}

impl Placement {
    fn reflect(&self) -> Placement {
        Placement {
            dir: self.dir.map(reflect_dir),
            children: self.children.iter().map(|(c, gs)| (c.reflect(), gs.iter().map(|g| g.reflect()).collect())).collect(),
        }
    }

    fn key(&self) -> (Option<u8>, Vec<(usize, GridCoord, Vec<GridCoord>)>) {
        let mut ch: Vec<_> = self
            .children
            .iter()
            .map(|(c, gs)| {
                let mut gs = gs.clone();
                gs.sort();
                (gs.len(), *c, gs)
            })
            .collect();
        ch.sort();
        (self.dir, ch)
    }

    /// Occupancy after this placement: everything of `sig`, the descendants and the next head.
    pub fn occupied(&self, w: &Window, sig: DpSignature) -> u64 {
        let mut m = sig.mask;
        for (c, gs) in &self.children {
            m |= w.bit(*c);
            for g in gs {
                m |= w.bit(*g);
            }
        }
        if let Some(d) = self.dir {
            m |= w.bit(GRID_DIRS[d as usize]);
        }
        m
    }
}

/// Grandchild counts (child degree minus one) of a descendant spec.
fn grandchild_counts(gamma: &[usize]) -> Vec<usize> {
    gamma.iter().map(|&d| d.saturating_sub(1)).collect()
}

struct Enumerator<'a> {
    w: &'a Window,
    counts: Vec<usize>,
    out: Vec<Placement>,
}

impl Enumerator<'_> {
    fn children(&mut self, k: usize, used: u64, prev_slot: usize, dir: Option<u8>, acc: &mut Vec<(GridCoord, Vec<GridCoord>)>) {
        if k == self.counts.len() {
            self.out.push(Placement { dir, children: acc.clone() });
            return;
        }
        let first = if k > 0 && self.counts[k] == self.counts[k - 1] { prev_slot + 1 } else { 0 };
        for j in first..6 {
            let cell = GRID_DIRS[j];
            let b = self.w.bit(cell);
            if used & b != 0 {
                continue;
            }
            let free: Vec<GridCoord> = GRID_DIRS
                .iter()
                .map(|&d| cell + d)
                .filter(|&c| self.w.index(c).is_some_and(|i| used & (1u64 << i) == 0))
                .collect();
            let need = self.counts[k];
            if free.len() < need {
                continue;
            }
            for combo in combinations(free.len(), need) {
                let gs: Vec<GridCoord> = combo.iter().map(|&t| free[t]).collect();
                let gmask = gs.iter().fold(0u64, |m, &g| m | self.w.bit(g));
                acc.push((cell, gs));
                self.children(k + 1, used | b | gmask, j, dir, acc);
                acc.pop();
            }
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Every way to choose the next head (per `mode`) and to place the head's
/// children and grandchildren on free cells. `gamma` lists child degrees in
/// descending order.
pub fn enumerate_placements(w: &Window, sig: DpSignature, gamma: &[usize], mode: StepMode) -> Vec<Placement> {
    let counts = grandchild_counts(gamma);
    if counts.len() > 6 || counts.iter().any(|&c| c > 5) {
        return Vec::new();
    }
    let dirs: &[usize] = match mode {
        StepMode::Forward3 => &FORWARD_DIRS,
        StepMode::All6 => &ALL_DIRS,
        StepMode::Terminal => &[],
    };
    let mut e = Enumerator { w, counts, out: Vec::new() };
    let mut acc = Vec::new();
    if mode == StepMode::Terminal {
        e.children(0, sig.mask, 0, None, &mut acc);
    } else {
        for &d in dirs {
            let b = w.bit(GRID_DIRS[d]);
            if sig.mask & b == 0 {
                e.children(0, sig.mask | b, 0, Some(d as u8), &mut acc);
            }
        }
    }
    e.out
}

/// Drops one placement of every mirror-image pair when `sig` is mirror symmetric;
/// otherwise returns the list unchanged.
pub fn mirror_classes(w: &Window, sig: DpSignature, mut placements: Vec<Placement>) -> Vec<Placement> {
    if sig.is_symmetric(w) {
        placements.retain(|p| p.key() <= p.reflect().key());
    }
    placements
}

/// Descendant spec of a backbone vertex: child degrees, largest first.
pub fn gamma_of(g: &Graph, tc: &TreeClass, v: usize) -> Result<Vec<usize>> {
    let i = tc.backbone_index(v).ok_or_else(|| Error::Precondition(format!("vertex {v} is not on the backbone")))?;
    let mut gamma: Vec<usize> = tc.descendants[i].children.iter().map(|c| g.degree(c.id)).collect();
    gamma.sort_unstable_by(|a, b| b.cmp(a));
    Ok(gamma)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DpOutcome {
    pub yes: bool,
    pub witness: Option<GridLayout>,
    /// Number of canonical signatures kept before each backbone vertex.
    pub frontier_sizes: Vec<usize>,
}

#[derive(Clone, Copy)]
struct Rec {
    parent: u32,
    dir: u8,
    reflected: bool,
    /// Occupancy after the parent's placement, before moving the head.
    placed: u64,
}

fn expect_lobster(tc: &TreeClass) -> Result<()> {
    match tc.kind {
        TreeKind::Caterpillar | TreeKind::Lobster => Ok(()),
        k => Err(Error::Precondition(format!("expected a caterpillar or lobster, got {}", k.as_str()))),
    }
}

/// Distinct occupancies reachable by hanging children with grandchild counts
/// `counts` (descending) off the head, in first-found order.
fn occupancy_masks(w: &Window, used: u64, counts: &[usize]) -> Vec<u64> {
    struct Walk<'a> {
        w: &'a Window,
        counts: &'a [usize],
        seen: HashSet<(usize, u64, usize)>,
        found: HashSet<u64>,
        out: Vec<u64>,
    }
    impl Walk<'_> {
        fn go(&mut self, k: usize, used: u64, prev: usize) {
            let tied = k > 0 && k < self.counts.len() && self.counts[k] == self.counts[k - 1];
            if !self.seen.insert((k, used, if tied { prev } else { 0 })) {
                return;
            }
            if k == self.counts.len() {
                if self.found.insert(used) {
                    self.out.push(used);
                }
                return;
            }
            let need = self.counts[k];
            for j in if tied { prev + 1 } else { 0 }..6 {
                let cell = GRID_DIRS[j];
                let b = self.w.bit(cell);
                if used & b != 0 {
                    continue;
                }
                let free: Vec<u64> = GRID_DIRS
                    .iter()
                    .filter_map(|&d| self.w.index(cell + d))
                    .map(|i| 1u64 << i)
                    .filter(|&m| used & m == 0)
                    .collect();
                if free.len() < need {
                    continue;
                }
                for combo in combinations(free.len(), need) {
                    let gm = combo.iter().fold(0u64, |m, &t| m | free[t]);
                    self.go(k + 1, used | b | gm, j);
                }
            }
        }
    }
    if counts.len() > 6 || counts.iter().any(|&c| c > 5) {
        return Vec::new();
    }
    let mut walk = Walk { w, counts, seen: HashSet::new(), found: HashSet::new(), out: Vec::new() };
    walk.go(0, used, 0);
    walk.out
}

type Frontier = (Vec<DpSignature>, Vec<Rec>);

/// Indices of the states whose occupancy contains no other state's occupancy,
/// in their original order; among equal masks the first survives. A state
/// with more occupied cells can never do anything a subset state cannot.
fn undominated(states: &[DpSignature]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..states.len()).collect();
    idx.sort_by_key(|&i| (states[i].mask.count_ones(), i));
    let mut kept: Vec<usize> = Vec::new();
    for i in idx {
        let m = states[i].mask;
        if !kept.iter().any(|&k| states[k].mask & !m == 0) {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

/// Decides whether the lobster has a weak unit disk contact representation on
/// the triangular grid with strictly x-monotone spine, returning one if so.
pub fn dp_recognize(g: &Graph, tc: &TreeClass) -> Result<DpOutcome> {
    dp_recognize_with(g, tc, Window::get())
}

/// [`dp_recognize`] over a caller-chosen window.
///
/// States are canonical signatures; a placement matters only through the
/// occupancy it leaves, so successors are generated from distinct
/// occupancies and a concrete placement is recovered only for the witness.
pub fn dp_recognize_with(g: &Graph, tc: &TreeClass, w: &Window) -> Result<DpOutcome> {
    expect_lobster(tc)?;
    let m = tc.backbone.len();
    // children in the order placements list them: most grandchildren first, then by id
    let ordered: Vec<Vec<(usize, Vec<usize>)>> = tc
        .descendants
        .iter()
        .map(|d| {
            let mut ch: Vec<(usize, Vec<usize>)> = d.children.iter().map(|c| (c.id, c.grandchildren.clone())).collect();
            ch.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
            ch
        })
        .collect();
    let gammas: Vec<Vec<usize>> = ordered.iter().map(|ch| ch.iter().map(|(_, gs)| gs.len() + 1).collect()).collect();

    let mut levels: Vec<Vec<DpSignature>> = vec![vec![DpSignature::start(w)]];
    let mut recs: Vec<Vec<Rec>> = vec![vec![Rec { parent: 0, dir: 0, reflected: false, placed: 0 }]];
    let mut finish: Option<usize> = None;
    // long inputs repeat the same (occupancy, children) pairs over and over
    let mut memo: HashMap<Vec<usize>, FxHashMap<u64, Vec<u64>>> = HashMap::new();
    // and whole frontiers, once the spine settles into a periodic pattern
    let mut step_memo: FxHashMap<(Vec<usize>, Vec<DpSignature>), Frontier> = FxHashMap::default();
    for i in 0..m {
        let counts = grandchild_counts(&gammas[i]);
        let masks = memo.entry(counts.clone()).or_default();
        if i + 1 == m {
            finish = levels[i]
                .iter()
                .position(|&sig| !masks.entry(sig.mask).or_insert_with(|| occupancy_masks(w, sig.mask, &counts)).is_empty());
            break;
        }
        let key = (counts.clone(), levels[i].clone());
        let (next, next_recs) = match step_memo.get(&key) {
            Some(hit) => hit.clone(),
            None => {
                let mut next: Vec<DpSignature> = Vec::new();
                let mut next_recs: Vec<Rec> = Vec::new();
                let mut seen: FxHashSet<DpSignature> = FxHashSet::default();
                for (p, &sig) in levels[i].iter().enumerate() {
                    for &d in &FORWARD_DIRS {
                        let hb = w.bit(GRID_DIRS[d]);
                        if sig.mask & hb != 0 {
                            continue;
                        }
                        let used = sig.mask | hb;
                        for &placed in masks.entry(used).or_insert_with(|| occupancy_masks(w, used, &counts)).iter() {
                            let moved = DpSignature { mask: w.advance(placed, d), incoming: Some(d as u8) };
                            let (canon, reflected) = moved.canonical(w);
                            if seen.insert(canon) {
                                next.push(canon);
                                next_recs.push(Rec { parent: p as u32, dir: d as u8, reflected, placed });
                            }
                        }
                    }
                }
                let keep = undominated(&next);
                next = keep.iter().map(|&k| next[k]).collect();
                next_recs = keep.iter().map(|&k| next_recs[k]).collect();
                step_memo.insert(key, (next.clone(), next_recs.clone()));
                (next, next_recs)
            }
        };
        if next.is_empty() {
            let mut sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
            sizes.push(0);
            return Ok(DpOutcome { yes: false, witness: None, frontier_sizes: sizes });
        }
        levels.push(next);
        recs.push(next_recs);
    }
    let frontier_sizes = levels.iter().map(Vec::len).collect();
    let Some(last) = finish else {
        return Ok(DpOutcome { yes: false, witness: None, frontier_sizes });
    };

    // state index per level, walking back from the end
    let mut chain = vec![last];
    for i in (1..m).rev() {
        chain.push(recs[i][chain[chain.len() - 1]].parent as usize);
    }
    chain.reverse();

    let mut layout = GridLayout::with_len(g.n());
    let mut head = GridCoord::new(0, 0);
    let mut flipped = false;
    for i in 0..m {
        let s = chain[i];
        if i > 0 {
            flipped ^= recs[i][s].reflected;
        }
        let sig = levels[i][s];
        let pl = if i + 1 == m {
            enumerate_placements(w, sig, &gammas[i], StepMode::Terminal).swap_remove(0)
        } else {
            let r = recs[i + 1][chain[i + 1]];
            placement_with(w, sig, &gammas[i], r.dir as usize, r.placed).expect("recorded occupancy is reachable")
        };
        let to_abs = |c: GridCoord| head + if flipped { c.reflect() } else { c };
        layout.set(tc.backbone[i], head);
        for ((child, gids), (cell, gcells)) in ordered[i].iter().zip(&pl.children) {
            layout.set(*child, to_abs(*cell));
            for (&gid, &gc) in gids.iter().zip(gcells) {
                layout.set(gid, to_abs(gc));
            }
        }
        if let Some(d) = pl.dir {
            head = to_abs(GRID_DIRS[d as usize]);
        }
    }
    Ok(DpOutcome { yes: true, witness: Some(layout), frontier_sizes })
}

/// First placement stepping in direction `d` that leaves occupancy `placed`.
fn placement_with(w: &Window, sig: DpSignature, gamma: &[usize], d: usize, placed: u64) -> Option<Placement> {
    let hb = w.bit(GRID_DIRS[d]);
    let mut e = Enumerator { w, counts: grandchild_counts(gamma), out: Vec::new() };
    e.children(0, sig.mask | hb, 0, Some(d as u8), &mut Vec::new());
    e.out.into_iter().find(|p| p.occupied(w, sig) == placed)
}

/// Occupied cells of a signature, for reports.
pub fn signature_cells(w: &Window, sig: DpSignature) -> Vec<GridCoord> {
    bits(sig.mask).map(|i| w.cells[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::verify_weak_udc_grid;
    use crate::tree::classify_tree;

    #[test]
    fn empty_window_counts() {
        let w = Window::get();
        let s = DpSignature::start(w);
        let bare = enumerate_placements(w, s, &[], StepMode::Forward3);
        assert_eq!(bare.len(), 3);
        assert_eq!(mirror_classes(w, s, bare).len(), 2);
        // one leaf child: 3 steps times 5 free cells; mirror classes 3 + 5
        let one = enumerate_placements(w, s, &[1], StepMode::Forward3);
        assert_eq!(one.len(), 15);
        assert_eq!(mirror_classes(w, s, one).len(), 8);
        let full = DpSignature { mask: (1u64 << w.cells.len()) - 1, incoming: None };
        assert!(enumerate_placements(w, full, &[], StepMode::Forward3).is_empty());
    }

    #[test]
    fn asymmetric_signature_keeps_all_steps() {
        let w = Window::get();
        let s = DpSignature { mask: w.bit(GridCoord::new(0, 0)) | w.bit(GridCoord::new(-1, 0)), incoming: Some(0) };
        assert!(s.is_symmetric(w));
        let s2 = DpSignature { mask: w.bit(GridCoord::new(0, 0)) | w.bit(GridCoord::new(0, -1)), incoming: Some(1) };
        assert!(!s2.is_symmetric(w));
        assert_eq!(mirror_classes(w, s2, enumerate_placements(w, s2, &[], StepMode::Forward3)).len(), 3);
    }

    #[test]
    fn gamma_sorted_descending() {
        // backbone 0-1-2; vertex 1 has children 3 (deg 3), 4 (deg 1), 5 (deg 2)
        let g = Graph::from_edges(
            13,
            &[(0, 1), (1, 2), (1, 3), (3, 6), (3, 7), (1, 4), (1, 5), (5, 8), (0, 9), (9, 10), (2, 11), (11, 12)],
        );
        let tc = classify_tree(&g);
        assert_eq!(tc.kind, TreeKind::Lobster);
        assert_eq!(gamma_of(&g, &tc, 1).unwrap(), vec![3, 2, 1]);
        assert!(gamma_of(&g, &tc, 6).is_err());
    }

    #[test]
    fn witness_is_valid_and_monotone() {
        let g = Graph::from_edges(
            13,
            &[(0, 1), (1, 2), (1, 3), (3, 6), (3, 7), (1, 4), (1, 5), (5, 8), (0, 9), (9, 10), (2, 11), (11, 12)],
        );
        let tc = classify_tree(&g);
        let out = dp_recognize(&g, &tc).unwrap();
        assert!(out.yes);
        let l = out.witness.unwrap();
        assert!(verify_weak_udc_grid(&g, &l).unwrap().ok);
        let xs: Vec<i32> = tc.backbone.iter().map(|&b| l.get(b).unwrap().x2()).collect();
        assert!(xs.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn degree_seven_child_is_rejected() {
        // backbone 0-1-2 with child 3 of vertex 1 carrying six grandchildren
        let mut edges = vec![(0, 1), (1, 2), (1, 3), (0, 10), (10, 11), (2, 12), (12, 13)];
        for k in 4..10 {
            edges.push((3, k));
        }
        let g = Graph::from_edges(14, &edges);
        let tc = classify_tree(&g);
        assert_eq!(tc.kind, TreeKind::Lobster);
        assert!(!dp_recognize(&g, &tc).unwrap().yes);
    }
}
