//! Exhaustive check that restricting spine steps to the three x-increasing
//! directions never loses a placement that some unrestricted step allows.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::dp::{DpSignature, FORWARD_DIRS};
use super::window::Window;
use crate::geometry::GRID_DIRS;

const BACKWARD_DIRS: [usize; 3] = [2, 3, 4];

/// Bits of the six head neighbors and of each neighbor's own six neighbors.
struct Slots {
    child: [u64; 6],
    around: [[u64; 6]; 6],
}

impl Slots {
    fn new(w: &Window) -> Self {
        let child = std::array::from_fn(|j| w.bit(GRID_DIRS[j]));
        let around = std::array::from_fn(|j| std::array::from_fn(|k| w.bit(GRID_DIRS[j] + GRID_DIRS[k])));
        Slots { child, around }
    }

    /// Whether children with grandchild counts `counts` (descending) fit around the head.
    fn fits(&self, counts: &[usize], k: usize, used: u64, prev: usize) -> bool {
        if k == counts.len() {
            return true;
        }
        let need = counts[k];
        let first = if k > 0 && counts[k - 1] == need { prev + 1 } else { 0 };
        for j in first..6 {
            if used & self.child[j] != 0 {
                continue;
            }
            let free: Vec<u64> = self.around[j].iter().copied().filter(|&b| used & b == 0).collect();
            if free.len() < need {
                continue;
            }
            for sub in 0u32..(1 << free.len()) {
                if sub.count_ones() as usize != need {
                    continue;
                }
                let gm = (0..free.len()).filter(|&t| sub >> t & 1 == 1).fold(0, |m, t| m | free[t]);
                if self.fits(counts, k + 1, used | self.child[j] | gm, j) {
                    return true;
                }
            }
        }
        false
    }

    fn realizable(&self, sig: DpSignature, counts: &[usize], dirs: &[usize]) -> bool {
        dirs.iter().any(|&d| {
            let hb = self.child[d];
            sig.mask & hb == 0 && self.fits(counts, 0, sig.mask | hb, 0)
        })
    }
}

/// Union masks of every way to hang children and grandchildren off the head,
/// given occupancy `used` (next head included).
fn descendant_masks(slots: &Slots, used: u64) -> Vec<u64> {
    fn rec(s: &Slots, j: usize, used: u64, seen: &mut HashSet<(usize, u64)>, out: &mut Vec<u64>) {
        if !seen.insert((j, used)) {
            return;
        }
        if j == 6 {
            out.push(used);
            return;
        }
        rec(s, j + 1, used, seen, out);
        if used & s.child[j] != 0 {
            return;
        }
        let free: Vec<u64> = s.around[j].iter().copied().filter(|&b| used & b == 0).collect();
        for sub in 0u32..(1 << free.len()) {
            let gm = (0..free.len()).filter(|&t| sub >> t & 1 == 1).fold(0, |m, t| m | free[t]);
            rec(s, j + 1, used | s.child[j] | gm, seen, out);
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    rec(slots, 0, used, &mut seen, &mut out);
    out
}

/// Every canonical signature the forward-step DP can reach from the empty
/// window, over all descendant shapes a head can carry. Sorted.
pub fn reachable_signatures(w: &Window) -> Vec<DpSignature> {
    let slots = Slots::new(w);
    let start = DpSignature::start(w);
    let mut seen: HashSet<DpSignature> = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(sig) = stack.pop() {
        for &d in &FORWARD_DIRS {
            let hb = slots.child[d];
            if sig.mask & hb != 0 {
                continue;
            }
            for m in descendant_masks(&slots, sig.mask | hb) {
                let next = DpSignature { mask: w.advance(m, d), incoming: Some(d as u8) }.canonical(w).0;
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    let mut v: Vec<DpSignature> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// All descendant specs with at most `max_children` children of degree at
/// most `max_degree`, each list descending. Ordered by length, then by total
/// degree, so every spec comes after the specs it dominates.
pub fn gamma_family(max_children: usize, max_degree: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, len: usize, hi: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for d in (1..=hi).rev() {
            cur.push(d);
            rec(cur, len, d, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 0..=max_children {
        rec(&mut Vec::new(), len, max_degree, &mut out);
    }
    out.sort_by_key(|g| (g.len(), g.iter().sum::<usize>()));
    out
}

/// Stable identifier of a case: leading 16 hex digits of a SHA-256 over the
/// signature and the descendant spec.
pub fn case_id(sig: DpSignature, gamma: &[usize]) -> String {
    let mut h = Sha256::new();
    h.update(sig.mask.to_le_bytes());
    h.update([sig.incoming.map_or(255, |d| d)]);
    h.update(gamma.iter().map(|&d| d as u8).collect::<Vec<u8>>());
    h.finalize()[..8].iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionCase {
    pub id: String,
    pub mask: u64,
    pub incoming: Option<u8>,
    pub gamma: Vec<usize>,
    pub realizable6: bool,
    pub realizable3: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub max_children: usize,
    pub max_degree: usize,
    /// Cases listed in full, taken in signature-then-spec order.
    pub list_limit: usize,
    pub jobs: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { max_children: 5, max_degree: 6, list_limit: 0, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionReport {
    pub window_cells: usize,
    pub signatures: usize,
    pub gammas: usize,
    pub total_cases: u64,
    pub realizable6: u64,
    pub realizable3: u64,
    /// Reachable signatures whose three forward cells are all occupied.
    pub forward_blocked: usize,
    pub counterexamples: Vec<InductionCase>,
    pub cases: Vec<InductionCase>,
}

#[derive(Default)]
struct Tally {
    r6: u64,
    r3: u64,
    bad: Vec<(usize, usize)>,
}

/// Realizability of every spec on one signature. Both realizable sets are
/// closed under removing a child or a grandchild, so a spec whose parent
/// fails is skipped without search.
fn check_signature(slots: &Slots, sig: DpSignature, gammas: &[Vec<usize>], parents: &[Vec<usize>]) -> Vec<(bool, bool)> {
    let mut res: Vec<(bool, bool)> = Vec::with_capacity(gammas.len());
    for (i, g) in gammas.iter().enumerate() {
        let counts: Vec<usize> = g.iter().map(|&d| d - 1).collect();
        let r3 = parents[i].iter().all(|&p| res[p].1) && slots.realizable(sig, &counts, &FORWARD_DIRS);
        let r6 = r3 || (parents[i].iter().all(|&p| res[p].0) && slots.realizable(sig, &counts, &BACKWARD_DIRS));
        res.push((r6, r3));
    }
    res
}

fn parent_indices(gammas: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let index: HashMap<&Vec<usize>, usize> = gammas.iter().enumerate().map(|(i, g)| (g, i)).collect();
    gammas
        .iter()
        .map(|g| {
            let mut ps: Vec<usize> = Vec::new();
            for t in 0..g.len() {
                let mut p = g.clone();
                if p[t] == 1 {
                    p.remove(t);
                } else {
                    p[t] -= 1;
                    p.sort_unstable_by(|a, b| b.cmp(a));
                }
                let pi = index[&p];
                if !ps.contains(&pi) {
                    ps.push(pi);
                }
            }
            ps
        })
        .collect()
}

/// Checks every reachable signature against every descendant spec: whenever
/// some spine step in any of the six directions admits the spec, one of the
/// three forward steps must admit it as well.
pub fn induction_case_report(opts: &ReportOptions) -> InductionReport {
    let w = Window::get();
    let slots = Slots::new(w);
    let sigs = reachable_signatures(w);
    let gammas = gamma_family(opts.max_children, opts.max_degree);
    let parents = parent_indices(&gammas);

    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build().expect("thread pool");
    let tallies: Vec<Tally> = pool.install(|| {
        sigs.par_chunks(1024)
            .enumerate()
            .map(|(c, chunk)| {
                let mut t = Tally::default();
                for (k, &sig) in chunk.iter().enumerate() {
                    for (gi, (r6, r3)) in check_signature(&slots, sig, &gammas, &parents).into_iter().enumerate() {
                        t.r6 += u64::from(r6);
                        t.r3 += u64::from(r3);
                        if r6 && !r3 {
                            t.bad.push((c * 1024 + k, gi));
                        }
                    }
                }
                t
            })
            .collect()
    });

    let case = |si: usize, gi: usize, r6: bool, r3: bool| {
        let sig = sigs[si];
        InductionCase {
            id: case_id(sig, &gammas[gi]),
            mask: sig.mask,
            incoming: sig.incoming,
            gamma: gammas[gi].clone(),
            realizable6: r6,
            realizable3: r3,
        }
    };
    let mut counterexamples: Vec<InductionCase> =
        tallies.iter().flat_map(|t| t.bad.iter()).map(|&(si, gi)| case(si, gi, true, false)).collect();
    counterexamples.sort_by(|a, b| a.id.cmp(&b.id));

    let mut cases = Vec::new();
    for (si, &sig) in sigs.iter().enumerate() {
        if cases.len() >= opts.list_limit {
            break;
        }
        for (gi, (r6, r3)) in check_signature(&slots, sig, &gammas, &parents).into_iter().enumerate() {
            if cases.len() < opts.list_limit {
                cases.push(case(si, gi, r6, r3));
            }
        }
    }
    cases.sort_by(|a, b| a.id.cmp(&b.id));

    let forward_blocked =
        sigs.iter().filter(|s| FORWARD_DIRS.iter().all(|&d| s.mask & slots.child[d] != 0)).count();
    InductionReport {
        window_cells: w.cells.len(),
        signatures: sigs.len(),
        gammas: gammas.len(),
        total_cases: (sigs.len() * gammas.len()) as u64,
        realizable6: tallies.iter().map(|t| t.r6).sum(),
        realizable3: tallies.iter().map(|t| t.r3).sum(),
        forward_blocked,
        counterexamples,
        cases,
    }
}

impl InductionReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "window cells: {}", self.window_cells);
        let _ = writeln!(s, "reachable signatures: {}", self.signatures);
        let _ = writeln!(s, "descendant specs: {}", self.gammas);
        let _ = writeln!(s, "total cases: {}", self.total_cases);
        let _ = writeln!(s, "realizable with six directions: {}", self.realizable6);
        let _ = writeln!(s, "realizable with three directions: {}", self.realizable3);
        let _ = writeln!(s, "forward-blocked signatures: {}", self.forward_blocked);
        for c in &self.cases {
            let _ = writeln!(
                s,
                "case {} mask={:#x} incoming={} gamma={:?} r6={} r3={}",
                c.id,
                c.mask,
                c.incoming.map_or("-".into(), |d| d.to_string()),
                c.gamma,
                c.realizable6,
                c.realizable3
            );
        }
        for c in &self.counterexamples {
            let _ = writeln!(s, "counterexample {} mask={:#x} gamma={:?}", c.id, c.mask, c.gamma);
        }
        let _ = writeln!(s, "counterexamples: {}", self.counterexamples.len());
        s
    }
}
