//! Layout counts on the lobster fixtures. The frozen numbers were first
//! reproduced by the naive count below: enumerate every placement with the
//! same pins, then average fixed points over the symmetry group.

use std::collections::{HashSet, VecDeque};
use std::path::PathBuf;

use diskrep::geometry::{verify_weak_udc_grid, GridCoord, GRID_DIRS};
use diskrep::graph::parse_graph;
use diskrep::lobster::{brute_force_enumerate, BruteOptions};
use diskrep::{classify_tree, Graph};

const FROZEN: [(&str, u64); 3] = [("lobster-a", 376_112), ("lobster-b", 1_708_200), ("lobster-c", 93_024)];

fn fixture(name: &str) -> Graph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.txt"));
    parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Orbit count by Burnside over the pins' stabilizer.
fn naive_count(g: &Graph, root: usize, second: Option<usize>) -> u64 {
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut q = VecDeque::from([root]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                order.push(w);
                q.push_back(w);
            }
        }
    }
    let group: Vec<(usize, bool)> = match second {
        Some(_) => vec![(0, false), (0, true)],
        None => (0..6).flat_map(|k| [(k, false), (k, true)]).collect(),
    };
    let mut fixed = vec![0u64; group.len()];
    let mut cell = vec![GridCoord::new(0, 0); g.n()];
    let mut used = HashSet::from([GridCoord::new(0, 0)]);

    fn go(
        i: usize,
        order: &[usize],
        parent: &[usize],
        second: Option<usize>,
        cell: &mut Vec<GridCoord>,
        used: &mut HashSet<GridCoord>,
        group: &[(usize, bool)],
        fixed: &mut [u64],
    ) {
        if i == order.len() {
            for (t, &(k, flip)) in group.iter().enumerate() {
                if order.iter().all(|&v| cell[v].symmetry(k, flip) == cell[v]) {
                    fixed[t] += 1;
                }
            }
            return;
        }
        let v = order[i];
        let options: Vec<GridCoord> = if Some(v) == second {
            vec![GridCoord::new(1, 0)]
        } else {
            GRID_DIRS.iter().map(|&d| cell[parent[v]] + d).collect()
        };
        for c in options {
            if used.insert(c) {
                cell[v] = c;
                go(i + 1, order, parent, second, cell, used, group, fixed);
                used.remove(&c);
            }
        }
    }
    go(1, &order, &parent, second, &mut cell, &mut used, &group, &mut fixed);
    let total: u64 = fixed.iter().sum();
    assert_eq!(total % group.len() as u64, 0);
    total / group.len() as u64
}

#[test]
fn frozen_counts_match_brute_force_and_naive_orbits() {
    for (name, want) in FROZEN {
        let g = fixture(name);
        let tc = classify_tree(&g);
        let r = brute_force_enumerate(&g, &tc, BruteOptions { max_witnesses: 3, ..Default::default() }).unwrap();
        assert_eq!(r.count, want, "{name}");
        for w in &r.witnesses {
            assert!(verify_weak_udc_grid(&g, w).unwrap().ok);
        }
        assert_eq!(naive_count(&g, tc.backbone[0], tc.backbone.get(1).copied()), want, "{name}");
    }
}
