//! Occupancy bitmasks over the cells near the current spine head.
//!
//! The window holds every cell `(da, db)` with `|2da + db| <= 4` and
//! `|db| <= 4`, i.e. Euclidean x-offset at most 4 and at most four rows up or
//! down. Cells that were filled earlier and can still collide with a later
//! placement always lie inside this window, because spine steps only move
//! forward and descendants stay within two grid steps of their head.
//!
//! Cells that no later placement can reach are cleared as the head advances,
//! so two histories differing only there share one signature.

use std::sync::OnceLock;

use crate::geometry::{GridCoord, GRID_DIRS};

pub const WINDOW_REACH: i32 = 4;

pub struct Window {
    pub cells: Vec<GridCoord>,
    /// Cells within two steps of the head or of some cell a forward walk can reach.
    pub relevant: u64,
    lookup: Vec<Option<u8>>,
    reflect: Vec<u8>,
    /// `shift[d][i]`: index of cell `i` seen from a head moved by `GRID_DIRS[d]`.
    shift: [Vec<Option<u8>>; 6],
}

const LOOKUP_REACH: i32 = 8;
const SPAN: i32 = 2 * LOOKUP_REACH + 1;

fn slot(c: GridCoord) -> Option<usize> {
    let (a, b) = (c.a + LOOKUP_REACH, c.b + LOOKUP_REACH);
    (0..SPAN).contains(&a).then_some(())?;
    (0..SPAN).contains(&b).then_some((a * SPAN + b) as usize)
}

impl Window {
    /// Cells with `|2a + b| <= reach_x2` and `|b| <= reach_b`.
    pub fn build(reach_x2: i32, reach_b: i32) -> Self {
        let mut cells = Vec::new();
        for b in -reach_b..=reach_b {
            for a in -LOOKUP_REACH..=LOOKUP_REACH {
                let c = GridCoord::new(a, b);
                if c.x2().abs() <= reach_x2 {
                    cells.push(c);
                }
            }
        }
        assert!(cells.len() <= 64, "window too large for a 64-bit mask");
        let mut lookup = vec![None; (SPAN * SPAN) as usize];
        for (i, &c) in cells.iter().enumerate() {
            lookup[slot(c).expect("cell inside lookup table")] = Some(i as u8);
        }
        let find = |c: GridCoord| slot(c).and_then(|s| lookup[s]);
        let reflect = cells.iter().map(|c| find(c.reflect()).expect("window is reflection symmetric")).collect();
        let shift = std::array::from_fn(|d| cells.iter().map(|&c| find(c - GRID_DIRS[d])).collect());
        let reach = reach_x2 + 4;
        let mut relevant = 0u64;
        for (i, &c) in cells.iter().enumerate() {
            let near_cone = (0..=reach).any(|a| {
                (-a..=reach).any(|b| {
                    let h = GridCoord::new(a, b);
                    h.x2() <= reach && h.grid_dist(c) <= 2
                })
            });
            if near_cone {
                relevant |= 1u64 << i;
            }
        }
        Window { cells, relevant, lookup, reflect, shift }
    }

    pub fn get() -> &'static Window {
        static W: OnceLock<Window> = OnceLock::new();
        W.get_or_init(|| Window::build(WINDOW_REACH, WINDOW_REACH))
    }

    pub fn index(&self, c: GridCoord) -> Option<u8> {
        slot(c).and_then(|s| self.lookup[s])
    }

    pub fn bit(&self, c: GridCoord) -> u64 {
        1u64 << self.index(c).expect("cell inside window")
    }

    pub fn reflect_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, i| acc | 1u64 << self.reflect[i])
    }

    /// Re-expresses `mask` relative to a head moved one step in direction `d`.
    pub fn shift_mask(&self, mask: u64, d: usize) -> u64 {
        bits(mask).fold(0, |acc, i| match self.shift[d][i] {
            Some(j) => acc | 1u64 << j,
            None => acc,
        })
    }

    /// Moves the head one step in direction `d` and forgets unreachable cells.
    pub fn advance(&self, mask: u64, d: usize) -> u64 {
        self.shift_mask(mask, d) & self.relevant
    }

    pub fn cells_of(&self, mask: u64) -> Vec<GridCoord> {
        bits(mask).map(|i| self.cells[i]).collect()
    }
}

pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_shape() {
        let w = Window::get();
        assert_eq!(w.cells.len(), 41);
        for (i, &c) in w.cells.iter().enumerate() {
            assert_eq!(w.index(c), Some(i as u8));
        }
        assert_eq!(w.index(GridCoord::new(3, 0)), None);
        let m = w.bit(GridCoord::new(1, 0)) | w.bit(GridCoord::new(0, 1));
        assert_eq!(w.reflect_mask(m), w.bit(GridCoord::new(1, 0)) | w.bit(GridCoord::new(1, -1)));
        assert_eq!(w.reflect_mask(w.reflect_mask(m)), m);
        // moving the head right by one cell moves (1,0) onto the head and out of the mask
        assert_eq!(w.shift_mask(w.bit(GridCoord::new(2, 0)), 0), w.bit(GridCoord::new(1, 0)));
        assert_eq!(w.shift_mask(w.bit(GridCoord::new(-2, 0)), 0), 0);
        assert!(Window::build(6, 4).cells.len() <= 64);
        assert_eq!(w.reflect_mask(w.relevant), w.relevant);
        assert_eq!(w.relevant.count_ones(), 33);
        assert_eq!(w.relevant & w.bit(GridCoord::new(-1, -2)), 0);
        assert_eq!(w.advance(w.bit(GridCoord::new(0, -2)), 0), 0);
    }
}
