//! Weak unit disk contact layouts of lobsters on the triangular grid.

mod brute;
mod dp;
mod report;
mod window;

pub use brute::{brute_force_enumerate, brute_force_feasible, BruteOptions, BruteResult, DEFAULT_BOUND};
pub use dp::{
    dp_recognize, dp_recognize_with, enumerate_placements, gamma_of, mirror_classes, signature_cells, DpOutcome,
    DpSignature, Placement, StepMode, FORWARD_DIRS,
};
pub use report::*;
pub use window::{Window, WINDOW_REACH};
