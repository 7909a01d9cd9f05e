//! Sorting algorithms. Each returns a [`SortOutcome`] whose trace replays to
//! the sorted stack.
//!
//! The average-case sorters work on a contracted copy of the stack in which
//! every pancake stands for a run of real pancakes. A flip of the top `k`
//! contracted pancakes is the real flip covering those runs.

mod burnt_average;
mod endgame;
mod greedy;
mod unburnt_random;

use serde::{Deserialize, Serialize};

use crate::stack::{flip_mixed, flip_signed, MixedPancake};
use crate::trace::FlipTrace;

pub use burnt_average::sort_burnt_average;
pub use endgame::endgame_finish;
pub(crate) use endgame::finish_runs;
pub use greedy::sort_greedy_lookahead;
pub(crate) use unburnt_random::branch_outcomes as unburnt_branch_outcomes;
pub use unburnt_random::{
    expected_flips_unburnt, sort_unburnt_randomized, sort_unburnt_with_coins, CoinSource, RngCoins,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortOutcome {
    pub trace: FlipTrace,
    pub flips_used: usize,
    /// Main-loop iterations; each one joins two pancakes.
    pub iterations: usize,
}

impl SortOutcome {
    pub(crate) fn new(trace: FlipTrace, iterations: usize) -> Self {
        SortOutcome {
            flips_used: trace.len(),
            trace,
            iterations,
        }
    }
}

pub(crate) trait Pancake: Copy {
    fn flip_prefix(slice: &mut [Self], k: usize);
    /// A one-pancake flip of this pancake changes nothing.
    fn inert(self) -> bool;
}

impl Pancake for i32 {
    fn flip_prefix(slice: &mut [Self], k: usize) {
        flip_signed(slice, k)
    }

    fn inert(self) -> bool {
        false
    }
}

impl Pancake for MixedPancake {
    fn flip_prefix(slice: &mut [Self], k: usize) {
        flip_mixed(slice, k)
    }

    fn inert(self) -> bool {
        !self.orientation.is_burnt()
    }
}

/// A real stack together with its contracted view.
pub(crate) struct Tracker<T: Pancake> {
    pub real: Vec<T>,
    pub cont: Vec<T>,
    /// Number of real pancakes behind each contracted one.
    pub lens: Vec<usize>,
    pub flips: Vec<usize>,
}

impl<T: Pancake> Tracker<T> {
    pub fn new(real: Vec<T>) -> Self {
        Tracker {
            cont: real.clone(),
            lens: vec![1; real.len()],
            real,
            flips: Vec::new(),
        }
    }

    /// Flip the top `k` contracted pancakes and record the real flip.
    pub fn flip(&mut self, k: usize) {
        if k == 0 {
            return;
        }
        let r: usize = self.lens[..k].iter().sum();
        T::flip_prefix(&mut self.cont, k);
        self.lens[..k].reverse();
        if r == 1 && self.real[0].inert() {
            return;
        }
        T::flip_prefix(&mut self.real, r);
        self.flips.push(r);
    }

    /// Merge the contracted pancakes at 0-based positions `p` and `p + 1`.
    pub fn merge_lens(&mut self, p: usize) {
        self.lens[p] += self.lens[p + 1];
        self.lens.remove(p + 1);
    }
}

/// 1-based position of the entry satisfying `pred`.
pub(crate) fn position<T>(v: &[T], pred: impl Fn(&T) -> bool) -> usize {
    v.iter().position(pred).expect("label present") + 1
}
