//! Finishing moves once the contracted stack is down to one or two pancakes.
//!
//! The real stack then splits into a handful of maximal runs of consecutive
//! pancakes. Each run becomes one pancake of a small mixed stack, which is
//! solved optimally by breadth-first search and mapped back to real flips.

use std::collections::{HashMap, VecDeque};

use crate::error::{PancakeError, Result};
use crate::stack::{flip_mixed, BurntStack, MixedPancake, MixedStack, Orientation};
use crate::structure::mixed_pair_adjacent;
use crate::trace::FlipTrace;

/// Runs beyond this many mean the caller did not reduce the stack first.
const MAX_RUNS: usize = 6;

/// Longest finish allowed from a stack that is one cyclic block.
const MAX_FINISH: usize = 4;

struct Runs {
    stack: Vec<MixedPancake>,
    lens: Vec<usize>,
}

fn split_runs(real: &[MixedPancake]) -> Runs {
    let mut heads = Vec::new();
    let mut lens = Vec::new();
    let mut i = 0;
    while i < real.len() {
        let mut j = i;
        while j + 1 < real.len() && mixed_pair_adjacent(real[j], real[j + 1]) {
            j += 1;
        }
        let (first, last) = (real[i], real[j]);
        let orientation = if i == j {
            first.orientation
        } else if first.label < last.label {
            Orientation::Down
        } else {
            Orientation::Up
        };
        heads.push(MixedPancake::new(first.label.min(last.label), orientation));
        lens.push(j - i + 1);
        i = j + 1;
    }
    let mut order: Vec<usize> = (0..heads.len()).collect();
    order.sort_unstable_by_key(|&i| heads[i].label);
    for (label, &i) in order.iter().enumerate() {
        heads[i].label = label as u32 + 1;
    }
    Runs { stack: heads, lens }
}

fn sorted(s: &[MixedPancake]) -> bool {
    MixedStack::from_vec_unchecked(s.to_vec()).is_sorted()
}

/// Shortest flip sequence (in run units) sorting a small mixed stack.
fn solve_small(start: &[MixedPancake]) -> Vec<usize> {
    let mut parent: HashMap<Vec<MixedPancake>, (Vec<MixedPancake>, usize)> = HashMap::new();
    let mut queue = VecDeque::from([start.to_vec()]);
    parent.insert(start.to_vec(), (Vec::new(), 0));
    while let Some(cur) = queue.pop_front() {
        if sorted(&cur) {
            let mut flips = Vec::new();
            let mut s = cur;
            while s != start {
                let (prev, k) = parent[&s].clone();
                flips.push(k);
                s = prev;
            }
            flips.reverse();
            return flips;
        }
        for k in 1..=cur.len() {
            let mut next = cur.clone();
            flip_mixed(&mut next, k);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), (cur.clone(), k));
                queue.push_back(next);
            }
        }
    }
    unreachable!("every mixed stack can be sorted")
}

/// Real flip sizes that sort `real`, optimal over flips that keep runs whole.
pub(crate) fn finish_runs(real: &[MixedPancake]) -> Result<Vec<usize>> {
    let Runs { stack, mut lens } = split_runs(real);
    if stack.len() > MAX_RUNS {
        return Err(PancakeError::Internal(format!(
            "endgame reached with {} runs",
            stack.len()
        )));
    }
    let mut out = Vec::new();
    for k in solve_small(&stack) {
        out.push(lens[..k].iter().sum());
        lens[..k].reverse();
    }
    Ok(out)
}

/// Sort a stack that is a single cyclic block, such as a rotation of `I_n`
/// or its flipped image. At most four flips are needed.
pub fn endgame_finish(stack: &BurntStack) -> Result<FlipTrace> {
    let mixed = MixedStack::from(stack);
    let flips = finish_runs(mixed.entries())?;
    if flips.len() > MAX_FINISH {
        return Err(PancakeError::Internal(format!(
            "`{stack}` needs {} finishing flips",
            flips.len()
        )));
    }
    Ok(FlipTrace::new(stack.clone().into(), flips))
}
