//! Greedy sorter with one flip of lookahead, on cyclic adjacencies.
//!
//! Blocks are never broken by a flip that creates an adjacency, so the
//! contracted stack is implicit: a contracted flip is a real flip ending at a
//! block boundary.

use crate::error::{PancakeError, Result};
use crate::stack::{flip_signed, BurntStack, MixedStack};
use crate::structure::{is_adjacent, signed_succ};
use crate::trace::FlipTrace;

use super::{finish_runs, SortOutcome};

struct Board {
    s: Vec<i32>,
    /// `pos[label]` is the 0-based position of that pancake.
    pos: Vec<usize>,
    n: i32,
}

impl Board {
    fn new(s: Vec<i32>) -> Self {
        let mut pos = vec![0; s.len() + 1];
        for (i, x) in s.iter().enumerate() {
            pos[x.unsigned_abs() as usize] = i;
        }
        let n = s.len() as i32;
        Board { s, pos, n }
    }

    fn flip(&mut self, k: usize) {
        flip_signed(&mut self.s, k);
        for (i, x) in self.s[..k].iter().enumerate() {
            self.pos[x.unsigned_abs() as usize] = i;
        }
    }

    fn target(&self, top: i32) -> i32 {
        signed_succ(-top, self.n, true).expect("cyclic successor exists")
    }

    /// The flip that joins the top block to its successor, if any.
    fn creating_flip(&self) -> Option<usize> {
        let target = self.target(self.s[0]);
        let j = self.pos[target.unsigned_abs() as usize];
        (self.s[j] == target).then_some(j)
    }

    fn single_block(&self) -> bool {
        self.s
            .windows(2)
            .all(|w| is_adjacent(w[0], w[1], self.n, true))
    }

    /// Flip sizes ending at a block boundary, smallest first.
    fn boundaries(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.s.len())
            .filter(|&k| k == self.s.len() || !is_adjacent(self.s[k - 1], self.s[k], self.n, true))
    }

    /// Length of the greedy run that follows flip `k0`, without touching the
    /// board: positions are pushed through the pending flips instead.
    fn continuation(&self, k0: usize) -> usize {
        let mut pending = vec![k0];
        loop {
            let (mut p, mut sign) = (0usize, 1);
            for &k in pending.iter().rev() {
                if p < k {
                    p = k - 1 - p;
                    sign = -sign;
                }
            }
            let target = self.target(sign * self.s[p]);
            let mut q = self.pos[target.unsigned_abs() as usize];
            let mut v = self.s[q];
            for &k in &pending {
                if q < k {
                    q = k - 1 - q;
                    v = -v;
                }
            }
            if v != target {
                return pending.len() - 1;
            }
            pending.push(q);
        }
    }
}

pub fn sort_greedy_lookahead(stack: &BurntStack) -> Result<SortOutcome> {
    let mut b = Board::new(stack.entries().to_vec());
    let mut flips = Vec::new();
    let mut iterations = 0;
    while !b.single_block() {
        iterations += 1;
        if iterations > 4 * stack.len() + 8 {
            return Err(PancakeError::Internal(format!(
                "greedy lookahead made no progress on `{stack}`"
            )));
        }
        let k = match b.creating_flip() {
            Some(k) => k,
            None => {
                let mut best = (0, 0);
                for k in b.boundaries() {
                    let len = b.continuation(k);
                    if best.0 == 0 || len > best.1 {
                        best = (k, len);
                    }
                }
                best.0
            }
        };
        b.flip(k);
        flips.push(k);
    }
    let real = MixedStack::from(&BurntStack::from_vec_unchecked(b.s));
    flips.extend(finish_runs(real.entries())?);
    Ok(SortOutcome::new(
        FlipTrace::new(stack.clone().into(), flips),
        iterations,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::{state_count, unrank_burnt};
    use crate::stack::Variant;
    use crate::structure::single_flip_adjacency;

    #[test]
    fn identity_takes_no_flips() {
        for n in 1..8 {
            let out = sort_greedy_lookahead(&BurntStack::identity(n)).unwrap();
            assert_eq!(out.flips_used, 0);
        }
    }

    #[test]
    fn creating_flip_matches_structure() {
        let s = BurntStack::new(vec![2, -3, -1, 4]).unwrap();
        let b = Board::new(s.entries().to_vec());
        assert_eq!(b.creating_flip(), single_flip_adjacency(&s, true));
    }

    #[test]
    fn continuation_matches_replay() {
        let s = BurntStack::new(vec![3, -5, 1, -2, 6, 4]).unwrap();
        let b = Board::new(s.entries().to_vec());
        for k in 1..=6 {
            let mut c = Board::new(s.entries().to_vec());
            c.flip(k);
            let mut len = 0;
            while let Some(j) = c.creating_flip() {
                c.flip(j);
                len += 1;
            }
            assert_eq!(b.continuation(k), len, "k = {k}");
        }
    }

    #[test]
    fn all_small_stacks_sort() {
        for n in 1..=5 {
            for r in 0..state_count(n, Variant::Burnt).unwrap() {
                let s = unrank_burnt(r, n).unwrap();
                let out = sort_greedy_lookahead(&s).unwrap();
                assert!(out.trace.sorts().unwrap(), "{s}");
            }
        }
    }
}
