use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::stack::{MixedPancake, MixedStack, Orientation, UnburntStack};
use crate::structure::{contract_mixed_slice, cyclic_renumber_mixed_slice, mixed_pair_adjacent};
use crate::trace::FlipTrace;

use super::{finish_runs, position, SortOutcome, Tracker};

/// Source of the fair coin used when the top pancake is unburnt.
pub trait CoinSource {
    /// `true` picks pancake 3, `false` pancake 1.
    fn coin(&mut self) -> bool;
}

pub struct RngCoins<R>(pub R);

impl<R: Rng> CoinSource for RngCoins<R> {
    fn coin(&mut self) -> bool {
        self.0.gen()
    }
}

/// Randomized unburnt sorter, deterministic in `(stack, seed)`.
pub fn sort_unburnt_randomized(stack: &UnburntStack, seed: u64) -> Result<SortOutcome> {
    sort_unburnt_with_coins(stack, &mut RngCoins(ChaCha8Rng::seed_from_u64(seed)))
}

/// The randomized unburnt sorter with an explicit coin source.
///
/// Joined pancakes become burnt, so the working stack is mixed. Each
/// iteration looks at the top pancake (renumbered to 2) and one of 1 and 3,
/// then joins the two in one to three flips.
pub fn sort_unburnt_with_coins<C: CoinSource + ?Sized>(
    stack: &UnburntStack,
    coins: &mut C,
) -> Result<SortOutcome> {
    let mut t = Tracker::new(MixedStack::from(stack).entries().to_vec());
    let mut iterations = 0;
    if !stack.is_sorted() {
        while t.cont.len() > 2 {
            step(&mut t, coins);
            iterations += 1;
        }
        t.flips.extend(finish_runs(&t.real)?);
    }
    Ok(SortOutcome::new(
        FlipTrace::new(stack.clone().into(), t.flips),
        iterations,
    ))
}

fn step<C: CoinSource + ?Sized>(t: &mut Tracker<MixedPancake>, coins: &mut C) {
    use Orientation::{Down, Unburnt, Up};

    cyclic_renumber_mixed_slice(&mut t.cont);
    let c = &t.cont;
    let top = c[0].orientation;
    let peek_three = match top {
        Unburnt => coins.coin(),
        Down => false,
        Up => true,
    };
    let pos = if peek_three {
        position(c, |x| x.label == 3)
    } else {
        position(c, |x| x.label == 1)
    };
    let seen = c[pos - 1].orientation;
    // the partner already has the orientation a single flip needs
    let direct = seen == Unburnt || (seen == Down) == peek_three;
    let flips: &[usize] = match (top, direct) {
        (_, true) => &[pos - 1],
        (Unburnt, false) => &[pos, pos - 1],
        (_, false) => &[1, pos, pos - 1],
    };
    for &k in flips {
        t.flip(k);
    }
    let p = pos - 2;
    debug_assert!(mixed_pair_adjacent(t.cont[p], t.cont[p + 1]));
    contract_mixed_slice(&mut t.cont, p);
    t.merge_lens(p);
}

struct ScriptedCoins {
    script: Vec<bool>,
    used: usize,
}

impl CoinSource for ScriptedCoins {
    fn coin(&mut self) -> bool {
        if self.used == self.script.len() {
            self.script.push(false);
        }
        self.used += 1;
        self.script[self.used - 1]
    }
}

/// Every coin branch of the sorter on `stack`, as (probability, flips).
pub(crate) fn branch_outcomes(stack: &UnburntStack) -> Result<Vec<(f64, usize)>> {
    let mut out = Vec::new();
    let mut coins = ScriptedCoins {
        script: Vec::new(),
        used: 0,
    };
    loop {
        coins.used = 0;
        let flips = sort_unburnt_with_coins(stack, &mut coins)?.flips_used;
        debug_assert_eq!(coins.used, coins.script.len());
        out.push((0.5f64.powi(coins.used as i32), flips));
        while coins.script.last() == Some(&true) {
            coins.script.pop();
        }
        match coins.script.last_mut() {
            Some(last) => *last = true,
            None => break,
        }
    }
    Ok(out)
}

/// Expected flip count of the randomized sorter, averaged over its coins.
pub fn expected_flips_unburnt(stack: &UnburntStack) -> Result<f64> {
    Ok(branch_outcomes(stack)?
        .iter()
        .map(|&(w, f)| w * f as f64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::{factorial, unrank_unburnt};

    #[test]
    fn sorted_input_is_free() {
        let out = sort_unburnt_randomized(&UnburntStack::identity(7), 3).unwrap();
        assert_eq!(out.flips_used, 0);
    }

    #[test]
    fn all_small_stacks_sort_on_every_branch() {
        for n in 1..=5 {
            for r in 0..factorial(n) {
                let s = unrank_unburnt(r, n).unwrap();
                let branches = branch_outcomes(&s).unwrap();
                let total: f64 = branches.iter().map(|b| b.0).sum();
                assert!((total - 1.0).abs() < 1e-12);
                for seed in 0..4 {
                    let out = sort_unburnt_randomized(&s, seed).unwrap();
                    assert!(out.trace.sorts().unwrap(), "{s}");
                    assert!(out.trace.flips.iter().all(|&k| k >= 2));
                }
            }
        }
    }

    #[test]
    fn seed_determinism() {
        let s = UnburntStack::new(vec![5, 2, 8, 1, 7, 3, 6, 4]).unwrap();
        let a = sort_unburnt_randomized(&s, 11).unwrap();
        let b = sort_unburnt_randomized(&s, 11).unwrap();
        assert_eq!(a, b);
    }
}
