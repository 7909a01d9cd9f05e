use crate::error::Result;
use crate::stack::{BurntStack, MixedStack};
use crate::structure::{contract_slice, cyclic_renumber_slice};
use crate::trace::FlipTrace;

use super::{finish_runs, position, SortOutcome, Tracker};

/// Average-case burnt sorter: every iteration joins pancake 2 (after cyclic
/// renumbering) to pancake 1 or 3 in one, two or four flips.
///
/// Adjacencies already present in the input are left alone; only those the
/// algorithm creates are contracted.
pub fn sort_burnt_average(stack: &BurntStack) -> Result<SortOutcome> {
    let mut t = Tracker::new(stack.entries().to_vec());
    let mut iterations = 0;
    if !stack.is_sorted() {
        while t.cont.len() > 2 {
            step(&mut t);
            iterations += 1;
        }
        let real = MixedStack::from(&BurntStack::from_vec_unchecked(t.real.clone()));
        t.flips.extend(finish_runs(real.entries())?);
    }
    Ok(SortOutcome::new(
        FlipTrace::new(stack.clone().into(), t.flips),
        iterations,
    ))
}

fn join(t: &mut Tracker<i32>, flips: &[usize]) {
    for &k in flips {
        t.flip(k);
    }
    // the last flip put the old top directly above its partner
    let p = flips.last().unwrap() - 1;
    contract_slice(&mut t.cont, p);
    t.merge_lens(p);
}

fn step(t: &mut Tracker<i32>) {
    cyclic_renumber_slice(&mut t.cont);
    let c = &t.cont;
    let q = position(c, |x| x.abs() == 1);
    let p = position(c, |x| x.abs() == 3);
    let (one_up, three_down) = (c[q - 1] < 0, c[p - 1] > 0);
    if c[0] > 0 {
        if one_up {
            join(t, &[q - 1]);
        } else if three_down {
            join(t, &[1, p - 1]);
        } else {
            join(t, &[p, p - 1]);
        }
    } else if three_down {
        join(t, &[p - 1]);
    } else if one_up {
        join(t, &[1, q - 1]);
    } else {
        join(t, &[q, q - 1]);
        // two more flips keep the outcome uniform over smaller stacks:
        // turn the whole stack over, then bring back whichever of 1 and 2
        // now lies deeper
        let m = t.cont.len();
        t.flip(m);
        let deeper = t.cont.iter().rposition(|x| x.abs() <= 2).unwrap();
        t.flip(deeper);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::state_count;
    use crate::rank::unrank_burnt;
    use crate::stack::Variant;

    #[test]
    fn sorted_input_is_free() {
        let out = sort_burnt_average(&BurntStack::identity(2)).unwrap();
        assert_eq!(out.flips_used, 0);
    }

    #[test]
    fn all_small_stacks_sort() {
        for n in 1..=5 {
            let total = state_count(n, Variant::Burnt).unwrap();
            for r in 0..total {
                let s = unrank_burnt(r, n).unwrap();
                let out = sort_burnt_average(&s).unwrap();
                assert!(out.trace.sorts().unwrap(), "{s}");
                if n >= 3 && !s.is_sorted() {
                    assert_eq!(out.iterations, n - 2);
                }
            }
        }
    }
}
