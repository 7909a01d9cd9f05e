//! Potential function on burnt stacks and the lower bounds derived from it.
//!
//! All arithmetic is in integer thirds. The potential rises by at most 4/3 per
//! flip, so `ceil(3/4 * (v(I_n) - v(C)))` flips are needed to sort `C`.

use serde::{Deserialize, Serialize};

use crate::stack::BurntStack;
use crate::structure::{analyze_structure, StructureReport};

/// The ten counts that make up the potential and its exact value in thirds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PotentialBreakdown {
    pub a: u32,
    pub a_minus: u32,
    pub b: u32,
    pub b_minus: u32,
    pub o: u32,
    pub o_minus: u32,
    pub l: u32,
    pub l_minus: u32,
    pub ll: u32,
    pub ll_minus: u32,
    pub value_thirds: i64,
}

struct Terms {
    a: u32,
    b: u32,
    o: u32,
    l: u32,
    ll: u32,
}

/// The positive half of the potential, evaluated on `e` directly.
fn terms(e: &[i32], report: &StructureReport) -> Terms {
    let n = e.len();
    let top_free_up_one = e[0] == -1 && !report.in_block(1) && !report.in_clan(1);
    let one_pos = e.iter().position(|x| x.abs() == 1).unwrap() + 1;
    let o = (top_free_up_one || report.in_block(one_pos)) as u32;
    let l = (e[n - 1] == n as i32) as u32;
    let ll = (n >= 2 && l == 1 && e[n - 2] == n as i32 - 1) as u32;
    Terms {
        a: report.adjacencies.len() as u32,
        b: report.deep_blocks() as u32,
        o,
        l,
        ll,
    }
}

pub fn potential(stack: &BurntStack) -> PotentialBreakdown {
    let plus = terms(stack.entries(), &analyze_structure(stack, false));
    let neg = stack.negated();
    let minus = terms(neg.entries(), &analyze_structure(&neg, false));
    let d = |p: u32, m: u32| p as i64 - m as i64;
    let value_thirds = 3 * d(plus.a, minus.a) - d(plus.b, minus.b)
        + d(plus.o, minus.o)
        + 3 * d(plus.l, minus.l)
        + d(plus.ll, minus.ll);
    PotentialBreakdown {
        a: plus.a,
        a_minus: minus.a,
        b: plus.b,
        b_minus: minus.b,
        o: plus.o,
        o_minus: minus.o,
        l: plus.l,
        l_minus: minus.l,
        ll: plus.ll,
        ll_minus: minus.ll,
        value_thirds,
    }
}

/// `3 * v(I_n)`.
pub fn identity_thirds(n: usize) -> i64 {
    3 * n as i64 + 2
}

/// Change of the potential caused by an `i`-flip, in thirds. Never above 4.
///
/// Panics if `i` exceeds the stack size.
pub fn delta_v(stack: &BurntStack, i: usize) -> i64 {
    let after = stack.flip(i).expect("flip size within stack");
    potential(&after).value_thirds - potential(stack).value_thirds
}

fn ceil_div(num: i64, den: i64) -> i64 {
    num.div_euclid(den) + (num.rem_euclid(den) != 0) as i64
}

/// Lower bound on the flip distance of `stack` from the potential.
pub fn lower_bound_potential(stack: &BurntStack) -> u32 {
    if stack.len() == 1 {
        return (stack.entries()[0] < 0) as u32;
    }
    let gap = identity_thirds(stack.len()) - potential(stack).value_thirds;
    // 3/4 of the gap measured in whole units is gap_thirds / 4
    ceil_div(gap, 4).max(0) as u32
}

/// `floor(3(n + 1) / 2)`, the bound the potential gives for `-I_n`.
pub fn neg_identity_bound(n: usize) -> u32 {
    (3 * (n as u32 + 1)) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stack::SpecialStack;

    fn b(v: &[i32]) -> BurntStack {
        BurntStack::new(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_and_negation() {
        for n in 2..12 {
            let id = BurntStack::identity(n);
            assert_eq!(potential(&id).value_thirds, identity_thirds(n));
            assert_eq!(potential(&id.negated()).value_thirds, -identity_thirds(n));
        }
        assert_eq!(potential(&BurntStack::identity(4)).value_thirds, 14);
    }

    #[test]
    fn breakdown_of_free_stack() {
        let p = potential(&b(&[2, -1, 3]));
        assert_eq!(
            p,
            PotentialBreakdown {
                l: 1,
                value_thirds: 3,
                ..Default::default()
            }
        );
    }

    #[test]
    fn bounds() {
        assert_eq!(lower_bound_potential(&BurntStack::identity(6)), 0);
        let neg7 = BurntStack::special(SpecialStack::NegIdentity, 7).unwrap();
        assert_eq!(lower_bound_potential(&neg7), 12);
        assert_eq!(neg_identity_bound(15), 24);
        assert_eq!(neg_identity_bound(19), 30);
        assert_eq!(neg_identity_bound(3), 6);
        assert_eq!(lower_bound_potential(&b(&[1])), 0);
        assert_eq!(lower_bound_potential(&b(&[-1])), 1);
    }

    #[test]
    fn zero_flip_changes_nothing() {
        assert_eq!(delta_v(&b(&[3, -1, 2]), 0), 0);
    }

    #[test]
    fn ceil_division() {
        assert_eq!(ceil_div(7, 4), 2);
        assert_eq!(ceil_div(8, 4), 2);
        assert_eq!(ceil_div(-3, 4), 0);
        assert_eq!(ceil_div(-5, 4), -1);
    }
}
