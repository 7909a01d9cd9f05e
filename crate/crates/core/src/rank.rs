//! Dense indexing of stacks: Lehmer code of the permutation in the factorial
//! number system, times `2^n` orientation bits for burnt stacks.
//!
//! The sorted stack always has rank 0.

use crate::error::{PancakeError, Result};
use crate::stack::{AnyStack, BurntStack, UnburntStack, Variant};

/// Largest burnt size whose state count fits in a `u64`.
pub const MAX_RANKED_BURNT: usize = 16;
/// Largest unburnt size whose state count fits in a `u64`.
pub const MAX_RANKED_UNBURNT: usize = 20;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Number of stacks of the given size and variant.
pub fn state_count(n: usize, variant: Variant) -> Result<u64> {
    match variant {
        Variant::Burnt if n <= MAX_RANKED_BURNT => Ok(factorial(n) << n),
        Variant::Unburnt if n <= MAX_RANKED_UNBURNT => Ok(factorial(n)),
        _ => Err(PancakeError::invalid(format!(
            "{} stacks of {n} pancakes cannot be ranked in 64 bits",
            variant.name()
        ))),
    }
}

#[inline]
fn perm_rank<I: Iterator<Item = u32>>(labels: I, n: usize) -> u64 {
    // labels are 1-based; `used` tracks labels already consumed
    let mut used: u32 = 0;
    let mut rank = 0u64;
    for (i, l) in labels.enumerate() {
        let smaller_unused = (l - 1) - (used & ((1u32 << (l - 1)) - 1)).count_ones();
        used |= 1 << (l - 1);
        rank = rank * (n - i) as u64 + smaller_unused as u64;
    }
    rank
}

#[inline]
fn perm_unrank(mut index: u64, n: usize, out: &mut [u32]) {
    // mixed-radix digits, least significant last
    let mut digits = [0u32; 32];
    for i in (0..n).rev() {
        let radix = (n - i) as u64;
        digits[i] = (index % radix) as u32;
        index /= radix;
    }
    let mut free: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for i in 0..n {
        // select the digits[i]-th remaining label
        let mut d = digits[i];
        let mut f = free;
        loop {
            let bit = f.trailing_zeros();
            if d == 0 {
                out[i] = bit + 1;
                free &= !(1 << bit);
                break;
            }
            d -= 1;
            f &= f - 1;
        }
    }
}

#[inline]
pub(crate) fn rank_burnt_slice(e: &[i32]) -> u64 {
    let n = e.len();
    let perm = perm_rank(e.iter().map(|x| x.unsigned_abs()), n);
    let mut bits = 0u64;
    for (i, &x) in e.iter().enumerate() {
        if x < 0 {
            bits |= 1 << i;
        }
    }
    (perm << n) | bits
}

#[inline]
pub(crate) fn unrank_burnt_into(index: u64, n: usize, out: &mut [i32]) {
    let bits = index & ((1u64 << n) - 1);
    let mut labels = [0u32; 32];
    perm_unrank(index >> n, n, &mut labels[..n]);
    for i in 0..n {
        let l = labels[i] as i32;
        out[i] = if bits >> i & 1 == 1 { -l } else { l };
    }
}

#[inline]
pub(crate) fn rank_unburnt_slice(e: &[u32]) -> u64 {
    perm_rank(e.iter().copied(), e.len())
}

#[inline]
pub(crate) fn unrank_unburnt_into(index: u64, n: usize, out: &mut [u32]) {
    perm_unrank(index, n, out);
}

pub fn rank_burnt(stack: &BurntStack) -> Result<u64> {
    state_count(stack.len(), Variant::Burnt)?;
    Ok(rank_burnt_slice(stack.entries()))
}

pub fn rank_unburnt(stack: &UnburntStack) -> Result<u64> {
    state_count(stack.len(), Variant::Unburnt)?;
    Ok(rank_unburnt_slice(stack.entries()))
}

pub fn rank(stack: &AnyStack) -> Result<u64> {
    match stack {
        AnyStack::Burnt(s) => rank_burnt(s),
        AnyStack::Unburnt(s) => rank_unburnt(s),
        AnyStack::Mixed(_) => Err(PancakeError::invalid("mixed stacks are not ranked")),
    }
}

fn check_index(index: u64, n: usize, variant: Variant) -> Result<()> {
    if n == 0 {
        return Err(PancakeError::invalid("stack size must be at least 1"));
    }
    let count = state_count(n, variant)?;
    if index >= count {
        return Err(PancakeError::invalid(format!(
            "index {index} out of range for {count} {} stacks",
            variant.name()
        )));
    }
    Ok(())
}

pub fn unrank_burnt(index: u64, n: usize) -> Result<BurntStack> {
    check_index(index, n, Variant::Burnt)?;
    let mut v = vec![0i32; n];
    unrank_burnt_into(index, n, &mut v);
    Ok(BurntStack::from_vec_unchecked(v))
}

pub fn unrank_unburnt(index: u64, n: usize) -> Result<UnburntStack> {
    check_index(index, n, Variant::Unburnt)?;
    let mut v = vec![0u32; n];
    unrank_unburnt_into(index, n, &mut v);
    Ok(UnburntStack::from_vec_unchecked(v))
}

pub fn unrank(index: u64, n: usize, variant: Variant) -> Result<AnyStack> {
    Ok(match variant {
        Variant::Burnt => AnyStack::Burnt(unrank_burnt(index, n)?),
        Variant::Unburnt => AnyStack::Unburnt(unrank_unburnt(index, n)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn identity_is_zero() {
        assert_eq!(rank_burnt(&BurntStack::identity(3)).unwrap(), 0);
        assert_eq!(rank_unburnt(&UnburntStack::identity(7)).unwrap(), 0);
        assert_eq!(unrank_burnt(0, 4).unwrap(), BurntStack::identity(4));
    }

    #[test]
    fn burnt_three_is_a_bijection() {
        let count = state_count(3, Variant::Burnt).unwrap();
        assert_eq!(count, 48);
        let mut seen = HashSet::new();
        for i in 0..count {
            let s = unrank_burnt(i, 3).unwrap();
            assert_eq!(rank_burnt(&s).unwrap(), i);
            seen.insert(s);
        }
        assert_eq!(seen.len(), 48);
    }

    #[test]
    fn unburnt_lexicographic() {
        // Lehmer ranks follow lexicographic order of the permutation
        let all: Vec<_> = (0..6).map(|i| unrank_unburnt(i, 3).unwrap()).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[5].entries(), &[3, 2, 1]);
    }

    #[test]
    fn out_of_range() {
        assert!(unrank_burnt(48, 3).is_err());
        assert!(unrank_unburnt(0, 0).is_err());
        assert!(state_count(17, Variant::Burnt).is_err());
        assert!(state_count(20, Variant::Unburnt).is_ok());
    }
}
