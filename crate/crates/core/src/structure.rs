//! Adjacency, block and clan structure of burnt stacks, plus the
//! contraction/expansion and cyclic renumbering moves used by the sorters.
//!
//! Positions in a [`StructureReport`] are 1-based, top = 1. A pair position
//! `p` refers to the two pancakes at positions `p` and `p + 1`.

use serde::{Deserialize, Serialize};

use crate::error::{PancakeError, Result};
use crate::stack::{BurntStack, MixedPancake, MixedStack, Orientation};

/// Signed value that must sit directly below `x` for the two to be adjacent.
#[inline]
pub(crate) fn signed_succ(x: i32, n: i32, cyclic: bool) -> Option<i32> {
    let s = if x > 0 {
        if x == n {
            if cyclic {
                1
            } else {
                return None;
            }
        } else {
            x + 1
        }
    } else if x == -1 {
        if cyclic {
            -n
        } else {
            return None;
        }
    } else {
        x + 1
    };
    Some(s)
}

/// Signed value that must sit directly below `x` for an anti-adjacency.
#[inline]
pub(crate) fn signed_pred(x: i32, n: i32, cyclic: bool) -> Option<i32> {
    signed_succ(-x, n, cyclic).map(|v| -v)
}

#[inline]
pub(crate) fn is_adjacent(upper: i32, lower: i32, n: i32, cyclic: bool) -> bool {
    signed_succ(upper, n, cyclic) == Some(lower)
}

#[inline]
pub(crate) fn is_anti_adjacent(upper: i32, lower: i32, n: i32, cyclic: bool) -> bool {
    signed_pred(upper, n, cyclic) == Some(lower)
}

pub(crate) fn adjacency_count(entries: &[i32], cyclic: bool) -> usize {
    let n = entries.len() as i32;
    entries
        .windows(2)
        .filter(|w| is_adjacent(w[0], w[1], n, cyclic))
        .count()
}

/// A maximal run of positions `start..=end` (1-based, inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
    pub surface: bool,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, pos: usize) -> bool {
        (self.start..=self.end).contains(&pos)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub adjacencies: Vec<usize>,
    pub anti_adjacencies: Vec<usize>,
    pub blocks: Vec<Interval>,
    pub clans: Vec<Interval>,
    pub free: Vec<usize>,
}

impl StructureReport {
    pub fn deep_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| !b.surface).count()
    }

    pub fn deep_clans(&self) -> usize {
        self.clans.iter().filter(|c| !c.surface).count()
    }

    pub fn in_block(&self, pos: usize) -> bool {
        self.blocks.iter().any(|b| b.contains(pos))
    }

    pub fn in_clan(&self, pos: usize) -> bool {
        self.clans.iter().any(|c| c.contains(pos))
    }
}

fn runs(pairs: &[usize]) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::new();
    for &p in pairs {
        match out.last_mut() {
            Some(last) if last.end == p => last.end = p + 1,
            _ => out.push(Interval {
                start: p,
                end: p + 1,
                surface: p == 1,
            }),
        }
    }
    out
}

pub fn analyze_structure(stack: &BurntStack, cyclic: bool) -> StructureReport {
    let e = stack.entries();
    let n = e.len() as i32;
    let mut adjacencies = Vec::new();
    let mut anti_adjacencies = Vec::new();
    for (i, w) in e.windows(2).enumerate() {
        if is_adjacent(w[0], w[1], n, cyclic) {
            adjacencies.push(i + 1);
        }
        if is_anti_adjacent(w[0], w[1], n, cyclic) {
            anti_adjacencies.push(i + 1);
        }
    }
    let blocks = runs(&adjacencies);
    let clans = runs(&anti_adjacencies);
    let free = (1..=e.len())
        .filter(|&p| !blocks.iter().any(|b| b.contains(p)) && !clans.iter().any(|c| c.contains(p)))
        .collect();
    StructureReport {
        adjacencies,
        anti_adjacencies,
        blocks,
        clans,
        free,
    }
}

/// The flip size that turns the top pancake into a new adjacency, if any.
///
/// In the burnt version at most one flip can do this.
pub fn single_flip_adjacency(stack: &BurntStack, cyclic: bool) -> Option<usize> {
    single_flip_adjacency_slice(stack.entries(), cyclic)
}

pub(crate) fn single_flip_adjacency_slice(e: &[i32], cyclic: bool) -> Option<usize> {
    let n = e.len() as i32;
    if n < 2 {
        return None;
    }
    let target = signed_succ(-e[0], n, cyclic)?;
    let j = e.iter().position(|&x| x == target)?;
    // j is 0-based; the flip covers positions 0..j
    (j >= 1).then_some(j)
}

/// Drop `removed` from the label set, shifting larger labels down by one.
fn relabel_after_removal(label: u32, removed: u32) -> u32 {
    if label > removed {
        label - 1
    } else {
        label
    }
}

pub(crate) fn contract_slice(e: &mut Vec<i32>, p: usize) {
    let (upper, lower) = (e[p], e[p + 1]);
    let k = upper.unsigned_abs().min(lower.unsigned_abs());
    let merged = if upper > 0 { k as i32 } else { -(k as i32) };
    e.remove(p + 1);
    e[p] = merged;
    for x in e.iter_mut() {
        let l = relabel_after_removal(x.unsigned_abs(), k + 1) as i32;
        *x = x.signum() * l;
    }
}

/// Replace the adjacent pair at positions `p`, `p + 1` (1-based) by a single
/// pancake. The merged pancake keeps the smaller label.
pub fn contract(stack: &BurntStack, p: usize) -> Result<BurntStack> {
    let e = stack.entries();
    let n = e.len() as i32;
    if p == 0 || p >= e.len() {
        return Err(PancakeError::invalid(format!(
            "pair position {p} out of range for a stack of {n}"
        )));
    }
    if !is_adjacent(e[p - 1], e[p], n, false) {
        return Err(PancakeError::invalid(format!(
            "pancakes at positions {p} and {} are not adjacent",
            p + 1
        )));
    }
    let mut v = e.to_vec();
    contract_slice(&mut v, p - 1);
    Ok(BurntStack::from_vec_unchecked(v))
}

fn completions(o: Orientation) -> &'static [i32] {
    match o {
        Orientation::Down => &[1],
        Orientation::Up => &[-1],
        Orientation::Unburnt => &[1, -1],
    }
}

/// Adjacency between two pancakes of a mixed stack: some orientation of the
/// unburnt ones makes them a burnt adjacency.
pub(crate) fn mixed_pair_adjacent(upper: MixedPancake, lower: MixedPancake) -> bool {
    completions(upper.orientation).iter().any(|&su| {
        completions(lower.orientation)
            .iter()
            .any(|&sl| sl * lower.label as i32 == su * upper.label as i32 + 1)
    })
}

pub fn mixed_adjacent(stack: &MixedStack, p: usize) -> bool {
    let e = stack.entries();
    if p == 0 || p >= e.len() {
        return false;
    }
    mixed_pair_adjacent(e[p - 1], e[p])
}

pub(crate) fn contract_mixed_slice(e: &mut Vec<MixedPancake>, p: usize) {
    let (upper, lower) = (e[p], e[p + 1]);
    let k = upper.label.min(lower.label);
    // burnt side faces the member with the higher label
    let orientation = if lower.label > upper.label {
        Orientation::Down
    } else {
        Orientation::Up
    };
    e.remove(p + 1);
    e[p] = MixedPancake::new(k, orientation);
    for x in e.iter_mut() {
        x.label = relabel_after_removal(x.label, k + 1);
    }
}

pub fn contract_mixed(stack: &MixedStack, p: usize) -> Result<MixedStack> {
    if !mixed_adjacent(stack, p) {
        return Err(PancakeError::invalid(format!(
            "pancakes at positions {p} and {} are not adjacent",
            p + 1
        )));
    }
    let mut v = stack.entries().to_vec();
    contract_mixed_slice(&mut v, p - 1);
    Ok(MixedStack::from_vec_unchecked(v))
}

/// Inverse of [`contract`]: split the pancake at position `p` (1-based) into
/// an adjacent pair.
pub fn expand(stack: &BurntStack, p: usize) -> Result<BurntStack> {
    let e = stack.entries();
    if p == 0 || p > e.len() {
        return Err(PancakeError::invalid(format!(
            "position {p} out of range for a stack of {}",
            e.len()
        )));
    }
    let s = e[p - 1];
    let k = s.abs();
    let mut v: Vec<i32> = e
        .iter()
        .map(|&x| if x.abs() > k { x + x.signum() } else { x })
        .collect();
    if s > 0 {
        v[p - 1] = k;
        v.insert(p, k + 1);
    } else {
        v[p - 1] = -(k + 1);
        v.insert(p, -k);
    }
    Ok(BurntStack::from_vec_unchecked(v))
}

#[inline]
fn rotate_label(label: u32, shift: i64, n: u32) -> u32 {
    ((label as i64 - 1 + shift).rem_euclid(n as i64)) as u32 + 1
}

/// Renumber labels cyclically so that the top pancake is number 2.
pub fn cyclic_renumber(stack: &BurntStack) -> BurntStack {
    let mut v = stack.entries().to_vec();
    cyclic_renumber_slice(&mut v);
    BurntStack::from_vec_unchecked(v)
}

pub(crate) fn cyclic_renumber_slice(e: &mut [i32]) {
    let n = e.len() as u32;
    let shift = 2 - e[0].unsigned_abs() as i64;
    for x in e.iter_mut() {
        *x = x.signum() * rotate_label(x.unsigned_abs(), shift, n) as i32;
    }
}

pub fn cyclic_renumber_mixed(stack: &MixedStack) -> MixedStack {
    let mut v = stack.entries().to_vec();
    cyclic_renumber_mixed_slice(&mut v);
    MixedStack::from_vec_unchecked(v)
}

pub(crate) fn cyclic_renumber_mixed_slice(e: &mut [MixedPancake]) {
    let n = e.len() as u32;
    let shift = 2 - e[0].label as i64;
    for x in e.iter_mut() {
        x.label = rotate_label(x.label, shift, n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stack::{MixedPancake as P, Orientation::*};

    fn b(v: &[i32]) -> BurntStack {
        BurntStack::new(v.to_vec()).unwrap()
    }

    fn m(v: &[(u32, Orientation)]) -> MixedStack {
        MixedStack::new(v.iter().map(|&(l, o)| P::new(l, o)).collect()).unwrap()
    }

    #[test]
    fn structure_of_identity_and_negation() {
        let r = analyze_structure(&BurntStack::identity(5), false);
        assert_eq!(r.adjacencies, vec![1, 2, 3, 4]);
        assert_eq!(
            r.blocks,
            vec![Interval {
                start: 1,
                end: 5,
                surface: true
            }]
        );
        assert!(r.clans.is_empty());

        let r = analyze_structure(&BurntStack::identity(5).negated(), false);
        assert!(r.adjacencies.is_empty());
        assert_eq!(r.anti_adjacencies.len(), 4);
        assert_eq!(r.clans.len(), 1);
        assert!(r.clans[0].surface);
    }

    #[test]
    fn structure_all_free() {
        let r = analyze_structure(&b(&[2, -1, 3]), false);
        assert!(r.adjacencies.is_empty());
        assert!(r.anti_adjacencies.is_empty());
        assert_eq!(r.free, vec![1, 2, 3]);
    }

    #[test]
    fn cyclic_structure_wraps() {
        let s = b(&[3, 1, 2]);
        assert_eq!(analyze_structure(&s, false).adjacencies, vec![2]);
        assert_eq!(analyze_structure(&s, true).adjacencies, vec![1, 2]);
    }

    #[test]
    fn single_flip_examples() {
        assert_eq!(single_flip_adjacency(&b(&[2, -3, -1, 4]), false), Some(2));
        assert_eq!(single_flip_adjacency(&BurntStack::identity(6), false), None);
        let s = b(&[-2, 4, 3, 1]);
        assert_eq!(single_flip_adjacency(&s, false), Some(2));
        assert_eq!(s.flip(2).unwrap(), b(&[-4, 2, 3, 1]));
    }

    #[test]
    fn contract_examples() {
        assert_eq!(contract(&b(&[3, 1, 2]), 2).unwrap(), b(&[2, 1]));
        assert_eq!(
            contract(&BurntStack::identity(3), 1).unwrap(),
            BurntStack::identity(2)
        );
        assert_eq!(contract(&b(&[-2, -1, 3]), 1).unwrap(), b(&[-1, 2]));
        assert!(contract(&b(&[2, -1, 3]), 1).is_err());
        assert!(contract(&b(&[2, -1, 3]), 3).is_err());
    }

    #[test]
    fn mixed_adjacency_examples() {
        assert!(mixed_adjacent(&m(&[(2, Unburnt), (1, Unburnt)]), 1));
        assert!(!mixed_adjacent(
            &m(&[(2, Unburnt), (4, Unburnt), (1, Down), (3, Down)]),
            1
        ));
        assert!(mixed_adjacent(&m(&[(2, Down), (3, Unburnt), (1, Up)]), 1));
        assert!(!mixed_adjacent(&m(&[(2, Down), (1, Unburnt)]), 1));
    }

    #[test]
    fn mixed_contraction_orientation() {
        let s = m(&[(2, Unburnt), (3, Down), (1, Unburnt)]);
        let c = contract_mixed(&s, 1).unwrap();
        assert_eq!(c.entries(), &[P::new(2, Down), P::new(1, Unburnt)]);

        let s = m(&[(2, Unburnt), (1, Unburnt)]);
        let c = contract_mixed(&s, 1).unwrap();
        assert_eq!(c.entries(), &[P::new(1, Up)]);
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(&b(&[1]), 1).unwrap(), b(&[1, 2]));
        assert_eq!(expand(&b(&[-1]), 1).unwrap(), b(&[-2, -1]));
        assert_eq!(expand(&b(&[2, -1]), 2).unwrap(), b(&[3, -2, -1]));
        assert!(expand(&b(&[1]), 2).is_err());
    }

    #[test]
    fn renumber_examples() {
        assert_eq!(cyclic_renumber(&b(&[3, 1, 2])), b(&[2, 3, 1]));
        let s = b(&[-5, 1, 2, 3, 4]);
        let r = cyclic_renumber(&s);
        assert_eq!(r.entries()[0], -2);
        assert_eq!(cyclic_renumber(&r), r);
        assert_eq!(cyclic_renumber(&b(&[-1])), b(&[-1]));
    }
}
