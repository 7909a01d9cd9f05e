//! Candidate sets: every stack of size `n` that could need `m` or more flips,
//! built from the stacks of size `n - 1` that need at least `m - 2`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{PancakeError, Result};
use crate::rank::{rank_burnt_slice, rank_unburnt_slice, unrank_burnt_into, unrank_unburnt_into};
use crate::stack::{flip_signed, AnyStack, BurntStack, SpecialStack, Variant};
use crate::structure::expand;

use super::astar::{Solver, SolverConfig};
use super::bfs::{bfs_distances, DistanceTable, MAX_BFS_BURNT, MAX_BFS_UNBURNT};

/// Ranks of size-`n` stacks grouped by exact distance, for every distance
/// from `from` upward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceSlices {
    pub n: usize,
    pub variant: Variant,
    pub from: u8,
    pub slices: BTreeMap<u8, Vec<u64>>,
}

impl DistanceSlices {
    pub fn from_table(table: &DistanceTable, from: u8) -> Self {
        let slices = (from..=table.max_distance())
            .map(|d| (d, table.ranks_at(d).collect::<Vec<_>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        DistanceSlices {
            n: table.n,
            variant: table.variant,
            from,
            slices,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.slices.values().all(|v| v.is_empty())
    }

    fn sources(&self) -> impl Iterator<Item = u64> + '_ {
        self.slices.values().flatten().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub n: usize,
    pub variant: Variant,
    pub m_min: u8,
    /// Sorted, deduplicated stack ranks.
    pub stacks: Vec<u64>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.stacks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stacks.is_empty()
    }

    pub fn contains(&self, rank: u64) -> bool {
        self.stacks.binary_search(&rank).is_ok()
    }

    pub fn stacks(&self) -> impl Iterator<Item = AnyStack> + '_ {
        self.stacks
            .iter()
            .map(|&r| crate::rank::unrank(r, self.n, self.variant).expect("rank in range"))
    }
}

fn check_slices(prev: &DistanceSlices, variant: Variant, m: u8) -> Result<()> {
    if prev.variant != variant {
        return Err(PancakeError::invalid("slices have the wrong variant"));
    }
    if prev.from > m.saturating_sub(2) {
        return Err(PancakeError::invalid(format!(
            "slices start at distance {}, need {} for target {m}",
            prev.from,
            m.saturating_sub(2)
        )));
    }
    Ok(())
}

fn finish(n: usize, variant: Variant, m: u8, mut stacks: Vec<u64>) -> CandidateSet {
    stacks.sort_unstable();
    stacks.dedup();
    CandidateSet {
        n,
        variant,
        m_min: m,
        stacks,
    }
}

/// Put pancake `n` under each source, turn the stack over, then try every
/// flip. Intermediate stacks are kept.
pub fn candidate_set_unburnt(prev: &DistanceSlices, m: u8) -> Result<CandidateSet> {
    check_slices(prev, Variant::Unburnt, m)?;
    let n = prev.n + 1;
    let mut out = Vec::new();
    let mut buf = vec![0u32; n];
    for r in prev.sources() {
        unrank_unburnt_into(r, n - 1, &mut buf[..n - 1]);
        buf[n - 1] = n as u32;
        out.push(rank_unburnt_slice(&buf));
        buf.reverse();
        out.push(rank_unburnt_slice(&buf));
        for k in 2..=n {
            buf[..k].reverse();
            out.push(rank_unburnt_slice(&buf));
            buf[..k].reverse();
        }
    }
    Ok(finish(n, Variant::Unburnt, m, out))
}

/// Split each pancake of each source into an adjacent pair, then apply every
/// sequence of at most two flips. Intermediate stacks are kept, and `-I_n`
/// is added since no two of its pancakes can be joined in two flips.
pub fn candidate_set_burnt(prev: &DistanceSlices, m: u8) -> Result<CandidateSet> {
    check_slices(prev, Variant::Burnt, m)?;
    let n = prev.n + 1;
    let mut out = Vec::new();
    if !prev.is_empty() {
        let neg = BurntStack::special(SpecialStack::NegIdentity, n)?;
        out.push(rank_burnt_slice(neg.entries()));
    }
    let mut src = vec![0i32; n - 1];
    for r in prev.sources() {
        unrank_burnt_into(r, n - 1, &mut src);
        let source = BurntStack::from_vec_unchecked(src.clone());
        for p in 1..n {
            let e = expand(&source, p)?.into_entries();
            out.push(rank_burnt_slice(&e));
            let mut one = e.clone();
            for k1 in 1..=n {
                flip_signed(&mut one, k1);
                out.push(rank_burnt_slice(&one));
                let mut two = one.clone();
                for k2 in 1..=n {
                    flip_signed(&mut two, k2);
                    out.push(rank_burnt_slice(&two));
                    flip_signed(&mut two, k2);
                }
                flip_signed(&mut one, k1);
            }
        }
    }
    Ok(finish(n, Variant::Burnt, m, out))
}

pub fn candidate_set(prev: &DistanceSlices, m: u8) -> Result<CandidateSet> {
    match prev.variant {
        Variant::Burnt => candidate_set_burnt(prev, m),
        Variant::Unburnt => candidate_set_unburnt(prev, m),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxFlips {
    pub n: usize,
    pub variant: Variant,
    pub value: u32,
    /// Every stack at distance `value`, in rank order.
    pub witnesses: Vec<AnyStack>,
}

fn direct_limit(variant: Variant) -> usize {
    match variant {
        Variant::Burnt => MAX_BFS_BURNT - 1,
        Variant::Unburnt => MAX_BFS_UNBURNT - 1,
    }
}

/// `f(n)` or `g(n)` with all witnesses: breadth-first search for small `n`,
/// candidate sets plus A* above that.
pub fn max_flips(n: usize, variant: Variant, config: &SolverConfig) -> Result<MaxFlips> {
    if n <= direct_limit(variant) {
        let table = bfs_distances(n, variant)?;
        let value = table.max_distance();
        let witnesses = table
            .ranks_at(value)
            .map(|r| crate::rank::unrank(r, n, variant))
            .collect::<Result<_>>()?;
        return Ok(MaxFlips {
            n,
            variant,
            value: value as u32,
            witnesses,
        });
    }
    max_flips_by_candidates(n, variant, config)
}

/// The candidate-set pipeline on its own: BFS for `n - 1`, candidates at
/// `m = max(n - 1)`, and A* on every candidate.
pub fn max_flips_by_candidates(
    n: usize,
    variant: Variant,
    config: &SolverConfig,
) -> Result<MaxFlips> {
    if n < 2 {
        return Err(PancakeError::invalid("the candidate pipeline needs n >= 2"));
    }
    let prev = bfs_distances(n - 1, variant)?;
    let m = prev.max_distance();
    let slices = DistanceSlices::from_table(&prev, m.saturating_sub(2));
    drop(prev);
    let set = candidate_set(&slices, m)?;
    let solver = Solver::new(*config)?;
    let dists = set
        .stacks
        .par_iter()
        .map(|&r| solver.distance(&crate::rank::unrank(r, n, variant)?))
        .collect::<Result<Vec<u32>>>()?;
    let value = dists.iter().copied().max().unwrap_or(0);
    let witnesses = set
        .stacks
        .iter()
        .zip(&dists)
        .filter(|(_, &d)| d == value)
        .map(|(&r, _)| crate::rank::unrank(r, n, variant))
        .collect::<Result<_>>()?;
    Ok(MaxFlips {
        n,
        variant,
        value,
        witnesses,
    })
}

/// Replay `flips` from `stack` and report whether the result is sorted.
pub fn verify_trace(stack: &AnyStack, flips: &[usize]) -> Result<bool> {
    crate::trace::FlipTrace::new(stack.clone(), flips.to_vec()).sorts()
}
