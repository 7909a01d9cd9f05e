//! A* search for the exact flip distance of a single stack.
//!
//! States are kept in reduced form (blocks contracted, bottom pancakes in
//! place removed), which preserves the distance. Small reduced states are
//! answered from breadth-first tables. The heuristic is the larger of the
//! greedy-sequence bound and, for burnt stacks, the potential bound.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{PancakeError, Result};
use crate::potential::lower_bound_potential;
use crate::rank::{rank_burnt_slice, rank_unburnt_slice, MAX_RANKED_BURNT, MAX_RANKED_UNBURNT};
use crate::sorters::{sort_burnt_average, sort_greedy_lookahead, sort_unburnt_randomized};
use crate::stack::{flip_signed, AnyStack, BurntStack, UnburntStack, Variant};

use super::bfs::{bfs_distances, DistanceTable, MAX_BFS_BURNT};
use super::bounds::{
    greedy_lb_reduced_burnt, greedy_lb_reduced_unburnt, reduce_burnt, reduce_unburnt,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Reduced stacks up to this size are looked up in a BFS table.
    pub endgame_table_size: usize,
    pub use_potential_bound: bool,
    pub use_greedy_bound: bool,
    /// Expanded nodes before the search gives up.
    pub node_limit: u64,
    /// Search nodes spent on each greedy bound.
    pub greedy_node_limit: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            endgame_table_size: 7,
            use_potential_bound: true,
            use_greedy_bound: true,
            node_limit: 1_000_000,
            greedy_node_limit: 10_000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.endgame_table_size == 0 || self.endgame_table_size > MAX_BFS_BURNT {
            return Err(PancakeError::invalid(format!(
                "endgame table size must be 1..={MAX_BFS_BURNT}, got {}",
                self.endgame_table_size
            )));
        }
        Ok(())
    }
}

/// Exact distances with endgame tables built once and shared across calls.
pub struct Solver {
    config: SolverConfig,
    burnt: OnceLock<Vec<DistanceTable>>,
    unburnt: OnceLock<Vec<DistanceTable>>,
}

fn build_tables(k: usize, variant: Variant) -> Result<Vec<DistanceTable>> {
    (1..=k).map(|n| bfs_distances(n, variant)).collect()
}

impl Solver {
    pub fn new(config: SolverConfig) -> Result<Self> {
        config.validate()?;
        Ok(Solver {
            config,
            burnt: OnceLock::new(),
            unburnt: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    fn tables(&self, variant: Variant) -> Result<&[DistanceTable]> {
        let cell = match variant {
            Variant::Burnt => &self.burnt,
            Variant::Unburnt => &self.unburnt,
        };
        if let Some(t) = cell.get() {
            return Ok(t);
        }
        let built = build_tables(self.config.endgame_table_size, variant)?;
        Ok(cell.get_or_init(|| built))
    }

    pub fn distance(&self, stack: &AnyStack) -> Result<u32> {
        match stack {
            AnyStack::Burnt(s) => self.distance_burnt(s),
            AnyStack::Unburnt(s) => self.distance_unburnt(s),
            AnyStack::Mixed(_) => Err(PancakeError::invalid(
                "exact distances are defined for burnt or unburnt stacks",
            )),
        }
    }

    pub fn distance_burnt(&self, stack: &BurntStack) -> Result<u32> {
        let start = reduce_burnt(stack.entries());
        if start.len() > MAX_RANKED_BURNT {
            return Err(PancakeError::invalid(format!(
                "reduced stack of {} burnt pancakes is too large to search",
                start.len()
            )));
        }
        let ub = [sort_greedy_lookahead(stack), sort_burnt_average(stack)]
            .into_iter()
            .filter_map(|o| o.ok())
            .map(|o| o.flips_used as u32)
            .min()
            .unwrap_or(u32::MAX);
        let domain = BurntDomain {
            tables: self.tables(Variant::Burnt)?,
            config: &self.config,
        };
        search(&domain, start, ub, self.config.node_limit)
    }

    pub fn distance_unburnt(&self, stack: &UnburntStack) -> Result<u32> {
        let start = reduce_unburnt(stack.entries());
        if start.len() > MAX_RANKED_UNBURNT {
            return Err(PancakeError::invalid(format!(
                "reduced stack of {} pancakes is too large to search",
                start.len()
            )));
        }
        let ub = sort_unburnt_randomized(stack, 0)?.flips_used as u32;
        let domain = UnburntDomain {
            tables: self.tables(Variant::Unburnt)?,
            config: &self.config,
        };
        search(&domain, start, ub, self.config.node_limit)
    }
}

/// Exact flip distance of `stack`.
pub fn astar_distance(stack: &AnyStack, config: &SolverConfig) -> Result<u32> {
    Solver::new(*config)?.distance(stack)
}

/// Lower bound for a state, or its exact distance when that is known.
enum Estimate {
    Exact(u32),
    Bound(u32),
}

trait Domain {
    type Item: Copy;
    fn key(&self, s: &[Self::Item]) -> (u8, u64);
    fn children(&self, s: &[Self::Item], out: &mut Vec<Vec<Self::Item>>);
    fn estimate(&self, s: &[Self::Item]) -> Estimate;
}

fn table_lookup<R: Fn(&[T]) -> u64, T>(tables: &[DistanceTable], s: &[T], rank: R) -> Option<u32> {
    match s.len() {
        0 => Some(0),
        m if m <= tables.len() => Some(tables[m - 1].get(rank(s)) as u32),
        _ => None,
    }
}

struct BurntDomain<'a> {
    tables: &'a [DistanceTable],
    config: &'a SolverConfig,
}

impl Domain for BurntDomain<'_> {
    type Item = i32;

    fn key(&self, s: &[i32]) -> (u8, u64) {
        (s.len() as u8, rank_burnt_slice(s))
    }

    fn children(&self, s: &[i32], out: &mut Vec<Vec<i32>>) {
        let mut buf = s.to_vec();
        for k in 1..=s.len() {
            flip_signed(&mut buf, k);
            out.push(reduce_burnt(&buf));
            buf.copy_from_slice(s);
        }
    }

    fn estimate(&self, s: &[i32]) -> Estimate {
        if let Some(d) = table_lookup(self.tables, s, rank_burnt_slice) {
            return Estimate::Exact(d);
        }
        let mut h = 0;
        if self.config.use_greedy_bound {
            let g = greedy_lb_reduced_burnt(s, self.config.greedy_node_limit);
            if g.exact {
                return Estimate::Exact(g.bound);
            }
            h = g.bound;
        }
        if self.config.use_potential_bound {
            let pot = lower_bound_potential(&BurntStack::from_vec_unchecked(s.to_vec()));
            h = h.max(pot);
        }
        Estimate::Bound(h)
    }
}

struct UnburntDomain<'a> {
    tables: &'a [DistanceTable],
    config: &'a SolverConfig,
}

impl Domain for UnburntDomain<'_> {
    type Item = u32;

    fn key(&self, s: &[u32]) -> (u8, u64) {
        (s.len() as u8, rank_unburnt_slice(s))
    }

    fn children(&self, s: &[u32], out: &mut Vec<Vec<u32>>) {
        let mut buf = s.to_vec();
        for k in 2..=s.len() {
            buf[..k].reverse();
            out.push(reduce_unburnt(&buf));
            buf.copy_from_slice(s);
        }
    }

    fn estimate(&self, s: &[u32]) -> Estimate {
        if let Some(d) = table_lookup(self.tables, s, rank_unburnt_slice) {
            return Estimate::Exact(d);
        }
        if !self.config.use_greedy_bound {
            return Estimate::Bound(0);
        }
        let g = greedy_lb_reduced_unburnt(s, self.config.greedy_node_limit);
        if g.exact {
            Estimate::Exact(g.bound)
        } else {
            Estimate::Bound(g.bound)
        }
    }
}

/// Best-first search. `ub` is the length of a known solution; the answer is
/// the cheapest solution found, and the search stops once no open node can
/// beat it.
fn search<D: Domain>(domain: &D, start: Vec<D::Item>, ub: u32, node_limit: u64) -> Result<u32> {
    let mut incumbent = ub;
    let mut states: Vec<Vec<D::Item>> = Vec::new();
    let mut best_g: HashMap<(u8, u64), u32> = HashMap::new();
    // min f, then max g
    let mut open: BinaryHeap<Reverse<(u32, Reverse<u32>, usize)>> = BinaryHeap::new();

    let consider = |s: Vec<D::Item>,
                    g: u32,
                    incumbent: &mut u32,
                    states: &mut Vec<Vec<D::Item>>,
                    open: &mut BinaryHeap<Reverse<(u32, Reverse<u32>, usize)>>| {
        match domain.estimate(&s) {
            Estimate::Exact(d) => *incumbent = (*incumbent).min(g + d),
            Estimate::Bound(h) => {
                if g + h < *incumbent {
                    open.push(Reverse((g + h, Reverse(g), states.len())));
                    states.push(s);
                }
            }
        }
    };

    best_g.insert(domain.key(&start), 0);
    consider(start, 0, &mut incumbent, &mut states, &mut open);

    let mut expanded = 0u64;
    let mut children = Vec::new();
    while let Some(Reverse((f, Reverse(g), idx))) = open.pop() {
        if f >= incumbent {
            break;
        }
        let s = std::mem::take(&mut states[idx]);
        if best_g.get(&domain.key(&s)).is_some_and(|&b| b < g) {
            continue;
        }
        expanded += 1;
        if expanded > node_limit {
            return Err(PancakeError::ResourceLimit(format!(
                "A* expanded {node_limit} nodes without closing the gap"
            )));
        }
        children.clear();
        domain.children(&s, &mut children);
        for c in children.drain(..) {
            let key = domain.key(&c);
            if best_g.get(&key).is_some_and(|&b| b <= g + 1) {
                continue;
            }
            best_g.insert(key, g + 1);
            consider(c, g + 1, &mut incumbent, &mut states, &mut open);
        }
    }
    if incumbent == u32::MAX {
        return Err(PancakeError::Internal(
            "search ended without a solution".into(),
        ));
    }
    Ok(incumbent)
}
