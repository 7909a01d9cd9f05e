//! Sampling harness for the sorters, adjacency statistics and the closed-form
//! reference values the measurements are compared against.
//!
//! Sample `i` of a run with master seed `s` draws from ChaCha8 seeded with
//! `s` on stream `i`, so results do not depend on the worker count.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{PancakeError, Result};
use crate::potential::neg_identity_bound;
use crate::rank::{state_count, unrank_burnt, unrank_unburnt};
use crate::sorters::{
    sort_burnt_average, sort_greedy_lookahead, sort_unburnt_with_coins, RngCoins, SortOutcome,
};
use crate::stack::{AnyStack, BurntStack, UnburntStack, Variant};
use crate::structure::adjacency_count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "burnt-avg")]
    BurntAverage,
    #[serde(rename = "unburnt-rand")]
    UnburntRandomized,
    #[serde(rename = "greedy")]
    GreedyLookahead,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::BurntAverage,
        Algorithm::UnburntRandomized,
        Algorithm::GreedyLookahead,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BurntAverage => "burnt-avg",
            Algorithm::UnburntRandomized => "unburnt-rand",
            Algorithm::GreedyLookahead => "greedy",
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            Algorithm::UnburntRandomized => Variant::Unburnt,
            _ => Variant::Burnt,
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = PancakeError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| PancakeError::invalid(format!("unknown algorithm `{s}`")))
    }
}

/// Run `algo` on `stack`, drawing any coins from `rng`.
pub fn run_algorithm<R: Rng>(algo: Algorithm, stack: &AnyStack, rng: R) -> Result<SortOutcome> {
    match algo {
        Algorithm::BurntAverage => sort_burnt_average(&stack.to_burnt()?),
        Algorithm::GreedyLookahead => sort_greedy_lookahead(&stack.to_burnt()?),
        Algorithm::UnburntRandomized => {
            sort_unburnt_with_coins(&stack.to_unburnt()?, &mut RngCoins(rng))
        }
    }
}

/// Generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_burnt<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BurntStack {
    let mut v: Vec<i32> = (1..=n as i32).collect();
    v.shuffle(rng);
    for x in v.iter_mut() {
        if rng.gen::<bool>() {
            *x = -*x;
        }
    }
    BurntStack::from_vec_unchecked(v)
}

pub fn random_unburnt<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnburntStack {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    UnburntStack::from_vec_unchecked(v)
}

/// Uniform over all `n! * 2^n` burnt or `n!` unburnt stacks.
pub fn random_stack<R: Rng + ?Sized>(n: usize, variant: Variant, rng: &mut R) -> Result<AnyStack> {
    if n == 0 {
        return Err(PancakeError::invalid("stack size must be at least 1"));
    }
    Ok(match variant {
        Variant::Burnt => random_burnt(n, rng).into(),
        Variant::Unburnt => random_unburnt(n, rng).into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    /// Every stack of the size; coins of the randomized sorter are averaged
    /// over all their outcomes.
    Exhaustive,
    Sampled(u64),
}

pub const MAX_EXHAUSTIVE_BURNT: usize = 7;
pub const MAX_EXHAUSTIVE_UNBURNT: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub exhaustive: bool,
    pub sample_count: u64,
    pub seed: u64,
    pub mean: f64,
    pub std: f64,
    pub min: usize,
    pub max: usize,
    pub bound_ub: Option<f64>,
    pub bound_lb: Option<f64>,
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_default()
}

impl ExperimentReport {
    pub const CSV_HEADER: &'static str = "algo,n,samples,seed,mean,std,min,max,bound_ub,bound_lb";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6},{:.6},{},{},{},{}",
            self.algorithm.name(),
            self.n,
            self.sample_count,
            self.seed,
            self.mean,
            self.std,
            self.min,
            self.max,
            opt(self.bound_ub),
            opt(self.bound_lb)
        )
    }
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let how = if self.exhaustive {
            "all stacks".to_string()
        } else {
            format!("{} samples, seed {}", self.sample_count, self.seed)
        };
        writeln!(f, "{} n={} ({how})", self.algorithm.name(), self.n)?;
        writeln!(f, "  mean   {:.4}", self.mean)?;
        writeln!(f, "  std    {:.4}", self.std)?;
        writeln!(f, "  range  {}..={}", self.min, self.max)?;
        if let Some(ub) = self.bound_ub {
            writeln!(f, "  upper bound on the mean  {ub:.4}")?;
        }
        if let Some(lb) = self.bound_lb {
            writeln!(f, "  lower bound on the mean  {lb:.4}")?;
        }
        Ok(())
    }
}

/// Weighted flip counts, one group per stack.
type Outcomes = Vec<(f64, usize)>;

fn verified(out: SortOutcome) -> Result<usize> {
    if !out.trace.sorts()? {
        return Err(PancakeError::Internal(format!(
            "trace from `{}` does not sort",
            out.trace.start
        )));
    }
    Ok(out.flips_used)
}

fn exhaustive_outcomes(algo: Algorithm, n: usize) -> Result<Vec<Outcomes>> {
    let variant = algo.variant();
    let limit = match variant {
        Variant::Burnt => MAX_EXHAUSTIVE_BURNT,
        Variant::Unburnt => MAX_EXHAUSTIVE_UNBURNT,
    };
    if n == 0 || n > limit {
        return Err(PancakeError::invalid(format!(
            "exhaustive runs of {} need 1 <= n <= {limit}",
            algo.name()
        )));
    }
    let total = state_count(n, variant)?;
    (0..total)
        .into_par_iter()
        .map(|r| match algo {
            Algorithm::UnburntRandomized => {
                let s = unrank_unburnt(r, n)?;
                let branches = crate::sorters::unburnt_branch_outcomes(&s)?;
                for seed in 0..2 {
                    verified(crate::sorters::sort_unburnt_randomized(&s, seed)?)?;
                }
                Ok(branches)
            }
            _ => {
                let s: AnyStack = unrank_burnt(r, n)?.into();
                let f = verified(run_algorithm(algo, &s, sample_rng(0, r))?)?;
                Ok(vec![(1.0, f)])
            }
        })
        .collect()
}

fn sampled_outcomes(algo: Algorithm, n: usize, count: u64, seed: u64) -> Result<Vec<Outcomes>> {
    if n == 0 {
        return Err(PancakeError::invalid("stack size must be at least 1"));
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let stack = random_stack(n, algo.variant(), &mut rng)?;
            let f = verified(run_algorithm(algo, &stack, rng)?)?;
            Ok(vec![(1.0, f)])
        })
        .collect()
}

fn bounds_for(algo: Algorithm, n: usize) -> (Option<f64>, Option<f64>) {
    let Ok(r) = reference_bounds(n.max(2), None) else {
        return (None, None);
    };
    match algo.variant() {
        Variant::Burnt => (Some(r.burnt_avg_ub), r.burnt_avg_lb),
        Variant::Unburnt => (Some(r.unburnt_avg_ub), Some(r.unburnt_avg_lb)),
    }
}

/// Mean flips of `algo` over every stack of size `n` or over seeded samples.
/// Every trace is replayed and checked.
pub fn average_flips(
    algo: Algorithm,
    n: usize,
    mode: SampleMode,
    seed: u64,
) -> Result<ExperimentReport> {
    let groups = match mode {
        SampleMode::Exhaustive => exhaustive_outcomes(algo, n)?,
        SampleMode::Sampled(c) => sampled_outcomes(algo, n, c, seed)?,
    };
    let (mut wsum, mut fsum) = (0.0, 0.0);
    let (mut min, mut max) = (usize::MAX, 0);
    for &(w, f) in groups.iter().flatten() {
        wsum += w;
        fsum += w * f as f64;
        min = min.min(f);
        max = max.max(f);
    }
    let mean = if wsum > 0.0 { fsum / wsum } else { 0.0 };
    let var = groups
        .iter()
        .flatten()
        .map(|&(w, f)| w * (f as f64 - mean).powi(2))
        .sum::<f64>()
        / wsum.max(1.0);
    let (bound_ub, bound_lb) = bounds_for(algo, n);
    Ok(ExperimentReport {
        algorithm: algo,
        n,
        exhaustive: mode == SampleMode::Exhaustive,
        sample_count: groups.len() as u64,
        seed: if mode == SampleMode::Exhaustive {
            0
        } else {
            seed
        },
        mean,
        std: var.sqrt(),
        min: if groups.is_empty() { 0 } else { min },
        max,
        bound_ub,
        bound_lb,
    })
}

/// Run `f` on a pool of `threads` workers (0 picks the machine default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| PancakeError::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjacencyStats {
    pub n: usize,
    pub variant: Variant,
    pub samples: u64,
    pub empirical_mean: f64,
    pub std_error: f64,
    pub closed_form: f64,
}

/// Adjacencies of a stack. Unburnt stacks also count pancake `n` at the
/// bottom.
pub fn adjacencies(stack: &AnyStack) -> usize {
    match stack {
        AnyStack::Burnt(s) => adjacency_count(s.entries(), false),
        AnyStack::Unburnt(s) => {
            let e = s.entries();
            let pairs = e.windows(2).filter(|w| w[0].abs_diff(w[1]) == 1).count();
            pairs + (e.last() == Some(&(e.len() as u32))) as usize
        }
        AnyStack::Mixed(_) => 0,
    }
}

/// Expected adjacencies in a uniformly random stack.
pub fn expected_adjacencies(n: usize, variant: Variant) -> f64 {
    let n = n as f64;
    match variant {
        Variant::Burnt => (n - 1.0) / (2.0 * n),
        Variant::Unburnt => 1.0 / n + 2.0 * (n - 1.0) / n,
    }
}

pub fn adjacency_stats(
    n: usize,
    variant: Variant,
    samples: u64,
    seed: u64,
) -> Result<AdjacencyStats> {
    if n < 2 || samples < 2 {
        return Err(PancakeError::invalid(
            "need n >= 2 and at least two samples",
        ));
    }
    let counts = (0..samples)
        .into_par_iter()
        .map(|i| {
            Ok(adjacencies(&random_stack(
                n,
                variant,
                &mut sample_rng(seed, i),
            )?))
        })
        .collect::<Result<Vec<usize>>>()?;
    let k = samples as f64;
    let mean = counts.iter().sum::<usize>() as f64 / k;
    let var = counts
        .iter()
        .map(|&c| (c as f64 - mean).powi(2))
        .sum::<f64>()
        / (k - 1.0);
    Ok(AdjacencyStats {
        n,
        variant,
        samples,
        empirical_mean: mean,
        std_error: (var / k).sqrt(),
        closed_form: expected_adjacencies(n, variant),
    })
}

/// Mean adjacency count over every stack of size `n`.
pub fn exhaustive_adjacency_mean(n: usize, variant: Variant) -> Result<f64> {
    let total = state_count(n, variant)?;
    let sum: usize = (0..total)
        .map(|r| crate::rank::unrank(r, n, variant).map(|s| adjacencies(&s)))
        .sum::<Result<usize>>()?;
    Ok(sum as f64 / total as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceBounds {
    pub n: usize,
    pub b: usize,
    /// Lower bound on the optimal burnt average; stated for `n >= 16`.
    pub burnt_avg_lb: Option<f64>,
    pub burnt_avg_ub: f64,
    pub unburnt_avg_ub: f64,
    pub av_plus: f64,
    pub unburnt_avg_lb: f64,
    pub neg_identity_lb: u32,
}

/// `17n/12 + 7b/12 - (n - b + 1) b / (6n) + 9`, the randomized sorter's bound
/// on stacks with `b` burnt pancakes.
pub fn av_plus(n: usize, b: usize) -> f64 {
    let (n, b) = (n as i64, b as i64);
    // everything over 12n
    let num = 17 * n * n + 7 * b * n - 2 * (n - b + 1) * b + 108 * n;
    num as f64 / (12 * n) as f64
}

pub fn reference_bounds(n: usize, b: Option<usize>) -> Result<ReferenceBounds> {
    if n < 2 {
        return Err(PancakeError::invalid("reference bounds need n >= 2"));
    }
    let b = b.unwrap_or(0);
    if b > n {
        return Err(PancakeError::invalid(format!(
            "{b} burnt pancakes in a stack of {n}"
        )));
    }
    let nf = n as f64;
    Ok(ReferenceBounds {
        n,
        b,
        burnt_avg_lb: (n >= 16).then(|| nf + nf / (16.0 * nf.log2()) - 1.5),
        burnt_avg_ub: (7 * n + 20) as f64 / 4.0,
        unburnt_avg_ub: av_plus(n, 0),
        av_plus: av_plus(n, b),
        unburnt_avg_lb: nf - 2.0,
        neg_identity_lb: neg_identity_bound(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("gp".parse::<Algorithm>().is_err());
    }

    #[test]
    fn reference_values() {
        let r = reference_bounds(16, None).unwrap();
        assert!((r.burnt_avg_lb.unwrap() - 14.75).abs() < 1e-12);
        assert_eq!(reference_bounds(12, Some(0)).unwrap().av_plus, 26.0);
        assert_eq!(reference_bounds(100, None).unwrap().burnt_avg_ub, 180.0);
        assert_eq!(reference_bounds(15, None).unwrap().burnt_avg_lb, None);
        assert!(reference_bounds(1, None).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(expected_adjacencies(20, Variant::Burnt), 0.475);
        assert!((expected_adjacencies(10, Variant::Unburnt) - 1.9).abs() < 1e-12);
        assert_eq!(exhaustive_adjacency_mean(2, Variant::Burnt).unwrap(), 0.25);
    }

    #[test]
    fn same_seed_same_stack() {
        let a = random_stack(9, Variant::Burnt, &mut sample_rng(5, 3)).unwrap();
        let b = random_stack(9, Variant::Burnt, &mut sample_rng(5, 3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_row_shape() {
        let r = average_flips(Algorithm::BurntAverage, 4, SampleMode::Exhaustive, 0).unwrap();
        assert_eq!(r.sample_count, 384);
        assert_eq!(r.csv_row().split(',').count(), 10);
        assert!(r.mean <= 12.0);
    }

    #[test]
    fn exhaustive_limits() {
        assert!(average_flips(Algorithm::GreedyLookahead, 8, SampleMode::Exhaustive, 0).is_err());
        assert!(average_flips(Algorithm::UnburntRandomized, 9, SampleMode::Exhaustive, 0).is_err());
    }
}
