//! Worked examples and frozen totals. Frozen numbers were produced by the
//! exhaustive runs they are compared against and cross-checked by the
//! reference evaluator below.

use pancake::exact::SolverConfig;
use pancake::exact::{bfs_distances, greedy_lb_burnt, max_flips};
use pancake::experiments::{av_plus, average_flips, Algorithm, SampleMode};
use pancake::{
    analyze_structure, contract, contract_mixed, delta_v, expand, identity_thirds,
    lower_bound_potential, mixed_adjacent, potential, single_flip_adjacency, state_count, unrank,
    BurntStack, MixedPancake, MixedStack, Orientation, SpecialStack, Variant,
};

fn b(v: &[i32]) -> BurntStack {
    BurntStack::new(v.to_vec()).unwrap()
}

/// Potential in thirds, evaluated straight from the definitions.
fn reference_thirds(v: &[i32]) -> i64 {
    fn half(v: &[i32]) -> (i64, i64, i64, i64, i64) {
        let n = v.len();
        let adj: Vec<bool> = v.windows(2).map(|w| w[1] == w[0] + 1).collect();
        let anti: Vec<bool> = v.windows(2).map(|w| w[1] == w[0] - 1).collect();
        let in_block = |i: usize| (i > 0 && adj[i - 1]) || (i + 1 < n && adj[i]);
        let in_clan = |i: usize| (i > 0 && anti[i - 1]) || (i + 1 < n && anti[i]);
        let a = adj.iter().filter(|&&x| x).count() as i64;
        // blocks start where an adjacency follows a non-adjacency
        let deep = (1..adj.len()).filter(|&i| adj[i] && !adj[i - 1]).count() as i64;
        let one = v.iter().position(|x| x.abs() == 1).unwrap();
        let o = ((v[0] == -1 && !in_block(0) && !in_clan(0)) || in_block(one)) as i64;
        let l = (v[n - 1] == n as i32) as i64;
        let ll = (l == 1 && n >= 2 && v[n - 2] == n as i32 - 1) as i64;
        (a, deep, o, l, ll)
    }
    let neg: Vec<i32> = v.iter().map(|x| -x).collect();
    let (a, bb, o, l, ll) = half(v);
    let (am, bm, om, lm, llm) = half(&neg);
    3 * (a - am) - (bb - bm) + (o - om) + 3 * (l - lm) + (ll - llm)
}

#[test]
fn potential_matches_reference_evaluator() {
    for n in 1..=6 {
        for r in 0..state_count(n, Variant::Burnt).unwrap() {
            let s = unrank(r, n, Variant::Burnt).unwrap().to_burnt().unwrap();
            assert_eq!(
                potential(&s).value_thirds,
                reference_thirds(s.entries()),
                "{s}"
            );
        }
    }
}

#[test]
fn potential_examples() {
    assert_eq!(potential(&BurntStack::identity(4)).value_thirds, 14);
    assert_eq!(identity_thirds(4), 14);
    let neg4 = BurntStack::special(SpecialStack::NegIdentity, 4).unwrap();
    assert_eq!(potential(&neg4).value_thirds, -14);
    let p = potential(&b(&[2, -1, 3]));
    assert_eq!(p.value_thirds, 3);
    assert_eq!(
        (p.a, p.a_minus, p.b, p.b_minus, p.o, p.o_minus),
        (0, 0, 0, 0, 0, 0)
    );
    assert_eq!((p.l, p.l_minus, p.ll, p.ll_minus), (1, 0, 0, 0));

    // (-1,-2,-3) -> (+1,-2,-3): -11 thirds to -7
    let neg3 = BurntStack::special(SpecialStack::NegIdentity, 3).unwrap();
    assert_eq!(reference_thirds(&[-1, -2, -3]), -11);
    assert_eq!(reference_thirds(&[1, -2, -3]), -7);
    assert_eq!(delta_v(&neg3, 1), 4);
    assert_eq!(delta_v(&neg3, 0), 0);

    let neg7 = BurntStack::special(SpecialStack::NegIdentity, 7).unwrap();
    assert_eq!(lower_bound_potential(&neg7), 12);
    assert_eq!(lower_bound_potential(&BurntStack::identity(9)), 0);
    assert_eq!(lower_bound_potential(&b(&[-1])), 1);
}

#[test]
fn structure_examples() {
    let r = analyze_structure(&b(&[2, -1, 3]), false);
    assert!(r.adjacencies.is_empty() && r.anti_adjacencies.is_empty());
    assert_eq!(single_flip_adjacency(&b(&[2, -3, -1, 4]), false), Some(2));
    let s = b(&[-2, 4, 3, 1]);
    assert_eq!(single_flip_adjacency(&s, false), Some(2));
    assert_eq!(s.flip(2).unwrap(), b(&[-4, 2, 3, 1]));
    assert_eq!(single_flip_adjacency(&BurntStack::identity(6), false), None);

    assert_eq!(contract(&b(&[3, 1, 2]), 2).unwrap(), b(&[2, 1]));
    assert_eq!(expand(&b(&[-1]), 1).unwrap(), b(&[-2, -1]));
    assert_eq!(expand(&b(&[1]), 1).unwrap(), b(&[1, 2]));

    let m = |v: &[(u32, Orientation)]| {
        MixedStack::new(v.iter().map(|&(l, o)| MixedPancake::new(l, o)).collect()).unwrap()
    };
    use Orientation::*;
    assert!(mixed_adjacent(&m(&[(2, Down), (3, Unburnt), (1, Down)]), 1));
    assert!(!mixed_adjacent(
        &m(&[(2, Down), (1, Unburnt), (3, Down)]),
        1
    ));
    let c = contract_mixed(&m(&[(2, Unburnt), (3, Down), (1, Down)]), 1).unwrap();
    assert_eq!(c, m(&[(2, Down), (1, Down)]));
}

#[test]
fn distance_examples() {
    let t = bfs_distances(3, Variant::Burnt).unwrap();
    let d = |v: &[i32]| t.distance_of(&b(v).into()).unwrap();
    assert_eq!(
        d(&[3, 1, 2]),
        bfs_distances(2, Variant::Burnt)
            .unwrap()
            .distance_of(&b(&[2, 1]).into())
            .unwrap()
    );
    let neg5 = BurntStack::special(SpecialStack::NegIdentity, 5).unwrap();
    assert!(greedy_lb_burnt(&neg5).bound <= 10);

    let config = SolverConfig::default();
    assert_eq!(max_flips(7, Variant::Unburnt, &config).unwrap().value, 8);
    let g7 = max_flips(7, Variant::Burnt, &config).unwrap();
    assert_eq!(g7.value, 14);
    let t7 = bfs_distances(7, Variant::Burnt).unwrap();
    assert_eq!(g7.witnesses.len() as u64, t7.count_at(14));
}

#[test]
fn frozen_exhaustive_totals() {
    // total flips over every stack, and over coin branches for the randomized sorter
    let burnt_avg = [(3, 209.0), (4, 2477.0), (5, 32251.0), (6, 473520.0)];
    let greedy = [(3, 210.0), (4, 2312.0), (5, 29006.0), (6, 416088.0)];
    let unburnt = [(2, 1.0), (3, 11.0), (4, 84.25), (5, 623.25), (6, 4887.25)];
    for (algo, rows) in [
        (Algorithm::BurntAverage, &burnt_avg[..]),
        (Algorithm::GreedyLookahead, &greedy[..]),
        (Algorithm::UnburntRandomized, &unburnt[..]),
    ] {
        for &(n, total) in rows {
            let r = average_flips(algo, n, SampleMode::Exhaustive, 0).unwrap();
            let got = r.mean * r.sample_count as f64;
            assert!((got - total).abs() < 1e-6, "{} n = {n}: {got}", algo.name());
            assert!(r.mean <= r.bound_ub.unwrap());
        }
    }
}

#[test]
fn unburnt_sampled_below_bound() {
    let r = average_flips(
        Algorithm::UnburntRandomized,
        12,
        SampleMode::Sampled(100_000),
        0,
    )
    .unwrap();
    assert_eq!(av_plus(12, 0), 26.0);
    assert!(r.mean <= 26.0, "{}", r.mean);
}
