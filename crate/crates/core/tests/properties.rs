use proptest::prelude::*;

use pancake::exact::{greedy_lb_burnt, verify_trace};
use pancake::experiments::{
    average_flips, random_burnt, random_unburnt, sample_rng, with_threads, Algorithm, SampleMode,
};
use pancake::sorters::{sort_burnt_average, sort_greedy_lookahead, sort_unburnt_randomized};
use pancake::{delta_v, format, lower_bound_potential, parse, rank, unrank, AnyStack, Variant};

fn burnt(n: usize, seed: u64) -> pancake::BurntStack {
    random_burnt(n, &mut sample_rng(seed, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn flips_are_involutions(n in 1usize..40, seed: u64, k in 0usize..40) {
        let s = burnt(n, seed);
        let k = k % (n + 1);
        prop_assert_eq!(s.flip(k).unwrap().flip(k).unwrap(), s);
        let u = random_unburnt(n, &mut sample_rng(seed, 1));
        prop_assert_eq!(u.flip(k).unwrap().flip(k).unwrap(), u);
    }

    #[test]
    fn rank_round_trips(n in 1usize..=12, seed: u64) {
        let s: AnyStack = burnt(n, seed).into();
        prop_assert_eq!(unrank(rank(&s).unwrap(), n, Variant::Burnt).unwrap(), s);
        let u: AnyStack = random_unburnt(n, &mut sample_rng(seed, 1)).into();
        prop_assert_eq!(unrank(rank(&u).unwrap(), n, Variant::Unburnt).unwrap(), u);
    }

    #[test]
    fn text_round_trips(n in 1usize..30, seed: u64) {
        let s: AnyStack = burnt(n, seed).into();
        prop_assert_eq!(parse(&format(&s)).unwrap(), s);
    }

    #[test]
    fn potential_step_is_bounded(n in 2usize..=14, seed: u64, k in 0usize..=14) {
        let s = burnt(n, seed);
        prop_assert!(delta_v(&s, k % (n + 1)) <= 4);
    }

    #[test]
    fn sorters_sort_and_respect_lower_bounds(n in 1usize..80, seed: u64) {
        let s = burnt(n, seed);
        let lb = lower_bound_potential(&s).max(greedy_lb_burnt(&s).bound) as usize;
        for out in [sort_burnt_average(&s).unwrap(), sort_greedy_lookahead(&s).unwrap()] {
            prop_assert!(verify_trace(&out.trace.start, &out.trace.flips).unwrap());
            prop_assert!(out.flips_used >= lb);
        }
        let u = random_unburnt(n, &mut sample_rng(seed, 1));
        let out = sort_unburnt_randomized(&u, seed).unwrap();
        prop_assert!(out.trace.sorts().unwrap());
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    for algo in Algorithm::ALL {
        let run = || average_flips(algo, 30, SampleMode::Sampled(500), 42).unwrap();
        let one = with_threads(1, run).unwrap();
        let four = with_threads(4, run).unwrap();
        assert_eq!(one.csv_row(), four.csv_row());
        assert_eq!(one, run());
    }
}
