use statrs::distribution::{ChiSquared, ContinuousCDF};

use pancake::experiments::{random_stack, sample_rng};
use pancake::{rank, state_count, Variant};

fn uniformity_p_value(n: usize, variant: Variant, samples: u64) -> f64 {
    let cells = state_count(n, variant).unwrap() as usize;
    let mut counts = vec![0u64; cells];
    let mut rng = sample_rng(2024, 0);
    for _ in 0..samples {
        let s = random_stack(n, variant, &mut rng).unwrap();
        counts[rank(&s).unwrap() as usize] += 1;
    }
    let expected = samples as f64 / cells as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    ChiSquared::new((cells - 1) as f64).unwrap().sf(chi2)
}

#[test]
fn random_burnt_stacks_are_uniform() {
    let p = uniformity_p_value(3, Variant::Burnt, 1_000_000);
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn random_unburnt_stacks_are_uniform() {
    let p = uniformity_p_value(5, Variant::Unburnt, 500_000);
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn single_pancake_orientation_is_fair() {
    let ups = (0..100_000)
        .filter(|&i| {
            let s = random_stack(1, Variant::Burnt, &mut sample_rng(9, i)).unwrap();
            !s.is_sorted()
        })
        .count() as f64;
    // within five standard deviations of 50000
    assert!((ups - 50_000.0).abs() < 5.0 * (25_000.0f64).sqrt(), "{ups}");
}
