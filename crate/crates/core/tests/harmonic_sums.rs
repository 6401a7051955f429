//! Closed-form reciprocal sums against compensated direct summation.

use hyperpart_core::numeric::{arithmetic_reciprocal_sum, NeumaierSum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn direct(alpha: f64, beta: f64, first: u64, last: u64) -> f64 {
    (first..=last)
        .map(|k| 1.0 / (alpha + beta * k as f64))
        .collect::<NeumaierSum>()
        .value()
}

#[test]
fn hundred_random_ranges_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let first = rng.gen_range(1..=1_000_000u64);
        let last = first + rng.gen_range(0..=1_000_000u64);
        let got = arithmetic_reciprocal_sum(0.0, 1.0, first, last);
        let want = direct(0.0, 1.0, first, last);
        worst = worst.max((got - want).abs() / want);
    }
    assert!(worst < 1e-10, "worst relative error {worst:e}");
}

#[test]
fn shifted_progressions_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let alpha = rng.gen_range(0.0..50.0);
        let beta = rng.gen_range(0.1..20.0);
        let first = rng.gen_range(1..=10_000u64);
        let last = first + rng.gen_range(0..=200_000u64);
        let got = arithmetic_reciprocal_sum(alpha, beta, first, last);
        let want = direct(alpha, beta, first, last);
        assert!(
            (got - want).abs() <= 1e-10 * want,
            "α = {alpha}, β = {beta}, [{first}, {last}]: {got} vs {want}"
        );
    }
}

#[test]
fn empty_and_single_ranges() {
    assert_eq!(arithmetic_reciprocal_sum(0.0, 1.0, 5, 4), 0.0);
    assert!((arithmetic_reciprocal_sum(1.0, 2.0, 3, 3) - 1.0 / 7.0).abs() < 1e-15);
}
