use ndigits_core::stochastic::{
    empirical_frequency, frequency_experiment, sample_exceedance, sample_tally, sample_word, unboundedness_probe,
    ExceedanceCounts, FrequencyReport, FrequencyTally, LebesgueDigits, THRESHOLDS,
};
use ndigits_core::stochastic::sample_rng;
use ndigits_core::{DigitWord, Distribution, FrequencyTarget};

fn sigma(p: f64, n: f64) -> f64 {
    (p * (1.0 - p) / n).sqrt()
}

#[test]
fn empirical_frequency_examples() {
    let w: DigitWord = "2,1,1,1".parse().unwrap();
    assert_eq!(empirical_frequency(&w, 1).unwrap(), 0.75);
    assert_eq!(empirical_frequency(&w, 5).unwrap(), 0.0);
    let w: DigitWord = "1,2,1,2".parse().unwrap();
    assert_eq!(empirical_frequency(&w, 2).unwrap(), 0.5);
    assert!(empirical_frequency(&DigitWord::empty(), 1).is_err());
}

#[test]
fn bernoulli_words() {
    let pm = FrequencyTarget::point_mass(3).unwrap();
    assert_eq!(sample_word(&pm, 4, 1).unwrap().digits(), &[3, 3, 3, 3]);

    let g = Distribution::geometric(0.5).unwrap();
    let w = sample_word(&g, 10_000, 11).unwrap();
    let f1 = empirical_frequency(&w, 1).unwrap();
    assert!((0.48..=0.52).contains(&f1));

    let u2 = FrequencyTarget::uniform(2).unwrap();
    let w = sample_word(&u2, 10_000, 12).unwrap();
    assert_eq!(w.digits().iter().max(), Some(&2));
    assert_eq!(sample_word(&g, 50, 5).unwrap(), sample_word(&g, 50, 5).unwrap());
}

#[test]
fn bernoulli_frequencies_converge_to_target() {
    let q = vec![0.1, 0.4, 0.05, 0.25, 0.2];
    let target = FrequencyTarget::finite(q.clone()).unwrap();
    let k = 40_000;
    let w = sample_word(&target, k, 99).unwrap();
    for (i, &qi) in q.iter().enumerate() {
        let f = empirical_frequency(&w, i as u64 + 1).unwrap();
        assert!((f - qi).abs() <= 4.0 * sigma(qi, k as f64), "digit {}", i + 1);
    }
}

#[test]
fn first_digit_marginal_is_p() {
    for dist in [Distribution::geometric(0.5).unwrap(), Distribution::poisson(1.0).unwrap(), Distribution::zeta(2.0).unwrap()] {
        let n = 20_000u64;
        let mut tally = FrequencyTally::new(8);
        for i in 0..n {
            tally.merge(&sample_tally(&dist, 1, 8, 2024, i).unwrap());
        }
        for d in 1..=8u64 {
            let p = dist.pmf(d).unwrap();
            let f = tally.counts[(d - 1) as usize] as f64 / n as f64;
            assert!((f - p).abs() <= 4.0 * sigma(p, n as f64), "{:?} digit {d}", dist.family());
        }
    }
}

#[test]
fn full_orbits_follow_p() {
    let dist = Distribution::geometric(0.5).unwrap();
    let r = frequency_experiment(&dist, 1000, 50, 10, 7).unwrap();
    for d in r.digits.iter().take(6) {
        assert!(d.abs_deviation <= 4.0 * d.sigma, "digit {}", d.digit);
    }
    assert!((r.digits[0].empirical - 0.5).abs() <= 0.01);
    let p = Distribution::poisson(1.0).unwrap();
    let r = frequency_experiment(&p, 1000, 50, 10, 7).unwrap();
    assert!((r.digits[0].empirical - (-1f64).exp()).abs() <= 0.01);
}

#[test]
fn report_counts_add_up() {
    for dist in [Distribution::zeta(1.5).unwrap(), Distribution::geometric(0.9).unwrap()] {
        let r = frequency_experiment(&dist, 300, 50, 6, 3).unwrap();
        let counted: u64 = r.tally.counts.iter().sum::<u64>() + r.tally.out_of_horizon;
        assert_eq!(counted, r.total_digits);
        assert_eq!(r.total_digits, 300 * 50);
        let mass: f64 = r.digits.iter().map(|d| d.empirical).sum::<f64>() + r.out_of_horizon;
        assert!((mass - 1.0).abs() < 1e-12);
        assert!(r.digits.iter().all(|d| (0.0..=1.0).contains(&d.empirical)));
    }
}

#[test]
fn single_sample_single_digit_is_one_hot() {
    let dist = Distribution::geometric(0.5).unwrap();
    let r = frequency_experiment(&dist, 1, 1, 5, 42).unwrap();
    let ones: Vec<_> = r.digits.iter().filter(|d| d.empirical == 1.0).collect();
    let zeros = r.digits.iter().filter(|d| d.empirical == 0.0).count();
    assert!(ones.len() + zeros == 5 && (ones.len() == 1 || r.out_of_horizon == 1.0));
}

#[test]
fn experiments_are_deterministic_and_order_free() {
    let dist = Distribution::poisson(2.0).unwrap();
    let a = frequency_experiment(&dist, 200, 30, 8, 5).unwrap();
    let b = frequency_experiment(&dist, 200, 30, 8, 5).unwrap();
    assert_eq!(a, b);
    // merging per-sample tallies in any order reproduces the report bit for bit
    let mut tally = FrequencyTally::new(8);
    for i in (0..200).rev() {
        tally.merge(&sample_tally(&dist, 30, 8, 5, i).unwrap());
    }
    assert_eq!(FrequencyReport::from_tally(&dist, 30, tally).unwrap(), a);
    let c = frequency_experiment(&dist, 200, 30, 8, 6).unwrap();
    assert_ne!(a.tally, c.tally);
}

#[test]
fn growth_curve_properties() {
    let g = Distribution::geometric(0.5).unwrap();
    let n = 4000u64;
    let curve = unboundedness_probe(&g, n, 50, 8).unwrap();
    assert_eq!(curve.thresholds, THRESHOLDS);
    for w in curve.fractions.windows(2) {
        for t in 0..3 {
            assert!(w[1][t] >= w[0][t]);
        }
    }
    for (t, &threshold) in THRESHOLDS.iter().enumerate() {
        let tail = g.tail_mass_bound(threshold + 1);
        assert!((curve.fractions[0][t] - tail).abs() <= 4.0 * sigma(tail, n as f64) + 1e-12);
    }
    let exact = 1.0 - (1.0 - 0.5f64.powi(5)).powi(50);
    assert!((curve.fractions[49][1] - exact).abs() <= 4.0 * sigma(exact, n as f64));

    let two = Distribution::finite(vec![0.7, 0.3]).unwrap();
    let curve = unboundedness_probe(&two, 200, 50, 1).unwrap();
    assert!(curve.fractions.iter().all(|row| row[1] == 0.0 && row[2] == 0.0));

    let mut merged = ExceedanceCounts::new(50);
    for i in (0..200).rev() {
        merged.merge(&sample_exceedance(&two, 50, 1, i).unwrap());
    }
    assert_eq!(curve, (&merged).into());
}

#[test]
fn lebesgue_orbit_digits_are_independent() {
    // consecutive digit pairs factor as p_a p_b
    let g = Distribution::geometric(0.5).unwrap();
    let n = 20_000u64;
    let mut both_one = 0u64;
    for i in 0..n {
        let mut orbit = LebesgueDigits::new(&g, sample_rng(31, i));
        let _ = (0..20).map(|_| orbit.next_digit()).count();
        let a = orbit.next_digit().unwrap();
        let b = orbit.next_digit().unwrap();
        both_one += u64::from(a == Some(1) && b == Some(1));
    }
    let f = both_one as f64 / n as f64;
    assert!((f - 0.25).abs() <= 4.0 * sigma(0.25, n as f64));
}
