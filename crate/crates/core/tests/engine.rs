mod support;

use proptest::prelude::*;
use rand::distr::Distribution;
use seqgamma::gamma_core::{GammaParams, GammaSampler, RngStream};
use seqgamma::{
    run_to_completion, RunOutcome, SequentialEstimator, Status, StoppingConfig, TargetFunction,
};
use support::{batch_stopping_time, closed_form_boundary};

fn stream(alpha: f64, beta: f64, seed: u64, len: usize) -> Vec<f64> {
    let sampler = GammaSampler::new(GammaParams::new(alpha, beta).unwrap());
    let mut rng = RngStream::new(seed, 0);
    (0..len).map(|_| sampler.sample(&mut rng)).collect()
}

fn stopping_time(target: TargetFunction, m: u64, b: f64, xs: &[f64]) -> Option<u64> {
    let cfg = StoppingConfig::new(m, b, target.alpha());
    match run_to_completion(target, cfg, xs.iter().copied()).unwrap() {
        RunOutcome::Stopped(r) => Some(r.terminal_n),
        RunOutcome::Exhausted(_) => None,
    }
}

#[test]
fn recorded_stream_matches_batch_replay() {
    let target = TargetFunction::mean(2.0).unwrap();
    let xs = stream(2.0, 2.0, 31, 5_000);
    let n = stopping_time(target, 20, 0.160, &xs).unwrap();
    assert_eq!(Some(n), batch_stopping_time(&target, 20, 0.160, &xs));
    assert!(n >= 20);
    let beta_at = |k: usize| xs[..k].iter().sum::<f64>() / (k as f64 * 2.0);
    assert!(n as f64 >= 2.0 * beta_at(n as usize).powi(2) / 0.160);
    if n > 20 {
        let prev = n as usize - 1;
        assert!((prev as f64) < 2.0 * beta_at(prev).powi(2) / 0.160);
    }
    let halved = stopping_time(target, 20, 0.080, &xs).unwrap();
    assert!(halved >= n);
}

#[test]
fn streaming_state_equals_prefix_recomputation() {
    let target = TargetFunction::variance(2.0).unwrap();
    let xs = stream(2.0, 1.0, 8, 3_000);
    let mut est = SequentialEstimator::new(target, StoppingConfig::new(20, 1e-4, 2.0)).unwrap();
    for (k, &x) in xs.iter().enumerate() {
        if est.observe(x).unwrap() == Status::Stopped {
            break;
        }
        let prefix: f64 = xs[..=k].iter().sum();
        assert_eq!(est.state().sum_x().to_bits(), prefix.to_bits());
        assert_eq!(est.state().n(), k as u64 + 1);
    }
}

#[test]
fn closed_form_boundaries_give_the_same_stopping_times() {
    for (i, target) in [
        TargetFunction::mean(2.0).unwrap(),
        TargetFunction::variance(2.0).unwrap(),
        TargetFunction::rate(2.0).unwrap(),
        TargetFunction::survival(2.0, 3.0).unwrap(),
    ]
    .into_iter()
    .enumerate()
    {
        let b = [0.04, 0.04, 0.0025, 0.00063][i];
        for seed in 0..50 {
            let xs = stream(2.0, if i == 0 || i == 3 { 2.0 } else { 1.0 }, seed, 4_000);
            let n = stopping_time(target, 20, b, &xs).unwrap();
            let oracle = (20..=xs.len()).find(|&k| {
                let beta = xs[..k].iter().sum::<f64>() / (k as f64 * 2.0);
                k as f64 >= closed_form_boundary(target.kind(), 2.0, beta, b)
            });
            assert_eq!(Some(n as usize), oracle, "{:?} seed={seed}", target.kind());
        }
    }
}

#[test]
fn terminal_estimate_is_g_of_beta_hat() {
    let target = TargetFunction::survival(2.0, 3.0).unwrap();
    let xs = stream(2.0, 2.0, 4, 5_000);
    let out = run_to_completion(target, StoppingConfig::new(20, 0.00126, 2.0), xs).unwrap();
    let r = out.stopped().unwrap();
    assert_eq!(
        r.g_estimate.to_bits(),
        target.value(r.beta_hat).unwrap().to_bits()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn first_crossing_and_monotonicity(
        seed in any::<u64>(),
        pilot in 6u64..40,
        b in 0.005f64..0.5,
        shrink in 0.1f64..1.0,
    ) {
        let target = TargetFunction::mean(2.0).unwrap();
        let xs = stream(2.0, 2.0, seed, 20_000);
        let n = stopping_time(target, pilot, b, &xs);
        prop_assert_eq!(n, batch_stopping_time(&target, pilot, b, &xs));
        let n = n.unwrap();
        prop_assert!(n >= pilot);
        let tighter = stopping_time(target, pilot, b * shrink, &xs).unwrap();
        prop_assert!(tighter >= n);
    }
}
