mod support;

use rand::distr::Distribution;
use seqgamma::gamma_core::{GammaParams, GammaSampler, RngStream};
use seqgamma::second_order::{evaluate, series_terms, ExpansionKind, ExpansionSpec};
use seqgamma::{run_to_completion, StoppingConfig, TargetFunction};

use support::reference_values::SECOND_ORDER;

#[test]
fn constants_match_high_precision_sums() {
    for &(alpha, mean, variance) in &SECOND_ORDER {
        for (kind, want) in [
            (ExpansionKind::Mean, mean),
            (ExpansionKind::Variance, variance),
        ] {
            let got = evaluate(&ExpansionSpec::new(kind, alpha)).unwrap().constant;
            assert!(
                (got - want).abs() < 1e-12,
                "{kind:?} α={alpha}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn series_terms_are_positive_and_eventually_decreasing() {
    for kind in [ExpansionKind::Mean, ExpansionKind::Variance] {
        for alpha in [0.5, 2.0, 5.0] {
            let terms = series_terms(&ExpansionSpec::new(kind, alpha)).unwrap();
            assert!(terms.iter().all(|&t| t > 0.0));
            let tail = &terms[terms.len() / 2..];
            assert!(tail.windows(2).all(|w| w[1] < w[0]), "{kind:?} α={alpha}");
            assert!(*terms.last().unwrap() < 1e-15);
            assert!(terms[..terms.len() - 1].iter().all(|&t| t >= 1e-15));
        }
    }
}

#[test]
fn truncation_error_is_negligible() {
    for kind in [ExpansionKind::Mean, ExpansionKind::Variance] {
        let coarse = evaluate(&ExpansionSpec::new(kind, 2.0)).unwrap();
        let fine = evaluate(&ExpansionSpec::new(kind, 2.0).with_epsilon(1e-25)).unwrap();
        assert!(fine.terms > coarse.terms);
        assert!((coarse.constant - fine.constant).abs() < 1e-12);
    }
}

/// Monte Carlo `E[N - n*]` at a large `n*` agrees with the constant within
/// four standard errors.
#[test]
fn constant_agrees_with_simulation() {
    for (kind, target, beta, b) in [
        (
            ExpansionKind::Mean,
            TargetFunction::mean(2.0).unwrap(),
            2.0,
            0.008,
        ),
        (
            ExpansionKind::Variance,
            TargetFunction::variance(2.0).unwrap(),
            1.0,
            0.008,
        ),
    ] {
        let constant = evaluate(&ExpansionSpec::new(kind, 2.0)).unwrap().constant;
        let n_star = target.optimal_sample_size(beta, b).unwrap();
        let sampler = GammaSampler::new(GammaParams::new(2.0, beta).unwrap());
        let reps = 4_000;
        let diffs: Vec<f64> = (0..reps)
            .map(|r| {
                let mut rng = RngStream::new(99, r);
                let xs = std::iter::repeat_with(|| sampler.sample(&mut rng));
                let out = run_to_completion(target, StoppingConfig::new(20, b, 2.0), xs).unwrap();
                out.stopped().unwrap().terminal_n as f64 - n_star
            })
            .collect();
        let mean = diffs.iter().sum::<f64>() / reps as f64;
        let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (reps as f64 - 1.0);
        let se = (var / reps as f64).sqrt();
        assert!(
            (mean - constant).abs() < 4.0 * se,
            "{kind:?}: simulated {mean} ± {se}, constant {constant}"
        );
    }
}
