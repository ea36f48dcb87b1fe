mod support;

use seqgamma::{TargetFunction, TargetKind};
use support::{closed_form_boundary, rel_err};

fn all_targets(alpha: f64) -> Vec<TargetFunction> {
    vec![
        TargetFunction::mean(alpha).unwrap(),
        TargetFunction::variance(alpha).unwrap(),
        TargetFunction::rate(alpha).unwrap(),
        TargetFunction::survival(alpha, 3.0).unwrap(),
        TargetFunction::survival(alpha, 0.4).unwrap(),
    ]
}

fn log_grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points).map(move |i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
}

fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Fourth-order five-point stencil; tolerates a wider step, which keeps
/// cancellation noise in `1 - P(a, x)` below the tolerance.
fn five_point_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

#[test]
fn derivative_matches_finite_differences() {
    for alpha in [0.5, 2.0, 3.5] {
        for target in all_targets(alpha) {
            for beta in log_grid(0.1, 10.0, 41) {
                let h = 1e-4 * beta;
                let fd = five_point_difference(|x| target.value(x).unwrap(), beta, h);
                let exact = target.derivative(beta).unwrap();
                // skip points where the survival derivative has underflowed
                // below the finite-difference noise floor
                if exact.abs() < 1e-7 {
                    assert!(fd.abs() < 1e-6, "{:?} β={beta}", target.kind());
                    continue;
                }
                assert!(
                    rel_err(fd, exact) < 1e-6,
                    "{:?} α={alpha} β={beta} fd={fd} exact={exact}",
                    target.kind()
                );
            }
        }
    }
}

#[test]
fn survival_derivative_example() {
    let target = TargetFunction::survival(2.0, 3.0).unwrap();
    let h = 1e-6;
    let fd = central_difference(|x| target.value(x).unwrap(), 2.0, h);
    let exact = target.derivative(2.0).unwrap();
    assert!(rel_err(fd, exact) < 1e-6);
    assert!((exact - 0.251_021).abs() < 1e-6);
}

#[test]
fn second_derivative_is_bounded_by_c1_terms() {
    for alpha in [0.5, 2.0, 3.5] {
        for target in all_targets(alpha) {
            let terms = target.c1_terms();
            assert!(terms.d() >= 1);
            assert!(terms.terms().iter().all(|&(a, _)| a >= 0.0));
            for x in log_grid(0.1, 10.0, 60) {
                let h = 1e-5 * x;
                let second = central_difference(|y| target.derivative(y).unwrap(), x, h);
                let bound = terms.bound(x);
                assert!(
                    second.abs() <= bound * (1.0 + 1e-6) + 1e-9,
                    "{:?} α={alpha} x={x} |g''|={} bound={bound}",
                    target.kind(),
                    second.abs()
                );
            }
        }
    }
}

#[test]
fn optimal_size_equals_boundary_and_closed_forms() {
    for alpha in [0.5, 2.0, 5.0] {
        for target in all_targets(alpha) {
            for beta in log_grid(0.2, 5.0, 13) {
                for b in [0.5, 0.01, 1e-4] {
                    let n_star = target.optimal_sample_size(beta, b).unwrap();
                    let boundary = target.stopping_boundary(beta, b).unwrap();
                    assert_eq!(n_star.to_bits(), boundary.to_bits());
                    if alpha.fract() == 0.0 || alpha.fract() == 0.5 {
                        let closed = closed_form_boundary(target.kind(), alpha, beta, b);
                        assert!(rel_err(n_star, closed) < 1e-12, "{:?}", target.kind());
                    }
                }
            }
        }
    }
}

#[test]
fn optimal_size_decreases_in_bound() {
    for target in all_targets(2.0) {
        let mut previous = f64::INFINITY;
        for b in log_grid(1e-5, 1.0, 30) {
            let n = target.optimal_sample_size(1.3, b).unwrap();
            assert!(n < previous, "{:?}", target.kind());
            previous = n;
        }
    }
}

#[test]
fn sign_of_derivative() {
    for target in all_targets(2.0) {
        let d = target.derivative(1.7).unwrap();
        match target.kind() {
            TargetKind::Mean | TargetKind::Variance | TargetKind::Survival { .. } => {
                assert!(d > 0.0)
            }
            TargetKind::Rate => assert!(d < 0.0),
        }
    }
}

#[test]
fn survival_derivative_stays_finite_for_extreme_parameters() {
    let target = TargetFunction::survival(150.0, 400.0).unwrap();
    let d = target.derivative(2.5).unwrap();
    assert!(d.is_finite() && d > 0.0);
    let tiny = TargetFunction::survival(2.0, 3.0)
        .unwrap()
        .derivative(1e-3)
        .unwrap();
    assert!(tiny.is_finite() && tiny >= 0.0);
}
