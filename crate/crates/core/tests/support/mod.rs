//! Test-only oracles, independent of the library's evaluation paths.
#![allow(dead_code)]

pub mod reference_values;

use seqgamma::{TargetFunction, TargetKind};

/// Boundary from the specialised closed forms of the four rules, written
/// out separately from the library's generic `g'(β)² β² / (α b)`.
pub fn closed_form_boundary(kind: TargetKind, alpha: f64, beta: f64, b: f64) -> f64 {
    match kind {
        TargetKind::Mean => alpha * beta * beta / b,
        TargetKind::Variance => 4.0 * alpha * beta.powi(4) / b,
        TargetKind::Rate => 1.0 / (alpha * b * beta * beta),
        TargetKind::Survival { c } => {
            let gamma_alpha = gamma_by_product(alpha);
            c.powf(2.0 * alpha) * beta.powf(-2.0 * alpha) * (-2.0 * c / beta).exp()
                / (gamma_alpha * gamma_alpha * alpha * b)
        }
    }
}

/// Γ(α) for the handful of shapes the tests use: integers and half-integers
/// via the recurrence from Γ(1) = 1 and Γ(1/2) = √π.
pub fn gamma_by_product(alpha: f64) -> f64 {
    let frac = alpha - alpha.floor();
    let (mut x, mut g) = if frac == 0.0 {
        (1.0, 1.0)
    } else if frac == 0.5 {
        (0.5, std::f64::consts::PI.sqrt())
    } else {
        panic!("gamma_by_product supports integer and half-integer shapes, got {alpha}");
    };
    while x < alpha {
        g *= x;
        x += 1.0;
    }
    g
}

/// Replays a stream from scratch at every prefix and returns the first
/// `n >= m` with `n >= boundary(β̂ₙ)`, or `None` if the stream runs out.
pub fn batch_stopping_time(target: &TargetFunction, m: u64, b: f64, xs: &[f64]) -> Option<u64> {
    let alpha = target.alpha();
    (m as usize..=xs.len()).find_map(|n| {
        let sum: f64 = xs[..n].iter().sum();
        let beta_hat = sum / (n as f64 * alpha);
        let boundary = target.stopping_boundary(beta_hat, b).unwrap();
        (n as f64 >= boundary).then_some(n as u64)
    })
}

/// Composite Gauss–Legendre (5-point) quadrature over `[a, b]`.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    const NODES: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683_1,
        0.538_469_310_105_683_1,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const WEIGHTS: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + i as f64 * h;
            let mid = lo + 0.5 * h;
            NODES
                .iter()
                .zip(WEIGHTS.iter())
                .map(|(x, w)| w * f(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// Q(n, x) for integer n via the Poisson sum `e^{-x} Σ_{j<n} x^j / j!`.
pub fn poisson_upper_gamma(n: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..n {
        term *= x / j as f64;
        sum += term;
    }
    (-x).exp() * sum
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
