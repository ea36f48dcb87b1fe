//! The estimands `g(β)`: gamma mean, variance, rate and a survival probability.
//!
//! Each target knows its value and first derivative, a bound on its second
//! derivative of the form `Σ a_j x^{k_j}`, and from those the optimal fixed
//! sample size `n* = g'(β)² β² / (α b)` and the plug-in stopping boundary.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma_core::{log_gamma, reg_upper_gamma};

/// Moment order used when no other is requested. The moment condition needs
/// some `p > 2`; evaluating the strict inequality at `p = 2` gives the
/// infimum over admissible `p`, which reproduces the published pilot-size
/// thresholds (`m > 6/α` for the rate, `m > 2 + 6/α` for the survival
/// probability).
pub const DEFAULT_MOMENT_ORDER: f64 = 2.0;

const BETA_MSG: &str = "beta must be finite and > 0";
const BETA_HAT_MSG: &str = "beta_hat must be finite and > 0 (degenerate data)";
const BOUND_MSG: &str = "variance bound b must be finite and > 0";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetKind {
    Mean,
    Variance,
    Rate,
    Survival { c: f64 },
}

impl TargetKind {
    pub fn name(&self) -> &'static str {
        match self {
            TargetKind::Mean => "mean",
            TargetKind::Variance => "variance",
            TargetKind::Rate => "rate",
            TargetKind::Survival { .. } => "survival",
        }
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetKind::Survival { c } => write!(f, "survival(c={c})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A target function bound to the known shape `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TargetFunction {
    kind: TargetKind,
    alpha: f64,
    #[serde(skip)]
    log_gamma_alpha: f64,
}

/// Bound terms `(a_j, k_j)` with `|g''(x)| <= Σ a_j x^{k_j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C1Terms {
    terms: Vec<(f64, f64)>,
}

impl C1Terms {
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn d(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exponent(&self) -> f64 {
        self.terms
            .iter()
            .map(|&(_, k)| k)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn bound(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(a, k)| a * x.powf(k)).sum()
    }
}

impl TargetFunction {
    pub fn new(kind: TargetKind, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::domain("shape alpha must be finite and > 0", alpha));
        }
        if let TargetKind::Survival { c } = kind {
            if !(c > 0.0) || !c.is_finite() {
                return Err(Error::domain(
                    "survival threshold c must be finite and > 0",
                    c,
                ));
            }
        }
        Ok(TargetFunction {
            kind,
            alpha,
            log_gamma_alpha: log_gamma(alpha)?,
        })
    }

    pub fn mean(alpha: f64) -> Result<Self> {
        Self::new(TargetKind::Mean, alpha)
    }

    pub fn variance(alpha: f64) -> Result<Self> {
        Self::new(TargetKind::Variance, alpha)
    }

    pub fn rate(alpha: f64) -> Result<Self> {
        Self::new(TargetKind::Rate, alpha)
    }

    pub fn survival(alpha: f64, c: f64) -> Result<Self> {
        Self::new(TargetKind::Survival { c }, alpha)
    }

    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `g(β)`.
    pub fn value(&self, beta: f64) -> Result<f64> {
        check_positive(BETA_MSG, beta)?;
        let alpha = self.alpha;
        Ok(match self.kind {
            TargetKind::Mean => alpha * beta,
            TargetKind::Variance => alpha * beta * beta,
            TargetKind::Rate => 1.0 / beta,
            TargetKind::Survival { c } => reg_upper_gamma(alpha, c / beta)?,
        })
    }

    /// `g'(β)`.
    pub fn derivative(&self, beta: f64) -> Result<f64> {
        check_positive(BETA_MSG, beta)?;
        Ok(self.derivative_unchecked(beta))
    }

    fn derivative_unchecked(&self, beta: f64) -> f64 {
        let alpha = self.alpha;
        match self.kind {
            TargetKind::Mean => alpha,
            TargetKind::Variance => 2.0 * alpha * beta,
            TargetKind::Rate => -1.0 / (beta * beta),
            // d/dβ Q(α, c/β) = c^α β^{-(α+1)} e^{-c/β} / Γ(α): the survival
            // probability increases with the scale.
            TargetKind::Survival { c } => {
                let log_abs =
                    alpha * c.ln() - self.log_gamma_alpha - (alpha + 1.0) * beta.ln() - c / beta;
                log_abs.exp()
            }
        }
    }

    pub fn c1_terms(&self) -> C1Terms {
        let alpha = self.alpha;
        let terms = match self.kind {
            TargetKind::Mean => vec![(alpha, 0.0)],
            // |g''| = 2α is constant, so the exponent is zero.
            TargetKind::Variance => vec![(2.0 * alpha, 0.0)],
            TargetKind::Rate => vec![(2.0, -3.0)],
            TargetKind::Survival { c } => {
                let gamma_alpha = self.log_gamma_alpha.exp();
                vec![
                    (c.powf(alpha) * (alpha + 1.0) / gamma_alpha, -(alpha + 2.0)),
                    (c.powf(alpha + 1.0) / gamma_alpha, -(alpha + 3.0)),
                ]
            }
        };
        C1Terms { terms }
    }

    /// Smallest pilot size `m` with `p · min_j k_j + m α > 0`.
    ///
    /// `p` must be at least [`DEFAULT_MOMENT_ORDER`].
    pub fn min_pilot_size(&self, p: f64) -> Result<u64> {
        if !(p >= DEFAULT_MOMENT_ORDER) || !p.is_finite() {
            return Err(Error::domain("moment order p must be >= 2", p));
        }
        let min_k = self.c1_terms().min_exponent();
        let holds = |m: u64| p * min_k + m as f64 * self.alpha > 0.0;
        let mut m = if min_k >= 0.0 {
            1
        } else {
            ((-p * min_k / self.alpha).floor() as u64).max(1)
        };
        while !holds(m) {
            m += 1;
        }
        while m > 1 && holds(m - 1) {
            m -= 1;
        }
        Ok(m)
    }

    /// Pilot size at the default moment order.
    pub fn default_min_pilot_size(&self) -> u64 {
        self.min_pilot_size(DEFAULT_MOMENT_ORDER)
            .expect("default moment order is valid")
    }

    /// `n* = g'(β)² β² / (α b)`.
    pub fn optimal_sample_size(&self, beta: f64, b: f64) -> Result<f64> {
        check_positive(BETA_MSG, beta)?;
        check_positive(BOUND_MSG, b)?;
        Ok(self.boundary_unchecked(beta, b))
    }

    /// The stopping boundary with the plug-in estimate `β̂` in place of `β`.
    pub fn stopping_boundary(&self, beta_hat: f64, b: f64) -> Result<f64> {
        check_positive(BETA_HAT_MSG, beta_hat)?;
        check_positive(BOUND_MSG, b)?;
        Ok(self.boundary_unchecked(beta_hat, b))
    }

    pub(crate) fn boundary_unchecked(&self, beta: f64, b: f64) -> f64 {
        let slope = self.derivative_unchecked(beta) * beta;
        slope * slope / (self.alpha * b)
    }
}

/// Smallest pilot size for which the second-order expansions of the mean and
/// variance rules are stated: `m > 4/α`.
pub fn min_pilot_for_expansion(alpha: f64) -> u64 {
    // ceil(4/α) when 4/α is not an integer, otherwise 4/α + 1.
    let threshold = 4.0 / alpha;
    let mut m = threshold.floor().max(0.0) as u64;
    while (m as f64) <= threshold {
        m += 1;
    }
    m
}

fn check_positive(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, value))
    }
}
