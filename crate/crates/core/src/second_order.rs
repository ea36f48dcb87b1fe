//! Second-order constants `lim E[N - n*]` for the mean and variance rules.
//!
//! Both rules can be written as Woodroofe-type stopping times on partial
//! sums of i.i.d. `Γ(α, 1)` variables, whose second-order term is
//!
//! ```text
//! mean:      1/2 - 1/α - (2/α) Σ_{n>=1} (1/n) E(S_n - (3/2) α n)⁺
//! variance:  1/2 - 2/α - (4/α) Σ_{n>=1} (1/n) E(S_n - (5/4) α n)⁺
//! ```
//!
//! with `S_n ~ Γ(nα, 1)`. Each expectation has the closed form
//! `E(S - t)⁺ = k Q(k+1, t) - t Q(k, t)` for `S ~ Γ(k, 1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma_core::reg_upper_gamma;
use crate::target::TargetKind;

pub const DEFAULT_TRUNCATION_EPSILON: f64 = 1e-15;
pub const MAX_SERIES_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionKind {
    Mean,
    Variance,
}

impl ExpansionKind {
    /// The expansion only exists for the mean and variance targets.
    pub fn for_target(kind: TargetKind) -> Option<Self> {
        match kind {
            TargetKind::Mean => Some(ExpansionKind::Mean),
            TargetKind::Variance => Some(ExpansionKind::Variance),
            TargetKind::Rate | TargetKind::Survival { .. } => None,
        }
    }

    /// `(ρ, c₀, c₁)` in `1/2 - c₀/α - (c₁/α) Σ (1/n) E(S_n - ραn)⁺`.
    fn coefficients(self) -> (f64, f64, f64) {
        match self {
            ExpansionKind::Mean => (1.5, 1.0, 2.0),
            ExpansionKind::Variance => (1.25, 2.0, 4.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionSpec {
    pub kind: ExpansionKind,
    pub alpha: f64,
    /// Series terms smaller than this are excluded and summation ends.
    pub truncation_epsilon: f64,
}

impl ExpansionSpec {
    pub fn new(kind: ExpansionKind, alpha: f64) -> Self {
        ExpansionSpec {
            kind,
            alpha,
            truncation_epsilon: DEFAULT_TRUNCATION_EPSILON,
        }
    }

    pub fn with_epsilon(mut self, truncation_epsilon: f64) -> Self {
        self.truncation_epsilon = truncation_epsilon;
        self
    }
}

/// Value of the constant together with series diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionValue {
    pub constant: f64,
    pub series_sum: f64,
    /// Number of terms included in the sum.
    pub terms: usize,
    /// The first excluded term.
    pub first_excluded: f64,
}

/// `E(S - t)⁺` for `S ~ Γ(shape, 1)`.
pub fn expected_positive_part(shape: f64, threshold: f64) -> Result<f64> {
    if !(shape > 0.0) || !shape.is_finite() {
        return Err(Error::domain("shape must be finite and > 0", shape));
    }
    if !(threshold >= 0.0) || !threshold.is_finite() {
        return Err(Error::domain(
            "threshold must be finite and >= 0",
            threshold,
        ));
    }
    if threshold == 0.0 {
        return Ok(shape);
    }
    let upper_next = reg_upper_gamma(shape + 1.0, threshold)?;
    let upper = reg_upper_gamma(shape, threshold)?;
    Ok((shape * upper_next - threshold * upper).max(0.0))
}

pub fn second_order_constant(spec: &ExpansionSpec) -> Result<f64> {
    evaluate(spec).map(|v| v.constant)
}

pub fn evaluate(spec: &ExpansionSpec) -> Result<ExpansionValue> {
    let alpha = spec.alpha;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha must be finite and > 0", alpha));
    }
    let eps = spec.truncation_epsilon;
    if !(eps > 0.0) {
        return Err(Error::domain("truncation epsilon must be > 0", eps));
    }
    let (rho, c0, c1) = spec.kind.coefficients();
    let mut sum = 0.0;
    for n in 1..=MAX_SERIES_TERMS {
        let term = series_term(alpha, rho, n)?;
        if term.abs() < eps {
            return Ok(ExpansionValue {
                constant: 0.5 - c0 / alpha - c1 / alpha * sum,
                series_sum: sum,
                terms: n - 1,
                first_excluded: term,
            });
        }
        sum += term;
    }
    Err(Error::SeriesDiverged {
        terms: MAX_SERIES_TERMS,
    })
}

/// `(1/n) E(S_n - ραn)⁺` with `S_n ~ Γ(nα, 1)`.
pub fn series_term(alpha: f64, rho: f64, n: usize) -> Result<f64> {
    let shape = n as f64 * alpha;
    Ok(expected_positive_part(shape, rho * shape)? / n as f64)
}

/// The series terms up to and including the first excluded one.
pub fn series_terms(spec: &ExpansionSpec) -> Result<Vec<f64>> {
    let (rho, _, _) = spec.kind.coefficients();
    let mut terms = Vec::new();
    for n in 1..=MAX_SERIES_TERMS {
        let term = series_term(spec.alpha, rho, n)?;
        terms.push(term);
        if term.abs() < spec.truncation_epsilon {
            return Ok(terms);
        }
    }
    Err(Error::SeriesDiverged {
        terms: MAX_SERIES_TERMS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_part_closed_forms() {
        assert_eq!(expected_positive_part(3.0, 0.0).unwrap(), 3.0);
        let want = 4.0 * (-2.0f64).exp();
        let got = expected_positive_part(2.0, 2.0).unwrap();
        assert!(((got - want) / want).abs() < 1e-13);
        assert!(expected_positive_part(4.0, 100.0).unwrap() < 1e-30);
    }

    #[test]
    fn positive_part_domain() {
        assert!(expected_positive_part(0.0, 1.0).is_err());
        assert!(expected_positive_part(1.0, -1.0).is_err());
    }

    #[test]
    fn no_expansion_for_rate_or_survival() {
        assert_eq!(ExpansionKind::for_target(TargetKind::Rate), None);
        assert_eq!(
            ExpansionKind::for_target(TargetKind::Survival { c: 1.0 }),
            None
        );
        assert_eq!(
            ExpansionKind::for_target(TargetKind::Mean),
            Some(ExpansionKind::Mean)
        );
    }

    #[test]
    fn truncation_is_stable() {
        let coarse = second_order_constant(
            &ExpansionSpec::new(ExpansionKind::Mean, 2.0).with_epsilon(1e-10),
        )
        .unwrap();
        let fine = second_order_constant(&ExpansionSpec::new(ExpansionKind::Mean, 2.0)).unwrap();
        assert!((coarse - fine).abs() < 1e-9);
    }

    #[test]
    fn bad_spec() {
        assert!(evaluate(&ExpansionSpec::new(ExpansionKind::Mean, 0.0)).is_err());
        assert!(evaluate(&ExpansionSpec::new(ExpansionKind::Mean, 2.0).with_epsilon(0.0)).is_err());
    }
}
