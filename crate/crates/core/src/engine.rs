//! Purely sequential stopping rule.
//!
//! After a pilot of `m` observations, sampling stops at the first `n >= m`
//! with `n >= g'(β̂ₙ)² β̂ₙ² / (α b)`, where `β̂ₙ = X̄ₙ / α`. The terminal
//! estimate is `g(β̂_N)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::target::TargetFunction;

/// Default runaway guard on the number of observations.
pub const DEFAULT_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Summation {
    /// Plain left-to-right running sum.
    #[default]
    Plain,
    /// Neumaier-compensated running sum, for very long streams.
    Compensated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StoppingConfig {
    /// Pilot sample size `m`.
    pub pilot: u64,
    /// Variance bound `b`.
    pub bound: f64,
    /// Known shape `α`.
    pub alpha: f64,
    /// Hard limit on the terminal sample size.
    pub cap: u64,
    pub summation: Summation,
}

impl StoppingConfig {
    pub fn new(pilot: u64, bound: f64, alpha: f64) -> Self {
        StoppingConfig {
            pilot,
            bound,
            alpha,
            cap: DEFAULT_CAP,
            summation: Summation::Plain,
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_summation(mut self, summation: Summation) -> Self {
        self.summation = summation;
        self
    }

    /// Checks the configuration against the target it will drive.
    pub fn validate(&self, target: &TargetFunction) -> Result<()> {
        if !(self.bound > 0.0) || !self.bound.is_finite() {
            return Err(Error::Config(format!(
                "variance bound b must be finite and > 0, got {}",
                self.bound
            )));
        }
        if self.alpha != target.alpha() {
            return Err(Error::Config(format!(
                "config shape alpha = {} does not match the target's alpha = {}",
                self.alpha,
                target.alpha()
            )));
        }
        let min_pilot = target.default_min_pilot_size();
        if self.pilot < min_pilot {
            return Err(Error::Config(format!(
                "pilot size m = {} is below the minimum pilot size {} for the {} target with alpha = {}",
                self.pilot,
                min_pilot,
                target.kind().name(),
                self.alpha
            )));
        }
        if self.cap < self.pilot {
            return Err(Error::Config(format!(
                "cap = {} must be at least the pilot size m = {}",
                self.cap, self.pilot
            )));
        }
        Ok(())
    }
}

/// Running state of one sequential run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequentialState {
    n: u64,
    sum_x: f64,
    #[serde(skip)]
    compensation: f64,
    stopped: bool,
    stopped_by_cap: bool,
    boundary_at_stop: Option<f64>,
}

impl SequentialState {
    fn new() -> Self {
        SequentialState {
            n: 0,
            sum_x: 0.0,
            compensation: 0.0,
            stopped: false,
            stopped_by_cap: false,
            boundary_at_stop: None,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn sum_x(&self) -> f64 {
        self.sum_x + self.compensation
    }

    pub fn is_stopped(&self) -> bool {
        self.stopped
    }

    pub fn stopped_by_cap(&self) -> bool {
        self.stopped_by_cap
    }

    pub fn boundary_at_stop(&self) -> Option<f64> {
        self.boundary_at_stop
    }

    /// `β̂ₙ = Σxᵢ / (n α)`, or `None` before the first observation.
    pub fn beta_hat(&self, alpha: f64) -> Option<f64> {
        (self.n > 0).then(|| self.sum_x() / (self.n as f64 * alpha))
    }

    fn accumulate(&mut self, x: f64, summation: Summation) {
        match summation {
            Summation::Plain => self.sum_x += x,
            Summation::Compensated => {
                let t = self.sum_x + x;
                if self.sum_x.abs() >= x.abs() {
                    self.compensation += (self.sum_x - t) + x;
                } else {
                    self.compensation += (x - t) + self.sum_x;
                }
                self.sum_x = t;
            }
        }
        self.n += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Continue,
    Stopped,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateResult {
    pub terminal_n: u64,
    pub beta_hat: f64,
    pub g_estimate: f64,
    pub boundary_at_stop: f64,
    pub stopped_by_cap: bool,
}

/// Result of feeding a finite source to the rule.
#[derive(Debug, Clone, PartialEq)]
pub enum RunOutcome {
    Stopped(EstimateResult),
    /// The source ran dry before the rule stopped.
    Exhausted(SequentialState),
}

impl RunOutcome {
    pub fn stopped(&self) -> Option<&EstimateResult> {
        match self {
            RunOutcome::Stopped(result) => Some(result),
            RunOutcome::Exhausted(_) => None,
        }
    }
}

/// A target, its stopping configuration and the running state.
#[derive(Debug, Clone)]
pub struct SequentialEstimator {
    target: TargetFunction,
    config: StoppingConfig,
    state: SequentialState,
}

impl SequentialEstimator {
    pub fn new(target: TargetFunction, config: StoppingConfig) -> Result<Self> {
        config.validate(&target)?;
        Ok(SequentialEstimator {
            target,
            config,
            state: SequentialState::new(),
        })
    }

    pub fn target(&self) -> &TargetFunction {
        &self.target
    }

    pub fn config(&self) -> &StoppingConfig {
        &self.config
    }

    pub fn state(&self) -> &SequentialState {
        &self.state
    }

    pub fn into_state(self) -> SequentialState {
        self.state
    }

    /// Current plug-in boundary, once at least one observation is in.
    pub fn current_boundary(&self) -> Option<f64> {
        self.state
            .beta_hat(self.config.alpha)
            .map(|beta_hat| self.target.boundary_unchecked(beta_hat, self.config.bound))
    }

    /// Consumes one observation and evaluates the stopping test.
    pub fn observe(&mut self, x: f64) -> Result<Status> {
        if self.state.stopped {
            return Err(Error::Usage(format!(
                "observation after the rule stopped at n = {}",
                self.state.n
            )));
        }
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Data(format!(
                "observation {} must be finite and > 0, got {x}",
                self.state.n + 1
            )));
        }
        self.state.accumulate(x, self.config.summation);
        if self.state.n < self.config.pilot {
            return Ok(Status::Continue);
        }
        let boundary = self
            .current_boundary()
            .expect("state holds at least one observation");
        if self.state.n as f64 >= boundary {
            self.stop(boundary, false);
        } else if self.state.n >= self.config.cap {
            self.stop(boundary, true);
        } else {
            return Ok(Status::Continue);
        }
        Ok(Status::Stopped)
    }

    fn stop(&mut self, boundary: f64, by_cap: bool) {
        self.state.stopped = true;
        self.state.stopped_by_cap = by_cap;
        self.state.boundary_at_stop = Some(boundary);
    }

    /// Terminal estimate, available once the rule has stopped.
    pub fn result(&self) -> Option<EstimateResult> {
        if !self.state.stopped {
            return None;
        }
        let beta_hat = self.state.beta_hat(self.config.alpha)?;
        let g_estimate = self.target.value(beta_hat).ok()?;
        Some(EstimateResult {
            terminal_n: self.state.n,
            beta_hat,
            g_estimate,
            boundary_at_stop: self.state.boundary_at_stop?,
            stopped_by_cap: self.state.stopped_by_cap,
        })
    }
}

/// Feeds `source` to a fresh estimator until the rule stops or the source
/// runs out.
pub fn run_to_completion<I>(
    target: TargetFunction,
    config: StoppingConfig,
    source: I,
) -> Result<RunOutcome>
where
    I: IntoIterator<Item = f64>,
{
    let mut estimator = SequentialEstimator::new(target, config)?;
    for x in source {
        if estimator.observe(x)? == Status::Stopped {
            let result = estimator
                .result()
                .expect("a stopped run with positive data has a result");
            return Ok(RunOutcome::Stopped(result));
        }
    }
    Ok(RunOutcome::Exhausted(estimator.into_state()))
}
