//! Seeded replication harness for the sequential rules.
//!
//! Replication `r` draws its observations from `RngStream::new(seed, r)`, so
//! results do not depend on how replications are spread over threads.
//! Aggregation always runs single-threaded in replication order.

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{SequentialEstimator, StoppingConfig};
use crate::error::{Error, Result};
use crate::gamma_core::{GammaParams, GammaSampler, RngStream};
use crate::target::TargetFunction;
use rand::distr::Distribution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationPlan {
    pub target: TargetFunction,
    pub true_params: GammaParams,
    pub config: StoppingConfig,
    pub replications: u64,
    pub seed: u64,
}

impl SimulationPlan {
    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("replications must be >= 1".into()));
        }
        if self.true_params.alpha() != self.target.alpha() {
            return Err(Error::Config(format!(
                "population shape {} differs from the target's known shape {}",
                self.true_params.alpha(),
                self.target.alpha()
            )));
        }
        self.config.validate(&self.target)
    }

    /// Optimal sample size at the true scale.
    pub fn n_star(&self) -> Result<f64> {
        self.target
            .optimal_sample_size(self.true_params.beta(), self.config.bound)
    }
}

/// One row of a simulation table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub b: f64,
    pub n_star: f64,
    pub n_bar: f64,
    pub s_n: f64,
    pub ratio_first_order: f64,
    pub diff_second_order: f64,
    /// Mean of the terminal estimates `g(β̂_N)`.
    pub g_bar: f64,
    pub var_g: f64,
    pub var_ratio: f64,
    pub replications: u64,
    pub cap_hits: u64,
    /// Set when `replications == 1`; spread statistics are then zero.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Outcome of a single replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Replication {
    pub terminal_n: u64,
    pub g_estimate: f64,
    pub hit_cap: bool,
}

pub fn run_replication(plan: &SimulationPlan, index: u64) -> Replication {
    let sampler = GammaSampler::new(plan.true_params);
    let mut rng = RngStream::new(plan.seed, index);
    let mut estimator = SequentialEstimator::new(plan.target, plan.config)
        .expect("plan validated before replication");
    loop {
        let x = sampler.sample(&mut rng);
        // a gamma draw can underflow to zero only for tiny shapes; redraw
        if x <= 0.0 {
            continue;
        }
        match estimator.observe(x) {
            Ok(crate::engine::Status::Continue) => {}
            Ok(crate::engine::Status::Stopped) => break,
            Err(e) => unreachable!("positive finite draw rejected: {e}"),
        }
    }
    let result = estimator.result().expect("stopped run has a result");
    Replication {
        terminal_n: result.terminal_n,
        g_estimate: result.g_estimate,
        hit_cap: result.stopped_by_cap,
    }
}

pub fn run_replications(plan: &SimulationPlan, execution: Execution) -> Result<Vec<Replication>> {
    plan.validate()?;
    let reps = match execution {
        Execution::Serial => (0..plan.replications)
            .map(|r| run_replication(plan, r))
            .collect(),
        Execution::Parallel => (0..plan.replications)
            .into_par_iter()
            .map(|r| run_replication(plan, r))
            .collect(),
    };
    Ok(reps)
}

pub fn run_simulation(plan: &SimulationPlan) -> Result<SimulationSummary> {
    run_simulation_with(plan, Execution::Parallel)
}

pub fn run_simulation_with(
    plan: &SimulationPlan,
    execution: Execution,
) -> Result<SimulationSummary> {
    let reps = run_replications(plan, execution)?;
    summarize(plan, &reps)
}

/// Aggregates replications into a table row.
pub fn summarize(plan: &SimulationPlan, reps: &[Replication]) -> Result<SimulationSummary> {
    if reps.is_empty() {
        return Err(Error::Usage("no replications to summarize".into()));
    }
    let n_star = plan.n_star()?;
    let sizes: Vec<f64> = reps.iter().map(|r| r.terminal_n as f64).collect();
    let estimates: Vec<f64> = reps.iter().map(|r| r.g_estimate).collect();
    let (n_bar, var_n) = mean_and_variance(&sizes);
    let (g_bar, var_g) = mean_and_variance(&estimates);
    let b = plan.config.bound;
    Ok(SimulationSummary {
        b,
        n_star,
        n_bar,
        s_n: var_n.sqrt(),
        ratio_first_order: n_bar / n_star,
        diff_second_order: n_bar - n_star,
        g_bar,
        var_g,
        var_ratio: var_g / b,
        replications: reps.len() as u64,
        cap_hits: reps.iter().filter(|r| r.hit_cap).count() as u64,
        degenerate: reps.len() == 1,
    })
}

/// Mean and divisor-(R−1) sample variance; the variance is zero for R = 1.
fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let len = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / len;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, ss / (len - 1.0))
}

/// Runs every plan in order; a failure carries the index of its row.
pub fn run_table(rows: &[SimulationPlan]) -> Result<Vec<SimulationSummary>> {
    if rows.is_empty() {
        return Err(Error::Usage("a table needs at least one row".into()));
    }
    rows.iter()
        .enumerate()
        .map(|(index, plan)| {
            run_simulation(plan).map_err(|e| Error::Row {
                index,
                source: Box::new(e),
            })
        })
        .collect()
}
