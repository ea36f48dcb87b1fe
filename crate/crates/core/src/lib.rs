//! Sequential bounded-variance point estimation of functions `g(β)` of a
//! gamma scale parameter when the shape `α` is known.
//!
//! The crate is organised bottom-up:
//!
//! * [`gamma_core`]: log-gamma, incomplete gamma functions, density, seeded
//!   random streams and a gamma sampler.
//! * [`target`]: the four estimands (mean, variance, rate, survival
//!   probability) with derivatives, second-derivative bounds, pilot-size
//!   rules and optimal sample sizes.
//! * [`engine`]: the streaming stopping rule.
//! * [`second_order`]: second-order constants of the mean and variance rules.
//! * [`monte_carlo`]: seeded replication harness producing table rows.
//! * [`pipeline`]: normal-gamma transformation and real-data analysis.

pub mod engine;
pub mod error;
pub mod gamma_core;
pub mod monte_carlo;
pub mod pipeline;
pub mod second_order;
pub mod target;

pub use engine::{
    run_to_completion, EstimateResult, RunOutcome, SequentialEstimator, SequentialState, Status,
    StoppingConfig, Summation,
};
pub use error::{Error, Result};
pub use gamma_core::{GammaParams, RngStream};
pub use target::{C1Terms, TargetFunction, TargetKind};
