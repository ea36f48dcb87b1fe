//! Special functions and random variates for the gamma family.

mod rng;
mod sampler;
mod special;

pub use rng::RngStream;
pub use sampler::{sample_gamma, GammaParams, GammaSampler};
pub use special::{gamma_pdf, log_gamma, reg_lower_gamma, reg_upper_gamma};
