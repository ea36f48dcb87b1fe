//! Writes the synthetic analysis fixture: 346 draws from N(3.2, 0.19)
//! rounded to three decimals, one per line under a `weight` header.
//!
//!     cargo run -p seqgamma --example synthetic_weights > crates/cli/data/synthetic_weights.csv

use rand::Rng;
use rand_distr::StandardNormal;
use seqgamma::RngStream;

const COUNT: usize = 346;
const MEAN: f64 = 3.2;
const VARIANCE: f64 = 0.19;
const SEED: u64 = 20_110_346;

fn main() {
    let mut rng = RngStream::new(SEED, 0);
    let sd = VARIANCE.sqrt();
    println!("weight");
    for _ in 0..COUNT {
        let z: f64 = rng.sample(StandardNormal);
        println!("{:.3}", MEAN + sd * z);
    }
}
