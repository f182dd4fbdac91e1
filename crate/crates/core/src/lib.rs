//! Deterministic Monte Carlo experiments.
//!
//! Every random quantity comes from the lagged-Fibonacci generator in
//! [`rng`], so a seed fully determines every result. Experiments that run
//! many independent trials give each trial its own substream, which keeps
//! the output identical for any thread count.

pub mod arq_channel;
pub mod error;
pub mod pendulum;
pub mod percolation;
pub mod process_sim;
pub mod random_walk;
pub mod rng;
pub mod scattering;
pub mod stats;
pub mod symbol_channel;

pub use error::{Error, Result};
pub use rng::{derive_stream, RngState, StreamId};
pub use stats::{summarize, Histogram, SummaryStats};
