//! Simulation and statistical verification of path-valued heavy-tailed
//! Levy motions.
//!
//! The crate builds the process three independent ways (truncated Poisson
//! point clouds of jumps, normalized partial sums of regularly varying
//! cadlag paths, and a double-sum sheet of heavy-tailed scalars), computes
//! Skorokhod-space metrics and moduli on the results, and checks the
//! expected distributional properties by Monte Carlo at desk scale.

pub mod error;
pub mod grid;
pub mod io;
pub mod levy;
pub mod metrics;
pub mod rv;
pub mod seed;
pub mod spectral;
pub mod stats;
pub mod sums;

pub use error::{Error, Result};
pub use grid::{GridPath, PathOfPaths, TimeChange};
pub use seed::SeedSpec;
