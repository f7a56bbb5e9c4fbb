//! Evolving two-color Life seeds that compete in the Immigration Game.
//!
//! The crate covers the game engine ([`life`]), seed genomes and their
//! operators ([`genome`]), the steady-state evolutionary loop
//! ([`evolution`]), absolute fitness measures ([`measures`]), statistics
//! ([`stats`]) and the experiment pipeline that ties them to files
//! ([`experiment`]).

pub mod config;
pub mod error;
pub mod evolution;
pub mod experiment;
pub mod genome;
pub mod life;
pub mod measures;
pub mod records;
pub mod report;
pub mod rle;
pub mod stats;

pub use config::ExperimentConfig;
pub use error::{Error, Result};
pub use genome::SeedGenome;
