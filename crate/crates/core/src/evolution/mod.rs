//! Steady-state evolution of seed genomes.
//!
//! One child is born at a time and replaces a least fit member. Fitness is
//! relative: the share of ledger games an individual wins against the rest
//! of the population, with ties worth half a win.

mod layers;
mod ledger;
mod population;
mod run;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use layers::{classify_fusion, produce_child, Child, FusionLog};
pub use ledger::{CompetitionLedger, IndividualId};
pub use population::{max_area, Individual, Population};
pub use run::{run_experiment, run_experiment_observed, ArchiveRecord, GenerationMetrics, RunArtifacts};

/// How an individual came to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    Random,
    Flip,
    Grow,
    Shrink,
    Crossover,
    Fusion,
    Fission,
}

impl Origin {
    pub const ALL: [Origin; 7] = [
        Origin::Random,
        Origin::Flip,
        Origin::Grow,
        Origin::Shrink,
        Origin::Crossover,
        Origin::Fusion,
        Origin::Fission,
    ];
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Origin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Origin::ALL
            .into_iter()
            .find(|o| o.to_string() == s)
            .ok_or_else(|| format!("unknown origin `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FusionClass {
    NoPartsBenefit,
    OnePartBenefits,
    BothPartsBenefit,
}

impl FusionClass {
    pub const ALL: [FusionClass; 3] = [
        FusionClass::NoPartsBenefit,
        FusionClass::OnePartBenefits,
        FusionClass::BothPartsBenefit,
    ];
}

impl fmt::Display for FusionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for FusionClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FusionClass::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| format!("unknown fusion class `{s}`"))
    }
}

/// One fusion whose whole was built and evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionEvent {
    pub generation: usize,
    pub birth: usize,
    pub part_a_id: IndividualId,
    pub part_b_id: IndividualId,
    pub part_a_fitness: f64,
    pub part_b_fitness: f64,
    pub whole_fitness: f64,
    pub whole_area: usize,
    /// Whether one part was shuffled before joining.
    pub shuffled: bool,
    pub classification: FusionClass,
    pub accepted: bool,
}
