use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;

use super::ledger::{CompetitionLedger, IndividualId};
use super::Origin;
use crate::config::ExperimentConfig;
use crate::error::{Error, LifeError, Result};
use crate::genome::{random_seed, SeedGenome};
use crate::life::{run_trials, GameFactors, Verdict};

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub id: IndividualId,
    pub genome: SeedGenome,
    pub birth_generation: usize,
    pub origin: Origin,
}

/// Steady-state population with its full pairwise game record.
#[derive(Clone, Debug)]
pub struct Population {
    members: Vec<Individual>,
    ledger: CompetitionLedger,
    births: usize,
    next_id: IndividualId,
    pop_size: usize,
    num_trials: usize,
    factors: GameFactors,
}

impl Population {
    pub fn empty(pop_size: usize, num_trials: usize, factors: GameFactors) -> Self {
        Population {
            members: Vec::with_capacity(pop_size),
            ledger: CompetitionLedger::new(),
            births: 0,
            next_id: 0,
            pop_size,
            num_trials,
            factors,
        }
    }

    /// Random generation-zero population with every pair played
    /// `num_trials` times.
    pub fn initialize<R: Rng + ?Sized>(config: &ExperimentConfig, rng: &mut R) -> Result<Self> {
        let mut pop = Population::empty(config.pop_size, config.num_trials, config.factors());
        let genomes: Vec<SeedGenome> = (0..config.pop_size)
            .map(|_| random_seed(config.s_yspan, config.s_xspan, config.seed_density, rng))
            .collect();
        for g in genomes {
            pop.admit(g, Origin::Random)?;
        }
        Ok(pop)
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn ledger(&self) -> &CompetitionLedger {
        &self.ledger
    }

    pub fn births(&self) -> usize {
        self.births
    }

    pub fn pop_size(&self) -> usize {
        self.pop_size
    }

    pub fn num_trials(&self) -> usize {
        self.num_trials
    }

    pub fn factors(&self) -> GameFactors {
        self.factors
    }

    /// Completed generations: one per `pop_size` births.
    pub fn generation(&self) -> usize {
        self.births / self.pop_size
    }

    /// Verdicts of `genome` against each current member, in member order.
    fn play_against_members(&self, genome: &SeedGenome) -> Result<Vec<Vec<Verdict>>, LifeError> {
        self.members
            .par_iter()
            .map(|m| run_trials(genome, &m.genome, self.factors, self.num_trials))
            .collect()
    }

    /// Adds `genome` without removing anyone; it plays every member.
    pub fn admit(&mut self, genome: SeedGenome, origin: Origin) -> Result<IndividualId> {
        let results = self.play_against_members(&genome)?;
        let id = self.next_id;
        self.next_id += 1;
        self.ledger.register(id);
        for (m, verdicts) in self.members.iter().zip(&results) {
            self.ledger.record(id, m.id, verdicts);
        }
        self.members.push(Individual {
            id,
            genome,
            birth_generation: self.generation(),
            origin,
        });
        Ok(id)
    }

    pub fn relative_fitness(&self, id: IndividualId) -> Result<f64> {
        if !self.members.iter().any(|m| m.id == id) {
            return Err(Error::UnknownIndividual(id));
        }
        self.ledger.fitness(id).ok_or(Error::UnknownIndividual(id))
    }

    /// Fitness of the member at `index`.
    pub fn fitness_at(&self, index: usize) -> f64 {
        self.ledger
            .fitness(self.members[index].id)
            .expect("every member has a ledger entry")
    }

    pub fn fitnesses(&self) -> Vec<f64> {
        (0..self.members.len()).map(|i| self.fitness_at(i)).collect()
    }

    pub fn mean_fitness(&self) -> f64 {
        self.fitnesses().iter().sum::<f64>() / self.members.len() as f64
    }

    /// Samples `size` distinct candidates and returns the fittest (as an
    /// index into the members), breaking ties uniformly.
    pub fn tournament_select<R: Rng + ?Sized>(&self, candidates: &[usize], size: usize, rng: &mut R) -> usize {
        assert!(!candidates.is_empty(), "tournament over an empty candidate set");
        let size = size.clamp(1, candidates.len());
        let sample: Vec<usize> = index::sample(rng, candidates.len(), size)
            .into_iter()
            .map(|i| candidates[i])
            .collect();
        pick_extreme(&sample, |i| self.fitness_at(i), true, rng)
    }

    pub fn select<R: Rng + ?Sized>(&self, size: usize, rng: &mut R) -> usize {
        let all: Vec<usize> = (0..self.members.len()).collect();
        self.tournament_select(&all, size, rng)
    }

    /// Index of a least fit member, ties broken uniformly.
    pub fn least_fit<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let all: Vec<usize> = (0..self.members.len()).collect();
        pick_extreme(&all, |i| self.fitness_at(i), false, rng)
    }

    /// Replaces a least fit member with `genome`, which then plays every
    /// other member.
    pub fn insert_child<R: Rng + ?Sized>(&mut self, genome: SeedGenome, origin: Origin, rng: &mut R) -> Result<IndividualId> {
        let victim = self.least_fit(rng);
        let removed = self.members.swap_remove(victim);
        self.ledger.remove(removed.id);
        let id = self.admit(genome, origin)?;
        // admit pushed to the end; move the child into the vacated slot
        let last = self.members.len() - 1;
        self.members.swap(victim, last);
        self.births += 1;
        Ok(id)
    }

    /// Fitness `genome` would have against the current members, without
    /// touching the ledger.
    pub fn evaluate_provisional(&self, genome: &SeedGenome) -> Result<f64> {
        let results = self.play_against_members(genome)?;
        let (mut half_points, mut games) = (0u64, 0u64);
        for v in results.iter().flatten() {
            half_points += v.half_points_a() as u64;
            games += 1;
        }
        if games == 0 {
            return Ok(0.5);
        }
        Ok(half_points as f64 / (2 * games) as f64)
    }

    /// The `k` fittest members, by fitness descending then id ascending.
    pub fn elite(&self, k: usize) -> Vec<(&Individual, f64)> {
        let mut ranked: Vec<(&Individual, f64)> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, m)| (m, self.fitness_at(i)))
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.id.cmp(&b.0.id)));
        ranked.truncate(k);
        ranked
    }
}

fn pick_extreme<R: Rng + ?Sized>(items: &[usize], key: impl Fn(usize) -> f64, max: bool, rng: &mut R) -> usize {
    let values: Vec<f64> = items.iter().map(|&i| key(i)).collect();
    let best = values
        .iter()
        .copied()
        .fold(if max { f64::NEG_INFINITY } else { f64::INFINITY }, |acc, v| {
            if max {
                acc.max(v)
            } else {
                acc.min(v)
            }
        });
    let ties: Vec<usize> = items
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v == best)
        .map(|(&i, _)| i)
        .collect();
    if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.gen_range(0..ties.len())]
    }
}

/// Area ceiling for fused seeds at `generation`, interpolated linearly
/// between `max_area_first` and `max_area_last` and rounded down.
pub fn max_area(generation: usize, config: &ExperimentConfig) -> usize {
    if config.num_generations == 0 {
        return config.max_area_first;
    }
    let g = generation.min(config.num_generations);
    let span = config.max_area_last - config.max_area_first;
    config.max_area_first + span * g / config.num_generations
}
