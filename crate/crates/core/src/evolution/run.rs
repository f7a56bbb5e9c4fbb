use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::layers::{produce_child, FusionLog};
use super::ledger::IndividualId;
use super::population::{max_area, Population};
use super::{FusionEvent, Origin};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::genome::SeedGenome;

/// One elite member at a generation boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchiveRecord {
    pub generation: usize,
    /// 0 is the fittest.
    pub rank: usize,
    pub id: IndividualId,
    pub genome: SeedGenome,
    pub fitness: f64,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenerationMetrics {
    pub generation: usize,
    pub births: usize,
    pub elite_fitness_mean: f64,
    /// Sample standard deviation of elite relative fitness.
    pub diversity: f64,
    pub area_mean: f64,
    pub density_mean: f64,
    pub max_area: usize,
    /// Counters since the previous generation boundary.
    pub fusion_attempts: usize,
    pub fusions_accepted: usize,
    pub fusion_area_rejections: usize,
    pub fissions: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunArtifacts {
    pub archive: Vec<ArchiveRecord>,
    pub fusion_events: Vec<FusionEvent>,
    pub metrics: Vec<GenerationMetrics>,
}

impl RunArtifacts {
    /// Elite of `generation`, fittest first.
    pub fn elite(&self, generation: usize) -> Vec<&ArchiveRecord> {
        self.archive.iter().filter(|r| r.generation == generation).collect()
    }

    pub fn last_generation(&self) -> Option<usize> {
        self.archive.iter().map(|r| r.generation).max()
    }

    /// Fittest member of the final generation.
    pub fn champion(&self) -> Option<&ArchiveRecord> {
        let last = self.last_generation()?;
        self.archive.iter().find(|r| r.generation == last && r.rank == 0)
    }
}

pub fn run_experiment(config: &ExperimentConfig, seed: u64) -> Result<RunArtifacts> {
    run_experiment_observed(config, seed, |_| {})
}

/// Like [`run_experiment`], calling `observer` after each generation.
pub fn run_experiment_observed(
    config: &ExperimentConfig,
    seed: u64,
    mut observer: impl FnMut(&GenerationMetrics),
) -> Result<RunArtifacts> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pop = Population::initialize(config, &mut rng)?;
    let mut out = RunArtifacts::default();
    let mut log = FusionLog::default();
    let mut fissions = 0;

    snapshot(&pop, config, &mut out, &log, fissions);
    observer(out.metrics.last().expect("snapshot pushes metrics"));

    let total = config.pop_size * config.num_generations;
    for _ in 0..total {
        let child = produce_child(&pop, config, &mut rng, &mut log)?;
        if child.origin == Origin::Fission {
            fissions += 1;
        }
        pop.insert_child(child.genome, child.origin, &mut rng)?;
        if pop.births() % config.pop_size == 0 {
            snapshot(&pop, config, &mut out, &log, fissions);
            out.fusion_events.extend(log.events.drain(..));
            log.area_rejections = 0;
            fissions = 0;
            observer(out.metrics.last().expect("snapshot pushes metrics"));
        }
    }
    Ok(out)
}

fn snapshot(
    pop: &Population,
    config: &ExperimentConfig,
    out: &mut RunArtifacts,
    log: &FusionLog,
    fissions: usize,
) {
    let generation = pop.generation();
    let elite = pop.elite(config.elite_size);
    let n = elite.len() as f64;
    let fitness: Vec<f64> = elite.iter().map(|(_, f)| *f).collect();
    let mean = fitness.iter().sum::<f64>() / n;
    let diversity = if elite.len() < 2 {
        0.0
    } else {
        (fitness.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    out.metrics.push(GenerationMetrics {
        generation,
        births: pop.births(),
        elite_fitness_mean: mean,
        diversity,
        area_mean: elite.iter().map(|(m, _)| m.genome.area() as f64).sum::<f64>() / n,
        density_mean: elite.iter().map(|(m, _)| m.genome.density()).sum::<f64>() / n,
        max_area: max_area(generation, config),
        fusion_attempts: log.events.len(),
        fusions_accepted: log.events.iter().filter(|e| e.accepted).count(),
        fusion_area_rejections: log.area_rejections,
        fissions,
    });
    for (rank, (m, f)) in elite.into_iter().enumerate() {
        out.archive.push(ArchiveRecord {
            generation,
            rank,
            id: m.id,
            genome: m.genome.clone(),
            fitness: f,
            origin: m.origin,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(layer: u8, generations: usize) -> ExperimentConfig {
        ExperimentConfig {
            experiment_type_num: layer,
            pop_size: 8,
            num_generations: generations,
            elite_size: 4,
            tournament_size: 2,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn zero_generations_archives_generation_zero_only() {
        let out = run_experiment(&tiny(4, 0), 1).unwrap();
        assert_eq!(out.archive.len(), 4);
        assert!(out.archive.iter().all(|r| r.generation == 0));
        assert_eq!(out.metrics.len(), 1);
        assert!(out.fusion_events.is_empty());
    }

    #[test]
    fn archive_row_count_and_order() {
        let cfg = tiny(4, 3);
        let out = run_experiment(&cfg, 2).unwrap();
        assert_eq!(out.archive.len(), 4 * 4);
        assert_eq!(out.metrics.len(), 4);
        for g in 0..=3 {
            let elite = out.elite(g);
            assert_eq!(elite.len(), 4);
            assert!(elite.windows(2).all(|w| w[0].fitness >= w[1].fitness));
        }
        assert_eq!(out.metrics[3].births, 24);
    }

    #[test]
    fn same_seed_same_run() {
        let cfg = tiny(4, 2);
        let a = run_experiment(&cfg, 9).unwrap();
        let b = run_experiment(&cfg, 9).unwrap();
        assert_eq!(a, b);
    }
}
