//! The reproduction chain. Layer 4 (fusion and fission) falls through to
//! Layer 3 (crossover between similar mates), which hands its child to
//! Layer 2 (flip, shrink or grow). Layer 1 only flips bits.

use rand::Rng;

use super::population::{max_area, Population};
use super::{FusionClass, FusionEvent, Origin};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::genome::{crossover, fission, fuse, grow, mutate_flip, shrink, shuffle, similarity, SeedGenome};

#[derive(Clone, Debug, PartialEq)]
pub struct Child {
    pub genome: SeedGenome,
    pub origin: Origin,
}

/// Whole versus parts: a part benefits when the whole is strictly fitter.
pub fn classify_fusion(part_a: f64, part_b: f64, whole: f64) -> FusionClass {
    match (whole > part_a, whole > part_b) {
        (true, true) => FusionClass::BothPartsBenefit,
        (false, false) => FusionClass::NoPartsBenefit,
        _ => FusionClass::OnePartBenefits,
    }
}

/// Fusion attempts seen while producing children.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FusionLog {
    /// Fusions whose whole was built and evaluated.
    pub events: Vec<FusionEvent>,
    /// Fusions abandoned because the whole exceeded the area ceiling.
    pub area_rejections: usize,
}

/// Produces the next child for the configured layer.
pub fn produce_child<R: Rng + ?Sized>(
    pop: &Population,
    config: &ExperimentConfig,
    rng: &mut R,
    fusion_log: &mut FusionLog,
) -> Result<Child> {
    match config.experiment_type_num {
        1 => {
            let parent = pop.select(config.tournament_size, rng);
            Ok(Child {
                genome: mutate_flip(&pop.members()[parent].genome, config.mutation_rate, rng),
                origin: Origin::Flip,
            })
        }
        2 => {
            let parent = pop.select(config.tournament_size, rng);
            Ok(layer2(&pop.members()[parent].genome, config, rng))
        }
        3 => layer3(pop, config, rng),
        _ => layer4(pop, config, rng, fusion_log),
    }
}

fn layer2<R: Rng + ?Sized>(genome: &SeedGenome, config: &ExperimentConfig, rng: &mut R) -> Child {
    let r: f64 = rng.gen();
    if r < config.prob_flip {
        Child {
            genome: mutate_flip(genome, config.mutation_rate, rng),
            origin: Origin::Flip,
        }
    } else if r < config.prob_flip + config.prob_shrink {
        Child {
            genome: shrink(genome, config.min_s_yspan, config.min_s_xspan, rng),
            origin: Origin::Shrink,
        }
    } else {
        Child {
            genome: grow(genome, config.seed_density, rng),
            origin: Origin::Grow,
        }
    }
}

fn layer3<R: Rng + ?Sized>(pop: &Population, config: &ExperimentConfig, rng: &mut R) -> Result<Child> {
    let members = pop.members();
    let first = pop.select(config.tournament_size, rng);
    let first_genome = &members[first].genome;
    let mates: Vec<usize> = (0..members.len())
        .filter(|&i| i != first)
        .filter(|&i| {
            let s = similarity(first_genome, &members[i].genome);
            s >= config.min_similarity && s <= config.max_similarity
        })
        .collect();
    if mates.is_empty() {
        return Ok(layer2(first_genome, config, rng));
    }
    let second = pop.tournament_select(&mates, config.tournament_size, rng);
    let crossed = crossover(first_genome, &members[second].genome, rng)?;
    let mutated = layer2(&crossed, config, rng);
    Ok(Child {
        genome: mutated.genome,
        origin: Origin::Crossover,
    })
}

fn layer4<R: Rng + ?Sized>(
    pop: &Population,
    config: &ExperimentConfig,
    rng: &mut R,
    fusion_log: &mut FusionLog,
) -> Result<Child> {
    let members = pop.members();
    let first = pop.select(config.tournament_size, rng);
    let r: f64 = rng.gen();
    if r < config.prob_fission {
        if let Some(part) = fission(&members[first].genome, config.min_s_yspan, config.min_s_xspan, rng) {
            return Ok(Child {
                genome: part,
                origin: Origin::Fission,
            });
        }
    } else if r < config.prob_fission + config.prob_fusion {
        let second = pop.select(config.tournament_size, rng);
        let mut part_a = members[first].genome.clone();
        let mut part_b = members[second].genome.clone();
        if config.fusion_test_flag {
            if rng.gen_bool(0.5) {
                part_a = shuffle(&part_a, rng);
            } else {
                part_b = shuffle(&part_b, rng);
            }
        }
        let whole = fuse(&part_a, &part_b, rng);
        if whole.area() <= max_area(pop.generation(), config) {
            let part_a_fitness = pop.fitness_at(first);
            let part_b_fitness = pop.fitness_at(second);
            let whole_fitness = pop.evaluate_provisional(&whole)?;
            let classification = classify_fusion(part_a_fitness, part_b_fitness, whole_fitness);
            let accepted = !config.symbiosis_flag || classification == FusionClass::BothPartsBenefit;
            fusion_log.events.push(FusionEvent {
                generation: pop.generation(),
                birth: pop.births(),
                part_a_id: members[first].id,
                part_b_id: members[second].id,
                part_a_fitness,
                part_b_fitness,
                whole_fitness,
                whole_area: whole.area(),
                shuffled: config.fusion_test_flag,
                classification,
                accepted,
            });
            if accepted {
                return Ok(Child {
                    genome: whole,
                    origin: Origin::Fusion,
                });
            }
        } else {
            fusion_log.area_rejections += 1;
        }
    }
    layer3(pop, config, rng)
}
