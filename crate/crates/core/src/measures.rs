//! Absolute fitness measures, taken outside the evolving population.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::error::LifeError;
use crate::evolution::ArchiveRecord;
use crate::genome::{random_seed_exact, SeedGenome};
use crate::life::{run_game, run_trials, GameFactors, Verdict};
use crate::rle::RlePattern;

/// Elite members consulted per generation by [`estimate_p`].
pub const TOP_SEEDS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    VsRandom,
    VsPatterns,
    VsPastWinners,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::VsRandom, Measure::VsPatterns, Measure::VsPastWinners];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::VsRandom => "vs-random",
            Measure::VsPatterns => "vs-patterns",
            Measure::VsPastWinners => "vs-past-winners",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown measure `{s}` (vs-random, vs-patterns, vs-past-winners)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExternalFitnessPoint {
    pub generation: usize,
    pub value: f64,
    pub measure: Measure,
}

fn score(verdicts: impl IntoIterator<Item = Verdict>) -> f64 {
    let (mut half_points, mut games) = (0u64, 0u64);
    for v in verdicts {
        half_points += u64::from(v.half_points_a());
        games += 1;
    }
    if games == 0 {
        0.5
    } else {
        half_points as f64 / (2 * games) as f64
    }
}

/// Share of games `genome` wins against random seeds of the same shape and
/// exactly the same live-cell count. Sides alternate between opponents.
pub fn fitness_vs_random<R: Rng + ?Sized>(
    genome: &SeedGenome,
    opponents: usize,
    factors: GameFactors,
    rng: &mut R,
) -> Result<f64, LifeError> {
    let foes: Vec<SeedGenome> = (0..opponents)
        .map(|_| random_seed_exact(genome.rows(), genome.cols(), genome.live_count(), rng))
        .collect();
    let verdicts: Vec<Verdict> = foes
        .par_iter()
        .enumerate()
        .map(|(k, foe)| run_game(genome, foe, factors, k).map(|o| o.verdict()))
        .collect::<Result<_, _>>()?;
    Ok(score(verdicts))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatternScore {
    pub name: String,
    pub area: usize,
    pub games: usize,
    /// Percentage of games won by the evolved side, ties counting half.
    pub win_percent: f64,
}

/// Plays every pattern within `area_limit` against every champion.
pub fn pattern_tournament(
    champions: &[SeedGenome],
    patterns: &[RlePattern],
    area_limit: usize,
    games_per_pairing: usize,
    factors: GameFactors,
) -> Result<Vec<PatternScore>, LifeError> {
    patterns
        .iter()
        .filter(|p| p.area() <= area_limit)
        .map(|p| {
            let genome = p.to_genome();
            let per_champion: Vec<Vec<Verdict>> = champions
                .par_iter()
                .map(|c| run_trials(c, &genome, factors, games_per_pairing))
                .collect::<Result<_, _>>()?;
            let games = per_champion.iter().map(Vec::len).sum();
            Ok(PatternScore {
                name: p.name.clone(),
                area: p.area(),
                games,
                win_percent: 100.0 * score(per_champion.into_iter().flatten()),
            })
        })
        .collect()
}

/// Mean win percentage over a set of pattern scores.
pub fn average_win_percent(scores: &[PatternScore]) -> Option<f64> {
    if scores.is_empty() {
        return None;
    }
    Some(scores.iter().map(|s| s.win_percent).sum::<f64>() / scores.len() as f64)
}

/// Probability that the later elite beats the earlier one: each of the top
/// ten of `later` plays each of the top ten of `earlier` twice, swapping
/// sides. Smaller elites are used whole.
pub fn estimate_p(earlier: &[SeedGenome], later: &[SeedGenome], factors: GameFactors) -> Result<f64, LifeError> {
    estimate_p_games(earlier, later, 2, factors)
}

/// As [`estimate_p`] but with `games` games per pairing; with one seed on
/// each side this is the single-pair estimate.
pub fn estimate_p_games(
    earlier: &[SeedGenome],
    later: &[SeedGenome],
    games: usize,
    factors: GameFactors,
) -> Result<f64, LifeError> {
    let earlier = &earlier[..earlier.len().min(TOP_SEEDS)];
    let later = &later[..later.len().min(TOP_SEEDS)];
    let pairs: Vec<(&SeedGenome, &SeedGenome)> = later
        .iter()
        .flat_map(|n| earlier.iter().map(move |i| (n, i)))
        .collect();
    let verdicts: Vec<Vec<Verdict>> = pairs
        .par_iter()
        .map(|(n, i)| run_trials(n, i, factors, games))
        .collect::<Result<_, _>>()?;
    Ok(score(verdicts.into_iter().flatten()))
}

/// Per-generation elites of one run, fittest first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EliteArchive {
    generations: Vec<Vec<(SeedGenome, f64)>>,
}

impl EliteArchive {
    pub fn new(generations: Vec<Vec<(SeedGenome, f64)>>) -> Self {
        EliteArchive { generations }
    }

    /// Groups records by generation and orders each group by rank. Missing
    /// generations become empty.
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a ArchiveRecord>) -> Self {
        let mut rows: Vec<&ArchiveRecord> = records.into_iter().collect();
        rows.sort_by_key(|r| (r.generation, r.rank));
        let mut generations: Vec<Vec<(SeedGenome, f64)>> = Vec::new();
        for r in rows {
            if generations.len() <= r.generation {
                generations.resize(r.generation + 1, Vec::new());
            }
            generations[r.generation].push((r.genome.clone(), r.fitness));
        }
        EliteArchive { generations }
    }

    pub fn num_generations(&self) -> usize {
        self.generations.len()
    }

    pub fn elite(&self, generation: usize) -> &[(SeedGenome, f64)] {
        &self.generations[generation]
    }

    pub fn top(&self, generation: usize, k: usize) -> Vec<SeedGenome> {
        self.generations[generation].iter().take(k).map(|(g, _)| g.clone()).collect()
    }
}

/// f_n: the sum over earlier generations i of (2 p_in - 1).
pub fn unbounded_fitness(archive: &EliteArchive, n: usize, factors: GameFactors) -> Result<f64, LifeError> {
    let later = archive.top(n, TOP_SEEDS);
    let mut f = 0.0;
    for i in 0..n {
        let p = estimate_p(&archive.top(i, TOP_SEEDS), &later, factors)?;
        f += 2.0 * p - 1.0;
    }
    Ok(f)
}

/// f_n for every archived generation.
pub fn unbounded_curve(archive: &EliteArchive, factors: GameFactors) -> Result<Vec<f64>, LifeError> {
    (0..archive.num_generations())
        .map(|n| unbounded_fitness(archive, n, factors))
        .collect()
}
