//! Run directories: writing evolution output and measuring it afterwards.
//!
//! A batch lives in `<output root>/<label>-s<rng_seed>/` and holds
//! `config.txt`, `manifest.json` and one `run-NN/` directory per run with
//! `archive.csv`, `fusion_events.csv`, `metrics.csv` and `champion.seed`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{run_seed, ExperimentConfig};
use crate::error::{Error, Result};
use crate::evolution::{run_experiment_observed, ArchiveRecord, GenerationMetrics, RunArtifacts};
use crate::genome::SeedGenome;
use crate::life::GameFactors;
use crate::measures::{
    average_win_percent, fitness_vs_random, pattern_tournament, unbounded_fitness, EliteArchive, Measure, TOP_SEEDS,
};
use crate::records::{read_rows, write_rows, ArchiveRow, FusionRow, MeasureRow, MetricsRow, PatternRow};
use crate::rle::{bundled_patterns, parse_rle, RlePattern};

/// Overrides `output_dir` from the config when set.
pub const OUTPUT_ENV: &str = "SYMLIFE_OUTPUT_DIR";

pub fn output_root(config: &ExperimentConfig) -> PathBuf {
    std::env::var_os(OUTPUT_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| config.output_dir.clone())
}

pub fn batch_dir(root: &Path, config: &ExperimentConfig) -> PathBuf {
    root.join(format!("{}-s{}", config.label(), config.rng_seed))
}

fn run_dir_name(run: usize) -> String {
    format!("run-{run:02}")
}

#[derive(Debug, Serialize)]
struct RunEntry {
    run: usize,
    rng_seed: u64,
    archive: String,
    fusion_events: String,
    metrics: String,
    champion: String,
}

#[derive(Debug, Serialize)]
struct Manifest {
    software: &'static str,
    version: &'static str,
    label: String,
    config_hash: String,
    config_file: &'static str,
    master_seed: u64,
    runs: Vec<RunEntry>,
    started_unix: u64,
    finished_unix: u64,
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Runs every configured run into a fresh batch directory under `root` and
/// returns that directory. `progress` sees each generation of each run.
pub fn cmd_run(
    config: &ExperimentConfig,
    root: &Path,
    mut progress: impl FnMut(usize, &GenerationMetrics),
) -> Result<PathBuf> {
    config.validate()?;
    let dir = batch_dir(root, config);
    if dir.exists() {
        return Err(Error::OutputExists { path: dir });
    }
    fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
    fs::create_dir(&dir).map_err(|e| Error::io(&dir, e))?;
    let started = unix_now();
    write_file(&dir.join("config.txt"), &config.to_text())?;

    let label = config.label();
    let mut runs = Vec::with_capacity(config.num_runs);
    for run in 0..config.num_runs {
        let seed = run_seed(config.rng_seed, run);
        let artifacts = run_experiment_observed(config, seed, |m| progress(run, m))?;
        let name = run_dir_name(run);
        let run_path = dir.join(&name);
        fs::create_dir(&run_path).map_err(|e| Error::io(&run_path, e))?;
        write_run(&run_path, &label, run, &artifacts)?;
        runs.push(RunEntry {
            run,
            rng_seed: seed,
            archive: format!("{name}/archive.csv"),
            fusion_events: format!("{name}/fusion_events.csv"),
            metrics: format!("{name}/metrics.csv"),
            champion: format!("{name}/champion.seed"),
        });
    }

    let manifest = Manifest {
        software: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        label,
        config_hash: config.hash(),
        config_file: "config.txt",
        master_seed: config.rng_seed,
        runs,
        started_unix: started,
        finished_unix: unix_now(),
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&dir.join("manifest.json"), &(json + "\n"))?;
    Ok(dir)
}

fn write_run(dir: &Path, label: &str, run: usize, a: &RunArtifacts) -> Result<()> {
    let archive: Vec<ArchiveRow> = a.archive.iter().map(|r| ArchiveRow::new(label, run, r)).collect();
    write_rows(&dir.join("archive.csv"), &archive)?;
    let events: Vec<FusionRow> = a.fusion_events.iter().map(|e| FusionRow::new(label, run, e)).collect();
    write_rows(&dir.join("fusion_events.csv"), &events)?;
    let metrics: Vec<MetricsRow> = a.metrics.iter().map(|m| MetricsRow::new(label, run, m)).collect();
    write_rows(&dir.join("metrics.csv"), &metrics)?;
    if let Some(champion) = a.champion() {
        write_file(&dir.join("champion.seed"), &champion.genome.to_text())?;
    }
    Ok(())
}

/// One run's archive as read back from disk.
#[derive(Clone, Debug)]
pub struct LoadedRun {
    pub layer: String,
    pub run: usize,
    pub archive: Vec<ArchiveRecord>,
}

impl LoadedRun {
    pub fn elite_archive(&self) -> EliteArchive {
        EliteArchive::from_records(&self.archive)
    }

    pub fn champion(&self) -> Option<&ArchiveRecord> {
        let last = self.archive.iter().map(|r| r.generation).max()?;
        self.archive.iter().find(|r| r.generation == last && r.rank == 0)
    }
}

fn read_archive(path: &Path) -> Result<LoadedRun> {
    let rows: Vec<ArchiveRow> = read_rows(path)?;
    let malformed = |reason: String| Error::MalformedCsv {
        path: path.to_path_buf(),
        reason,
    };
    let first = rows.first().ok_or_else(|| malformed("archive has no rows".into()))?;
    let (layer, run) = (first.layer.clone(), first.run);
    let mut archive = Vec::with_capacity(rows.len());
    for row in &rows {
        if row.layer != layer || row.run != run {
            return Err(malformed("archive mixes layers or runs".into()));
        }
        archive.push(row.to_record().map_err(malformed)?);
    }
    Ok(LoadedRun { layer, run, archive })
}

/// Loads a batch directory (with `run-*` subdirectories) or a single run
/// directory.
pub fn load_runs(dir: &Path) -> Result<Vec<LoadedRun>> {
    let single = dir.join("archive.csv");
    if single.is_file() {
        return Ok(vec![read_archive(&single)?]);
    }
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with("run-")))
        .map(|p| p.join("archive.csv"))
        .filter(|p| p.is_file())
        .collect();
    if paths.is_empty() {
        return Err(Error::MissingArchive(dir.to_path_buf()));
    }
    paths.sort();
    paths.iter().map(|p| read_archive(p)).collect()
}

/// Game factors stored with a batch, or the defaults.
pub fn batch_factors(dir: &Path) -> Result<GameFactors> {
    let path = dir.join("config.txt");
    if path.is_file() {
        Ok(ExperimentConfig::load(&path)?.factors())
    } else {
        Ok(GameFactors::default())
    }
}

/// Reads every `.rle` file in `dir`, sorted by file name. A pattern without
/// a `#N` line is named after its file.
pub fn load_patterns(dir: &Path) -> Result<Vec<RlePattern>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x.eq_ignore_ascii_case("rle")))
        .collect();
    paths.sort();
    let mut out = Vec::with_capacity(paths.len());
    for p in paths {
        let text = fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?;
        let mut pattern = parse_rle(&text)?;
        if pattern.name.is_empty() {
            pattern.name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        }
        out.push(pattern);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MeasureOptions {
    pub measure: Measure,
    /// Random opponents per elite member (vs-random).
    pub opponents: usize,
    /// Elite members measured per generation (vs-random); `None` for all.
    pub top: Option<usize>,
    /// Measure every `every`-th generation; the last is always included.
    pub every: usize,
    pub games_per_pairing: usize,
    pub area_limit: usize,
    pub pattern_dir: Option<PathBuf>,
    pub rng_seed: u64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        MeasureOptions {
            measure: Measure::VsRandom,
            opponents: 50,
            top: None,
            every: 1,
            games_per_pairing: 20,
            area_limit: 10_000,
            pattern_dir: None,
            rng_seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeasureOutput {
    Values(Vec<MeasureRow>),
    Patterns(Vec<PatternRow>),
}

impl MeasureOutput {
    pub fn write(&self, path: &Path) -> Result<()> {
        match self {
            MeasureOutput::Values(rows) => write_rows(path, rows),
            MeasureOutput::Patterns(rows) => write_rows(path, rows),
        }
    }

    pub fn write_to(&self, out: impl std::io::Write) -> std::io::Result<()> {
        match self {
            MeasureOutput::Values(rows) => crate::records::write_rows_to(out, rows),
            MeasureOutput::Patterns(rows) => crate::records::write_rows_to(out, rows),
        }
    }
}

fn measured_generations(last: usize, every: usize) -> Vec<usize> {
    let mut gens: Vec<usize> = (0..=last).step_by(every.max(1)).collect();
    if gens.last() != Some(&last) {
        gens.push(last);
    }
    gens
}

/// Applies an external measure to the runs found under `dirs`.
pub fn cmd_measure(dirs: &[PathBuf], options: &MeasureOptions) -> Result<MeasureOutput> {
    let mut batches = Vec::with_capacity(dirs.len());
    for d in dirs {
        batches.push((load_runs(d)?, batch_factors(d)?));
    }
    match options.measure {
        Measure::VsRandom => {
            let mut rows = Vec::new();
            for (runs, factors) in &batches {
                for run in runs {
                    measure_vs_random(run, *factors, options, &mut rows)?;
                }
            }
            Ok(MeasureOutput::Values(rows))
        }
        Measure::VsPastWinners => {
            let mut rows = Vec::new();
            for (runs, factors) in &batches {
                for run in runs {
                    let archive = run.elite_archive();
                    let last = archive.num_generations().saturating_sub(1);
                    for n in measured_generations(last, options.every) {
                        rows.push(MeasureRow {
                            layer: run.layer.clone(),
                            run: run.run,
                            generation: n,
                            measure: Measure::VsPastWinners.to_string(),
                            value: unbounded_fitness(&archive, n, *factors)?,
                        });
                    }
                }
            }
            Ok(MeasureOutput::Values(rows))
        }
        Measure::VsPatterns => {
            let patterns = match &options.pattern_dir {
                Some(dir) => load_patterns(dir)?,
                None => bundled_patterns().into_iter().map(|(_, p)| p).collect(),
            };
            // champions grouped by layer, in first-seen order
            let mut layers: Vec<(String, Vec<SeedGenome>, GameFactors)> = Vec::new();
            for (runs, factors) in &batches {
                for run in runs {
                    let Some(c) = run.champion() else { continue };
                    match layers.iter_mut().find(|(l, _, _)| *l == run.layer) {
                        Some(entry) => entry.1.push(c.genome.clone()),
                        None => layers.push((run.layer.clone(), vec![c.genome.clone()], *factors)),
                    }
                }
            }
            let mut rows = Vec::new();
            for (layer, champions, factors) in layers {
                let scores =
                    pattern_tournament(&champions, &patterns, options.area_limit, options.games_per_pairing, factors)?;
                for s in &scores {
                    rows.push(PatternRow {
                        pattern: s.name.clone(),
                        area: Some(s.area),
                        layer: layer.clone(),
                        games: s.games,
                        win_percent: s.win_percent,
                    });
                }
                if let Some(avg) = average_win_percent(&scores) {
                    rows.push(PatternRow {
                        pattern: "average".into(),
                        area: None,
                        layer,
                        games: scores.iter().map(|s| s.games).sum(),
                        win_percent: avg,
                    });
                }
            }
            Ok(MeasureOutput::Patterns(rows))
        }
    }
}

fn measure_vs_random(
    run: &LoadedRun,
    factors: GameFactors,
    options: &MeasureOptions,
    rows: &mut Vec<MeasureRow>,
) -> Result<()> {
    let archive = run.elite_archive();
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed(options.rng_seed, run.run));
    let last = archive.num_generations().saturating_sub(1);
    for g in measured_generations(last, options.every) {
        let elite = archive.elite(g);
        let take = options.top.unwrap_or(elite.len()).min(elite.len());
        for (genome, _) in &elite[..take] {
            rows.push(MeasureRow {
                layer: run.layer.clone(),
                run: run.run,
                generation: g,
                measure: Measure::VsRandom.to_string(),
                value: fitness_vs_random(genome, options.opponents, factors, &mut rng)?,
            });
        }
    }
    Ok(())
}

/// Runs with some generation whose elite is smaller than ten, as
/// (layer, run, elite size). Their p estimates use the whole elite.
pub fn short_elites(runs: &[LoadedRun]) -> Vec<(String, usize, usize)> {
    let mut out = Vec::new();
    for run in runs {
        let archive = run.elite_archive();
        for g in 0..archive.num_generations() {
            let n = archive.elite(g).len();
            if n < TOP_SEEDS {
                out.push((run.layer.clone(), run.run, n));
                break;
            }
        }
    }
    out
}
