//! Experiment configuration.
//!
//! The file format is one `key = value` per line. Blank lines and lines
//! starting with `#` are ignored. Unknown or repeated keys are rejected and
//! missing keys keep their defaults, which are the full-scale settings.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{ConfigError, Error};
use crate::life::GameFactors;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Highest active layer, 1 to 4.
    pub experiment_type_num: u8,
    pub pop_size: usize,
    pub num_trials: usize,
    pub num_generations: usize,
    pub min_s_xspan: usize,
    pub min_s_yspan: usize,
    pub s_xspan: usize,
    pub s_yspan: usize,
    pub max_area_first: usize,
    pub max_area_last: usize,
    pub seed_density: f64,
    pub width_factor: f64,
    pub height_factor: f64,
    pub time_factor: f64,
    pub tournament_size: usize,
    pub elite_size: usize,
    pub mutation_rate: f64,
    pub prob_flip: f64,
    pub prob_grow: f64,
    pub prob_shrink: f64,
    pub min_similarity: f64,
    pub max_similarity: f64,
    pub prob_fission: f64,
    pub prob_fusion: f64,
    pub symbiosis_flag: bool,
    pub fusion_test_flag: bool,
    /// Games per pairing in the single-pair past-winner estimate.
    pub past_winner_games: usize,
    pub rng_seed: u64,
    pub num_runs: usize,
    pub output_dir: PathBuf,
    /// Directory of `.rle` files; `None` uses the bundled patterns.
    pub pattern_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment_type_num: 4,
            pop_size: 200,
            num_trials: 2,
            num_generations: 100,
            min_s_xspan: 5,
            min_s_yspan: 5,
            s_xspan: 5,
            s_yspan: 5,
            max_area_first: 120,
            max_area_last: 170,
            seed_density: 0.375,
            width_factor: 6.0,
            height_factor: 3.0,
            time_factor: 6.0,
            tournament_size: 2,
            elite_size: 50,
            mutation_rate: 0.01,
            prob_flip: 0.6,
            prob_grow: 0.2,
            prob_shrink: 0.2,
            min_similarity: 0.8,
            max_similarity: 0.99,
            prob_fission: 0.01,
            prob_fusion: 0.005,
            symbiosis_flag: false,
            fusion_test_flag: false,
            past_winner_games: 50,
            rng_seed: 1,
            num_runs: 12,
            output_dir: PathBuf::from("runs"),
            pattern_dir: None,
        }
    }
}

/// Every accepted key, in canonical order.
pub const KEYS: &[&str] = &[
    "experiment_type_num",
    "pop_size",
    "num_trials",
    "num_generations",
    "min_s_xspan",
    "min_s_yspan",
    "s_xspan",
    "s_yspan",
    "max_area_first",
    "max_area_last",
    "seed_density",
    "width_factor",
    "height_factor",
    "time_factor",
    "tournament_size",
    "elite_size",
    "mutation_rate",
    "prob_flip",
    "prob_grow",
    "prob_shrink",
    "min_similarity",
    "max_similarity",
    "prob_fission",
    "prob_fusion",
    "symbiosis_flag",
    "fusion_test_flag",
    "past_winner_games",
    "rng_seed",
    "num_runs",
    "output_dir",
    "pattern_dir",
];

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::new(key, format!("cannot parse `{value}`")))
}

fn parse_flag(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(ConfigError::new(key, format!("must be 0 or 1, got `{value}`"))),
    }
}

fn parse_real(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = parse_num(key, value)?;
    if !v.is_finite() {
        return Err(ConfigError::new(key, "must be finite"));
    }
    Ok(v)
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = ExperimentConfig::default();
        let mut seen: Vec<&str> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::new(format!("line {}", lineno + 1), "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let Some(&canonical) = KEYS.iter().find(|&&k| k == key) else {
                return Err(ConfigError::new(key, "unknown key"));
            };
            if seen.contains(&canonical) {
                return Err(ConfigError::new(key, "given more than once"));
            }
            seen.push(canonical);
            cfg.set(canonical, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text)?)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<(), ConfigError> {
        match key {
            "experiment_type_num" => self.experiment_type_num = parse_num(key, v)?,
            "pop_size" => self.pop_size = parse_num(key, v)?,
            "num_trials" => self.num_trials = parse_num(key, v)?,
            "num_generations" => self.num_generations = parse_num(key, v)?,
            "min_s_xspan" => self.min_s_xspan = parse_num(key, v)?,
            "min_s_yspan" => self.min_s_yspan = parse_num(key, v)?,
            "s_xspan" => self.s_xspan = parse_num(key, v)?,
            "s_yspan" => self.s_yspan = parse_num(key, v)?,
            "max_area_first" => self.max_area_first = parse_num(key, v)?,
            "max_area_last" => self.max_area_last = parse_num(key, v)?,
            "seed_density" => self.seed_density = parse_real(key, v)?,
            "width_factor" => self.width_factor = parse_real(key, v)?,
            "height_factor" => self.height_factor = parse_real(key, v)?,
            "time_factor" => self.time_factor = parse_real(key, v)?,
            "tournament_size" => self.tournament_size = parse_num(key, v)?,
            "elite_size" => self.elite_size = parse_num(key, v)?,
            "mutation_rate" => self.mutation_rate = parse_real(key, v)?,
            "prob_flip" => self.prob_flip = parse_real(key, v)?,
            "prob_grow" => self.prob_grow = parse_real(key, v)?,
            "prob_shrink" => self.prob_shrink = parse_real(key, v)?,
            "min_similarity" => self.min_similarity = parse_real(key, v)?,
            "max_similarity" => self.max_similarity = parse_real(key, v)?,
            "prob_fission" => self.prob_fission = parse_real(key, v)?,
            "prob_fusion" => self.prob_fusion = parse_real(key, v)?,
            "symbiosis_flag" => self.symbiosis_flag = parse_flag(key, v)?,
            "fusion_test_flag" => self.fusion_test_flag = parse_flag(key, v)?,
            "past_winner_games" => self.past_winner_games = parse_num(key, v)?,
            "rng_seed" => self.rng_seed = parse_num(key, v)?,
            "num_runs" => self.num_runs = parse_num(key, v)?,
            "output_dir" => {
                if v.is_empty() {
                    return Err(ConfigError::new(key, "must not be empty"));
                }
                self.output_dir = PathBuf::from(v);
            }
            "pattern_dir" => self.pattern_dir = (!v.is_empty()).then(|| PathBuf::from(v)),
            _ => unreachable!("key list and setter out of sync"),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |key: &str, reason: &str| Err(ConfigError::new(key, reason));
        if !(1..=4).contains(&self.experiment_type_num) {
            return fail("experiment_type_num", "must be 1, 2, 3 or 4");
        }
        if self.pop_size < 2 {
            return fail("pop_size", "must be at least 2");
        }
        if self.num_trials < 1 {
            return fail("num_trials", "must be at least 1");
        }
        if self.min_s_xspan < 1 || self.min_s_yspan < 1 {
            return fail("min_s_xspan", "minimum spans must be at least 1");
        }
        if self.s_xspan < self.min_s_xspan {
            return fail("s_xspan", "must be at least min_s_xspan");
        }
        if self.s_yspan < self.min_s_yspan {
            return fail("s_yspan", "must be at least min_s_yspan");
        }
        if self.max_area_first < self.s_xspan * self.s_yspan {
            return fail("max_area_first", "must be at least s_xspan * s_yspan");
        }
        if self.max_area_last < self.max_area_first {
            return fail("max_area_last", "must be at least max_area_first");
        }
        for (key, p) in [
            ("seed_density", self.seed_density),
            ("mutation_rate", self.mutation_rate),
            ("prob_flip", self.prob_flip),
            ("prob_grow", self.prob_grow),
            ("prob_shrink", self.prob_shrink),
            ("min_similarity", self.min_similarity),
            ("max_similarity", self.max_similarity),
            ("prob_fission", self.prob_fission),
            ("prob_fusion", self.prob_fusion),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return fail(key, "must lie in [0, 1]");
            }
        }
        if (self.prob_flip + self.prob_grow + self.prob_shrink - 1.0).abs() > 1e-9 {
            return fail("prob_flip", "prob_flip + prob_grow + prob_shrink must equal 1");
        }
        if self.prob_fission + self.prob_fusion > 1.0 {
            return fail("prob_fusion", "prob_fission + prob_fusion must not exceed 1");
        }
        if self.min_similarity > self.max_similarity {
            return fail("min_similarity", "must not exceed max_similarity");
        }
        // Both seeds must fit side by side in the arena.
        if self.width_factor < 2.0 {
            return fail("width_factor", "must be at least 2");
        }
        if self.height_factor < 1.0 {
            return fail("height_factor", "must be at least 1");
        }
        if self.time_factor <= 0.0 {
            return fail("time_factor", "must be positive");
        }
        if self.tournament_size < 1 || self.tournament_size > self.pop_size {
            return fail("tournament_size", "must lie in 1..=pop_size");
        }
        if self.elite_size < 1 || self.elite_size > self.pop_size {
            return fail("elite_size", "must lie in 1..=pop_size");
        }
        if self.past_winner_games < 1 {
            return fail("past_winner_games", "must be at least 1");
        }
        if self.num_runs < 1 {
            return fail("num_runs", "must be at least 1");
        }
        Ok(())
    }

    pub fn factors(&self) -> GameFactors {
        GameFactors {
            width: self.width_factor,
            height: self.height_factor,
            time: self.time_factor,
        }
    }

    /// Short name of the configuration, e.g. `layer4-mutualism`.
    pub fn label(&self) -> String {
        let mut label = format!("layer{}", self.experiment_type_num);
        if self.experiment_type_num == 4 {
            if self.fusion_test_flag {
                label.push_str("-shuffled");
            }
            if self.symbiosis_flag {
                label.push_str("-mutualism");
            }
        }
        label
    }

    /// Canonical `key = value` listing of every field.
    pub fn to_text(&self) -> String {
        let flag = |b: bool| if b { "1" } else { "0" };
        let real = |x: f64| format!("{x:?}");
        let values: Vec<String> = vec![
            self.experiment_type_num.to_string(),
            self.pop_size.to_string(),
            self.num_trials.to_string(),
            self.num_generations.to_string(),
            self.min_s_xspan.to_string(),
            self.min_s_yspan.to_string(),
            self.s_xspan.to_string(),
            self.s_yspan.to_string(),
            self.max_area_first.to_string(),
            self.max_area_last.to_string(),
            real(self.seed_density),
            real(self.width_factor),
            real(self.height_factor),
            real(self.time_factor),
            self.tournament_size.to_string(),
            self.elite_size.to_string(),
            real(self.mutation_rate),
            real(self.prob_flip),
            real(self.prob_grow),
            real(self.prob_shrink),
            real(self.min_similarity),
            real(self.max_similarity),
            real(self.prob_fission),
            real(self.prob_fusion),
            flag(self.symbiosis_flag).into(),
            flag(self.fusion_test_flag).into(),
            self.past_winner_games.to_string(),
            self.rng_seed.to_string(),
            self.num_runs.to_string(),
            self.output_dir.display().to_string(),
            self.pattern_dir.as_ref().map(|p| p.display().to_string()).unwrap_or_default(),
        ];
        KEYS.iter()
            .zip(values)
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    /// SHA-256 of the canonical listing, hex encoded.
    pub fn hash(&self) -> String {
        Sha256::digest(self.to_text().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Overrides the scale parameters with the full-scale protocol values.
    pub fn full_scale(mut self) -> Self {
        let d = ExperimentConfig::default();
        self.pop_size = d.pop_size;
        self.num_trials = d.num_trials;
        self.num_generations = d.num_generations;
        self.elite_size = d.elite_size;
        self.num_runs = d.num_runs;
        self
    }
}

/// Seed for run `run_index`, derived from the master seed with SplitMix64.
pub fn run_seed(master: u64, run_index: usize) -> u64 {
    let mut z = master.wrapping_add((run_index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
