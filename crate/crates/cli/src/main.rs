use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symlife::experiment::{cmd_measure, cmd_run, output_root, MeasureOptions};
use symlife::measures::Measure;
use symlife::report::cmd_report;
use symlife::{Error, ExperimentConfig};

#[derive(Parser)]
#[command(name = "symlife", version, about = "Evolve Immigration Game seeds and measure them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured run of an experiment into a new batch directory
    Run {
        config: PathBuf,
        /// Use the full population, trial, generation and run counts
        #[arg(long)]
        full_scale: bool,
        /// Output root; overrides SYMLIFE_OUTPUT_DIR and the config
        #[arg(long)]
        output_dir: Option<PathBuf>,
        #[arg(long, short)]
        quiet: bool,
    },
    /// Apply an external fitness measure to batch or run directories
    Measure {
        #[arg(required = true)]
        dirs: Vec<PathBuf>,
        /// vs-random, vs-patterns or vs-past-winners
        #[arg(long)]
        measure: Measure,
        /// Random opponents per seed (vs-random)
        #[arg(long, default_value_t = 50)]
        opponents: usize,
        /// Elite members per generation to measure (vs-random)
        #[arg(long)]
        top: Option<usize>,
        /// Measure every n-th generation
        #[arg(long, default_value_t = 1)]
        every: usize,
        /// Games per champion and pattern (vs-patterns)
        #[arg(long, default_value_t = 20)]
        games: usize,
        /// Largest pattern area admitted (vs-patterns)
        #[arg(long, default_value_t = 10_000)]
        area_limit: usize,
        /// Directory of .rle files; the bundled corpus otherwise
        #[arg(long)]
        patterns: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write CSV here instead of stdout
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Charts and summary tables from metric, measure and fusion CSVs
    Report {
        #[arg(required = true)]
        csvs: Vec<PathBuf>,
        #[arg(long, default_value = "report")]
        out: PathBuf,
    },
    /// Check a config file and print it in canonical form
    Validate { config: PathBuf },
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run {
            config,
            full_scale,
            output_dir,
            quiet,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if full_scale {
                cfg = cfg.full_scale();
            }
            let root = output_dir.unwrap_or_else(|| output_root(&cfg));
            let dir = cmd_run(&cfg, &root, |run, m| {
                if !quiet {
                    eprintln!(
                        "run {run} gen {:>4} births {:>6}  elite fitness {:.3}  diversity {:.3}  area {:.1}  density {:.3}",
                        m.generation, m.births, m.elite_fitness_mean, m.diversity, m.area_mean, m.density_mean
                    );
                }
            })?;
            println!("{}", dir.display());
        }
        Command::Measure {
            dirs,
            measure,
            opponents,
            top,
            every,
            games,
            area_limit,
            patterns,
            seed,
            output,
        } => {
            let options = MeasureOptions {
                measure,
                opponents,
                top,
                every,
                games_per_pairing: games,
                area_limit,
                pattern_dir: patterns,
                rng_seed: seed,
            };
            let result = cmd_measure(&dirs, &options)?;
            match output {
                Some(path) => result.write(&path)?,
                None => {
                    let stdout = std::io::stdout();
                    result
                        .write_to(stdout.lock())
                        .map_err(|e| Error::io("<stdout>", e))?;
                }
            }
        }
        Command::Report { csvs, out } => {
            for path in cmd_report(&csvs, &out)? {
                println!("{}", path.display());
            }
        }
        Command::Validate { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let mut stdout = std::io::stdout();
            write!(stdout, "{}", cfg.to_text()).map_err(|e| Error::io("<stdout>", e))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage mistakes are configuration errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
