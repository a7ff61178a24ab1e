use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use laplace_gof::engine::RejectionRegion;
use laplace_gof::harness::{
    aggregate, calibrate_table, power_curves, power_for_regions, run_study, test_data, write_curves, write_gaps, write_regions,
    write_report, DataOptions, Grouping, HarnessError, HarnessResult, PowerTable, StudyConfig, Transform,
};
use laplace_gof::TestId;

/// Laplace goodness-of-fit tests: calibration, power studies and data testing.
#[derive(Parser)]
#[command(name = "laplace-gof", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo critical values.
    Calibrate {
        #[command(flatten)]
        study: StudyArgs,
        /// Output CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Power of calibrated regions against the submodel grids.
    Power {
        /// Critical-value CSV written by `calibrate`.
        #[arg(long)]
        critical: PathBuf,
        #[command(flatten)]
        study: StudyArgs,
        /// Output CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full study: calibration, power, metadata.
    Study {
        /// Flat `key = value` config file; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        study: StudyArgs,
        #[arg(long)]
        calib_reps: Option<String>,
        #[arg(long)]
        power_reps: Option<String>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Group averages, gaps and ranks from a power CSV.
    Report {
        power: PathBuf,
        /// Comma-separated groupings or `all-groupings`.
        #[arg(long, default_value = "all-groupings")]
        grouping: String,
        /// Report CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Across-n gap CSV.
        #[arg(long)]
        gaps: Option<PathBuf>,
    },
    /// Mean power per case index over the submodels.
    Curves {
        power: PathBuf,
        /// Output CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Applies one test to a column of data.
    Test {
        file: PathBuf,
        /// 1-based column.
        #[arg(long, default_value_t = 1)]
        column: usize,
        /// Single character, or `tab`.
        #[arg(long, default_value = ",")]
        delimiter: String,
        /// Skip the first row.
        #[arg(long)]
        header: bool,
        /// `none` or `log-returns`.
        #[arg(long, default_value = "none")]
        transform: String,
        #[arg(long)]
        test: String,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Null replicates for the critical values and p-value.
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Study settings shared by several subcommands, in config-file syntax.
#[derive(Args)]
struct StudyArgs {
    /// Lists such as `20,50`.
    #[arg(long)]
    ns: Option<String>,
    #[arg(long)]
    alphas: Option<String>,
    /// Test names or `all`.
    #[arg(long)]
    tests: Option<String>,
    /// Submodel names or `all`.
    #[arg(long)]
    submodels: Option<String>,
    /// Replicates (calibration or power, by subcommand).
    #[arg(long)]
    reps: Option<String>,
    #[arg(long)]
    seed: Option<String>,
}

impl StudyArgs {
    fn apply(&self, cfg: &mut StudyConfig, reps_key: &str) -> HarnessResult<()> {
        let pairs = [
            ("ns", &self.ns),
            ("alphas", &self.alphas),
            ("tests", &self.tests),
            ("submodels", &self.submodels),
            (reps_key, &self.reps),
            ("seed", &self.seed),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                cfg.set(k, v)?;
            }
        }
        Ok(())
    }
}

fn open_out(path: &Option<PathBuf>) -> HarnessResult<Box<dyn Write>> {
    match path {
        Some(p) => Ok(Box::new(File::create(p).map_err(|e| HarnessError::io(p, e))?)),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn write_with(path: &Option<PathBuf>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> HarnessResult<()> {
    let shown = path.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    let mut w = open_out(path)?;
    f(&mut w).and_then(|_| w.flush()).map_err(|e| HarnessError::io(&shown, e))
}

fn log(msg: String) {
    eprintln!("{msg}");
}

fn need_seed(cfg: &StudyConfig) -> HarnessResult<u64> {
    cfg.master_seed.ok_or_else(|| HarnessError::Config("--seed is required".into()))
}

fn parse_delimiter(s: &str) -> HarnessResult<u8> {
    match s {
        "tab" | "\\t" => Ok(b'\t'),
        _ if s.len() == 1 => Ok(s.as_bytes()[0]),
        _ => Err(HarnessError::Config(format!("delimiter must be one character or 'tab', got '{s}'"))),
    }
}

fn run(cli: Cli) -> HarnessResult<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| HarnessError::Config(format!("--threads {t}: {e}")))?;
    }
    match cli.command {
        Command::Calibrate { study, out } => {
            let mut cfg = StudyConfig::default();
            study.apply(&mut cfg, "calib_reps")?;
            let seed = need_seed(&cfg)?;
            cfg.validate()?;
            let regions = calibrate_table(&cfg.tests, &cfg.ns, &cfg.alphas, cfg.calib_reps, seed)?;
            write_with(&out, |w| write_regions(w, &regions))
        }
        Command::Power { critical, study, out } => {
            let mut cfg = StudyConfig::default();
            study.apply(&mut cfg, "power_reps")?;
            let seed = need_seed(&cfg)?;
            cfg.validate()?;
            let regions: Vec<RejectionRegion> = RejectionRegion::load_all(&critical)?
                .into_iter()
                .filter(|r| cfg.ns.contains(&r.n) && cfg.alphas.contains(&r.alpha) && cfg.tests.contains(&r.test))
                .collect();
            if regions.is_empty() {
                return Err(HarnessError::Config(format!("{}: no regions match the selected tests, ns and alphas", critical.display())));
            }
            let table = power_for_regions(&regions, &cfg.submodels, cfg.power_reps, seed, &mut log)?;
            write_with(&out, |w| table.write_csv(w))
        }
        Command::Study { config, study, calib_reps, power_reps, out_dir } => {
            let mut cfg = match &config {
                Some(p) => StudyConfig::from_file(p)?,
                None => StudyConfig::default(),
            };
            if study.reps.is_some() {
                return Err(HarnessError::Config("study takes --calib-reps and --power-reps instead of --reps".into()));
            }
            study.apply(&mut cfg, "calib_reps")?;
            if let Some(v) = &calib_reps {
                cfg.set("calib_reps", v)?;
            }
            if let Some(v) = &power_reps {
                cfg.set("power_reps", v)?;
            }
            if let Some(d) = out_dir {
                cfg.out_dir = d;
            }
            need_seed(&cfg)?;
            let out = run_study(&cfg, &mut log)?;
            log(format!("wrote {}, {} and {}", out.critical_csv.display(), out.power_csv.display(), out.metadata.display()));
            Ok(())
        }
        Command::Report { power, grouping, out, gaps } => {
            let groupings: Vec<Grouping> = if grouping.trim() == "all-groupings" {
                Grouping::ALL.to_vec()
            } else {
                grouping.split(',').map(str::parse).collect::<HarnessResult<_>>()?
            };
            let table = PowerTable::load(&power)?;
            let (mut rows, mut gap_rows) = (Vec::new(), Vec::new());
            for g in groupings {
                let s = aggregate(&table, g)?;
                rows.extend(s.rows);
                gap_rows.extend(s.gaps);
            }
            write_with(&out, |w| write_report(w, &rows))?;
            if gaps.is_some() {
                write_with(&gaps, |w| write_gaps(w, &gap_rows))?;
            }
            Ok(())
        }
        Command::Curves { power, out } => {
            let points = power_curves(&PowerTable::load(&power)?)?;
            write_with(&out, |w| write_curves(w, &points))
        }
        Command::Test { file, column, delimiter, header, transform, test, alpha, reps, seed } => {
            let opts = DataOptions {
                column,
                delimiter: parse_delimiter(&delimiter)?,
                has_header: header,
                transform: transform.parse::<Transform>()?,
            };
            let test: TestId = test.parse().map_err(|e: laplace_gof::Error| HarnessError::Config(e.to_string()))?;
            let report = test_data(Path::new(&file), &opts, test, alpha, reps, seed)?;
            println!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
