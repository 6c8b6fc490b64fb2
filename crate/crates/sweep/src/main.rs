use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gelfond_core::debruijn::build_graph;
use gelfond_core::potential::{haar_average, integrate_cells, TailConstant};
use gelfond_core::verify::orient;
use gelfond_core::{DyadicRational, TripleRange, VerifyConfig};
use gelfond_sweep::analysis::AnalysisDocument;
use gelfond_sweep::config::{SweepConfig, ZoomWindow};
use gelfond_sweep::record::{read_rows, write_rows};
use gelfond_sweep::run::{certify_row, isolation, run_sweep};
use gelfond_sweep::{analyze, selftest, Result, SweepError};

#[derive(Parser)]
#[command(name = "gelfond", version, about = "Certified Gelfond exponents of weighted Thue-Morse sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RangeArgs {
    #[arg(long, default_value_t = 3)]
    d_min: u32,
    #[arg(long, default_value_t = 15)]
    d_max: u32,
    #[arg(long, default_value_t = 22)]
    dprime_max: u32,
    #[arg(long, default_value_t = 22)]
    n_max: u32,
    /// 2.5 or 4
    #[arg(long, default_value_t = 2.5)]
    tail_constant: f64,
    #[arg(long, default_value_t = 26)]
    base_level: u32,
}

impl RangeArgs {
    fn range(&self) -> TripleRange {
        TripleRange {
            d_min: self.d_min,
            d_max: self.d_max,
            dprime_max: self.dprime_max,
            n_max: self.n_max,
        }
    }

    fn verify(&self) -> Result<VerifyConfig> {
        let tail_constant = TailConstant::from_value(self.tail_constant)
            .ok_or_else(|| SweepError::InvalidConfig(format!("tail constant {} is not 2.5 or 4", self.tail_constant)))?;
        Ok(VerifyConfig {
            tail_constant,
            base_level: self.base_level,
        })
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    range: RangeArgs,
    /// Records CSV
    #[arg(long, default_value = "records.csv")]
    out: PathBuf,
    /// Analysis JSON written after the sweep
    #[arg(long)]
    analysis: Option<PathBuf>,
    #[arg(long, env = gelfond_sweep::config::WORKERS_ENV)]
    workers: Option<usize>,
    /// Store measured runtimes (breaks byte-identical reruns)
    #[arg(long)]
    record_runtime: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a single parameter
    Certify {
        #[arg(long)]
        c: DyadicRational,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Certify every point of the grid of level L
    Sweep {
        #[arg(long = "L", default_value_t = 10)]
        level: u32,
        #[command(flatten)]
        args: SweepArgs,
    },
    /// Certify the level-L points of a window
    Zoom {
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        window: Vec<f64>,
        #[arg(long = "L", default_value_t = 12)]
        level: u32,
        /// Level of the grid being refined
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[command(flatten)]
        args: SweepArgs,
    },
    /// Period statistics of a records CSV
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product identity and Howard/Karp consistency checks
    Selftest,
    /// Print the weighted graph G_N as `label source target weight`
    DumpGraph {
        #[arg(long)]
        c: DyadicRational,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        dprime: u32,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 26)]
        base_level: u32,
    },
}

fn sweep_config(level: u32, args: &SweepArgs, zoom: Option<ZoomWindow>) -> Result<SweepConfig> {
    Ok(SweepConfig {
        level,
        range: args.range.range(),
        verify: args.range.verify()?,
        zoom,
        workers: args.workers,
        record_runtime: args.record_runtime,
    })
}

fn progress(done: usize, total: usize) {
    eprint!("\r{done}/{total}");
    if done == total {
        eprintln!();
    }
}

fn write_analysis(config: Option<&SweepConfig>, rows: &[gelfond_sweep::SweepRow], path: &PathBuf) -> Result<()> {
    let report = analyze(rows)?;
    let doc = AnalysisDocument {
        config_sha256: config.map(SweepConfig::fingerprint).unwrap_or_default(),
        config: config.cloned(),
        report,
    };
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Certify { c, range } => {
            let config = SweepConfig {
                range: range.range(),
                verify: range.verify()?,
                record_runtime: true,
                ..SweepConfig::default()
            };
            let row = certify_row(c, &config)?;
            write_rows(io::stdout().lock(), &[row])?;
        }
        Command::Sweep { level, args } => {
            let config = sweep_config(level, &args, None)?;
            let rows = run_sweep(&config, &args.out, &progress)?;
            if let Some(path) = &args.analysis {
                write_analysis(Some(&config), &rows, path)?;
            }
        }
        Command::Zoom {
            window,
            level,
            base,
            args,
        } => {
            let zoom = ZoomWindow {
                a: window[0],
                b: window[1],
                level,
            };
            let config = sweep_config(base, &args, Some(zoom))?;
            let rows = run_sweep(&config, &args.out, &progress)?;
            for report in isolation(&rows) {
                println!("untestable {} isolated={}", report.c, report.isolated);
            }
        }
        Command::Analyze { input, out } => {
            let rows = read_rows(File::open(&input)?)?;
            match out {
                Some(path) => write_analysis(None, &rows, &path)?,
                None => {
                    let report = analyze(&rows)?;
                    serde_json::to_writer_pretty(io::stdout().lock(), &report)?;
                    println!();
                }
            }
        }
        Command::Selftest => {
            let mut failed = false;
            for check in selftest::run_all()? {
                println!(
                    "{} {}: worst {:.3e} (tolerance {:.0e})",
                    if check.passed { "PASS" } else { "FAIL" },
                    check.name,
                    check.worst,
                    check.tolerance
                );
                failed |= !check.passed;
            }
            if failed {
                return Err(SweepError::InvalidConfig("selftest failed".into()));
            }
        }
        Command::DumpGraph {
            c,
            d,
            dprime,
            n,
            base_level,
        } => {
            let (spec, mirrored) = orient(c, d, dprime)?;
            if mirrored {
                eprintln!("tail condition fails for c = {c}; graph is for 1 - c = {}", spec.c);
            }
            let cells = integrate_cells(&spec, base_level.max(n), n)?;
            let graph = build_graph(&haar_average(&cells, n)?)?;
            graph.dump(BufWriter::new(io::stdout().lock()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
