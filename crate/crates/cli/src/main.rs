use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use cfqmc::estimate::Method;
use cfqmc::study::{convergence_study, emit_report, StudyConfig, SurrogateKind};

#[derive(Parser)]
#[command(name = "cfqmc", version, about = "Convergence studies for MC, QMC, RQMC and RQMC with control functionals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a convergence study and write rows.csv, slopes.csv and plot.csv.
    Study(StudyArgs),
    /// Print the default study config.
    DefaultConfig,
}

#[derive(Parser)]
struct StudyArgs {
    /// Config file (flat TOML key-value pairs); defaults are used when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "fn")]
    function: Option<String>,
    #[arg(long)]
    dims: Option<usize>,
    /// Comma-separated subset of mc,qmc,rqmc,rqmc-cf.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<Method>>,
    #[arg(long)]
    budget_min: Option<usize>,
    #[arg(long)]
    budget_max: Option<usize>,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// grid or kernel.
    #[arg(long)]
    surrogate: Option<SurrogateKind>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl StudyArgs {
    fn resolve(self) -> Result<StudyConfig> {
        let mut c = match &self.config {
            Some(path) => StudyConfig::load(path)?,
            None => StudyConfig::default(),
        };
        if let Some(v) = self.function {
            c.function = v;
        }
        if let Some(v) = self.dims {
            c.dims = v;
        }
        if let Some(v) = self.methods {
            c.methods = v;
        }
        if let Some(v) = self.budget_min {
            c.budget_min = v;
        }
        if let Some(v) = self.budget_max {
            c.budget_max = v;
        }
        if let Some(v) = self.replicates {
            c.replicates = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.surrogate {
            c.surrogate = v;
        }
        if let Some(v) = self.out_dir {
            c.out_dir = v;
        }
        c.validate()?;
        Ok(c)
    }
}

fn study(args: StudyArgs) -> Result<bool> {
    let config = args.resolve().context("invalid study configuration")?;
    let report = convergence_study(&config)?;
    let paths = emit_report(&report, &config.out_dir)?;

    println!("{:<8} {:>8} {:>14} {:>14}", "method", "budget", "rmse", "std");
    for r in &report.rows {
        println!("{:<8} {:>8} {:>14.6e} {:>14.6e}", r.method, r.budget, r.rmse, r.std);
    }
    println!();
    for s in &report.slopes {
        if s.degenerate {
            println!("slope {:<8} degenerate (zero error)", s.method);
        } else {
            println!("slope {:<8} {:>7.3} ± {:.3} over {} budgets", s.method, s.slope, s.stderr, s.points);
        }
    }
    for p in &paths {
        println!("wrote {}", p.display());
    }

    if config.check_ordering {
        if let Err(e) = report.check_rate_ordering() {
            eprintln!("error: {e}");
            return Ok(false);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Study(args) => study(args),
        Command::DefaultConfig => StudyConfig::default()
            .to_toml_string()
            .map(|s| {
                print!("{s}");
                true
            })
            .map_err(Into::into),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
