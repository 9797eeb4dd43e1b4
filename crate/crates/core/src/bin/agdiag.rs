use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use agdiag::diagnostics::IndicatorSet;
use agdiag::growth_accounting::PeriodMode;
use agdiag::market::CvDenominator;
use agdiag::pipeline::{self, Artifact, RunConfig};
use agdiag::productivity::GrowthMethod;
use agdiag::{Error, Result};

/// Growth accounting and binding-constraint diagnostics for a regional farm sector.
#[derive(Parser)]
#[command(name = "agdiag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Run config (JSON).
    #[arg(long, conflicts_with = "input_dir")]
    config: Option<PathBuf>,
    /// Directory holding run.json or conventionally named input files.
    #[arg(long)]
    input_dir: Option<PathBuf>,
    /// Where artifacts are written. Without it, single-artifact commands print to stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Load every configured input and print counts.
    Validate(Common),
    /// Revenue growth decomposition.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        base: Option<i32>,
        #[arg(long)]
        terminal: Option<i32>,
        #[arg(long)]
        mode: Option<PeriodMode>,
    },
    /// Output, input and TFP indices.
    Tfp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        base_year: Option<i32>,
    },
    /// Period growth rates of the indices.
    Growth {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        method: Option<GrowthMethod>,
    },
    /// Price volatility, shares, land ratios and profitability series.
    Markets {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        break_year: Option<i32>,
        #[arg(long)]
        cv: Option<CvDenominator>,
    },
    /// Comparative advantage index.
    Cai(Common),
    /// Evaluate the diagnostic tree.
    Diagnose {
        #[command(flatten)]
        common: Common,
        /// `builtin` or a path to a tree config.
        #[arg(long)]
        tree: Option<String>,
        /// Precomputed indicators.json; skips computing them from inputs.
        #[arg(long)]
        indicators: Option<PathBuf>,
    },
    /// Every artifact.
    Report(Common),
}

fn load_config(common: &Common) -> Result<RunConfig> {
    match (&common.config, &common.input_dir) {
        (Some(path), _) => RunConfig::load(path),
        (None, Some(dir)) => RunConfig::from_input_dir(dir),
        (None, None) => Err(Error::Config("no inputs: pass --config or --input-dir".into())),
    }
}

fn out_dir(common: &Common, cfg: Option<&RunConfig>) -> Option<PathBuf> {
    common
        .out_dir
        .clone()
        .or_else(|| cfg.and_then(|c| c.output_dir.clone()))
}

fn emit(dir: Option<PathBuf>, artifacts: &[Artifact]) -> Result<()> {
    match dir {
        Some(dir) => {
            pipeline::write_artifacts(&dir, artifacts)?;
            for a in artifacts {
                println!("{}", dir.join(&a.name).display());
            }
        }
        None if artifacts.len() == 1 => print!("{}", artifacts[0].contents),
        None => {
            for a in artifacts {
                println!("==> {} <==", a.name);
                print!("{}", a.contents);
            }
        }
    }
    Ok(())
}

fn run_with<F>(common: &Common, edit: impl FnOnce(&mut RunConfig), f: F) -> Result<()>
where
    F: FnOnce(&RunConfig) -> Result<Vec<Artifact>>,
{
    let mut cfg = load_config(common)?;
    edit(&mut cfg);
    let artifacts = f(&cfg)?;
    emit(out_dir(common, Some(&cfg)), &artifacts)
}

fn diagnose(common: &Common, tree: Option<String>, indicators: Option<&Path>) -> Result<()> {
    let cfg = match indicators {
        Some(_) if common.config.is_none() && common.input_dir.is_none() => None,
        _ => Some(load_config(common)?),
    };
    let tree_spec = tree
        .or_else(|| cfg.as_ref().map(|c| c.tree.clone()))
        .unwrap_or_else(|| "builtin".into());
    let tree = pipeline::tree_from_spec(&tree_spec)?;
    let set: IndicatorSet = match (indicators, &cfg) {
        (Some(path), _) => pipeline::load_indicators(path)?,
        (None, Some(cfg)) => pipeline::compute_indicators(cfg)?,
        (None, None) => unreachable!(),
    };
    let artifacts = pipeline::diagnosis_artifacts(&tree, &set)?;
    match out_dir(common, cfg.as_ref()) {
        Some(dir) => emit(Some(dir), &artifacts),
        None => {
            let text = artifacts.iter().find(|a| a.name == "diagnosis.txt").expect("rendered");
            print!("{}", text.contents);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate(common) => {
            let cfg = load_config(&common)?;
            for (k, v) in pipeline::validate_inputs(&cfg)? {
                println!("{k}: {v}");
            }
            println!("ok");
            Ok(())
        }
        Command::Decompose { common, base, terminal, mode } => run_with(
            &common,
            |c| {
                let d = &mut c.decomposition;
                d.base_year = base.unwrap_or(d.base_year);
                d.terminal_year = terminal.unwrap_or(d.terminal_year);
                d.period_mode = mode.unwrap_or(d.period_mode);
            },
            pipeline::decompose_artifacts,
        ),
        Command::Tfp { common, base_year } => run_with(
            &common,
            |c| c.tfp.base_year = base_year.or(c.tfp.base_year),
            pipeline::tfp_artifacts,
        ),
        Command::Growth { common, method } => run_with(
            &common,
            |c| c.methods.growth = method.unwrap_or(c.methods.growth),
            pipeline::growth_artifacts,
        ),
        Command::Markets { common, break_year, cv } => run_with(
            &common,
            |c| {
                c.markets.break_year = break_year.unwrap_or(c.markets.break_year);
                c.methods.cv = cv.unwrap_or(c.methods.cv);
            },
            pipeline::markets_artifacts,
        ),
        Command::Cai(common) => run_with(&common, |_| {}, pipeline::cai_artifacts),
        Command::Diagnose { common, tree, indicators } => {
            diagnose(&common, tree, indicators.as_deref())
        }
        Command::Report(common) => {
            let cfg = load_config(&common)?;
            let dir = out_dir(&common, Some(&cfg))
                .ok_or_else(|| Error::Config("report needs --out-dir or output_dir in the config".into()))?;
            let artifacts = pipeline::report_artifacts(&cfg)?;
            emit(Some(dir), &artifacts)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
