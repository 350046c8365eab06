// Copyright 2026 The lifshitz authors
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lifshitz_tool::config::{load_config, ModelChoice, RunConfig};
use lifshitz_tool::formats::{read_experiment, read_theta, CsvDocument};
use lifshitz_tool::sweep;
use lifshitz_tool::{Result, ToolError};

/// Casimir pressure and force-gradient sweeps for magnetic metal plates.
#[derive(Debug, Parser)]
#[command(name = "lifshitz", version)]
struct Cli {
    /// TOML run configuration (required).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Restrict the models named in the configuration.
    #[arg(long, global = true, value_enum)]
    model: Option<ModelChoice>,
    /// Output CSV path; overrides `output_path`, stdout when neither is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pressure of each model over the separation sweep.
    Pressure,
    /// Pressures and pairwise pressure ratios over the sweep.
    Ratio,
    /// Surface impedances on the [dump] grid.
    ImpedanceDump,
    /// Reflection coefficients on the [dump] grid.
    ReflectDump,
    /// Sphere-plate force gradient over the sweep.
    Gradient {
        /// Beyond-PFA coefficient table (`a_nm,theta`).
        #[arg(long)]
        theta: Option<PathBuf>,
    },
    /// Compare measured force gradients with theory.
    Compare {
        /// Measured data (`a_nm,grad_uN_per_m,err_uN_per_m`).
        #[arg(long)]
        experiment: PathBuf,
        /// Beyond-PFA coefficient table (`a_nm,theta`).
        #[arg(long)]
        theta: Option<PathBuf>,
    },
}

fn theta_table(path: Option<&Path>) -> Result<Option<lifshitz_core::ThetaTable>> {
    path.map(read_theta).transpose()
}

fn execute(cli: &Cli, cfg: &RunConfig) -> Result<CsvDocument> {
    let models = cfg.models(cli.model)?;
    match &cli.command {
        Command::Pressure => sweep::run_pressure_sweep(cfg, &models),
        Command::Ratio => sweep::run_ratio(cfg, &models),
        Command::ImpedanceDump => sweep::run_impedance_dump(cfg, &models),
        Command::ReflectDump => sweep::run_reflect_dump(cfg, &models),
        Command::Gradient { theta } => {
            sweep::run_gradient(cfg, &models, theta_table(theta.as_deref())?)
        }
        Command::Compare { experiment, theta } => {
            let data = read_experiment(experiment)?;
            let (doc, summaries) =
                sweep::run_gradient_compare(cfg, &models, &data, theta_table(theta.as_deref())?)?;
            for s in summaries {
                log::info!("{}: {} inside, {} outside", s.model, s.inside, s.outside);
            }
            Ok(doc)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = cli
        .config
        .as_deref()
        .ok_or_else(|| ToolError::Usage("--config PATH is required".into()))?;
    let cfg = load_config(config)?;
    let doc = execute(&cli, &cfg)?;
    match cli.output.as_ref().or(cfg.output_path.as_ref()) {
        Some(path) => {
            doc.write_to(path)?;
            log::info!("wrote {} rows to {}", doc.rows.len(), path.display());
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(doc.render().as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| ToolError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
