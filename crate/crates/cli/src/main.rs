//! `dcfreg` — discounted cash-flow analysis and criteria-weight regression
//! from CSV inputs.

mod commands;
mod config;
mod input;
mod report;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use config::{OutputFormat, Overrides, RunConfig};
use std::fs;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "dcfreg",
    version,
    about = "Discounted cash-flow analysis and criteria-weight regression",
    after_help = "Results go to stdout (or --out); errors go to stderr with a nonzero exit status."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Annual discount rate (default 0.1)
    #[arg(long, global = true)]
    alpha: Option<f64>,

    /// Ridge regularization strength (default 0, plain least squares)
    #[arg(long, global = true)]
    lambda: Option<f64>,

    /// Evaluation horizon in years (default 10)
    #[arg(long, global = true)]
    horizon: Option<f64>,

    /// JSON config file; command-line flags take precedence over its values
    #[arg(long, global = true, value_name = "JSON")]
    config: Option<PathBuf>,

    /// Report format (default csv)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Decimal places in reports, 1-15 (default 6)
    #[arg(long, global = true)]
    precision: Option<usize>,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Present-value the cash flows in the given files and report the
    /// discounted average benefit over the horizon
    Discount {
        /// CSV of one-time events: amount,time
        events: PathBuf,
        /// CSV of constant flows: rate,start,end
        flows: PathBuf,
        /// Optional CSV cost profile: time,rate
        profile: Option<PathBuf>,
    },
    /// Fit a linear model to a dataset CSV (features..., target) and report
    /// coefficients, R2, and rmse
    Fit {
        /// Dataset CSV; the last column is the target
        data: PathBuf,
        /// Write rows (features..., y, y_hat, residual) for plotting
        #[arg(long, value_name = "PATH")]
        emit_plot: Option<PathBuf>,
        /// Serialize the fitted model to a JSON file
        #[arg(long, value_name = "PATH")]
        save_model: Option<PathBuf>,
        /// Evaluate a previously saved model instead of fitting
        #[arg(long, value_name = "PATH", conflicts_with = "save_model")]
        load_model: Option<PathBuf>,
    },
    /// Regress overall weight scores on secondary/main weights and print the
    /// ranked actual-vs-predicted table
    Aws {
        /// CSV of weight records: label,aws1,aws2,aws3
        records: PathBuf,
    },
    /// Regress discounted benefits on the four criteria weight columns
    Criteria {
        /// CSV of observations: r_bar,csr,lr,ir,cfr
        observations: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: &Cli) -> Result<()> {
    let overrides = Overrides {
        alpha: cli.alpha,
        lambda: cli.lambda,
        horizon: cli.horizon,
        format: cli.format,
        precision: cli.precision,
    };
    let config = RunConfig::resolve(&overrides, cli.config.as_deref())?;

    let report = match &cli.command {
        Command::Discount {
            events,
            flows,
            profile,
        } => commands::run_discount(&config, events, flows, profile.as_deref())?,
        Command::Fit {
            data,
            emit_plot,
            save_model,
            load_model,
        } => commands::run_fit(
            &config,
            data,
            emit_plot.as_deref(),
            save_model.as_deref(),
            load_model.as_deref(),
        )?,
        Command::Aws { records } => commands::run_aws(&config, records)?,
        Command::Criteria { observations } => commands::run_criteria(&config, observations)?,
    };

    match &cli.out {
        Some(path) => fs::write(path, &report)
            .with_context(|| format!("cannot write report to {}", path.display()))?,
        None => print!("{report}"),
    }
    Ok(())
}
