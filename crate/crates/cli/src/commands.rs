//! The four analysis commands. Each returns the finished report as a
//! string; the caller decides whether it goes to stdout or a file.

use crate::config::{OutputFormat, RunConfig};
use crate::input;
use crate::report::{fmt_value, scalar_line};
use anyhow::{anyhow, Context, Result};
use dcfreg_core::{
    discounted_average_benefit, fit_aws, fit_criteria, fit_ols, fit_report, fit_ridge,
    pv_continuous, pv_events, pv_profile, rank_report, CashFlowSchedule, Dataset, DiscountParams,
    LinearModel, RidgeConfig,
};
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[derive(Serialize)]
struct DiscountReport {
    alpha: f64,
    horizon: f64,
    pv_events: f64,
    pv_flows: Vec<f64>,
    pv_profile: Option<f64>,
    r_bar: f64,
    currency_label: String,
}

/// Present values of the scheduled cash flows plus the discounted average
/// benefit over the horizon.
pub fn run_discount(
    config: &RunConfig,
    events_path: &Path,
    flows_path: &Path,
    profile_path: Option<&Path>,
) -> Result<String> {
    let events = input::read_events(events_path)?;
    let flows = input::read_flows(flows_path)?;
    let profile = profile_path.map(input::read_profile).transpose()?;

    let params = DiscountParams::new(config.alpha)?;
    let schedule = CashFlowSchedule::new(events, flows, config.horizon)?;

    let events_value = pv_events(schedule.events(), &params);
    let flow_values: Vec<f64> = schedule
        .flows()
        .iter()
        .map(|f| pv_continuous(f, &params))
        .collect();
    let profile_value = profile.as_ref().map(|p| pv_profile(p, &params));
    let r_bar = discounted_average_benefit(&schedule, &params);

    match config.output_format {
        OutputFormat::Json => {
            let report = DiscountReport {
                alpha: config.alpha,
                horizon: config.horizon,
                pv_events: events_value,
                pv_flows: flow_values,
                pv_profile: profile_value,
                r_bar,
                currency_label: config.currency_label.clone(),
            };
            Ok(to_json(&report)?)
        }
        OutputFormat::Csv => {
            let unit = &config.currency_label;
            let per_year = if unit.is_empty() {
                String::new()
            } else {
                format!("{unit}/year")
            };
            let mut out = String::new();
            out.push_str(&scalar_line(
                "pv_events",
                events_value,
                config.precision,
                unit,
            ));
            for (i, value) in flow_values.iter().enumerate() {
                let name = format!("pv_flow_{}", i + 1);
                out.push_str(&scalar_line(&name, *value, config.precision, unit));
            }
            if let Some(value) = profile_value {
                out.push_str(&scalar_line("pv_profile", value, config.precision, unit));
            }
            out.push_str(&scalar_line("R_bar", r_bar, config.precision, &per_year));
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct FitResult {
    weights: Vec<f64>,
    bias: f64,
    r_squared: f64,
    rmse: f64,
}

/// Fits (or loads) a linear model on the dataset and reports coefficients
/// and diagnostics. Optionally saves the model and emits plot data.
pub fn run_fit(
    config: &RunConfig,
    data_path: &Path,
    emit_plot: Option<&Path>,
    save_model: Option<&Path>,
    load_model: Option<&Path>,
) -> Result<String> {
    let data = input::read_dataset(data_path)?;

    let model = match load_model {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read model file {}", path.display()))?;
            serde_json::from_str::<LinearModel>(&text)
                .with_context(|| format!("invalid model file {}", path.display()))?
        }
        None if config.lambda == 0.0 => fit_ols(&data).map_err(fit_hint)?,
        None => fit_ridge(&data, &RidgeConfig::new(config.lambda)?).map_err(fit_hint)?,
    };

    let report = fit_report(&model, &data)?;

    if let Some(path) = save_model {
        let json = serde_json::to_string(&model)?;
        fs::write(path, json + "\n")
            .with_context(|| format!("cannot write model file {}", path.display()))?;
    }
    if let Some(path) = emit_plot {
        write_plot(path, &data, &model, config.precision)?;
    }

    match config.output_format {
        OutputFormat::Json => {
            let result = FitResult {
                weights: model.weights().to_vec(),
                bias: model.bias(),
                r_squared: report.r_squared(),
                rmse: report.rmse(),
            };
            Ok(to_json(&result)?)
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            for (j, w) in model.weights().iter().enumerate() {
                let name = format!("w{}", j + 1);
                out.push_str(&scalar_line(&name, *w, config.precision, ""));
            }
            out.push_str(&scalar_line("w0", model.bias(), config.precision, ""));
            out.push_str(&scalar_line("R2", report.r_squared(), config.precision, ""));
            out.push_str(&scalar_line("rmse", report.rmse(), config.precision, ""));
            Ok(out)
        }
    }
}

/// Rows `(features..., y, y_hat, residual)` for external plotting.
fn write_plot(path: &Path, data: &Dataset, model: &LinearModel, precision: usize) -> Result<()> {
    let feature_names: Vec<String> = match data.feature_names() {
        Some(names) => names.to_vec(),
        None => (1..=data.n_features()).map(|j| format!("x{j}")).collect(),
    };

    let mut out = String::new();
    writeln!(out, "{},y,y_hat,residual", feature_names.join(","))?;
    for i in 0..data.n_observations() {
        let x = data.observation(i);
        let y = data.targets()[i];
        let y_hat = dcfreg_core::predict(model, x)?;
        let cells: Vec<String> = x
            .iter()
            .chain([y, y_hat, y - y_hat].iter())
            .map(|v| fmt_value(*v, precision))
            .collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    fs::write(path, out).with_context(|| format!("cannot write plot file {}", path.display()))
}

#[derive(Serialize)]
struct AwsReport {
    model: dcfreg_core::AwsModel,
    rows: Vec<dcfreg_core::RankRow>,
}

/// Fits the weight regression and emits the ranked actual-vs-predicted
/// table.
pub fn run_aws(config: &RunConfig, records_path: &Path) -> Result<String> {
    let records = input::read_aws(records_path)?;
    let model = fit_aws(&records).map_err(fit_hint)?;
    let rows = rank_report(&records, &model)?;

    match config.output_format {
        OutputFormat::Json => Ok(to_json(&AwsReport { model, rows })?),
        OutputFormat::Csv => {
            let mut out = String::from("rank,actual,predicted,difference,comment\n");
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.rank,
                    fmt_value(row.actual, config.precision),
                    fmt_value(row.predicted, config.precision),
                    fmt_value(row.difference, config.precision),
                    row.comment
                )?;
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct CriteriaReport {
    beta: [f64; 5],
    r_squared: f64,
    rmse: f64,
}

/// Fits the discounted-benefit regression and reports its coefficients and
/// diagnostics.
pub fn run_criteria(config: &RunConfig, observations_path: &Path) -> Result<String> {
    let observations = input::read_criteria(observations_path)?;
    let model = fit_criteria(&observations).map_err(fit_hint)?;

    let data = dcfreg_core::criteria_design(&observations)?;
    let linear = LinearModel::new(model.beta[1..].to_vec(), model.beta[0])?;
    let diagnostics = fit_report(&linear, &data)?;

    match config.output_format {
        OutputFormat::Json => Ok(to_json(&CriteriaReport {
            beta: model.beta,
            r_squared: diagnostics.r_squared(),
            rmse: diagnostics.rmse(),
        })?),
        OutputFormat::Csv => {
            let mut out = String::new();
            for (j, b) in model.beta.iter().enumerate() {
                let name = format!("b{j}");
                out.push_str(&scalar_line(&name, *b, config.precision, ""));
            }
            out.push_str(&scalar_line(
                "R2",
                diagnostics.r_squared(),
                config.precision,
                "",
            ));
            out.push_str(&scalar_line(
                "rmse",
                diagnostics.rmse(),
                config.precision,
                "",
            ));
            Ok(out)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Attaches a hint to rank-deficiency errors so the fix is obvious from the
/// message alone.
fn fit_hint(err: dcfreg_core::Error) -> anyhow::Error {
    match err {
        dcfreg_core::Error::SingularSystem { .. } => anyhow!(err)
            .context("predictors are collinear or constant; drop or merge the offending columns"),
        other => anyhow!(other),
    }
}
