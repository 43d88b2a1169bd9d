//! Ordinary least squares and ridge regression via the normal equations.

use crate::error::{Error, Result};
use crate::linalg::{gram_products, solve_spd, Matrix};
use serde::{Deserialize, Serialize};

/// Observations of `n` predictors with a scalar target each.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Matrix,
    targets: Vec<f64>,
    feature_names: Option<Vec<String>>,
}

impl Dataset {
    /// Builds a dataset of `p >= 2` observations; rows of `features` pair
    /// with entries of `targets`.
    pub fn new(features: Matrix, targets: Vec<f64>) -> Result<Self> {
        if features.rows() != targets.len() {
            return Err(Error::DimensionMismatch {
                context: "dataset: feature rows vs targets",
                expected: features.rows(),
                actual: targets.len(),
            });
        }
        if features.rows() < 2 {
            return Err(Error::TooFewRecords {
                got: features.rows(),
                need: 2,
            });
        }
        if !targets.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "target value",
            });
        }
        Ok(Self {
            features,
            targets,
            feature_names: None,
        })
    }

    /// Attaches one label per feature column.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.features.cols() {
            return Err(Error::DimensionMismatch {
                context: "dataset: feature names vs columns",
                expected: self.features.cols(),
                actual: names.len(),
            });
        }
        self.feature_names = Some(names);
        Ok(self)
    }

    pub fn n_observations(&self) -> usize {
        self.features.rows()
    }

    pub fn n_features(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    /// Predictor values of observation `i`.
    pub fn observation(&self, i: usize) -> &[f64] {
        self.features.row(i)
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }
}

/// Fitted linear model `y = w . x + bias`.
///
/// Serializes to a flat JSON object `{"weights": [...], "bias": b}`; the
/// default float formatting round-trips exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    weights: Vec<f64>,
    bias: f64,
}

impl LinearModel {
    pub fn new(weights: Vec<f64>, bias: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::TooFewRecords { got: 0, need: 1 });
        }
        if !weights.iter().all(|v| v.is_finite()) || !bias.is_finite() {
            return Err(Error::NonFinite {
                context: "model coefficient",
            });
        }
        Ok(Self { weights, bias })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }
}

/// Strength of the L2 penalty on the weights (the bias is never penalized).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeConfig {
    lambda: f64,
}

impl RidgeConfig {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::NonFinite {
                context: "ridge strength",
            });
        }
        if lambda < 0.0 {
            return Err(Error::NegativeLambda { lambda });
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Fit diagnostics: coefficient of determination, root-mean-square error,
/// and the per-observation residuals `y_i - prediction_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    r_squared: f64,
    rmse: f64,
    residuals: Vec<f64>,
}

impl FitReport {
    pub fn r_squared(&self) -> f64 {
        self.r_squared
    }

    pub fn rmse(&self) -> f64 {
        self.rmse
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }
}

/// Solves the (optionally penalized) normal equations on the design matrix
/// augmented with a leading ones column. The ones-column coefficient becomes
/// the bias and is excluded from the penalty.
fn solve_penalized(data: &Dataset, lambda: f64) -> Result<LinearModel> {
    let p = data.n_observations();
    let n = data.n_features();

    let mut entries = Vec::with_capacity(p * (n + 1));
    for i in 0..p {
        entries.push(1.0);
        entries.extend_from_slice(data.observation(i));
    }
    let augmented = Matrix::new(p, n + 1, entries)?;

    let (mut gram, moments) = gram_products(&augmented, data.targets())?;
    for j in 1..=n {
        gram[(j, j)] += lambda;
    }

    let coefficients = solve_spd(&gram, &moments)?;
    LinearModel::new(coefficients[1..].to_vec(), coefficients[0])
}

/// Ordinary least squares: the unique minimizer of the sum of squared
/// residuals.
///
/// Requires more observations than predictors; collinear predictors (or a
/// constant-only design) surface as [`Error::SingularSystem`] rather than a
/// silent minimum-norm answer.
pub fn fit_ols(data: &Dataset) -> Result<LinearModel> {
    if data.n_observations() <= data.n_features() {
        return Err(Error::Underdetermined {
            observations: data.n_observations(),
            predictors: data.n_features(),
        });
    }
    solve_penalized(data, 0.0)
}

/// Ridge regression: minimizes the squared residuals plus
/// `lambda * |w|^2`, leaving the bias unpenalized.
///
/// `lambda = 0` runs the exact ordinary-least-squares path; any positive
/// `lambda` makes the penalized system positive definite and solvable even
/// for collinear predictors.
pub fn fit_ridge(data: &Dataset, config: &RidgeConfig) -> Result<LinearModel> {
    solve_penalized(data, config.lambda())
}

/// Evaluates the model at a single point: `sum of w_j * x_j + bias`.
pub fn predict(model: &LinearModel, x: &[f64]) -> Result<f64> {
    if x.len() != model.weights().len() {
        return Err(Error::DimensionMismatch {
            context: "predict: input vs weights",
            expected: model.weights().len(),
            actual: x.len(),
        });
    }
    Ok(model
        .weights()
        .iter()
        .zip(x)
        .map(|(w, v)| w * v)
        .sum::<f64>()
        + model.bias())
}

/// Residuals, R-squared (about the target mean), and RMSE of a model on a
/// dataset. Errors when the targets have no variance, which leaves
/// R-squared undefined.
pub fn fit_report(model: &LinearModel, data: &Dataset) -> Result<FitReport> {
    if model.weights().len() != data.n_features() {
        return Err(Error::DimensionMismatch {
            context: "report: model weights vs dataset features",
            expected: data.n_features(),
            actual: model.weights().len(),
        });
    }

    let p = data.n_observations();
    let mut residuals = Vec::with_capacity(p);
    for i in 0..p {
        let prediction = predict(model, data.observation(i))?;
        residuals.push(data.targets()[i] - prediction);
    }

    let mean = data.targets().iter().sum::<f64>() / p as f64;
    let sst: f64 = data.targets().iter().map(|y| (y - mean).powi(2)).sum();
    if sst == 0.0 {
        return Err(Error::ZeroTargetVariance);
    }
    let sse: f64 = residuals.iter().map(|r| r * r).sum();

    Ok(FitReport {
        r_squared: 1.0 - sse / sst,
        rmse: (sse / p as f64).sqrt(),
        residuals,
    })
}
