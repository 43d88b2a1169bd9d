//! Regressions over expert-derived criteria weights.
//!
//! Two hierarchical average-weight scores (secondary and main) explain the
//! overall importance score of each criterion; a second regression links
//! discounted average benefits to four aggregated criteria weights. A rank
//! report compares actual and model-predicted weights criterion by
//! criterion.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::regression::{fit_ols, Dataset};
use serde::Serialize;
use std::fmt;

/// A difference at or above this magnitude is "heavily" mispredicted.
pub const HEAVY_DIFFERENCE: f64 = 0.05;
/// A difference at or above this magnitude (but below heavy) is
/// "significantly" mispredicted; below it, "slightly".
pub const SIGNIFICANT_DIFFERENCE: f64 = 0.02;

/// Expert weight scores of one criterion: overall importance (the target)
/// plus the secondary- and main-criteria weights (the predictors).
#[derive(Debug, Clone, PartialEq)]
pub struct AwsRecord {
    label: Option<String>,
    aws1: f64,
    aws2: f64,
    aws3: f64,
}

impl AwsRecord {
    pub fn new(label: Option<String>, aws1: f64, aws2: f64, aws3: f64) -> Result<Self> {
        if !(aws1.is_finite() && aws2.is_finite() && aws3.is_finite()) {
            return Err(Error::NonFinite {
                context: "weight score",
            });
        }
        if aws1 < 0.0 {
            return Err(Error::NegativeWeight { value: aws1 });
        }
        Ok(Self {
            label,
            aws1,
            aws2,
            aws3,
        })
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn aws1(&self) -> f64 {
        self.aws1
    }

    pub fn aws2(&self) -> f64 {
        self.aws2
    }

    pub fn aws3(&self) -> f64 {
        self.aws3
    }
}

/// Coefficients of the overall-importance regression
/// `aws1 = beta0 + beta1 * aws2 + beta2 * aws3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AwsModel {
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl AwsModel {
    pub fn predict(&self, aws2: f64, aws3: f64) -> f64 {
        self.beta0 + self.beta1 * aws2 + self.beta2 * aws3
    }
}

/// Qualitative misprediction label derived from `actual - predicted`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comment {
    HeavilyUnderpredicted,
    SignificantlyUnderpredicted,
    SlightlyUnderpredicted,
    Exact,
    SlightlyOverpredicted,
    SignificantlyOverpredicted,
    HeavilyOverpredicted,
}

impl Comment {
    /// Buckets a difference: magnitude >= 0.05 is heavy, >= 0.02 significant,
    /// anything else slight; positive differences are underpredictions. An
    /// exact zero gets its own label rather than an arbitrary sign.
    pub fn classify(difference: f64) -> Comment {
        if difference == 0.0 {
            return Comment::Exact;
        }
        let magnitude = difference.abs();
        let under = difference > 0.0;
        if magnitude >= HEAVY_DIFFERENCE {
            if under {
                Comment::HeavilyUnderpredicted
            } else {
                Comment::HeavilyOverpredicted
            }
        } else if magnitude >= SIGNIFICANT_DIFFERENCE {
            if under {
                Comment::SignificantlyUnderpredicted
            } else {
                Comment::SignificantlyOverpredicted
            }
        } else if under {
            Comment::SlightlyUnderpredicted
        } else {
            Comment::SlightlyOverpredicted
        }
    }
}

impl fmt::Display for Comment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Comment::HeavilyUnderpredicted => "heavily underpredicted",
            Comment::SignificantlyUnderpredicted => "significantly underpredicted",
            Comment::SlightlyUnderpredicted => "slightly underpredicted",
            Comment::Exact => "exact",
            Comment::SlightlyOverpredicted => "slightly overpredicted",
            Comment::SignificantlyOverpredicted => "significantly overpredicted",
            Comment::HeavilyOverpredicted => "heavily overpredicted",
        };
        f.write_str(text)
    }
}

/// One line of the actual-vs-predicted rank table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow {
    pub rank: usize,
    pub label: Option<String>,
    pub actual: f64,
    pub predicted: f64,
    pub difference: f64,
    pub comment: Comment,
}

/// One observation linking a discounted average benefit to the aggregated
/// criteria weights (cost structure, liquidity/reliability, investment
/// risk, cash flow). The acronyms are carried as opaque column names.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriteriaObservation {
    r_bar: f64,
    csr: f64,
    lr: f64,
    ir: f64,
    cfr: f64,
}

impl CriteriaObservation {
    pub fn new(r_bar: f64, csr: f64, lr: f64, ir: f64, cfr: f64) -> Result<Self> {
        if ![r_bar, csr, lr, ir, cfr].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "criteria observation",
            });
        }
        Ok(Self {
            r_bar,
            csr,
            lr,
            ir,
            cfr,
        })
    }

    pub fn r_bar(&self) -> f64 {
        self.r_bar
    }

    pub fn weights(&self) -> [f64; 4] {
        [self.csr, self.lr, self.ir, self.cfr]
    }
}

/// Coefficients `beta[0..5]` of the discounted-benefit regression:
/// intercept, then one coefficient per criteria column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriteriaModel {
    pub beta: [f64; 5],
}

impl CriteriaModel {
    pub fn predict(&self, weights: [f64; 4]) -> f64 {
        self.beta[0]
            + self.beta[1] * weights[0]
            + self.beta[2] * weights[1]
            + self.beta[3] * weights[2]
            + self.beta[4] * weights[3]
    }
}

/// Maps records into a regression dataset: columns `(aws2, aws3)`, target
/// `aws1`. The ones column for the intercept is supplied by the regression
/// fit, not duplicated here.
pub fn build_design_matrix(records: &[AwsRecord]) -> Result<Dataset> {
    if records.len() < 3 {
        return Err(Error::TooFewRecords {
            got: records.len(),
            need: 3,
        });
    }
    let mut entries = Vec::with_capacity(records.len() * 2);
    let mut targets = Vec::with_capacity(records.len());
    for r in records {
        entries.push(r.aws2());
        entries.push(r.aws3());
        targets.push(r.aws1());
    }
    let features = Matrix::new(records.len(), 2, entries)?;
    Dataset::new(features, targets)?.with_names(vec!["aws2".to_owned(), "aws3".to_owned()])
}

/// Fits the overall-importance regression by ordinary least squares.
pub fn fit_aws(records: &[AwsRecord]) -> Result<AwsModel> {
    let data = build_design_matrix(records)?;
    let model = fit_ols(&data)?;
    Ok(AwsModel {
        beta0: model.bias(),
        beta1: model.weights()[0],
        beta2: model.weights()[1],
    })
}

/// Builds the actual-vs-predicted table, ranked by actual weight in
/// descending order. Ties keep their input order, so identical inputs
/// always produce identical reports.
pub fn rank_report(records: &[AwsRecord], model: &AwsModel) -> Result<Vec<RankRow>> {
    if records.is_empty() {
        return Err(Error::TooFewRecords { got: 0, need: 1 });
    }
    let mut rows: Vec<RankRow> = records
        .iter()
        .map(|r| {
            let predicted = model.predict(r.aws2(), r.aws3());
            let difference = r.aws1() - predicted;
            RankRow {
                rank: 0,
                label: r.label().map(str::to_owned),
                actual: r.aws1(),
                predicted,
                difference,
                comment: Comment::classify(difference),
            }
        })
        .collect();
    rows.sort_by(|a, b| b.actual.partial_cmp(&a.actual).expect("finite weights"));
    for (i, row) in rows.iter_mut().enumerate() {
        row.rank = i + 1;
    }
    Ok(rows)
}

/// Maps observations into a regression dataset: columns
/// `(csr, lr, ir, cfr)`, target `r_bar`.
pub fn criteria_design(observations: &[CriteriaObservation]) -> Result<Dataset> {
    if observations.len() < 6 {
        return Err(Error::Underdetermined {
            observations: observations.len(),
            predictors: 4,
        });
    }
    let mut entries = Vec::with_capacity(observations.len() * 4);
    let mut targets = Vec::with_capacity(observations.len());
    for o in observations {
        entries.extend_from_slice(&o.weights());
        targets.push(o.r_bar());
    }
    let features = Matrix::new(observations.len(), 4, entries)?;
    Dataset::new(features, targets)?
        .with_names(["csr", "lr", "ir", "cfr"].map(str::to_owned).to_vec())
}

/// Fits the discounted-benefit regression on at least six observations.
pub fn fit_criteria(observations: &[CriteriaObservation]) -> Result<CriteriaModel> {
    let data = criteria_design(observations)?;
    let model = fit_ols(&data)?;
    let w = model.weights();
    Ok(CriteriaModel {
        beta: [model.bias(), w[0], w[1], w[2], w[3]],
    })
}
