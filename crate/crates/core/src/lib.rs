//! Core library for time-discounted investment analysis and small-scale
//! least-squares regression.
//!
//! The crate has four parts:
//!
//! * [`discounting`] — compound-interest discount factors, present values of
//!   one-time events, constant flows, and sampled cost profiles, and the
//!   discounted average benefit over a horizon.
//! * [`linalg`] — a deterministic dense kernel (gram products plus an SPD
//!   Cholesky solve) sized for a handful of predictors.
//! * [`regression`] — ordinary least squares and ridge regression on the
//!   normal equations, with R-squared/RMSE diagnostics.
//! * [`criteria`] — regressions over expert criteria weights and the
//!   actual-vs-predicted rank report.
//!
//! ## Example
//!
//! ```
//! use dcfreg_core::{
//!     discounted_average_benefit, CashFlowSchedule, ContinuousFlow, DiscountParams,
//!     OneTimeEvent,
//! };
//!
//! let params = DiscountParams::new(0.1).unwrap();
//! let schedule = CashFlowSchedule::new(
//!     vec![OneTimeEvent::new(100.0, 0.0).unwrap()],
//!     vec![ContinuousFlow::new(10.0, 0.0, 10.0).unwrap()],
//!     10.0,
//! )
//! .unwrap();
//! let r_bar = discounted_average_benefit(&schedule, &params);
//! assert!((r_bar - 16.447).abs() < 1e-3);
//! ```

pub mod criteria;
pub mod discounting;
pub mod error;
pub mod linalg;
pub mod regression;

pub use criteria::{
    build_design_matrix, criteria_design, fit_aws, fit_criteria, rank_report, AwsModel, AwsRecord,
    Comment, CriteriaModel, CriteriaObservation, RankRow,
};
pub use discounting::{
    commissioning_cost, discounted_average_benefit, pv_continuous, pv_events, pv_profile,
    tau_approx, CashFlowSchedule, ContinuousFlow, CostProfile, DiscountParams, OneTimeEvent,
};
pub use error::{Error, Result};
pub use linalg::{gram_products, solve_spd, Matrix};
pub use regression::{
    fit_ols, fit_report, fit_ridge, predict, Dataset, FitReport, LinearModel, RidgeConfig,
};
