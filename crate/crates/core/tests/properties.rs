//! Property-based checks for the discounting and regression kernels.

use dcfreg_core::*;
use proptest::prelude::*;

fn params(alpha: f64) -> DiscountParams {
    DiscountParams::new(alpha).unwrap()
}

/// Composite trapezoid rule, used as an independent quadrature oracle.
fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for k in 1..n {
        sum += f(a + h * k as f64);
    }
    sum * h
}

mod discounting_props {
    use super::*;

    proptest! {
        #[test]
        fn discount_factor_is_one_at_zero_and_decreasing(
            alpha in 0.01f64..0.5,
            t1 in 0.0f64..50.0,
            dt in 0.01f64..50.0,
        ) {
            let p = params(alpha);
            prop_assert_eq!(p.discount_factor(0.0).unwrap(), 1.0);
            let early = p.discount_factor(t1).unwrap();
            let late = p.discount_factor(t1 + dt).unwrap();
            prop_assert!(early > late);
            prop_assert!(late > 0.0 && early <= 1.0);
        }

        #[test]
        fn discount_factor_semigroup(
            alpha in 0.01f64..0.5,
            t1 in 0.0f64..50.0,
            t2 in 0.0f64..50.0,
        ) {
            let p = params(alpha);
            let joint = p.discount_factor(t1 + t2).unwrap();
            let split = p.discount_factor(t1).unwrap() * p.discount_factor(t2).unwrap();
            prop_assert!((joint - split).abs() <= 1e-12);
        }

        #[test]
        fn exponential_form_matches_compound_form(
            alpha in 0.01f64..0.5,
            t in 0.0f64..50.0,
        ) {
            let p = params(alpha);
            let tau = p.tau().unwrap();
            let exponential = (-t / tau).exp();
            let compound = p.discount_factor(t).unwrap();
            prop_assert!((exponential - compound).abs() <= 1e-12);
        }

        #[test]
        fn pv_events_is_additive_over_concatenation(
            alpha in 0.01f64..0.3,
            first in prop::collection::vec((-1000.0f64..1000.0, 0.0f64..30.0), 0..6),
            second in prop::collection::vec((-1000.0f64..1000.0, 0.0f64..30.0), 0..6),
        ) {
            let p = params(alpha);
            let build = |items: &[(f64, f64)]| -> Vec<OneTimeEvent> {
                items
                    .iter()
                    .map(|&(amount, time)| OneTimeEvent::new(amount, time).unwrap())
                    .collect()
            };
            let a = build(&first);
            let b = build(&second);
            let mut joined = a.clone();
            joined.extend(b.iter().copied());

            let split_sum = pv_events(&a, &p) + pv_events(&b, &p);
            let joined_sum = pv_events(&joined, &p);
            let scale = split_sum.abs().max(1.0);
            prop_assert!((split_sum - joined_sum).abs() <= 1e-9 * scale);
        }

        #[test]
        fn pv_continuous_matches_quadrature(
            rate in 1.0f64..100.0,
            alpha in 0.01f64..0.2,
            t in 0.5f64..20.0,
        ) {
            let p = params(alpha);
            let flow = ContinuousFlow::new(rate, 0.0, t).unwrap();
            let closed = pv_continuous(&flow, &p);
            let quad = trapezoid(|u| rate * (1.0 + alpha).powf(-u), 0.0, t, 20_000);
            prop_assert!((closed - quad).abs() / closed.abs() <= 1e-6);
        }

        #[test]
        fn commissioning_cost_round_trips(
            cost in 0.0f64..1e6,
            alpha in 0.0f64..0.3,
            build_years in 0.0f64..10.0,
        ) {
            let p = params(alpha);
            let at_startup = commissioning_cost(cost, &p, build_years).unwrap();
            let back = at_startup * p.discount_factor(0.5 * build_years).unwrap();
            prop_assert!((back - cost).abs() <= 1e-9 * cost.max(1.0));
        }
    }
}

mod linalg_props {
    use super::*;

    proptest! {
        #[test]
        fn gram_output_is_bitwise_symmetric(
            rows in 1usize..8,
            cols in 1usize..6,
            seed in prop::collection::vec(-10.0f64..10.0, 48),
        ) {
            let entries: Vec<f64> = seed.iter().cycle().take(rows * cols).copied().collect();
            let x = Matrix::new(rows, cols, entries).unwrap();
            let y: Vec<f64> = seed.iter().cycle().take(rows).map(|v| v * 0.5).collect();
            let (gram, _) = gram_products(&x, &y).unwrap();
            for i in 0..cols {
                for j in 0..cols {
                    prop_assert_eq!(gram[(i, j)].to_bits(), gram[(j, i)].to_bits());
                }
            }
        }

        #[test]
        fn spd_solve_round_trips(
            n in 1usize..6,
            seed in prop::collection::vec(-1.0f64..1.0, 36),
            xs in prop::collection::vec(-10.0f64..10.0, 6),
        ) {
            // A = M'M + I is positive definite with a modest condition number.
            let entries: Vec<f64> = seed.iter().cycle().take(n * n).copied().collect();
            let m = Matrix::new(n, n, entries).unwrap();
            let (mut a, _) = gram_products(&m, &vec![0.0; n]).unwrap();
            for i in 0..n {
                a[(i, i)] += 1.0;
            }
            let x_true = &xs[..n];
            let b: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| a[(i, j)] * x_true[j]).sum())
                .collect();
            let x = solve_spd(&a, &b).unwrap();
            for (solved, expected) in x.iter().zip(x_true) {
                prop_assert!((solved - expected).abs() <= 1e-9);
            }
        }

        #[test]
        fn normal_equations_reproduce_column_space_targets(
            p in 3usize..10,
            n in 1usize..4,
            seed in prop::collection::vec(-5.0f64..5.0, 40),
            coef in prop::collection::vec(-3.0f64..3.0, 4),
        ) {
            prop_assume!(p > n);
            let entries: Vec<f64> = seed.iter().cycle().take(p * n).copied().collect();
            let x = Matrix::new(p, n, entries).unwrap();
            let y: Vec<f64> = (0..p)
                .map(|i| (0..n).map(|j| x[(i, j)] * coef[j]).sum())
                .collect();
            let (gram, moments) = gram_products(&x, &y).unwrap();
            let solved = match solve_spd(&gram, &moments) {
                Ok(s) => s,
                // Randomly collinear designs are out of contract here.
                Err(Error::SingularSystem { .. }) => return Ok(()),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            };
            for i in 0..p {
                let reproduced: f64 = (0..n).map(|j| x[(i, j)] * solved[j]).sum();
                prop_assert!((reproduced - y[i]).abs() <= 1e-9);
            }
        }
    }
}

mod regression_props {
    use super::*;

    fn dataset(p: usize, n: usize, seed: &[f64], targets: &[f64]) -> Dataset {
        let entries: Vec<f64> = seed.iter().cycle().take(p * n).copied().collect();
        let features = Matrix::new(p, n, entries).unwrap();
        Dataset::new(features, targets.iter().cycle().take(p).copied().collect()).unwrap()
    }

    proptest! {
        #[test]
        fn ridge_norm_shrinks_as_lambda_grows(
            p in 6usize..15,
            n in 1usize..4,
            seed in prop::collection::vec(-5.0f64..5.0, 60),
            targets in prop::collection::vec(-10.0f64..10.0, 15),
        ) {
            let data = dataset(p, n, &seed, &targets);
            let mut previous = f64::INFINITY;
            for lambda in [0.0, 0.1, 1.0, 10.0, 100.0] {
                let model = match fit_ridge(&data, &RidgeConfig::new(lambda).unwrap()) {
                    Ok(m) => m,
                    Err(Error::SingularSystem { .. }) => return Ok(()),
                    Err(other) => return Err(TestCaseError::fail(other.to_string())),
                };
                let norm = model
                    .weights()
                    .iter()
                    .map(|w| w * w)
                    .sum::<f64>()
                    .sqrt();
                prop_assert!(norm <= previous + 1e-9, "norm {} after {}", norm, previous);
                previous = norm;
            }
        }

        #[test]
        fn ridge_at_zero_matches_ols(
            p in 4usize..12,
            n in 1usize..3,
            seed in prop::collection::vec(-5.0f64..5.0, 36),
            targets in prop::collection::vec(-10.0f64..10.0, 12),
        ) {
            prop_assume!(p > n);
            let data = dataset(p, n, &seed, &targets);
            let ols = match fit_ols(&data) {
                Ok(m) => m,
                Err(Error::SingularSystem { .. }) => return Ok(()),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            };
            let ridge = fit_ridge(&data, &RidgeConfig::new(0.0).unwrap()).unwrap();
            for (a, b) in ols.weights().iter().zip(ridge.weights()) {
                prop_assert!((a - b).abs() <= 1e-9);
            }
            prop_assert!((ols.bias() - ridge.bias()).abs() <= 1e-9);
        }

        #[test]
        fn prediction_is_affine(
            weights in prop::collection::vec(-1.0f64..1.0, 1..4),
            bias in -1.0f64..1.0,
            x1 in prop::collection::vec(-1.0f64..1.0, 4),
            x2 in prop::collection::vec(-1.0f64..1.0, 4),
            a in -1.0f64..1.0,
            b in -1.0f64..1.0,
        ) {
            let n = weights.len();
            let model = LinearModel::new(weights, bias).unwrap();
            let mixed: Vec<f64> = (0..n).map(|i| a * x1[i] + b * x2[i]).collect();
            let lhs = predict(&model, &mixed).unwrap();
            let rhs = a * predict(&model, &x1[..n]).unwrap()
                + b * predict(&model, &x2[..n]).unwrap()
                + (1.0 - a - b) * model.bias();
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }

        #[test]
        fn single_feature_fit_matches_closed_form(
            xs in prop::collection::vec(-100.0f64..100.0, 3..12),
            ys in prop::collection::vec(-100.0f64..100.0, 12),
        ) {
            let p = xs.len();
            let x_mean = xs.iter().sum::<f64>() / p as f64;
            let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
            prop_assume!(sxx > 1e-6);

            let ys = &ys[..p];
            let y_mean = ys.iter().sum::<f64>() / p as f64;
            let sxy: f64 = xs
                .iter()
                .zip(ys)
                .map(|(x, y)| (x - x_mean) * (y - y_mean))
                .sum();
            let slope = sxy / sxx;
            let intercept = y_mean - slope * x_mean;

            let data = Dataset::new(Matrix::new(p, 1, xs.clone()).unwrap(), ys.to_vec()).unwrap();
            let model = fit_ols(&data).unwrap();
            prop_assert!((model.weights()[0] - slope).abs() <= 1e-9 * slope.abs().max(1.0));
            prop_assert!((model.bias() - intercept).abs() <= 1e-9 * intercept.abs().max(1.0));
        }

        #[test]
        fn ols_residuals_are_orthogonal_to_design(
            p in 5usize..12,
            n in 1usize..4,
            seed in prop::collection::vec(-5.0f64..5.0, 48),
            targets in prop::collection::vec(-10.0f64..10.0, 12),
        ) {
            prop_assume!(p > n);
            let data = dataset(p, n, &seed, &targets);
            let model = match fit_ols(&data) {
                Ok(m) => m,
                Err(Error::SingularSystem { .. }) => return Ok(()),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            };
            let residuals: Vec<f64> = (0..p)
                .map(|i| data.targets()[i] - predict(&model, data.observation(i)).unwrap())
                .collect();
            let res_norm = residuals.iter().map(|r| r * r).sum::<f64>().sqrt();

            // Ones column.
            let ones_dot: f64 = residuals.iter().sum();
            let ones_scale = (p as f64).sqrt() * res_norm;
            prop_assert!(ones_dot.abs() <= 1e-8 * ones_scale.max(1.0));

            // Each predictor column.
            for j in 0..n {
                let dot: f64 = (0..p).map(|i| residuals[i] * data.features()[(i, j)]).sum();
                let col_norm: f64 = (0..p)
                    .map(|i| data.features()[(i, j)].powi(2))
                    .sum::<f64>()
                    .sqrt();
                prop_assert!(dot.abs() <= 1e-8 * (col_norm * res_norm).max(1.0));
            }
        }

        #[test]
        fn ols_fit_maximizes_r_squared(
            p in 5usize..12,
            seed in prop::collection::vec(-5.0f64..5.0, 24),
            targets in prop::collection::vec(-10.0f64..10.0, 12),
            nudge_w in -0.5f64..0.5,
            nudge_b in -0.5f64..0.5,
        ) {
            let data = dataset(p, 1, &seed, &targets);
            let model = match fit_ols(&data) {
                Ok(m) => m,
                Err(Error::SingularSystem { .. }) => return Ok(()),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            };
            let best = match fit_report(&model, &data) {
                Ok(r) => r,
                Err(Error::ZeroTargetVariance) => return Ok(()),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            };
            let perturbed = LinearModel::new(
                vec![model.weights()[0] + nudge_w],
                model.bias() + nudge_b,
            )
            .unwrap();
            let worse = fit_report(&perturbed, &data).unwrap();
            prop_assert!(best.r_squared() >= worse.r_squared() - 1e-12);
        }
    }
}

mod criteria_props {
    use super::*;

    fn records_from(inputs: &[(f64, f64)], beta: (f64, f64, f64)) -> Vec<AwsRecord> {
        inputs
            .iter()
            .map(|&(a2, a3)| {
                let aws1 = (beta.0 + beta.1 * a2 + beta.2 * a3).abs();
                AwsRecord::new(None, aws1, a2, a3).unwrap()
            })
            .collect()
    }

    proptest! {
        #[test]
        fn planted_aws_model_is_identified(
            inputs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 6..12),
            beta0 in 0.0f64..0.2,
            beta1 in 0.0f64..1.0,
            beta2 in 0.0f64..1.0,
        ) {
            let records: Vec<AwsRecord> = inputs
                .iter()
                .map(|&(a2, a3)| {
                    AwsRecord::new(None, beta0 + beta1 * a2 + beta2 * a3, a2, a3).unwrap()
                })
                .collect();
            let model = match fit_aws(&records) {
                Ok(m) => m,
                Err(Error::SingularSystem { .. }) => return Ok(()),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            };
            prop_assert!((model.beta0 - beta0).abs() <= 1e-8);
            prop_assert!((model.beta1 - beta1).abs() <= 1e-8);
            prop_assert!((model.beta2 - beta2).abs() <= 1e-8);
        }

        #[test]
        fn fit_and_report_are_permutation_invariant(
            inputs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 6..10),
            rotate_by in 0usize..10,
        ) {
            let records = records_from(&inputs, (0.03, 0.6, 0.2));
            let mut rotated = records.clone();
            rotated.rotate_left(rotate_by % records.len());

            let model = match fit_aws(&records) {
                Ok(m) => m,
                Err(Error::SingularSystem { .. }) => return Ok(()),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            };
            let model_rotated = fit_aws(&rotated).unwrap();
            prop_assert!((model.beta0 - model_rotated.beta0).abs() <= 1e-12);
            prop_assert!((model.beta1 - model_rotated.beta1).abs() <= 1e-12);
            prop_assert!((model.beta2 - model_rotated.beta2).abs() <= 1e-12);

            let rows = rank_report(&records, &model).unwrap();
            let rows_rotated = rank_report(&rotated, &model).unwrap();
            for (a, b) in rows.iter().zip(&rows_rotated) {
                prop_assert_eq!(a.rank, b.rank);
                prop_assert!((a.actual - b.actual).abs() <= 1e-12);
                prop_assert!((a.predicted - b.predicted).abs() <= 1e-12);
            }
        }

        #[test]
        fn report_rows_are_consistent_with_the_model(
            inputs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 3..10),
        ) {
            let records = records_from(&inputs, (0.05, 0.4, 0.3));
            let model = AwsModel { beta0: 0.01, beta1: 0.7, beta2: 0.1 };
            let rows = rank_report(&records, &model).unwrap();
            prop_assert_eq!(rows.len(), records.len());
            for window in rows.windows(2) {
                prop_assert!(window[0].actual >= window[1].actual);
            }
            // Same coefficients expressed as a generic linear model; both
            // prediction routes must agree on every row.
            let linear = LinearModel::new(vec![model.beta1, model.beta2], model.beta0).unwrap();
            for row in &rows {
                let original = records
                    .iter()
                    .find(|r| r.aws1() == row.actual)
                    .expect("row came from a record");
                let via_aws = model.predict(original.aws2(), original.aws3());
                let via_linear =
                    predict(&linear, &[original.aws2(), original.aws3()]).unwrap();
                prop_assert!((row.predicted - via_aws).abs() <= 1e-12);
                prop_assert!((row.predicted - via_linear).abs() <= 1e-12);
                prop_assert_eq!(row.difference, row.actual - row.predicted);
                prop_assert_eq!(row.comment, Comment::classify(row.difference));
            }
        }

        #[test]
        fn differences_sum_to_one_minus_total_prediction(
            inputs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 4..10),
            raw_weights in prop::collection::vec(0.01f64..1.0, 10),
        ) {
            // Normalize the actual weights to a full criteria set summing to 1.
            let k = inputs.len();
            let total: f64 = raw_weights[..k].iter().sum();
            let records: Vec<AwsRecord> = inputs
                .iter()
                .zip(&raw_weights[..k])
                .map(|(&(a2, a3), w)| AwsRecord::new(None, w / total, a2, a3).unwrap())
                .collect();

            let model = AwsModel { beta0: 0.02, beta1: 0.5, beta2: 0.25 };
            let rows = rank_report(&records, &model).unwrap();
            let diff_sum: f64 = rows.iter().map(|r| r.difference).sum();
            let predicted_sum: f64 = rows.iter().map(|r| r.predicted).sum();
            prop_assert!((diff_sum - (1.0 - predicted_sum)).abs() <= 1e-9);
        }

        #[test]
        fn planted_criteria_model_is_identified(
            inputs in prop::collection::vec(
                (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0),
                6..14
            ),
            beta in prop::collection::vec(0.0f64..0.5, 5),
        ) {
            let observations: Vec<CriteriaObservation> = inputs
                .iter()
                .map(|&(csr, lr, ir, cfr)| {
                    let r_bar = beta[0]
                        + beta[1] * csr
                        + beta[2] * lr
                        + beta[3] * ir
                        + beta[4] * cfr;
                    CriteriaObservation::new(r_bar, csr, lr, ir, cfr).unwrap()
                })
                .collect();
            let model = match fit_criteria(&observations) {
                Ok(m) => m,
                Err(Error::SingularSystem { .. }) => return Ok(()),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            };
            for (fitted, planted) in model.beta.iter().zip(&beta) {
                prop_assert!((fitted - planted).abs() <= 1e-8);
            }
        }
    }
}
