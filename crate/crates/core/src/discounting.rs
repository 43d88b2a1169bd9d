//! Present-value arithmetic under annual compound discounting.
//!
//! A benefit of one unit received `t` years from now is worth
//! `(1 + alpha)^(-t)` units today. This module converts one-time events,
//! constant flows, and sampled cost profiles into present values and
//! averages them over an evaluation horizon.

use crate::error::{Error, Result};

/// Number of trapezoid subintervals inserted between adjacent profile
/// samples when integrating a [`CostProfile`].
pub const PROFILE_REFINEMENT: usize = 1000;

/// Annual discount rate and its derived time constant.
///
/// A zero rate is accepted and every operation degrades to its undiscounted
/// limit; the time constant alone is undefined at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscountParams {
    alpha: f64,
}

impl DiscountParams {
    /// Validates `alpha >= 0`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite {
                context: "discount rate",
            });
        }
        if alpha < 0.0 {
            return Err(Error::NegativeRate { alpha });
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Time constant `tau = 1 / ln(1 + alpha)` of the discount decay.
    ///
    /// Undefined for a zero rate.
    pub fn tau(&self) -> Result<f64> {
        if self.alpha <= 0.0 {
            return Err(Error::NonPositiveRate { alpha: self.alpha });
        }
        Ok(1.0 / self.alpha.ln_1p())
    }

    /// Discount factor `(1 + alpha)^(-time)` for a moment `time` years away.
    ///
    /// Equals 1 at `time = 0` and decreases strictly with time (for a
    /// positive rate).
    pub fn discount_factor(&self, time: f64) -> Result<f64> {
        if !time.is_finite() {
            return Err(Error::NonFinite { context: "time" });
        }
        if time < 0.0 {
            return Err(Error::NegativeTime { time });
        }
        Ok(self.factor(time))
    }

    /// Unchecked discount factor for internal use on pre-validated times.
    fn factor(&self, time: f64) -> f64 {
        (1.0 + self.alpha).powf(-time)
    }
}

/// Shortcut time constant `1.02 / alpha`, usable for rates up to 0.15.
///
/// Returns the approximation together with a flag telling whether it is
/// within 3% of the exact `1 / ln(1 + alpha)`. The shortcut only honours
/// that bound for `alpha <= ~0.105`; at `alpha = 0.15` the error is ~4.96%,
/// so callers should check the flag rather than assume it.
pub fn tau_approx(alpha: f64) -> Result<(f64, bool)> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite {
            context: "discount rate",
        });
    }
    if alpha <= 0.0 {
        return Err(Error::NonPositiveRate { alpha });
    }
    if alpha > 0.15 {
        return Err(Error::RateOutOfRange { alpha, max: 0.15 });
    }
    let approx = 1.02 / alpha;
    let exact = 1.0 / alpha.ln_1p();
    let within_bound = ((approx - exact) / exact).abs() <= 0.03;
    Ok((approx, within_bound))
}

/// A single payment or charge at a known time.
///
/// Positive amounts are benefits, negative amounts are costs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneTimeEvent {
    amount: f64,
    time: f64,
}

impl OneTimeEvent {
    pub fn new(amount: f64, time: f64) -> Result<Self> {
        if !amount.is_finite() {
            return Err(Error::NonFinite {
                context: "event amount",
            });
        }
        if !time.is_finite() {
            return Err(Error::NonFinite {
                context: "event time",
            });
        }
        if time < 0.0 {
            return Err(Error::NegativeTime { time });
        }
        Ok(Self { amount, time })
    }

    pub fn amount(&self) -> f64 {
        self.amount
    }

    pub fn time(&self) -> f64 {
        self.time
    }
}

/// A constant currency-per-year flow over `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousFlow {
    rate: f64,
    start: f64,
    end: f64,
}

impl ContinuousFlow {
    pub fn new(rate: f64, start: f64, end: f64) -> Result<Self> {
        if !(rate.is_finite() && start.is_finite() && end.is_finite()) {
            return Err(Error::NonFinite {
                context: "flow parameter",
            });
        }
        if start < 0.0 || end <= start {
            return Err(Error::InvalidInterval { start, end });
        }
        Ok(Self { rate, start, end })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }
}

/// A sampled currency-per-year rate curve over a build/commissioning span.
///
/// Between samples the rate is interpolated linearly.
#[derive(Debug, Clone, PartialEq)]
pub struct CostProfile {
    samples: Vec<(f64, f64)>,
    duration: f64,
}

impl CostProfile {
    /// Validates ordering: at least two samples, strictly increasing times,
    /// all within `[0, duration]`.
    pub fn new(samples: Vec<(f64, f64)>, duration: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::TooFewSamples { got: samples.len() });
        }
        if !duration.is_finite() {
            return Err(Error::NonFinite {
                context: "duration",
            });
        }
        for (i, (t, r)) in samples.iter().enumerate() {
            if !(t.is_finite() && r.is_finite()) {
                return Err(Error::NonFinite {
                    context: "profile sample",
                });
            }
            if *t < 0.0 || *t > duration {
                return Err(Error::SampleOutOfRange { index: i });
            }
            if i > 0 && *t <= samples[i - 1].0 {
                return Err(Error::UnorderedSamples { index: i });
            }
        }
        Ok(Self { samples, duration })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }
}

/// One-time events plus constant flows over an evaluation horizon `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct CashFlowSchedule {
    events: Vec<OneTimeEvent>,
    flows: Vec<ContinuousFlow>,
    horizon: f64,
}

impl CashFlowSchedule {
    /// Validates `horizon > 0` and that no event or flow extends past it.
    pub fn new(
        events: Vec<OneTimeEvent>,
        flows: Vec<ContinuousFlow>,
        horizon: f64,
    ) -> Result<Self> {
        if !horizon.is_finite() || horizon <= 0.0 {
            return Err(Error::NonPositiveHorizon { horizon });
        }
        for e in &events {
            if e.time() > horizon {
                return Err(Error::BeyondHorizon {
                    time: e.time(),
                    horizon,
                });
            }
        }
        for f in &flows {
            if f.end() > horizon {
                return Err(Error::BeyondHorizon {
                    time: f.end(),
                    horizon,
                });
            }
        }
        Ok(Self {
            events,
            flows,
            horizon,
        })
    }

    pub fn events(&self) -> &[OneTimeEvent] {
        &self.events
    }

    pub fn flows(&self) -> &[ContinuousFlow] {
        &self.flows
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }
}

/// Present value of a list of one-time events: `sum of amount * factor(time)`.
pub fn pv_events(events: &[OneTimeEvent], params: &DiscountParams) -> f64 {
    events
        .iter()
        .map(|e| e.amount() * params.factor(e.time()))
        .sum()
}

/// Present value of a constant flow.
///
/// For a flow of rate `I` over `[0, t]` this is the closed form
/// `I * tau * (1 - e^(-t/tau))`; a delayed interval `[a, b]` evaluates the
/// same antiderivative at both ends. A zero rate degrades to `I * (b - a)`.
pub fn pv_continuous(flow: &ContinuousFlow, params: &DiscountParams) -> f64 {
    if params.alpha() == 0.0 {
        return flow.rate() * (flow.end() - flow.start());
    }
    let tau = 1.0 / params.alpha().ln_1p();
    flow.rate() * tau * (params.factor(flow.start()) - params.factor(flow.end()))
}

/// Present value of a sampled cost profile by composite trapezoid
/// quadrature, with linear interpolation between samples and
/// [`PROFILE_REFINEMENT`] subintervals per sample gap.
pub fn pv_profile(profile: &CostProfile, params: &DiscountParams) -> f64 {
    let mut total = 0.0;
    for pair in profile.samples().windows(2) {
        let (t0, r0) = pair[0];
        let (t1, r1) = pair[1];
        let h = (t1 - t0) / PROFILE_REFINEMENT as f64;
        let slope = (r1 - r0) / (t1 - t0);
        let integrand = |t: f64| (r0 + slope * (t - t0)) * params.factor(t);

        let mut sum = 0.5 * (integrand(t0) + integrand(t1));
        for k in 1..PROFILE_REFINEMENT {
            sum += integrand(t0 + h * k as f64);
        }
        total += sum * h;
    }
    total
}

/// Total creation cost compounded forward to the startup moment.
///
/// Yearly costs spread over `build_years` are attributed to their centre of
/// gravity at half the span, so the at-startup cost is
/// `total_cost * (1 + alpha)^(0.5 * build_years)`.
pub fn commissioning_cost(
    total_cost: f64,
    params: &DiscountParams,
    build_years: f64,
) -> Result<f64> {
    if !total_cost.is_finite() {
        return Err(Error::NonFinite {
            context: "total cost",
        });
    }
    if total_cost < 0.0 {
        return Err(Error::NegativeCost { cost: total_cost });
    }
    if !build_years.is_finite() {
        return Err(Error::NonFinite {
            context: "build duration",
        });
    }
    if build_years < 0.0 {
        return Err(Error::NegativeBuildTime { years: build_years });
    }
    Ok(total_cost * (1.0 + params.alpha()).powf(0.5 * build_years))
}

/// Discounted average benefit per year over the schedule's horizon:
/// the present value of all events and flows divided by `T`.
pub fn discounted_average_benefit(schedule: &CashFlowSchedule, params: &DiscountParams) -> f64 {
    let events = pv_events(schedule.events(), params);
    let flows: f64 = schedule
        .flows()
        .iter()
        .map(|f| pv_continuous(f, params))
        .sum();
    (events + flows) / schedule.horizon()
}
