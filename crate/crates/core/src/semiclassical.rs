//! Population rate equation driven by the renormalized transition
//! probabilities:
//!
//! `dn_A/dτ = -n_A P_{A→B}(τ) + n_B P_{B→A}(τ) = -dn_B/dτ`
//!
//! Derivatives are taken with respect to `τ = |g| t`.

use crate::dynamics::closed_form;
use crate::error::{Error, Result};
use crate::model::ModelParams;

pub const DEFAULT_STEP: f64 = 0.005;
pub const DEFAULT_TAU_END: f64 = 50.0;
/// Minimum number of RK4 steps per probability period.
pub const MIN_STEPS_PER_PERIOD: f64 = 50.0;
/// Minimum averaging window, in probability periods.
pub const MIN_WINDOW_PERIODS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePopulations {
    pub n_a: f64,
    pub n_b: f64,
    pub tau: f64,
}

impl RatePopulations {
    pub fn new(n_a: f64, n_b: f64, tau: f64) -> Result<Self> {
        if !(n_a.is_finite() && n_b.is_finite() && tau.is_finite()) || n_a < 0.0 || n_b < 0.0 {
            return Err(Error::Domain(format!(
                "populations must be finite and non-negative (n_A = {n_a}, n_B = {n_b})"
            )));
        }
        Ok(Self { n_a, n_b, tau })
    }

    /// Excitation on site A at `τ = 0`.
    pub fn on_site_a() -> Self {
        Self { n_a: 1.0, n_b: 0.0, tau: 0.0 }
    }

    pub fn total(&self) -> f64 {
        self.n_a + self.n_b
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateTrajectory {
    pub samples: Vec<RatePopulations>,
    pub step: f64,
    pub params: ModelParams,
}

/// `(dn_A/dτ, dn_B/dτ)`; the second component is the exact negation of the
/// first.
pub fn rate_rhs(pop: &RatePopulations, params: &ModelParams, tau: f64) -> (f64, f64) {
    let t = params.time_from_tau(tau);
    let d = -pop.n_a * closed_form::prob_ab(params, t) + pop.n_b * closed_form::prob_ba(params, t);
    (d, -d)
}

/// Largest admissible step for `params`.
pub fn max_step(params: &ModelParams) -> f64 {
    params.probability_period_tau() / MIN_STEPS_PER_PERIOD
}

/// Classical fixed-step fourth-order Runge-Kutta from `initial.tau` to (at
/// least) `tau_end`. Samples sit at `initial.tau + k * step`.
pub fn integrate(initial: &RatePopulations, params: &ModelParams, tau_end: f64, step: f64) -> Result<RateTrajectory> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    if !(tau_end.is_finite() && tau_end > initial.tau) {
        return Err(Error::Domain(format!(
            "tau_end = {tau_end} must exceed the initial tau = {}",
            initial.tau
        )));
    }
    let limit = max_step(params);
    if step > limit {
        return Err(Error::StepTooLarge { step, limit });
    }

    let steps = ((tau_end - initial.tau) / step - 1e-9).ceil().max(1.0) as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(*initial);
    let mut cur = *initial;
    for k in 1..=steps {
        let tau = initial.tau + (k - 1) as f64 * step;
        let at = |n_a: f64, n_b: f64, tau: f64| RatePopulations { n_a, n_b, tau };
        let k1 = rate_rhs(&cur, params, tau);
        let mid = tau + 0.5 * step;
        let k2 = rate_rhs(&at(cur.n_a + 0.5 * step * k1.0, cur.n_b + 0.5 * step * k1.1, mid), params, mid);
        let k3 = rate_rhs(&at(cur.n_a + 0.5 * step * k2.0, cur.n_b + 0.5 * step * k2.1, mid), params, mid);
        let end = tau + step;
        let k4 = rate_rhs(&at(cur.n_a + step * k3.0, cur.n_b + step * k3.1, end), params, end);
        cur = RatePopulations {
            n_a: cur.n_a + step / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            n_b: cur.n_b + step / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
            tau: initial.tau + k as f64 * step,
        };
        samples.push(cur);
    }
    Ok(RateTrajectory { samples, step, params: *params })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumStats {
    pub mean_n_a: f64,
    pub mean_n_b: f64,
    /// Peak-to-peak spread of `n_A` over the window.
    pub amplitude_n_a: f64,
}

/// Trapezoidal time averages over `[tau_from, end]`.
pub fn equilibrium_stats(traj: &RateTrajectory, tau_from: f64) -> Result<EquilibriumStats> {
    let end = traj.samples.last().map_or(f64::NEG_INFINITY, |s| s.tau);
    let start = traj.samples.first().map_or(f64::INFINITY, |s| s.tau);
    let required = MIN_WINDOW_PERIODS * traj.params.probability_period_tau();
    if tau_from < start || end - tau_from < required {
        return Err(Error::WindowTooShort { from: tau_from, to: end, required });
    }
    let window: Vec<&RatePopulations> = traj.samples.iter().filter(|s| s.tau >= tau_from).collect();
    let span = window.last().unwrap().tau - window[0].tau;
    let trapezoid = |f: fn(&RatePopulations) -> f64| {
        window.windows(2).map(|w| 0.5 * (f(w[0]) + f(w[1])) * (w[1].tau - w[0].tau)).sum::<f64>() / span
    };
    let (lo, hi) = window
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s.n_a), hi.max(s.n_a)));
    Ok(EquilibriumStats {
        mean_n_a: trapezoid(|s| s.n_a),
        mean_n_b: trapezoid(|s| s.n_b),
        amplitude_n_a: hi - lo,
    })
}
