//! Explicit formulas in `β` and `ωt` for the states localized on a site.
//!
//! These are what the figure datasets evaluate. Everything is written in
//! terms of `c = cos²(ωt)` and `s = sin²(ωt)`.

use crate::model::ModelParams;

fn cos_sin_sq(params: &ModelParams, t: f64) -> (f64, f64) {
    let (s, c) = (params.omega() * t).sin_cos();
    (c * c, s * s)
}

/// `⟨ψ_A(t)|ψ_A(t)⟩ = cos² + β sin²`
pub fn norm_a(params: &ModelParams, t: f64) -> f64 {
    let (c, s) = cos_sin_sq(params, t);
    c + params.beta() * s
}

/// `⟨ψ_B(t)|ψ_B(t)⟩ = cos² + sin²/β`
pub fn norm_b(params: &ModelParams, t: f64) -> f64 {
    let (c, s) = cos_sin_sq(params, t);
    c + s / params.beta()
}

pub fn prob_ab(params: &ModelParams, t: f64) -> f64 {
    let (c, s) = cos_sin_sq(params, t);
    let b = params.beta();
    b * s / (c + b * s)
}

pub fn prob_ba(params: &ModelParams, t: f64) -> f64 {
    let (c, s) = cos_sin_sq(params, t);
    let b = params.beta().recip();
    b * s / (c + b * s)
}

pub fn prob_aa(params: &ModelParams, t: f64) -> f64 {
    let (c, s) = cos_sin_sq(params, t);
    c / (c + params.beta() * s)
}

pub fn prob_bb(params: &ModelParams, t: f64) -> f64 {
    let (c, s) = cos_sin_sq(params, t);
    c / (c + s / params.beta())
}

/// `P_{A→B} / P_{B→A} = β² (cos² + sin²/β) / (cos² + β sin²)`, finite for
/// every `t` including the zeros of `sin(ωt)`.
pub fn ratio(params: &ModelParams, t: f64) -> f64 {
    let (c, s) = cos_sin_sq(params, t);
    let b = params.beta();
    b * b * (c + s / b) / (c + b * s)
}

/// Unnormalized amplitude magnitudes squared; their sums give the norm
/// factors instead of one.
pub fn prob_ab_unnormalized(params: &ModelParams, t: f64) -> f64 {
    params.beta() * cos_sin_sq(params, t).1
}

pub fn prob_aa_unnormalized(params: &ModelParams, t: f64) -> f64 {
    cos_sin_sq(params, t).0
}
