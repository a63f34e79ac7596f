//! Time evolution in the biorthogonal representation.
//!
//! A ket is expanded on the right eigenvectors, `|ψ⟩ = Σ_s c_L^s |E^s⟩⟩`,
//! and a bra on the left ones, `⟨ψ| = Σ_s c_R^s ⟨⟨E^s|`. The ket
//! coefficients only pick up phases; the bra coefficients mix because the
//! left eigenvectors are not eigenvectors of `H†`. Probabilities are
//! renormalized by the time-dependent factor `Σ_s c_L^s c_R^s`.

pub mod closed_form;
pub mod oracle;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{dot, ComplexMatrix};
use crate::model::{number_operator, ModelParams, Site};
use crate::spectral::{eigensystem_analytic, BiorthogonalSystem};

pub use oracle::{propagate_bra_numeric, propagate_numeric};

/// Norms at or below this are treated as vanishing.
pub const NORM_FLOOR: f64 = 1e-12;

/// Central-difference step used by [`ode_residual_cr`].
pub const FD_STEP: f64 = 1e-6;

/// A state in the `(|10⟩, |01⟩)` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteState {
    components: [Complex64; 2],
}

impl SiteState {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if a == Complex64::new(0.0, 0.0) && b == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("site state must have a nonzero component".into()));
        }
        if ![a, b].iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain("site state components must be finite".into()));
        }
        Ok(Self { components: [a, b] })
    }

    /// Excitation localized on `site`.
    pub fn localized(site: Site) -> Self {
        let mut components = [Complex64::new(0.0, 0.0); 2];
        components[site.index()] = Complex64::new(1.0, 0.0);
        Self { components }
    }

    pub fn components(&self) -> &[Complex64; 2] {
        &self.components
    }
}

/// Ket (`c_l`) and bra (`c_r`) expansion coefficients, ordered `(+, -)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientState {
    pub c_l: [Complex64; 2],
    pub c_r: [Complex64; 2],
    pub time: f64,
}

/// `c_L^s = ⟨⟨E^s|ψ⟩`, `c_R^s = ⟨ψ|E^s⟩⟩`.
pub fn decompose(state: &SiteState, system: &BiorthogonalSystem) -> Result<CoefficientState> {
    if system.dimension() != 2 {
        return Err(Error::Dimension(format!(
            "expected a 2-state system, got dimension {}",
            system.dimension()
        )));
    }
    let psi = state.components();
    let bra = psi.map(|z| z.conj());
    let c_l = [dot(&system.left_vectors[0], psi), dot(&system.left_vectors[1], psi)];
    let c_r = [dot(&bra, &system.right_vectors[0]), dot(&bra, &system.right_vectors[1])];
    Ok(CoefficientState { c_l, c_r, time: 0.0 })
}

/// Ket coefficients advanced by `t`: `c_L^±(t) = c_L^±(0) e^{∓iωt}`.
pub fn evolve_cl(state: &CoefficientState, params: &ModelParams, t: f64) -> [Complex64; 2] {
    let phase = Complex64::from_polar(1.0, -params.omega() * t);
    [state.c_l[0] * phase, state.c_l[1] * phase.conj()]
}

/// Bra coefficients advanced by `t`:
///
/// `c_R^±(t) = ±(i/2β)((1+β²) c_R^± − (1−β²) c_R^∓) sin ωt + c_R^± cos ωt`
pub fn evolve_cr(state: &CoefficientState, params: &ModelParams, t: f64) -> [Complex64; 2] {
    let b = params.beta();
    let (sin, cos) = (params.omega() * t).sin_cos();
    let [plus, minus] = state.c_r;
    let k = Complex64::new(0.0, sin / (2.0 * b));
    let up = 1.0 + b * b;
    let down = 1.0 - b * b;
    [
        k * (plus * up - minus * down) + plus * cos,
        -k * (minus * up - plus * down) + minus * cos,
    ]
}

/// Both coefficient sets advanced by `t`.
pub fn evolve(state: &CoefficientState, params: &ModelParams, t: f64) -> CoefficientState {
    CoefficientState {
        c_l: evolve_cl(state, params, t),
        c_r: evolve_cr(state, params, t),
        time: state.time + t,
    }
}

/// Residuals of the coupled equations for the bra coefficients,
///
/// `ċ⁺ + ċ⁻ = i|g|(1+α)β^{-3/2}(c⁺ − c⁻)` and
/// `ċ⁺ − ċ⁻ = i|g|(1−α)β^{3/2}(c⁺ + c⁻)`,
///
/// at time `t` along the trajectory started from `initial`, with the time
/// derivative taken by central differences of [`evolve_cr`].
pub fn ode_residual_cr(initial: &CoefficientState, params: &ModelParams, t: f64) -> [Complex64; 2] {
    let fwd = evolve_cr(initial, params, t + FD_STEP);
    let bwd = evolve_cr(initial, params, t - FD_STEP);
    let [p, m] = evolve_cr(initial, params, t);
    let dp = (fwd[0] - bwd[0]) / (2.0 * FD_STEP);
    let dm = (fwd[1] - bwd[1]) / (2.0 * FD_STEP);

    let g = params.g().abs();
    let a = params.alpha();
    let b = params.beta();
    let i = Complex64::i();
    [
        (dp + dm) - i * g * (1.0 + a) * b.powf(-1.5) * (p - m),
        (dp - dm) - i * g * (1.0 - a) * b.powf(1.5) * (p + m),
    ]
}

/// `⟨ψ|ψ⟩ = Σ_s c_L^s c_R^s`.
///
/// Fails unless the value is real and positive (within `NORM_FLOOR`), which
/// is what every physical trajectory produces.
pub fn norm_factor(state: &CoefficientState) -> Result<Complex64> {
    let n = state.c_l[0] * state.c_r[0] + state.c_l[1] * state.c_r[1];
    if n.re <= NORM_FLOOR || n.im.abs() > NORM_FLOOR * n.re.max(1.0) {
        return Err(Error::NonPositiveNorm { re: n.re, im: n.im });
    }
    Ok(n)
}

/// Unnormalized or renormalized amplitude `⟨φ|ψ(t)⟩ = Σ_s d_R^s c_L^s(t)`.
pub fn amplitude(
    from: &SiteState,
    to: &SiteState,
    params: &ModelParams,
    t: f64,
    normalized: bool,
) -> Result<Complex64> {
    let system = eigensystem_analytic(params);
    let psi0 = decompose(from, &system)?;
    let phi = decompose(to, &system)?;
    let c_l = evolve_cl(&psi0, params, t);
    let amp = phi.c_r[0] * c_l[0] + phi.c_r[1] * c_l[1];
    if !normalized {
        return Ok(amp);
    }
    let target = norm_factor(&phi)?.re;
    let evolved = norm_factor(&evolve(&psi0, params, t))?.re;
    Ok(amp / (target.sqrt() * evolved.sqrt()))
}

pub fn probability(
    from: &SiteState,
    to: &SiteState,
    params: &ModelParams,
    t: f64,
    normalized: bool,
) -> Result<f64> {
    Ok(amplitude(from, to, params, t, normalized)?.norm_sqr())
}

/// `P_{A→B} / P_{B→A}` in its simplified form; defined at every `t`.
pub fn probability_ratio(params: &ModelParams, t: f64) -> f64 {
    closed_form::ratio(params, t)
}

/// Occupation of `site` in the renormalized state evolved from `from`.
pub fn occupation(from: &SiteState, site: Site, params: &ModelParams, t: f64) -> Result<f64> {
    let system = eigensystem_analytic(params);
    let state = evolve(&decompose(from, &system)?, params, t);
    norm_factor(&state)?;
    let rho = density_matrix(&state, &system, false)?;
    Ok(rho.expectation(&number_operator(site)).re / rho.trace().re)
}

/// `ρ = Σ_{r,s} c_L^r c_R^s |E^r⟩⟩⟨⟨E^s|` in the site basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub entries: ComplexMatrix,
    pub normalized: bool,
}

impl DensityMatrix {
    /// `|ρ_{01}|`
    pub fn coherence(&self) -> f64 {
        self.entries[(0, 1)].norm()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `tr(O ρ)`
    pub fn expectation(&self, op: &ComplexMatrix) -> Complex64 {
        op.matmul(&self.entries).trace()
    }
}

pub fn density_matrix(
    state: &CoefficientState,
    system: &BiorthogonalSystem,
    normalized: bool,
) -> Result<DensityMatrix> {
    let n = system.dimension();
    if n != 2 {
        return Err(Error::Dimension(format!("expected a 2-state system, got dimension {n}")));
    }
    // Σ_{r,s} c_L^r c_R^s |E^r⟩⟩⟨⟨E^s| factors into |ψ⟩⟨ψ|
    let zero = Complex64::new(0.0, 0.0);
    let mut ket = vec![zero; n];
    let mut bra = vec![zero; n];
    for s in 0..n {
        for k in 0..n {
            ket[k] += state.c_l[s] * system.right_vectors[s][k];
            bra[k] += state.c_r[s] * system.left_vectors[s][k];
        }
    }
    let mut rho = ComplexMatrix::outer(&ket, &bra);
    if normalized {
        let norm = norm_factor(state)?;
        rho = rho.scale(norm.inv());
    }
    Ok(DensityMatrix { entries: rho, normalized })
}
