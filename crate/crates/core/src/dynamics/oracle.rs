//! Matrix-exponential propagation, independent of the spectral module.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{dot, expm, ComplexMatrix};
use crate::model::{hamiltonian_2x2, number_operator, ModelParams, Site};

use super::SiteState;

fn check_vector(h: &ComplexMatrix, v: &[Complex64]) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NonSquare { rows: h.rows(), cols: h.cols() });
    }
    if v.len() != h.rows() {
        return Err(Error::Dimension(format!(
            "state of length {} for a {}x{} matrix",
            v.len(),
            h.rows(),
            h.cols()
        )));
    }
    Ok(())
}

/// `exp(-iHt) ψ(0)`
pub fn propagate_numeric(h: &ComplexMatrix, initial: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
    check_vector(h, initial)?;
    Ok(expm(&h.scale(Complex64::new(0.0, -t)))?.apply(initial))
}

/// `⟨ψ(0)| exp(+iH†t)`, with `⟨ψ(0)|` the conjugate of `initial` as a row.
pub fn propagate_bra_numeric(h: &ComplexMatrix, initial: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
    check_vector(h, initial)?;
    let bra: Vec<Complex64> = initial.iter().map(|z| z.conj()).collect();
    Ok(expm(&h.adjoint().scale(Complex64::new(0.0, t)))?.apply_left(&bra))
}

/// Ket and bra of a single-excitation state evolved under the model
/// Hamiltonian.
#[derive(Debug, Clone)]
pub struct PropagatedState {
    pub ket: Vec<Complex64>,
    pub bra: Vec<Complex64>,
}

impl PropagatedState {
    pub fn new(params: &ModelParams, initial: &SiteState, t: f64) -> Result<Self> {
        let h = hamiltonian_2x2(params);
        Ok(Self {
            ket: propagate_numeric(&h, initial.components(), t)?,
            bra: propagate_bra_numeric(&h, initial.components(), t)?,
        })
    }

    pub fn norm_factor(&self) -> Complex64 {
        dot(&self.bra, &self.ket)
    }

    /// `⟨φ|ψ(t)⟩`
    pub fn overlap(&self, target: &SiteState) -> Complex64 {
        target.components().iter().zip(&self.ket).map(|(p, k)| p.conj() * k).sum()
    }

    pub fn expectation(&self, op: &ComplexMatrix) -> Complex64 {
        dot(&self.bra, &op.apply(&self.ket))
    }
}

pub fn numeric_norm_factor(params: &ModelParams, from: &SiteState, t: f64) -> Result<f64> {
    Ok(PropagatedState::new(params, from, t)?.norm_factor().re)
}

/// Transition probability with explicit renormalization of both states.
pub fn numeric_probability(
    params: &ModelParams,
    from: &SiteState,
    to: &SiteState,
    t: f64,
    normalized: bool,
) -> Result<f64> {
    let state = PropagatedState::new(params, from, t)?;
    let amp = state.overlap(to);
    if !normalized {
        return Ok(amp.norm_sqr());
    }
    let target_norm: f64 = to.components().iter().map(|z| z.norm_sqr()).sum();
    Ok(amp.norm_sqr() / (target_norm * state.norm_factor().re))
}

pub fn numeric_occupation(params: &ModelParams, from: &SiteState, site: Site, t: f64) -> Result<f64> {
    let state = PropagatedState::new(params, from, t)?;
    Ok(state.expectation(&number_operator(site)).re / state.norm_factor().re)
}
