//! Model parameters and Hamiltonian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Coupling and asymmetry of the two-site model, together with the derived
/// ratio `beta = (1 + alpha) / (1 - alpha)` and eigen-frequency
/// `omega = |g| sqrt(1 - alpha^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    g: f64,
    alpha: f64,
    beta: f64,
    omega: f64,
}

impl ModelParams {
    pub fn new(g: f64, alpha: f64) -> Result<Self> {
        if !g.is_finite() || !alpha.is_finite() {
            return Err(Error::Domain(format!(
                "parameters must be finite (g = {g}, alpha = {alpha})"
            )));
        }
        if g == 0.0 {
            return Err(Error::Domain("coupling g must be nonzero".into()));
        }
        if alpha.abs() >= 1.0 {
            return Err(Error::Domain(format!(
                "alpha = {alpha} lies at or beyond the exceptional point |alpha| = 1"
            )));
        }
        Ok(Self {
            g,
            alpha,
            beta: (1.0 + alpha) / (1.0 - alpha),
            omega: g.abs() * (1.0 - alpha * alpha).sqrt(),
        })
    }

    /// Builds parameters from the asymmetry ratio instead of `alpha`.
    pub fn from_beta(g: f64, beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Domain(format!(
                "beta = {beta} must be finite and strictly positive (beta -> 0 or infinity is the exceptional point)"
            )));
        }
        Self::new(g, alpha_from_beta(beta))
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `+1` or `-1`; fixes which right eigenvector belongs to `+omega`.
    pub fn coupling_sign(&self) -> f64 {
        self.g.signum()
    }

    /// Physical time corresponding to the dimensionless `tau = |g| t`.
    pub fn time_from_tau(&self, tau: f64) -> f64 {
        tau / self.g.abs()
    }

    /// Period of every normalized probability, in physical time.
    pub fn probability_period(&self) -> f64 {
        std::f64::consts::PI / self.omega
    }

    /// Same period measured in `tau`.
    pub fn probability_period_tau(&self) -> f64 {
        std::f64::consts::PI * self.g.abs() / self.omega
    }

    /// Parameters with `alpha -> -alpha`, i.e. `beta -> 1/beta`.
    pub fn mirrored(&self) -> Self {
        Self::new(self.g, -self.alpha).expect("mirror of valid parameters is valid")
    }
}

/// `alpha = (beta - 1) / (beta + 1)`.
pub fn alpha_from_beta(beta: f64) -> f64 {
    (beta - 1.0) / (beta + 1.0)
}

/// Free-function spelling of [`ModelParams::new`].
pub fn make_params(g: f64, alpha: f64) -> Result<ModelParams> {
    ModelParams::new(g, alpha)
}

/// Vectors of the four-state occupation basis, in matrix order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// |11⟩
    BothOccupied,
    /// |10⟩, excitation on A.
    AOccupied,
    /// |01⟩, excitation on B.
    BOccupied,
    /// |00⟩
    Empty,
}

impl BasisLabel {
    pub const FULL: [BasisLabel; 4] = [
        BasisLabel::BothOccupied,
        BasisLabel::AOccupied,
        BasisLabel::BOccupied,
        BasisLabel::Empty,
    ];

    pub const SINGLE_EXCITATION: [BasisLabel; 2] = [BasisLabel::AOccupied, BasisLabel::BOccupied];

    /// Row/column index in the 4×4 representation.
    pub fn full_index(self) -> usize {
        match self {
            BasisLabel::BothOccupied => 0,
            BasisLabel::AOccupied => 1,
            BasisLabel::BOccupied => 2,
            BasisLabel::Empty => 3,
        }
    }

    /// Index in the single-excitation subspace, if the state belongs to it.
    pub fn subspace_index(self) -> Option<usize> {
        match self {
            BasisLabel::AOccupied => Some(0),
            BasisLabel::BOccupied => Some(1),
            _ => None,
        }
    }

    pub fn ket(self) -> &'static str {
        match self {
            BasisLabel::BothOccupied => "|11>",
            BasisLabel::AOccupied => "|10>",
            BasisLabel::BOccupied => "|01>",
            BasisLabel::Empty => "|00>",
        }
    }
}

/// One of the two sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    A,
    B,
}

impl Site {
    pub fn other(self) -> Site {
        match self {
            Site::A => Site::B,
            Site::B => Site::A,
        }
    }

    pub fn basis(self) -> BasisLabel {
        match self {
            Site::A => BasisLabel::AOccupied,
            Site::B => BasisLabel::BOccupied,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Site::A => 0,
            Site::B => 1,
        }
    }
}

/// The 4×4 Hamiltonian over `|11⟩, |10⟩, |01⟩, |00⟩`.
pub fn hamiltonian_full(params: &ModelParams) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(4, 4);
    let a = BasisLabel::AOccupied.full_index();
    let b = BasisLabel::BOccupied.full_index();
    h[(a, b)] = Complex64::new(-params.g * (1.0 - params.alpha), 0.0);
    h[(b, a)] = Complex64::new(-params.g * (1.0 + params.alpha), 0.0);
    h
}

/// Restriction of the Hamiltonian to the single-excitation subspace
/// `|10⟩, |01⟩`.
pub fn hamiltonian_2x2(params: &ModelParams) -> ComplexMatrix {
    let g = params.g;
    let a = params.alpha;
    ComplexMatrix::from_real_rows(&[[0.0, -g * (1.0 - a)], [-g * (1.0 + a), 0.0]])
}

/// Site occupation operator `(σ_z + 1)/2` in the single-excitation basis.
pub fn number_operator(site: Site) -> ComplexMatrix {
    match site {
        Site::A => ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]),
        Site::B => ComplexMatrix::from_real_rows(&[[0.0, 0.0], [0.0, 1.0]]),
    }
}

/// Splits `H = H0 + iV` into its Hermitian parts `H0 = (H + H†)/2` and
/// `V = (H - H†)/(2i)`.
pub fn hermitian_parts(h: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let adj = h.adjoint();
    let h0 = h.add(&adj).scale(Complex64::new(0.5, 0.0));
    let v = h.sub(&adj).scale(Complex64::new(0.0, -0.5));
    (h0, v)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    let i = Complex64::i();
    ComplexMatrix::from_rows(&[vec![Complex64::new(0.0, 0.0), -i], vec![i, Complex64::new(0.0, 0.0)]])
        .expect("2x2 literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn params_examples() {
        let p = ModelParams::new(1.0, 0.0).unwrap();
        assert_eq!((p.beta(), p.omega()), (1.0, 1.0));

        let p = ModelParams::new(1.0, 0.6).unwrap();
        assert!((p.beta() - 4.0).abs() < 1e-15);
        assert!((p.omega() - 0.8).abs() < 1e-15);

        let p = ModelParams::new(2.0, -0.6).unwrap();
        assert!((p.beta() - 0.25).abs() < 1e-15);
        assert!((p.omega() - 1.6).abs() < 1e-15);
    }

    #[test]
    fn params_rejects_domain_violations() {
        for (g, a) in [(1.0, 1.0), (1.0, -1.0), (1.0, 1.5), (0.0, 0.3), (f64::NAN, 0.0), (1.0, f64::INFINITY)] {
            assert!(matches!(ModelParams::new(g, a), Err(Error::Domain(_))), "g={g} alpha={a}");
        }
        assert!(ModelParams::from_beta(1.0, 0.0).is_err());
        assert!(ModelParams::from_beta(1.0, -2.0).is_err());
    }

    #[test]
    fn beta_alpha_roundtrip() {
        let p = ModelParams::from_beta(1.0, 4.0).unwrap();
        assert!((p.alpha() - 0.6).abs() < 1e-15);
        assert!((p.mirrored().beta() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn full_hamiltonian_pattern() {
        let h = hamiltonian_full(&ModelParams::new(1.0, 0.0).unwrap());
        assert_eq!(h[(1, 2)], c(-1.0));
        assert_eq!(h[(2, 1)], c(-1.0));

        let p = ModelParams::new(1.0, 0.6).unwrap();
        let h = hamiltonian_full(&p);
        assert!((h[(1, 2)].re + 0.4).abs() < 1e-15);
        assert!((h[(2, 1)].re + 1.6).abs() < 1e-15);
        for k in 0..4 {
            for idx in [0, 3] {
                assert_eq!(h[(idx, k)], c(0.0));
                assert_eq!(h[(k, idx)], c(0.0));
            }
        }
        let nonzero = (0..4).flat_map(|r| (0..4).map(move |s| (r, s))).filter(|&ix| h[ix] != c(0.0)).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn reduced_hamiltonian_is_central_block() {
        for (g, a) in [(1.0, 0.0), (1.0, 0.6), (-1.0, 0.6), (2.5, -0.3)] {
            let p = ModelParams::new(g, a).unwrap();
            let full = hamiltonian_full(&p);
            let h = hamiltonian_2x2(&p);
            for r in 0..2 {
                for s in 0..2 {
                    assert_eq!(h[(r, s)], full[(r + 1, s + 1)]);
                }
            }
        }
        let h = hamiltonian_2x2(&ModelParams::new(-1.0, 0.6).unwrap());
        assert!((h[(0, 1)].re - 0.4).abs() < 1e-15);
        assert!((h[(1, 0)].re - 1.6).abs() < 1e-15);
        assert_eq!(h[(0, 0)], c(0.0));
    }

    #[test]
    fn hermiticity_iff_symmetric_coupling() {
        for a in [-0.9, -0.2, 0.0, 0.1, 0.7] {
            let h = hamiltonian_2x2(&ModelParams::new(1.3, a).unwrap());
            let hermitian = h[(0, 1)] == h[(1, 0)].conj();
            assert_eq!(hermitian, a == 0.0);
        }
    }

    #[test]
    fn hermitian_decomposition() {
        for (g, a) in [(1.0, 0.6), (-0.7, 0.25), (2.0, -0.9)] {
            let p = ModelParams::new(g, a).unwrap();
            let h = hamiltonian_2x2(&p);
            let (h0, v) = hermitian_parts(&h);
            assert!(h0.sub(&h0.adjoint()).max_abs() < 1e-15);
            assert!(v.sub(&v.adjoint()).max_abs() < 1e-15);
            assert!(v.trace().norm() < 1e-15);
            assert!(h0.sub(&pauli_x().scale(c(-g))).max_abs() < 1e-15);
            // with the standard σ_y = [[0, -i], [i, 0]] the anti-Hermitian part is +gασ_y
            assert!(v.sub(&pauli_y().scale(c(g * a))).max_abs() < 1e-15);
            let rebuilt = h0.add(&v.scale(Complex64::i()));
            assert!(h.sub(&rebuilt).max_abs() < 1e-15);
        }
    }

    #[test]
    fn number_operators() {
        assert_eq!(number_operator(Site::A), ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]));
        assert_eq!(number_operator(Site::B), ComplexMatrix::from_real_rows(&[[0.0, 0.0], [0.0, 1.0]]));
        let sum = number_operator(Site::A).add(&number_operator(Site::B));
        assert_eq!(sum, ComplexMatrix::identity(2));
    }

    #[test]
    fn basis_order() {
        let kets: Vec<_> = BasisLabel::FULL.iter().map(|b| b.ket()).collect();
        assert_eq!(kets, ["|11>", "|10>", "|01>", "|00>"]);
        assert_eq!(Site::A.basis().subspace_index(), Some(0));
        assert_eq!(Site::B.basis().subspace_index(), Some(1));
        assert_eq!(BasisLabel::Empty.subspace_index(), None);
    }
}
