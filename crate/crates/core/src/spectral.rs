//! Biorthogonal eigensystems.
//!
//! A non-Hermitian matrix carries two families of eigenvectors: right
//! columns `H r = E r` and left rows `l H = E l`. They are paired and scaled
//! so that `l_r · r_s = δ_rs`, which makes `Σ_s r_s l_s` the identity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, schur, ComplexMatrix};
use crate::model::ModelParams;

/// Relative eigenvalue gap below which the numeric path refuses to
/// biorthogonalize.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

/// Largest matrix accepted by [`eigensystem_numeric`].
pub const MAX_NUMERIC_DIMENSION: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct BiorthogonalSystem {
    /// Sorted by real part descending, ties by imaginary part descending.
    pub eigenvalues: Vec<Complex64>,
    /// Right eigenvectors (columns).
    pub right_vectors: Vec<Vec<Complex64>>,
    /// Left eigenvectors (rows), paired with `right_vectors` by index.
    pub left_vectors: Vec<Vec<Complex64>>,
}

impl BiorthogonalSystem {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Matrix of pairings `l_r · r_s`.
    pub fn overlap_matrix(&self) -> ComplexMatrix {
        let n = self.dimension();
        let mut m = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for s in 0..n {
                m[(r, s)] = dot(&self.left_vectors[r], &self.right_vectors[s]);
            }
        }
        m
    }

    /// `max |l_r · r_s - δ_rs|`
    pub fn biorthogonality_residual(&self) -> f64 {
        let n = self.dimension();
        self.overlap_matrix().sub(&ComplexMatrix::identity(n)).max_abs()
    }

    /// `Σ_s r_s l_s`
    pub fn completeness_sum(&self) -> ComplexMatrix {
        let n = self.dimension();
        self.right_vectors
            .iter()
            .zip(&self.left_vectors)
            .fold(ComplexMatrix::zeros(n, n), |acc, (r, l)| acc.add(&ComplexMatrix::outer(r, l)))
    }

    /// `max |Σ_s r_s l_s - I|`
    pub fn completeness_residual(&self) -> f64 {
        self.completeness_sum().sub(&ComplexMatrix::identity(self.dimension())).max_abs()
    }

    /// `max_s max |H r_s - E_s r_s|, |l_s H - E_s l_s|`
    pub fn eigen_residual(&self, h: &ComplexMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for ((e, r), l) in self.eigenvalues.iter().zip(&self.right_vectors).zip(&self.left_vectors) {
            let hr = h.apply(r);
            let lh = h.apply_left(l);
            for k in 0..r.len() {
                worst = worst.max((hr[k] - e * r[k]).norm()).max((lh[k] - e * l[k]).norm());
            }
        }
        worst
    }

    /// `Σ_s r_s e^{-i E_s t} l_s`, the propagator assembled from the spectrum.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        let n = self.dimension();
        let mut acc = ComplexMatrix::zeros(n, n);
        for ((e, r), l) in self.eigenvalues.iter().zip(&self.right_vectors).zip(&self.left_vectors) {
            let phase = (Complex64::new(0.0, -1.0) * e * t).exp();
            acc = acc.add(&ComplexMatrix::outer(r, l).scale(phase));
        }
        acc
    }
}

/// Positive-definite Hermitian metric `η = Σ_s l_s† l_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricOperator {
    pub matrix: ComplexMatrix,
}

impl MetricOperator {
    /// `max |η H - H† η|`
    pub fn pseudo_hermiticity_residual(&self, h: &ComplexMatrix) -> f64 {
        self.matrix.matmul(h).sub(&h.adjoint().matmul(&self.matrix)).max_abs()
    }

    /// Eigenvalues of the Hermitian metric, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let s = schur(&self.matrix)?;
        let mut ev: Vec<f64> = (0..s.t.rows()).map(|k| s.t[(k, k)].re).collect();
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }

    pub fn is_positive_definite(&self) -> Result<bool> {
        Ok(self.matrix.is_hermitian(1e-12) && self.eigenvalues()?.iter().all(|&x| x > 0.0))
    }
}

/// Closed-form eigensystem of the 2×2 model Hamiltonian.
///
/// Eigenvalues are `+ω, -ω`. For `g > 0` the right vectors are
/// `(1/√2)[1/√β, ∓1]ᵀ` and the left rows `(1/√2)[√β, ∓1]`; a negative
/// coupling flips the sign of the second components so that the first pair
/// still belongs to `+ω`.
pub fn eigensystem_analytic(params: &ModelParams) -> BiorthogonalSystem {
    let w = params.omega();
    let sb = params.beta().sqrt();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sg = params.coupling_sign();
    let c = |x: f64| Complex64::new(x, 0.0);
    BiorthogonalSystem {
        eigenvalues: vec![c(w), c(-w)],
        right_vectors: vec![vec![c(h / sb), c(-sg * h)], vec![c(h / sb), c(sg * h)]],
        left_vectors: vec![vec![c(h * sb), c(-sg * h)], vec![c(h * sb), c(sg * h)]],
    }
}

fn eigen_order(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
}

/// Numeric biorthogonal eigensystem of a small complex matrix.
///
/// The matrix is brought to complex Schur form; right and left eigenvectors
/// of the triangular factor come from back and forward substitution and are
/// rotated back. Each right vector is scaled to unit length with its first
/// nonzero component real positive, and each left vector is then divided by
/// its pairing with the right one.
pub fn eigensystem_numeric(h: &ComplexMatrix) -> Result<BiorthogonalSystem> {
    let (rows, cols) = h.dims();
    if rows != cols {
        return Err(Error::NonSquare { rows, cols });
    }
    let n = rows;
    if n > MAX_NUMERIC_DIMENSION {
        return Err(Error::Dimension(format!(
            "numeric eigensolver supports n <= {MAX_NUMERIC_DIMENSION}, got {n}"
        )));
    }
    if h.entries().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }

    let s = schur(h)?;
    let t = &s.t;
    let q = &s.q;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigen_order(&t[(a, a)], &t[(b, b)]));

    let radius = (0..n).map(|k| t[(k, k)].norm()).fold(0.0, f64::max);
    if n > 1 {
        let mut gap = f64::INFINITY;
        for a in 0..n {
            for b in a + 1..n {
                gap = gap.min((t[(a, a)] - t[(b, b)]).norm());
            }
        }
        let rel = if radius > 0.0 { gap / radius } else { 0.0 };
        if rel < DEGENERACY_THRESHOLD {
            return Err(Error::DegenerateSpectrum { gap: rel, threshold: DEGENERACY_THRESHOLD });
        }
    }

    let qh = q.adjoint();
    let mut system = BiorthogonalSystem {
        eigenvalues: Vec::with_capacity(n),
        right_vectors: Vec::with_capacity(n),
        left_vectors: Vec::with_capacity(n),
    };
    for &k in &order {
        let lambda = t[(k, k)];

        // T y = λ y, y_k = 1, y_j = 0 for j > k
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        y[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let acc: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * y[j]).sum();
            y[i] = -acc / (t[(i, i)] - lambda);
        }
        // z T = λ z, z_k = 1, z_j = 0 for j < k
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        z[k] = Complex64::new(1.0, 0.0);
        for j in k + 1..n {
            let acc: Complex64 = (k..j).map(|i| z[i] * t[(i, j)]).sum();
            z[j] = -acc / (t[(j, j)] - lambda);
        }

        let mut right = q.apply(&y);
        let mut left = qh.apply_left(&z);

        let rn = norm2(&right);
        let first = right
            .iter()
            .copied()
            .find(|c| c.norm() > 1e-14 * rn)
            .expect("eigenvector has a nonzero component");
        let phase = first / first.norm();
        right.iter_mut().for_each(|c| *c /= phase * rn);

        let pairing = dot(&left, &right);
        left.iter_mut().for_each(|c| *c /= pairing);

        system.eigenvalues.push(lambda);
        system.right_vectors.push(right);
        system.left_vectors.push(left);
    }
    Ok(system)
}

/// `η = Σ_s l_s† l_s`.
pub fn metric_operator(system: &BiorthogonalSystem) -> MetricOperator {
    let n = system.dimension();
    let matrix = system.left_vectors.iter().fold(ComplexMatrix::zeros(n, n), |acc, l| {
        let col: Vec<Complex64> = l.iter().map(|z| z.conj()).collect();
        acc.add(&ComplexMatrix::outer(&col, l))
    });
    MetricOperator { matrix }
}

/// `|⟨a, b⟩| / (|a| |b|)`; equals one when the vectors are collinear.
pub fn collinearity(a: &[Complex64], b: &[Complex64]) -> f64 {
    crate::linalg::inner(a, b).norm() / (norm2(a) * norm2(b))
}
